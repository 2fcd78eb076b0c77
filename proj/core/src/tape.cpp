#include "tgen/tape.hpp"

namespace tgen {

const char* engine_str(Engine e) {
    switch (e) {
        case Engine::Fuzz: return "fuzz";
        case Engine::Bmc: return "bmc";
        case Engine::Selective: return "selective";
        case Engine::External: return "external";
    }
    return "?";
}

uint64_t decimal_to_raw(const std::string& text, TypeDesc want) {
    size_t i = 0;
    bool neg = false;
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) i++;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
        neg = text[i] == '-';
        i++;
    }
    uint64_t v = 0;
    for (; i < text.size(); i++) {
        char c = text[i];
        if (c < '0' || c > '9') break;
        v = v * 10 + uint64_t(c - '0');  // wraps mod 2^64 for oversized inputs
    }
    if (neg) v = 0 - v;
    return mask_width(v, want.width);
}

}  // namespace tgen
