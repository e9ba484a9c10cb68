#pragma once
#include <cstdint>
#include <string>
#include <vector>

namespace ht {

// splitmix64: small deterministic PRNG used wherever reproducible pseudo-random
// draws are needed (seeded sampling must be bitwise reproducible across runs).
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // Uniform draw in [0, bound) without modulo bias for small bounds.
    std::uint64_t below(std::uint64_t bound) {
        // Rejection sampling on the top chunk.
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v;
        do { v = next(); } while (v >= limit);
        return v % bound;
    }
};

// FNV-1a 64-bit hash; used to derive short stable file names from certificates.
inline std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) { s[i] = digits[v & 0xf]; v >>= 4; }
    return s;
}

// Iterate over set bits of a mask (lowest first).
inline std::vector<int> mask_bits(std::uint32_t mask) {
    std::vector<int> out;
    while (mask) {
        int b = __builtin_ctz(mask);
        out.push_back(b);
        mask &= mask - 1;
    }
    return out;
}

} // namespace ht
