#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace textadv {

// Deterministic replacements for the implementation-defined standard
// distributions. Attack runs promise byte-identical output for a fixed seed,
// so every random draw in the library must go through these.

// Unbiased enough at desk scale; n must be > 0.
inline std::uint64_t rand_index(std::mt19937_64& rng, std::uint64_t n) {
  return rng() % n;
}

// Uniform double in [0, 1).
inline double rand_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// splitmix64 finalizer; used to derive independent per-example streams from
// (run seed, example index) without correlated low bits.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Samples k distinct values from [0, n) in random order. k must be <= n.
std::vector<std::size_t> sample_without_replacement(std::mt19937_64& rng,
                                                    std::size_t n,
                                                    std::size_t k);

inline bool ascii_alpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}
inline bool ascii_digit(char c) { return c >= '0' && c <= '9'; }
inline bool ascii_upper(char c) { return c >= 'A' && c <= 'Z'; }
inline bool ascii_lower(char c) { return c >= 'a' && c <= 'z'; }
inline char to_lower_ascii(char c) {
  return ascii_upper(c) ? static_cast<char>(c - 'A' + 'a') : c;
}
inline char to_upper_ascii(char c) {
  return ascii_lower(c) ? static_cast<char>(c - 'a' + 'A') : c;
}

std::string lowercase(std::string_view s);
std::string uppercase(std::string_view s);

std::string trim(std::string_view s);

// Splits on a single character; keeps empty fields.
std::vector<std::string> split(std::string_view s, char sep);

// Decodes UTF-8 into codepoints. Invalid bytes are passed through one byte at
// a time rather than rejected; metrics must not throw on odd model output.
std::vector<char32_t> decode_utf8(std::string_view s);

// Inverse of decode_utf8: round-trips every codepoint sequence it produces.
std::string encode_utf8(const std::vector<char32_t>& codepoints);
void append_utf8(std::string& out, char32_t cp);

}  // namespace textadv
