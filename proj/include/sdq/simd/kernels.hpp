#pragma once

// Word-level GF(2) kernels, plus the min-sum check-node update used by the
// decoder.
//
// Every routine here has a portable scalar reference implementation and, on
// x86-64, an AVX2 variant. The variant is picked once at startup from CPUID;
// SDQ_SIMD=scalar in the environment forces the reference path.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace sdq::simd {

using word_t = std::uint64_t;

enum class Level { scalar, avx2 };

struct KernelTable {
  Level level;
  // dst[i] ^= src[i]
  void (*xor_into)(word_t* dst, const word_t* src, std::size_t n);
  // dst[i] = a[i] ^ b[i]
  void (*xor_to)(word_t* dst, const word_t* a, const word_t* b, std::size_t n);
  std::size_t (*popcount)(const word_t* a, std::size_t n);
  // popcount(a ^ b) without materialising the sum
  std::size_t (*popcount_xor)(const word_t* a, const word_t* b, std::size_t n);
  // parity of popcount(a & b): the GF(2) inner product
  bool (*dot)(const word_t* a, const word_t* b, std::size_t n);
  bool (*is_zero)(const word_t* a, std::size_t n);
  // Min-sum check-node update over n >= 1 incoming messages. With m1 <= m2
  // the two smallest |in| (each capped at `cap`) and j the first index with
  // |in[j]| == m1: |out[i]| = scale * (i == j ? m2 : m1), and the sign of
  // out[i] is the XOR of `flip` and the sign bits of every in[k], k != i.
  // Results are bit-identical across implementations.
  void (*minsum_check)(const float* in, float* out, std::size_t n, float scale, float cap, bool flip);
};

const KernelTable& scalar_table() noexcept;
// Null when the translation unit was built without AVX2 support.
const KernelTable* avx2_table() noexcept;

bool cpu_has_avx2() noexcept;

// The table selected for this process.
const KernelTable& active() noexcept;

// Test hook: force a level (returns false if unavailable on this CPU).
bool force_level(Level level) noexcept;

std::string_view level_name(Level level) noexcept;

inline void xor_into(word_t* dst, const word_t* src, std::size_t n) {
  active().xor_into(dst, src, n);
}
inline void xor_to(word_t* dst, const word_t* a, const word_t* b, std::size_t n) {
  active().xor_to(dst, a, b, n);
}
inline std::size_t popcount(const word_t* a, std::size_t n) { return active().popcount(a, n); }
inline std::size_t popcount_xor(const word_t* a, const word_t* b, std::size_t n) {
  return active().popcount_xor(a, b, n);
}
inline bool dot(const word_t* a, const word_t* b, std::size_t n) { return active().dot(a, b, n); }
inline bool is_zero(const word_t* a, std::size_t n) { return active().is_zero(a, n); }
inline void minsum_check(const float* in, float* out, std::size_t n, float scale, float cap, bool flip) {
  active().minsum_check(in, out, n, scale, cap, flip);
}

}  // namespace sdq::simd
