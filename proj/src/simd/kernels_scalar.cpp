#include "sdq/simd/kernels.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>

namespace sdq::simd {
namespace {

void xor_into_ref(word_t* dst, const word_t* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] ^= src[i];
}

void xor_to_ref(word_t* dst, const word_t* a, const word_t* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] ^ b[i];
}

std::size_t popcount_ref(const word_t* a, std::size_t n) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; ++i) c += static_cast<std::size_t>(std::popcount(a[i]));
  return c;
}

std::size_t popcount_xor_ref(const word_t* a, const word_t* b, std::size_t n) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; ++i) c += static_cast<std::size_t>(std::popcount(a[i] ^ b[i]));
  return c;
}

bool dot_ref(const word_t* a, const word_t* b, std::size_t n) {
  word_t acc = 0;
  for (std::size_t i = 0; i < n; ++i) acc ^= a[i] & b[i];
  return (std::popcount(acc) & 1) != 0;
}

bool is_zero_ref(const word_t* a, std::size_t n) {
  word_t acc = 0;
  for (std::size_t i = 0; i < n; ++i) acc |= a[i];
  return acc == 0;
}

std::uint32_t bits_of(float f) noexcept {
  std::uint32_t b;
  std::memcpy(&b, &f, sizeof b);
  return b;
}

float from_bits(std::uint32_t b) noexcept {
  float f;
  std::memcpy(&f, &b, sizeof f);
  return f;
}

void minsum_check_ref(const float* in, float* out, std::size_t n, float scale, float cap, bool flip) {
  float m1 = cap, m2 = cap;
  std::uint32_t signs = flip ? 0x80000000U : 0U;
  for (std::size_t i = 0; i < n; ++i) {
    const float a = std::fabs(in[i]);
    m2 = std::min(m2, std::max(m1, a));
    m1 = std::min(m1, a);
    signs ^= bits_of(in[i]) & 0x80000000U;
  }
  std::size_t arg = 0;
  while (arg < n && std::fabs(in[arg]) != m1) ++arg;
  const std::uint32_t mag1 = bits_of(m1 * scale), mag2 = bits_of(m2 * scale);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t sign = (signs ^ bits_of(in[i])) & 0x80000000U;
    out[i] = from_bits(sign | (i == arg ? mag2 : mag1));
  }
}

constexpr KernelTable kScalar{Level::scalar, xor_into_ref, xor_to_ref,   popcount_ref,    popcount_xor_ref,
                              dot_ref,       is_zero_ref,  minsum_check_ref};

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

}  // namespace sdq::simd
