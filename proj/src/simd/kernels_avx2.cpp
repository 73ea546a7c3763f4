#include "sdq/simd/kernels.hpp"

#if defined(__x86_64__) && defined(__AVX2__)

#include <immintrin.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>

namespace sdq::simd {
namespace {

// Nibble-lookup popcount (Mula et al.), summed per 64-bit lane with SAD.
inline __m256i popcnt_epi64(__m256i v) {
  const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,  //
                                       0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low_mask);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
  const __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
  return _mm256_sad_epu8(cnt, _mm256_setzero_si256());
}

inline std::size_t hsum_epi64(__m256i v) {
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
  return static_cast<std::size_t>(lanes[0] + lanes[1] + lanes[2] + lanes[3]);
}

inline __m256i load(const word_t* p) { return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p)); }
inline void store(word_t* p, __m256i v) { _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v); }

void xor_into_avx2(word_t* dst, const word_t* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    store(dst + i, _mm256_xor_si256(load(dst + i), load(src + i)));
    store(dst + i + 4, _mm256_xor_si256(load(dst + i + 4), load(src + i + 4)));
  }
  for (; i + 4 <= n; i += 4) store(dst + i, _mm256_xor_si256(load(dst + i), load(src + i)));
  for (; i < n; ++i) dst[i] ^= src[i];
}

void xor_to_avx2(word_t* dst, const word_t* a, const word_t* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) store(dst + i, _mm256_xor_si256(load(a + i), load(b + i)));
  for (; i < n; ++i) dst[i] = a[i] ^ b[i];
}

std::size_t popcount_avx2(const word_t* a, std::size_t n) {
  std::size_t i = 0;
  std::size_t c = 0;
  if (n >= 4) {
    __m256i acc = _mm256_setzero_si256();
    for (; i + 4 <= n; i += 4) acc = _mm256_add_epi64(acc, popcnt_epi64(load(a + i)));
    c = hsum_epi64(acc);
  }
  for (; i < n; ++i) c += static_cast<std::size_t>(std::popcount(a[i]));
  return c;
}

std::size_t popcount_xor_avx2(const word_t* a, const word_t* b, std::size_t n) {
  std::size_t i = 0;
  std::size_t c = 0;
  if (n >= 4) {
    __m256i acc = _mm256_setzero_si256();
    for (; i + 4 <= n; i += 4)
      acc = _mm256_add_epi64(acc, popcnt_epi64(_mm256_xor_si256(load(a + i), load(b + i))));
    c = hsum_epi64(acc);
  }
  for (; i < n; ++i) c += static_cast<std::size_t>(std::popcount(a[i] ^ b[i]));
  return c;
}

bool dot_avx2(const word_t* a, const word_t* b, std::size_t n) {
  std::size_t i = 0;
  word_t acc = 0;
  if (n >= 4) {
    __m256i v = _mm256_setzero_si256();
    for (; i + 4 <= n; i += 4) v = _mm256_xor_si256(v, _mm256_and_si256(load(a + i), load(b + i)));
    alignas(32) std::uint64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
    acc = lanes[0] ^ lanes[1] ^ lanes[2] ^ lanes[3];
  }
  for (; i < n; ++i) acc ^= a[i] & b[i];
  return (std::popcount(acc) & 1) != 0;
}

bool is_zero_avx2(const word_t* a, std::size_t n) {
  std::size_t i = 0;
  if (n >= 4) {
    __m256i v = _mm256_setzero_si256();
    for (; i + 4 <= n; i += 4) v = _mm256_or_si256(v, load(a + i));
    if (!_mm256_testz_si256(v, v)) return false;
  }
  word_t acc = 0;
  for (; i < n; ++i) acc |= a[i];
  return acc == 0;
}

void minsum_check_avx2(const float* in, float* out, std::size_t n, float scale, float cap, bool flip) {
  const __m256 abs_mask = _mm256_castsi256_ps(_mm256_set1_epi32(0x7fffffff));
  const __m256i sign_mask = _mm256_set1_epi32(static_cast<int>(0x80000000U));
  __m256 m1v = _mm256_set1_ps(cap), m2v = m1v;
  __m256i signv = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256 v = _mm256_loadu_ps(in + i);
    const __m256 a = _mm256_and_ps(v, abs_mask);
    m2v = _mm256_min_ps(m2v, _mm256_max_ps(m1v, a));
    m1v = _mm256_min_ps(m1v, a);
    signv = _mm256_xor_si256(signv, _mm256_castps_si256(v));
  }
  // Fold the lanes (the two smallest of a multiset do not depend on order).
  alignas(32) float l1[8], l2[8];
  alignas(32) std::uint32_t ls[8];
  _mm256_store_ps(l1, m1v);
  _mm256_store_ps(l2, m2v);
  _mm256_store_si256(reinterpret_cast<__m256i*>(ls), signv);
  float m1 = cap, m2 = cap;
  std::uint32_t signs = flip ? 0x80000000U : 0U;
  auto insert = [&](float a) {
    m2 = std::min(m2, std::max(m1, a));
    m1 = std::min(m1, a);
  };
  for (int k = 0; k < 8; ++k) {
    insert(l1[k]);
    insert(l2[k]);
    signs ^= ls[k];
  }
  for (std::size_t t = i; t < n; ++t) {
    insert(std::fabs(in[t]));
    std::uint32_t b;
    std::memcpy(&b, in + t, sizeof b);
    signs ^= b;
  }
  signs &= 0x80000000U;

  std::size_t arg = 0;
  const __m256 m1b = _mm256_set1_ps(m1);
  for (; arg + 8 <= n; arg += 8) {
    const __m256 a = _mm256_and_ps(_mm256_loadu_ps(in + arg), abs_mask);
    const int hit = _mm256_movemask_ps(_mm256_cmp_ps(a, m1b, _CMP_EQ_OQ));
    if (hit) {
      arg += static_cast<std::size_t>(std::countr_zero(static_cast<unsigned>(hit)));
      break;
    }
  }
  while (arg < n && std::fabs(in[arg]) != m1) ++arg;

  const float mag1 = m1 * scale, mag2 = m2 * scale;
  const __m256i magv = _mm256_castps_si256(_mm256_set1_ps(mag1));
  const __m256i basev = _mm256_set1_epi32(static_cast<int>(signs));
  for (i = 0; i + 8 <= n; i += 8) {
    const __m256i v = _mm256_castps_si256(_mm256_loadu_ps(in + i));
    const __m256i sign = _mm256_and_si256(_mm256_xor_si256(v, basev), sign_mask);
    _mm256_storeu_ps(out + i, _mm256_castsi256_ps(_mm256_or_si256(sign, magv)));
  }
  std::uint32_t mag1_bits, mag2_bits;
  std::memcpy(&mag1_bits, &mag1, sizeof mag1_bits);
  std::memcpy(&mag2_bits, &mag2, sizeof mag2_bits);
  for (; i < n; ++i) {
    std::uint32_t b;
    std::memcpy(&b, in + i, sizeof b);
    const std::uint32_t o = ((b ^ signs) & 0x80000000U) | mag1_bits;
    std::memcpy(out + i, &o, sizeof o);
  }
  if (arg < n) {
    std::uint32_t b;
    std::memcpy(&b, in + arg, sizeof b);
    const std::uint32_t o = ((b ^ signs) & 0x80000000U) | mag2_bits;
    std::memcpy(out + arg, &o, sizeof o);
  }
}

constexpr KernelTable kAvx2{Level::avx2,      xor_into_avx2, xor_to_avx2, popcount_avx2,
                            popcount_xor_avx2, dot_avx2,      is_zero_avx2, minsum_check_avx2};

}  // namespace

const KernelTable* avx2_table() noexcept { return &kAvx2; }

}  // namespace sdq::simd

#else

namespace sdq::simd {
const KernelTable* avx2_table() noexcept { return nullptr; }
}  // namespace sdq::simd

#endif
