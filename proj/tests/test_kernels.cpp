#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <vector>

#include "sdq/rng.hpp"
#include "sdq/simd/kernels.hpp"

using namespace sdq;
using simd::word_t;

namespace {

std::vector<word_t> random_words(Rng& rng, std::size_t n, double density = 0.5) {
  std::vector<word_t> v(n);
  for (auto& w : v) {
    if (density >= 0.5) {
      w = rng.next();
    } else {
      for (int b = 0; b < 64; ++b)
        if (rng.bernoulli(density)) w |= word_t{1} << b;
    }
  }
  return v;
}

}  // namespace

TEST_CASE("scalar kernels match bit-by-bit definitions") {
  const auto& s = simd::scalar_table();
  Rng rng(7);
  for (std::size_t n : {0, 1, 3, 4, 5, 17}) {
    auto a = random_words(rng, n);
    auto b = random_words(rng, n);
    std::size_t pop = 0, pop_x = 0, and_bits = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (int bit = 0; bit < 64; ++bit) {
        pop += (a[i] >> bit) & 1;
        pop_x += ((a[i] ^ b[i]) >> bit) & 1;
        and_bits += ((a[i] & b[i]) >> bit) & 1;
      }
    }
    CHECK(s.popcount(a.data(), n) == pop);
    CHECK(s.popcount_xor(a.data(), b.data(), n) == pop_x);
    CHECK(s.dot(a.data(), b.data(), n) == (and_bits % 2 == 1));
  }
}

TEST_CASE("AVX2 kernels are equivalent to the scalar reference") {
  const auto* v = simd::avx2_table();
  if (v == nullptr || !simd::cpu_has_avx2()) {
    MESSAGE("AVX2 kernels unavailable on this host; equivalence not exercised");
    return;
  }
  const auto& s = simd::scalar_table();
  Rng rng(2024);
  for (std::size_t n = 0; n <= 70; ++n) {
    for (double density : {0.5, 0.02, 0.0}) {
      for (std::size_t offset : {0, 1, 3}) {
        // Offsets exercise unaligned loads.
        auto a = random_words(rng, n + offset, density);
        auto b = random_words(rng, n + offset, density);
        const word_t* pa = a.data() + offset;
        const word_t* pb = b.data() + offset;
        CHECK(v->popcount(pa, n) == s.popcount(pa, n));
        CHECK(v->popcount_xor(pa, pb, n) == s.popcount_xor(pa, pb, n));
        CHECK(v->dot(pa, pb, n) == s.dot(pa, pb, n));
        CHECK(v->is_zero(pa, n) == s.is_zero(pa, n));

        std::vector<word_t> d1(a.begin() + offset, a.end()), d2 = d1;
        s.xor_into(d1.data(), pb, n);
        v->xor_into(d2.data(), pb, n);
        CHECK(d1 == d2);
        std::vector<word_t> t1(n), t2(n);
        s.xor_to(t1.data(), pa, pb, n);
        v->xor_to(t2.data(), pa, pb, n);
        CHECK(t1 == t2);
      }
    }
  }
}

TEST_CASE("is_zero detects a single set bit anywhere") {
  for (const simd::KernelTable* t : {&simd::scalar_table(), simd::avx2_table()}) {
    if (t == nullptr || (t->level == simd::Level::avx2 && !simd::cpu_has_avx2())) continue;
    for (std::size_t n = 1; n <= 20; ++n) {
      for (std::size_t pos = 0; pos < n * 64; pos += 7) {
        std::vector<word_t> a(n, 0);
        CHECK(t->is_zero(a.data(), n));
        a[pos / 64] |= word_t{1} << (pos % 64);
        CHECK_FALSE(t->is_zero(a.data(), n));
      }
    }
  }
}

TEST_CASE("dispatch can be forced and reports its level") {
  const simd::Level original = simd::active().level;
  CHECK(simd::force_level(simd::Level::scalar));
  CHECK(simd::active().level == simd::Level::scalar);
  CHECK(simd::level_name(simd::Level::scalar) == "scalar");
  if (simd::avx2_table() != nullptr && simd::cpu_has_avx2()) {
    CHECK(simd::force_level(simd::Level::avx2));
    CHECK(simd::active().level == simd::Level::avx2);
  }
  simd::force_level(original);
}

namespace {

std::vector<float> random_messages(Rng& rng, std::size_t n, bool ties) {
  std::vector<float> v(n);
  for (auto& x : v) {
    // Coarse values make equal magnitudes (ties for the minimum) common.
    x = ties ? static_cast<float>(static_cast<int>(rng.below(9)) - 4) * 0.5f
             : static_cast<float>(rng.uniform() * 20.0 - 10.0);
  }
  return v;
}

std::uint32_t sign_bit(float f) {
  std::uint32_t b;
  std::memcpy(&b, &f, sizeof b);
  return b >> 31;
}

}  // namespace

TEST_CASE("min-sum check kernel matches the leave-one-out definition") {
  const auto& s = simd::scalar_table();
  Rng rng(77);
  for (std::size_t n = 1; n <= 40; ++n) {
    for (bool ties : {false, true}) {
      for (bool flip : {false, true}) {
        const auto in = random_messages(rng, n, ties);
        std::vector<float> out(n);
        s.minsum_check(in.data(), out.data(), n, 0.75f, 30.0f, flip);
        for (std::size_t i = 0; i < n; ++i) {
          float m = 30.0f;
          std::uint32_t sign = flip;
          for (std::size_t k = 0; k < n; ++k) {
            if (k == i) continue;
            m = std::min(m, std::fabs(in[k]));
            sign ^= sign_bit(in[k]);
          }
          CAPTURE(n);
          CAPTURE(i);
          CHECK(std::fabs(out[i]) == m * 0.75f);
          CHECK(sign_bit(out[i]) == sign);
        }
      }
    }
  }
}

TEST_CASE("AVX2 min-sum kernel is bit-identical to the scalar reference") {
  const auto* v = simd::avx2_table();
  if (v == nullptr || !simd::cpu_has_avx2()) {
    MESSAGE("AVX2 kernels unavailable on this host; equivalence not exercised");
    return;
  }
  const auto& s = simd::scalar_table();
  Rng rng(78);
  for (std::size_t n = 1; n <= 100; ++n) {
    for (bool ties : {false, true}) {
      for (bool flip : {false, true}) {
        const auto in = random_messages(rng, n, ties);
        std::vector<float> a(n), b(n);
        s.minsum_check(in.data(), a.data(), n, 0.8f, 30.0f, flip);
        v->minsum_check(in.data(), b.data(), n, 0.8f, 30.0f, flip);
        CAPTURE(n);
        CHECK(std::memcmp(a.data(), b.data(), n * sizeof(float)) == 0);
      }
    }
  }
}
