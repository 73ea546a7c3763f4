#pragma once

// Dense bit-packed vectors and matrices over GF(2).
//
// Bits are stored LSB-first in 64-bit words; bit i of a vector lives in word
// i / 64 at position i % 64. Padding bits past the logical length are always
// zero, so word-level popcounts and comparisons are exact.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sdq/simd/kernels.hpp"

namespace sdq {

using word_t = simd::word_t;

inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for(std::size_t bits) noexcept {
  return (bits + kWordBits - 1) / kWordBits;
}

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class BinVector {
 public:
  BinVector() = default;
  explicit BinVector(std::size_t len) : len_(len), words_(words_for(len), 0) {}

  // Parses a string of '0'/'1' characters; anything else is rejected.
  static BinVector from_string(std::string_view bits);
  static BinVector ones(std::size_t len);
  static BinVector from_support(std::size_t len, std::span<const std::size_t> support);

  std::size_t size() const noexcept { return len_; }
  bool empty() const noexcept { return len_ == 0; }

  bool get(std::size_t i) const noexcept { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  void set(std::size_t i, bool value = true) noexcept {
    const word_t mask = word_t{1} << (i % kWordBits);
    if (value)
      words_[i / kWordBits] |= mask;
    else
      words_[i / kWordBits] &= ~mask;
  }
  void flip(std::size_t i) noexcept { words_[i / kWordBits] ^= word_t{1} << (i % kWordBits); }

  std::size_t weight() const noexcept { return simd::popcount(words_.data(), words_.size()); }
  bool is_zero() const noexcept { return simd::is_zero(words_.data(), words_.size()); }
  // Index of the lowest set bit, or size() if zero.
  std::size_t first_set() const noexcept;

  BinVector& operator^=(const BinVector& other);
  friend BinVector operator^(BinVector a, const BinVector& b) { return a ^= b; }

  // GF(2) inner product.
  bool dot(const BinVector& other) const;

  std::vector<std::size_t> support() const;
  std::string to_string() const;

  std::span<word_t> words() noexcept { return words_; }
  std::span<const word_t> words() const noexcept { return words_; }

  friend bool operator==(const BinVector&, const BinVector&) = default;
  friend bool operator<(const BinVector& a, const BinVector& b) {
    return a.len_ != b.len_ ? a.len_ < b.len_ : a.words_ < b.words_;
  }

 private:
  std::size_t len_ = 0;
  std::vector<word_t> words_;
};

class BinMatrix {
 public:
  BinMatrix() = default;
  BinMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), stride_(words_for(cols)), data_(rows * stride_, 0) {}

  static BinMatrix identity(std::size_t n);
  static BinMatrix from_rows(std::span<const BinVector> rows, std::size_t cols);
  static BinMatrix from_strings(std::initializer_list<std::string_view> rows);
  static BinMatrix from_strings(std::span<const std::string> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t stride() const noexcept { return stride_; }

  bool get(std::size_t r, std::size_t c) const noexcept {
    return (data_[r * stride_ + c / kWordBits] >> (c % kWordBits)) & 1U;
  }
  void set(std::size_t r, std::size_t c, bool value = true) noexcept {
    const word_t mask = word_t{1} << (c % kWordBits);
    word_t& w = data_[r * stride_ + c / kWordBits];
    w = value ? (w | mask) : (w & ~mask);
  }
  void flip(std::size_t r, std::size_t c) noexcept {
    data_[r * stride_ + c / kWordBits] ^= word_t{1} << (c % kWordBits);
  }

  std::span<word_t> row_words(std::size_t r) noexcept { return {data_.data() + r * stride_, stride_}; }
  std::span<const word_t> row_words(std::size_t r) const noexcept {
    return {data_.data() + r * stride_, stride_};
  }

  BinVector row(std::size_t r) const;
  void set_row(std::size_t r, const BinVector& v);
  BinVector column(std::size_t c) const;
  std::size_t row_weight(std::size_t r) const noexcept {
    return simd::popcount(data_.data() + r * stride_, stride_);
  }
  std::vector<std::size_t> row_support(std::size_t r) const;

  // row[dst] ^= row[src]
  void add_row(std::size_t dst, std::size_t src) noexcept {
    simd::xor_into(data_.data() + dst * stride_, data_.data() + src * stride_, stride_);
  }
  void swap_rows(std::size_t a, std::size_t b) noexcept;

  BinMatrix transpose() const;
  bool is_zero() const noexcept { return simd::is_zero(data_.data(), data_.size()); }
  // m · v over GF(2).
  BinVector multiply(const BinVector& v) const;
  // Rows [first, first + count).
  BinMatrix slice_rows(std::size_t first, std::size_t count) const;

  BinMatrix& operator+=(const BinMatrix& other);
  friend BinMatrix operator+(BinMatrix a, const BinMatrix& b) { return a += b; }

  friend bool operator==(const BinMatrix&, const BinMatrix&) = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<word_t> data_;
};

BinMatrix matmul(const BinMatrix& a, const BinMatrix& b);
BinMatrix kron(const BinMatrix& a, const BinMatrix& b);
BinMatrix hstack(const BinMatrix& a, const BinMatrix& b);
BinMatrix vstack(const BinMatrix& a, const BinMatrix& b);

// Row echelon form. Pivots are chosen as the first row carrying a set bit in
// each column, scanning columns left to right, so the output is a pure
// function of the input.
struct Echelon {
  BinMatrix reduced;                // reduced row echelon form; rows >= rank are zero
  std::vector<std::size_t> pivots;  // pivot column of row i, for i < rank
  std::size_t rank() const noexcept { return pivots.size(); }
};

Echelon row_reduce(BinMatrix m);

std::size_t rank(const BinMatrix& m);

// Basis of {v : m v = 0}; one vector per free column, in column order.
std::vector<BinVector> nullspace_basis(const BinMatrix& m);

bool in_rowspace(const BinMatrix& m, const BinVector& v);

// Incrementally maintained span. Each stored vector has a distinct leading
// (lowest) set bit, which makes membership a single downward sweep.
class SpanBasis {
 public:
  explicit SpanBasis(std::size_t len) : len_(len) {}

  std::size_t size() const noexcept { return basis_.size(); }
  std::size_t length() const noexcept { return len_; }

  // Reduces v against the basis in place; returns true if it became zero.
  bool reduce(BinVector& v) const;
  bool contains(BinVector v) const { return reduce(v); }
  // Adds v if independent; returns whether it was added.
  bool insert(BinVector v);

 private:
  std::size_t len_;
  std::vector<BinVector> basis_;  // sorted by leading bit
  std::vector<std::size_t> leads_;
};

}  // namespace sdq
