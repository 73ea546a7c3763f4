#include "sdq/gf2.hpp"

#include <algorithm>
#include <bit>

namespace sdq {

// ---------------------------------------------------------------- BinVector

BinVector BinVector::from_string(std::string_view bits) {
  BinVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1')
      v.set(i);
    else if (bits[i] != '0')
      throw std::invalid_argument("bit string may only contain '0' and '1'");
  }
  return v;
}

BinVector BinVector::ones(std::size_t len) {
  BinVector v(len);
  for (std::size_t i = 0; i < len; ++i) v.set(i);
  return v;
}

BinVector BinVector::from_support(std::size_t len, std::span<const std::size_t> support) {
  BinVector v(len);
  for (std::size_t i : support) {
    if (i >= len) throw DimensionError("support index out of range");
    v.flip(i);
  }
  return v;
}

std::size_t BinVector::first_set() const noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] != 0) return w * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[w]));
  }
  return len_;
}

BinVector& BinVector::operator^=(const BinVector& other) {
  if (other.len_ != len_) throw DimensionError("vector length mismatch");
  simd::xor_into(words_.data(), other.words_.data(), words_.size());
  return *this;
}

bool BinVector::dot(const BinVector& other) const {
  if (other.len_ != len_) throw DimensionError("vector length mismatch");
  return simd::dot(words_.data(), other.words_.data(), words_.size());
}

std::vector<std::size_t> BinVector::support() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    word_t bits = words_[w];
    while (bits != 0) {
      out.push_back(w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

std::string BinVector::to_string() const {
  std::string s(len_, '0');
  for (std::size_t i = 0; i < len_; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

// ---------------------------------------------------------------- BinMatrix

BinMatrix BinMatrix::identity(std::size_t n) {
  BinMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

BinMatrix BinMatrix::from_rows(std::span<const BinVector> rows, std::size_t cols) {
  BinMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
  return m;
}

BinMatrix BinMatrix::from_strings(std::initializer_list<std::string_view> rows) {
  std::vector<std::string> copy(rows.begin(), rows.end());
  return from_strings(copy);
}

BinMatrix BinMatrix::from_strings(std::span<const std::string> rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  BinMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DimensionError("ragged matrix rows");
    m.set_row(r, BinVector::from_string(rows[r]));
  }
  return m;
}

BinVector BinMatrix::row(std::size_t r) const {
  BinVector v(cols_);
  std::copy_n(data_.data() + r * stride_, stride_, v.words().data());
  return v;
}

void BinMatrix::set_row(std::size_t r, const BinVector& v) {
  if (v.size() != cols_) throw DimensionError("row length mismatch");
  std::copy_n(v.words().data(), stride_, data_.data() + r * stride_);
}

BinVector BinMatrix::column(std::size_t c) const {
  BinVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    if (get(r, c)) v.set(r);
  return v;
}

std::vector<std::size_t> BinMatrix::row_support(std::size_t r) const {
  std::vector<std::size_t> out;
  const word_t* w = data_.data() + r * stride_;
  for (std::size_t i = 0; i < stride_; ++i) {
    word_t bits = w[i];
    while (bits != 0) {
      out.push_back(i * kWordBits + static_cast<std::size_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

void BinMatrix::swap_rows(std::size_t a, std::size_t b) noexcept {
  if (a == b) return;
  std::swap_ranges(data_.begin() + static_cast<std::ptrdiff_t>(a * stride_),
                   data_.begin() + static_cast<std::ptrdiff_t>((a + 1) * stride_),
                   data_.begin() + static_cast<std::ptrdiff_t>(b * stride_));
}

BinMatrix BinMatrix::transpose() const {
  BinMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    const word_t* w = data_.data() + r * stride_;
    for (std::size_t i = 0; i < stride_; ++i) {
      word_t bits = w[i];
      while (bits != 0) {
        t.set(i * kWordBits + static_cast<std::size_t>(std::countr_zero(bits)), r);
        bits &= bits - 1;
      }
    }
  }
  return t;
}

BinVector BinMatrix::multiply(const BinVector& v) const {
  if (v.size() != cols_) throw DimensionError("matrix-vector dimension mismatch");
  BinVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    if (simd::dot(data_.data() + r * stride_, v.words().data(), stride_)) out.set(r);
  return out;
}

BinMatrix BinMatrix::slice_rows(std::size_t first, std::size_t count) const {
  if (first + count > rows_) throw DimensionError("row slice out of range");
  BinMatrix out(count, cols_);
  std::copy_n(data_.data() + first * stride_, count * stride_, out.data_.data());
  return out;
}

BinMatrix& BinMatrix::operator+=(const BinMatrix& other) {
  if (other.rows_ != rows_ || other.cols_ != cols_) throw DimensionError("matrix sum dimension mismatch");
  simd::xor_into(data_.data(), other.data_.data(), data_.size());
  return *this;
}

std::string BinMatrix::to_string() const {
  std::string s;
  s.reserve(rows_ * (cols_ + 1));
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) s.push_back(get(r, c) ? '1' : '0');
    s.push_back('\n');
  }
  return s;
}

// ---------------------------------------------------------------- products

BinMatrix matmul(const BinMatrix& a, const BinMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matmul: a.cols != b.rows");
  BinMatrix c(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto dst = c.row_words(r);
    for (std::size_t k : a.row_support(r)) simd::xor_into(dst.data(), b.row_words(k).data(), dst.size());
  }
  return c;
}

BinMatrix kron(const BinMatrix& a, const BinMatrix& b) {
  BinMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar) {
    for (std::size_t ac : a.row_support(ar)) {
      for (std::size_t br = 0; br < b.rows(); ++br) {
        for (std::size_t bc : b.row_support(br)) out.set(ar * b.rows() + br, ac * b.cols() + bc);
      }
    }
  }
  return out;
}

BinMatrix hstack(const BinMatrix& a, const BinMatrix& b) {
  if (a.rows() != b.rows()) throw DimensionError("hstack: row count mismatch");
  BinMatrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c : a.row_support(r)) out.set(r, c);
    for (std::size_t c : b.row_support(r)) out.set(r, a.cols() + c);
  }
  return out;
}

BinMatrix vstack(const BinMatrix& a, const BinMatrix& b) {
  if (a.cols() != b.cols()) throw DimensionError("vstack: column count mismatch");
  BinMatrix out(a.rows() + b.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) std::ranges::copy(a.row_words(r), out.row_words(r).begin());
  for (std::size_t r = 0; r < b.rows(); ++r)
    std::ranges::copy(b.row_words(r), out.row_words(a.rows() + r).begin());
  return out;
}

// ---------------------------------------------------------------- elimination

Echelon row_reduce(BinMatrix m) {
  Echelon e;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t pivot = r;
    while (pivot < m.rows() && !m.get(pivot, c)) ++pivot;
    if (pivot == m.rows()) continue;
    m.swap_rows(r, pivot);
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (i != r && m.get(i, c)) m.add_row(i, r);
    e.pivots.push_back(c);
    ++r;
  }
  e.reduced = std::move(m);
  return e;
}

std::size_t rank(const BinMatrix& m) {
  // Forward elimination only; cheaper than the full reduced form.
  BinMatrix w = m;
  std::size_t r = 0;
  for (std::size_t c = 0; c < w.cols() && r < w.rows(); ++c) {
    std::size_t pivot = r;
    while (pivot < w.rows() && !w.get(pivot, c)) ++pivot;
    if (pivot == w.rows()) continue;
    w.swap_rows(r, pivot);
    for (std::size_t i = r + 1; i < w.rows(); ++i)
      if (w.get(i, c)) w.add_row(i, r);
    ++r;
  }
  return r;
}

std::vector<BinVector> nullspace_basis(const BinMatrix& m) {
  const Echelon e = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : e.pivots) is_pivot[c] = true;

  std::vector<BinVector> basis;
  basis.reserve(m.cols() - e.rank());
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    BinVector v(m.cols());
    v.set(f);
    for (std::size_t r = 0; r < e.rank(); ++r)
      if (e.reduced.get(r, f)) v.set(e.pivots[r]);
    basis.push_back(std::move(v));
  }
  return basis;
}

bool in_rowspace(const BinMatrix& m, const BinVector& v) {
  if (v.size() != m.cols()) throw DimensionError("in_rowspace: length mismatch");
  const Echelon e = row_reduce(m);
  BinVector w = v;
  for (std::size_t r = 0; r < e.rank(); ++r) {
    if (w.get(e.pivots[r]))
      simd::xor_into(w.words().data(), e.reduced.row_words(r).data(), e.reduced.stride());
  }
  return w.is_zero();
}

// ---------------------------------------------------------------- SpanBasis

bool SpanBasis::reduce(BinVector& v) const {
  if (v.size() != len_) throw DimensionError("SpanBasis: length mismatch");
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (v.get(leads_[i])) v ^= basis_[i];
  return v.is_zero();
}

bool SpanBasis::insert(BinVector v) {
  if (reduce(v)) return false;
  const std::size_t lead = v.first_set();
  const auto pos = std::ranges::lower_bound(leads_, lead) - leads_.begin();
  leads_.insert(leads_.begin() + pos, lead);
  basis_.insert(basis_.begin() + pos, std::move(v));
  return true;
}

}  // namespace sdq
