#include "sdq/distance.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "sdq/parallel.hpp"
#include "sdq/rng.hpp"

namespace sdq {

std::string_view status_name(DistanceStatus s) noexcept {
  switch (s) {
    case DistanceStatus::found: return "found";
    case DistanceStatus::not_found_below: return "not_found_below";
    case DistanceStatus::budget_exceeded: return "budget_exceeded";
  }
  return "?";
}

namespace {

// Row-major bit matrix in one flat buffer; rows are swapped and combined in
// place during elimination.
struct Flat {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t stride = 0;
  std::vector<word_t> data;

  Flat() = default;
  Flat(std::size_t r, std::size_t c) : rows(r), cols(c), stride(words_for(c)), data(r * stride, 0) {}

  word_t* row(std::size_t r) noexcept { return data.data() + r * stride; }
  const word_t* row(std::size_t r) const noexcept { return data.data() + r * stride; }
  bool get(std::size_t r, std::size_t c) const noexcept { return (row(r)[c / 64] >> (c % 64)) & 1U; }
  void set(std::size_t r, std::size_t c) noexcept { row(r)[c / 64] |= word_t{1} << (c % 64); }
  void swap_rows(std::size_t a, std::size_t b) noexcept {
    if (a != b) std::swap_ranges(row(a), row(a) + stride, row(b));
  }
};

Flat to_flat(const std::vector<BinVector>& vs, std::size_t cols) {
  Flat f(vs.size(), cols);
  for (std::size_t r = 0; r < vs.size(); ++r) std::ranges::copy(vs[r].words(), f.row(r));
  return f;
}

// Reduced echelon form taking pivot columns from `order` in sequence. Pivot
// rows end up in positions [0, rank) and are zero on every other pivot column.
std::size_t reduce_on_columns(Flat& m, std::span<const std::uint32_t> order, std::vector<std::uint32_t>* pivots) {
  std::size_t rank = 0;
  for (std::uint32_t c : order) {
    if (rank == m.rows) break;
    std::size_t p = rank;
    while (p < m.rows && !m.get(p, c)) ++p;
    if (p == m.rows) continue;
    m.swap_rows(rank, p);
    const word_t* prow = m.row(rank);
    for (std::size_t i = 0; i < m.rows; ++i)
      if (i != rank && m.get(i, c)) simd::xor_into(m.row(i), prow, m.stride);
    if (pivots) pivots->push_back(c);
    ++rank;
  }
  return rank;
}

// Kernel basis of `check` and representatives of ker(stab) / rowspace(check).
// A kernel vector c lies in rowspace(stab) iff it is orthogonal to every such
// representative, which makes the nontriviality test a few dot products.
struct Problem {
  std::size_t n = 0;
  Flat kernel;
  Flat dual;

  bool nontrivial(const word_t* c) const noexcept {
    for (std::size_t j = 0; j < dual.rows; ++j)
      if (simd::dot(c, dual.row(j), dual.stride)) return true;
    return false;
  }
};

Problem make_problem(const BinMatrix& check, const BinMatrix& stab) {
  Problem p;
  p.n = check.cols();
  p.kernel = to_flat(nullspace_basis(check), p.n);
  SpanBasis span(p.n);
  for (std::size_t r = 0; r < check.rows(); ++r) span.insert(check.row(r));
  std::vector<BinVector> reps;
  for (auto& v : nullspace_basis(stab))
    if (span.insert(v)) reps.push_back(std::move(v));
  p.dual = to_flat(reps, p.n);
  return p;
}

Problem problem_for(const StackedCode& code, LogicalType type) {
  return type == LogicalType::z ? make_problem(code.h_x(), code.h_z()) : make_problem(code.h_z(), code.h_x());
}

BinVector to_vector(const word_t* w, std::size_t n) {
  BinVector v(n);
  std::copy_n(w, v.words().size(), v.words().data());
  return v;
}

void seed_from_witness(const StackedCode& code, const std::optional<BinVector>& witness, DistanceResult& r) {
  if (!witness) return;
  if (!is_nontrivial_logical(code, *witness)) throw std::invalid_argument("initial witness is not a nontrivial logical");
  r.witness = *witness;
  r.d_upper = static_cast<std::uint32_t>(witness->weight());
}

// ------------------------------------------------------------ exact search

struct InfoSetMatrix {
  Flat g;
  std::size_t rank = 0;
};

std::vector<InfoSetMatrix> disjoint_information_sets(const Flat& kernel) {
  std::vector<InfoSetMatrix> out;
  std::vector<bool> used(kernel.cols, false);
  for (;;) {
    std::vector<std::uint32_t> order;
    for (std::uint32_t c = 0; c < kernel.cols; ++c)
      if (!used[c]) order.push_back(c);
    if (order.empty()) break;
    InfoSetMatrix m{kernel, 0};
    std::vector<std::uint32_t> pivots;
    m.rank = reduce_on_columns(m.g, order, &pivots);
    if (m.rank == 0) break;
    for (auto c : pivots) used[c] = true;
    out.push_back(std::move(m));
  }
  return out;
}

// Enumerates all XORs of exactly w rows of g. `visit(weight, words)` is called
// for sums lighter than `*bound`; returns false once the budget runs out.
template <typename Visit>
bool enumerate_layer(const Flat& g, std::size_t w, std::uint64_t& count, std::uint64_t budget,
                     const std::uint32_t& bound, Visit&& visit) {
  const std::size_t rows = g.rows;
  if (w == 0 || w > rows) return true;
  const std::size_t stride = g.stride;
  std::vector<word_t> partial((w + 1) * stride, 0);
  std::vector<std::size_t> idx(w);
  // Depth-first over strictly increasing index tuples with running sums.
  std::size_t depth = 0;
  idx[0] = 0;
  for (;;) {
    if (idx[depth] > rows - (w - depth)) {
      if (depth == 0) return true;
      --depth;
      ++idx[depth];
      continue;
    }
    word_t* base = partial.data() + depth * stride;
    const word_t* r = g.row(idx[depth]);
    if (depth + 1 == w) {
      const std::size_t last = rows;
      for (std::size_t i = idx[depth]; i < last; ++i) {
        const word_t* ri = g.row(i);
        const auto weight = static_cast<std::uint32_t>(simd::popcount_xor(base, ri, stride));
        if (weight < bound) {
          word_t* leaf = partial.data() + w * stride;
          simd::xor_to(leaf, base, ri, stride);
          visit(weight, leaf);
        }
      }
      count += rows - idx[depth];
      if (count > budget) return false;
      if (depth == 0) return true;
      --depth;
      ++idx[depth];
      continue;
    }
    simd::xor_to(partial.data() + (depth + 1) * stride, base, r, stride);
    idx[depth + 1] = idx[depth] + 1;
    ++depth;
  }
}

}  // namespace

DistanceResult distance_exact(const StackedCode& code, const ExactOptions& options, LogicalType type) {
  const Problem prob = problem_for(code, type);
  DistanceResult result;
  result.exact = false;
  seed_from_witness(code, options.initial_witness, result);
  if (prob.dual.rows == 0) {
    // No logical qubits: nothing to find at any weight.
    result.status = DistanceStatus::not_found_below;
    result.lower_bound = static_cast<std::uint32_t>(prob.n + 1);
    return result;
  }

  const std::size_t K = prob.kernel.rows;
  const auto sets = disjoint_information_sets(prob.kernel);
  std::uint32_t best = result.has_witness() ? result.d_upper : std::numeric_limits<std::uint32_t>::max();
  auto layer_bound = [&](std::size_t w) {
    std::size_t lb = 0;
    for (const auto& s : sets)
      if (w + 1 > K - s.rank) lb += w + 1 - (K - s.rank);
    return static_cast<std::uint32_t>(lb);
  };

  std::uint64_t count = 0;
  for (std::size_t w = 1; w <= K; ++w) {
    for (const auto& s : sets) {
      if (w + 1 <= K - s.rank) continue;  // contributes nothing to the bound at this layer
      const bool finished = enumerate_layer(s.g, w, count, options.budget, best, [&](std::uint32_t weight, const word_t* c) {
        if (weight < best && prob.nontrivial(c)) {
          best = weight;
          result.witness = to_vector(c, prob.n);
          result.d_upper = weight;
        }
      });
      if (!finished) {
        result.status = DistanceStatus::budget_exceeded;
        result.effort = count;
        result.lower_bound = std::max<std::uint32_t>(1, layer_bound(w - 1));
        return result;
      }
    }
    result.effort = count;
    const std::uint32_t lb = layer_bound(w);
    result.lower_bound = std::max<std::uint32_t>(1, lb);
    if (result.has_witness() && best <= lb) {
      result.exact = true;
      result.lower_bound = best;
      result.status = options.w_max != 0 && best > options.w_max ? DistanceStatus::not_found_below
                                                                 : DistanceStatus::found;
      return result;
    }
    if (options.w_max != 0 && lb > options.w_max && (!result.has_witness() || best > options.w_max)) {
      // Any witness kept here is heavier than w_max and only an upper bound.
      result.status = DistanceStatus::not_found_below;
      return result;
    }
  }
  // Every codeword has been enumerated.
  result.exact = result.has_witness();
  if (result.exact) result.lower_bound = result.d_upper;
  result.status = result.exact ? DistanceStatus::found : DistanceStatus::not_found_below;
  return result;
}

// ------------------------------------------------------------ randomized search

namespace {

struct BatchBest {
  std::uint32_t weight = std::numeric_limits<std::uint32_t>::max();
  std::uint64_t iteration = 0;
  BinVector witness;
};

}  // namespace

DistanceResult distance_randomized(const StackedCode& code, const RandomizedOptions& options, LogicalType type) {
  const Problem prob = problem_for(code, type);
  DistanceResult result;
  seed_from_witness(code, options.initial_witness, result);
  result.effort = options.iterations;
  if (prob.dual.rows == 0 || options.iterations == 0) {
    result.status = result.has_witness() ? DistanceStatus::found : DistanceStatus::not_found_below;
    return result;
  }

  const std::size_t n = prob.n;
  const std::uint64_t batch = std::max<std::uint64_t>(1, options.batch);
  const std::uint64_t batches = (options.iterations + batch - 1) / batch;
  std::vector<BatchBest> bests(batches);
  const std::size_t threads = options.threads ? options.threads : default_threads();

  parallel_for(batches, threads, [&](std::size_t b) {
    Rng rng(options.seed, "distance-randomized", b);
    std::vector<std::uint32_t> perm(n), order(n);
    std::iota(order.begin(), order.end(), 0U);
    Flat m(prob.kernel.rows, n);
    BatchBest& best = bests[b];
    std::vector<word_t> unpermuted(words_for(n));
    const std::uint64_t first = b * batch;
    const std::uint64_t last = std::min(options.iterations, first + batch);
    for (std::uint64_t it = first; it < last; ++it) {
      std::iota(perm.begin(), perm.end(), 0U);
      rng.shuffle(std::span(perm));
      // Column c of the kernel moves to position pos[c] = inverse permutation.
      std::fill(m.data.begin(), m.data.end(), 0);
      for (std::size_t r = 0; r < prob.kernel.rows; ++r) {
        const word_t* src = prob.kernel.row(r);
        for (std::size_t p = 0; p < n; ++p)
          if ((src[perm[p] / 64] >> (perm[p] % 64)) & 1U) m.set(r, p);
      }
      reduce_on_columns(m, order, nullptr);
      for (std::size_t r = 0; r < m.rows; ++r) {
        const auto weight = static_cast<std::uint32_t>(simd::popcount(m.row(r), m.stride));
        if (weight == 0 || weight >= best.weight) continue;
        std::fill(unpermuted.begin(), unpermuted.end(), 0);
        const word_t* row = m.row(r);
        for (std::size_t p = 0; p < n; ++p)
          if ((row[p / 64] >> (p % 64)) & 1U) unpermuted[perm[p] / 64] |= word_t{1} << (perm[p] % 64);
        if (!prob.nontrivial(unpermuted.data())) continue;
        best.weight = weight;
        best.iteration = it;
        best.witness = to_vector(unpermuted.data(), n);
      }
    }
  });

  // Min-reduction; ties go to the earliest iteration, so the result does not
  // depend on how batches were scheduled.
  for (const auto& b : bests) {
    if (b.witness.empty()) continue;
    if (!result.has_witness() || b.weight < result.d_upper) {
      result.d_upper = b.weight;
      result.witness = b.witness;
    }
  }
  result.status = result.has_witness() ? DistanceStatus::found : DistanceStatus::not_found_below;
  result.lower_bound = 1;
  return result;
}

// ------------------------------------------------------------ checks

bool is_nontrivial_logical(const StackedCode& code, const BinVector& v) {
  if (v.size() != code.n) return false;
  if (!code.H.multiply(v).is_zero()) return false;
  return !in_rowspace(code.H, v);
}

bool witness_valid(const StackedCode& code, const DistanceResult& r) {
  if (!r.has_witness()) return true;
  return r.witness.weight() == r.d_upper && is_nontrivial_logical(code, r.witness);
}

}  // namespace sdq
