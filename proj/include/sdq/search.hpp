#pragma once

// Search over base-code polynomials, ranked by the figure of merit k d^2 / n.
//
// Candidate index space. For every lattice (l, m, gamma) admitted by the
// ranges and the family, the candidates are all pairs (A, B) of term sets of
// the configured sizes drawn from the lattice's monomials (translations; for
// the reflection family also the p / q variants, p only when l >= 3 and q only
// when m >= 3 since smaller reflections coincide with translations). Pairs are
// ranked A-major using the combinatorial number system, and lattices are
// concatenated in (l, m, gamma) order. With `shuffle` the stream visits this
// index space in a seeded affine order (i -> a i + c mod total), so a budget
// samples distinct candidates uniformly without repeats.
//
// Symmetry reduction (translation families only). Two pairs are identified
// when one maps to the other under
//   (A, B) -> (w A, w^-1 B)       for any translation w,
//   x -> x^-1, y -> y^-1           on periodic lattices (independently),
//   (x, y) -> (x^-1, y^-1)         on twisted lattices (the only inversion
//                                  compatible with x^l = y^gamma).
// Each of these maps the stacked code to an equivalent one (a row and column
// permutation of H). A pair is emitted only if it is the lexicographically
// smallest (sorted A terms, then sorted B terms) member of its orbit.
// Reflection candidates are not reduced; they are instead pre-filtered
// through the base-code validity check.

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sdq/codes.hpp"
#include "sdq/distance.hpp"

namespace sdq {

struct Range {
  std::uint32_t lo = 1;
  std::uint32_t hi = 0;  // inclusive; lo > hi is the empty range

  bool empty() const noexcept { return lo > hi; }
  friend bool operator==(const Range&, const Range&) = default;
};

enum class ParityFilter { any, odd_only, even_only };

std::string_view parity_filter_name(ParityFilter f) noexcept;
ParityFilter parse_parity_filter(std::string_view name);  // throws SpecError

struct SearchSpace {
  Family family = Family::bb;
  Range l{1, 0};
  Range m{1, 1};
  Range gamma{0, 0};
  std::uint32_t terms_a = 2;
  std::uint32_t terms_b = 2;
  ParityFilter parity = ParityFilter::any;
  std::uint64_t budget = 1000;  // candidates evaluated (after symmetry reduction)
  std::uint64_t seed = 0;
  bool shuffle = true;
  bool symmetry_reduce = true;
  // Reflection pre-filter: false checks U U^T = U^T U (what stacking needs),
  // true additionally demands the three base commutators.
  bool strict_reflection = false;
  // Pin A and/or B to a fixed polynomial (text form, parsed per lattice).
  std::optional<std::string> fixed_a;
  std::optional<std::string> fixed_b;

  void validate() const;  // throws SpecError
};

struct DistanceBudget {
  std::uint64_t quick_iterations = 40;   // cheap upper bound used for pruning
  std::uint64_t iterations = 2000;       // randomized search for survivors
  std::size_t exact_max_n = 40;          // exact enumeration at or below this n
  std::uint64_t exact_budget = 200'000'000;
  std::size_t threads = 0;
};

// k d^2 / n, kept in lowest terms.
struct Merit {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  static Merit of(std::size_t n, std::size_t k, std::uint32_t d);
  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  // Rounded half-up to one decimal, e.g. "10.3".
  std::string rounded() const;

  friend bool operator==(const Merit& a, const Merit& b) noexcept { return a.num == b.num && a.den == b.den; }
  friend std::strong_ordering operator<=>(const Merit& a, const Merit& b) noexcept {
    return static_cast<unsigned __int128>(a.num) * b.den <=> static_cast<unsigned __int128>(b.num) * a.den;
  }
};

struct SearchHit {
  CodeSpec spec;
  std::size_t n = 0;
  std::size_t k = 0;
  std::uint32_t d_upper = 0;
  bool exact = false;
  Merit merit;
  Parity parity = Parity::even;
  std::uint64_t position = 0;  // index in the candidate stream
};

// Strictly better-or-equal in every coordinate (smaller n, larger k, larger d)
// and strictly better in one.
bool dominates(const SearchHit& a, const SearchHit& b) noexcept;

// Merit descending, then n ascending, then stream position.
void sort_hits(std::vector<SearchHit>& hits);

struct Cursor {
  std::uint64_t position = 0;  // next raw index to visit
  std::uint64_t emitted = 0;   // candidates emitted so far
};

class CandidateStream {
 public:
  explicit CandidateStream(const SearchSpace& space);
  ~CandidateStream();
  CandidateStream(CandidateStream&&) noexcept;
  CandidateStream& operator=(CandidateStream&&) noexcept;

  // Size of the raw (unreduced) index space.
  std::uint64_t total() const noexcept;

  // Next emitted candidate and its raw position, or nullopt at the end of the
  // index space. The budget is not applied here.
  std::optional<std::pair<std::uint64_t, CodeSpec>> next();

  Cursor cursor() const noexcept;
  void seek(const Cursor& c);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// First `limit` emitted candidates (budget ignored).
std::vector<CodeSpec> enumerate_candidates(const SearchSpace& space, std::size_t limit = SIZE_MAX);

// True iff `spec` is the representative of its symmetry orbit. Always true
// for the reflection family.
bool is_canonical(const CodeSpec& spec);
// The representative of the orbit of `spec`.
CodeSpec canonical_form(const CodeSpec& spec);

struct SearchStats {
  std::uint64_t evaluated = 0;  // candidates taken from the stream
  std::uint64_t rejected = 0;   // failed the base-code check
  std::uint64_t k_zero = 0;
  std::uint64_t parity_skipped = 0;
  std::uint64_t pruned = 0;     // quick bound already dominated
  std::uint64_t distance_runs = 0;
};

struct SearchState {
  Cursor cursor;
  SearchStats stats;
  std::vector<SearchHit> frontier;  // undominated hits, sorted by sort_hits
  bool finished = false;            // budget or index space exhausted
};

// Called for each hit that enters the frontier, in stream order.
using HitCallback = std::function<void(const SearchHit&)>;

// Runs (or resumes from `state`) until the budget is spent or the index space
// is exhausted. `checkpoint_every` > 0 invokes `checkpoint` after that many
// evaluated candidates. Results do not depend on the thread count.
SearchState search(const SearchSpace& space, const DistanceBudget& budget, SearchState state = {},
                   const HitCallback& on_hit = {}, std::uint64_t checkpoint_every = 0,
                   const std::function<void(const SearchState&)>& checkpoint = {});

// Convenience: fresh run, sorted frontier.
std::vector<SearchHit> search_frontier(const SearchSpace& space, const DistanceBudget& budget);

nlohmann::json space_to_json(const SearchSpace& space);
SearchSpace space_from_json(const nlohmann::json& j);
nlohmann::json hit_to_json(const SearchHit& hit);
SearchHit hit_from_json(const nlohmann::json& j);
nlohmann::json state_to_json(const SearchSpace& space, const SearchState& state);
// Throws SpecError if the checkpoint was written for a different space.
SearchState state_from_json(const SearchSpace& space, const nlohmann::json& j);

}  // namespace sdq
