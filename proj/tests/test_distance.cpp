#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <bit>

#include "sdq/catalog.hpp"
#include "sdq/distance.hpp"

using namespace sdq;

namespace {

StackedCode fixture(std::string_view id) { return build_code(catalog::to_spec(*catalog::find(id))); }

// Brute force over all 2^K kernel combinations; only for tiny codes.
std::uint32_t brute_force_distance(const StackedCode& code) {
  const auto basis = nullspace_basis(code.H);
  REQUIRE(basis.size() <= 22);
  std::uint32_t best = UINT32_MAX;
  BinVector v(code.n);
  // Gray-code walk so each step is a single XOR.
  for (std::uint64_t i = 1; i < (std::uint64_t{1} << basis.size()); ++i) {
    v ^= basis[static_cast<std::size_t>(std::countr_zero(i))];
    const auto w = static_cast<std::uint32_t>(v.weight());
    if (w < best && !in_rowspace(code.H, v)) best = w;
  }
  return best;
}

}  // namespace

TEST_CASE("exact distance agrees with brute force on small codes") {
  for (auto [family, l, m, a, b] : {std::tuple{Family::bicycle, 5u, 1u, "1+x", "x2+x3"},
                                     std::tuple{Family::bicycle, 4u, 1u, "1+x3", "1+x"},
                                     std::tuple{Family::bb, 2u, 2u, "1+x", "1+y"},
                                     std::tuple{Family::bicycle, 6u, 1u, "1+x2", "x3+x4"}}) {
    CodeSpec spec;
    spec.family = family;
    spec.lattice = LatticeSpec{l, m};
    spec.a = parse_poly(a, spec.lattice);
    spec.b = parse_poly(b, spec.lattice);
    const StackedCode code = build_code(spec);
    if (code.k == 0) continue;
    CAPTURE(a);
    CAPTURE(b);
    const DistanceResult r = distance_exact(code);
    CHECK(r.exact);
    CHECK(witness_valid(code, r));
    CHECK(r.d_upper == brute_force_distance(code));
  }
}

TEST_CASE("exact distance on small fixtures") {
  for (auto [id, d] : {std::pair{"bicycle-24-8-4", 4u}, std::pair{"bicycle-36-4-6", 6u}, std::pair{"bb-32-12-4", 4u}}) {
    CAPTURE(id);
    const StackedCode code = fixture(id);
    const DistanceResult r = distance_exact(code);
    CHECK(r.status == DistanceStatus::found);
    CHECK(r.exact);
    CHECK(r.d_upper == d);
    CHECK(r.lower_bound == d);
    CHECK(witness_valid(code, r));
  }
}

TEST_CASE("exact distance reports w_max and budget outcomes") {
  const StackedCode code = fixture("bicycle-36-4-6");
  ExactOptions capped;
  capped.w_max = 4;
  const DistanceResult below = distance_exact(code, capped);
  CHECK(below.status == DistanceStatus::not_found_below);
  CHECK((!below.has_witness() || below.d_upper > 4));
  CHECK(below.lower_bound > 4);

  ExactOptions tiny;
  tiny.budget = 100;
  const DistanceResult partial = distance_exact(code, tiny);
  CHECK(partial.status == DistanceStatus::budget_exceeded);
  CHECK(partial.lower_bound <= 6);
  CHECK_FALSE(partial.exact);
}

TEST_CASE("randomized distance") {
  const StackedCode code = fixture("bicycle-36-4-6");
  RandomizedOptions opt;
  opt.iterations = 200;
  opt.seed = 9;
  const DistanceResult r = distance_randomized(code, opt);
  CHECK(witness_valid(code, r));
  CHECK(r.d_upper >= 6);
  CHECK_FALSE(r.exact);

  // Deterministic for a fixed seed regardless of thread count.
  opt.threads = 1;
  const DistanceResult r1 = distance_randomized(code, opt);
  opt.threads = 4;
  const DistanceResult r4 = distance_randomized(code, opt);
  CHECK(r1.d_upper == r4.d_upper);
  CHECK(r1.witness == r4.witness);

  // More iterations never increase the bound.
  std::uint32_t previous = UINT32_MAX;
  for (std::uint64_t iters : {1, 8, 40, 200}) {
    opt.iterations = iters;
    const DistanceResult ri = distance_randomized(code, opt);
    CHECK(ri.d_upper <= previous);
    previous = ri.d_upper;
  }

  // Seeding with the optimum returns it.
  const DistanceResult exact = distance_exact(code);
  opt.iterations = 1;
  opt.initial_witness = exact.witness;
  CHECK(distance_randomized(code, opt).d_upper == exact.d_upper);
}

TEST_CASE("X and Z distances coincide for self-dual codes") {
  const StackedCode code = fixture("bicycle-24-8-4");
  const auto z = distance_exact(code, {}, LogicalType::z);
  const auto x = distance_exact(code, {}, LogicalType::x);
  CHECK(z.d_upper == x.d_upper);
  RandomizedOptions opt;
  opt.iterations = 50;
  CHECK(distance_randomized(code, opt, LogicalType::z).d_upper == distance_randomized(code, opt, LogicalType::x).d_upper);
}

TEST_CASE("randomized never undercuts exact distance on small fixtures") {
  for (const auto& e : catalog::entries()) {
    if (e.n > 40) continue;
    StackedCode code;
    try {
      code = build_code(catalog::to_spec(e));
    } catch (const CommutatorViolation&) {
      continue;  // unreproducible entries are reported by the catalog tests
    }
    CAPTURE(e.id);
    const DistanceResult exact = distance_exact(code);
    RandomizedOptions opt;
    opt.iterations = 300;
    opt.seed = 1;
    const DistanceResult rnd = distance_randomized(code, opt);
    REQUIRE(exact.exact);
    CHECK(witness_valid(code, rnd));
    CHECK(rnd.d_upper >= exact.d_upper);
    CHECK(rnd.d_upper == exact.d_upper);
  }
}
