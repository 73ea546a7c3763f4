#pragma once

// Minimum weight of a nontrivial logical operator.
//
// A Z-type logical is a vector in ker(H_X) outside rowspace(H_Z); for the
// stacked codes H_X == H_Z and the X and Z distances coincide.
//
// distance_exact runs Brouwer-Zimmermann enumeration over disjoint (possibly
// partial) information sets of the kernel, which certifies a lower bound
// after every weight layer. distance_randomized repeatedly reduces the kernel
// generator to a random information set and keeps the lightest nontrivial row.

#include <cstdint>
#include <optional>
#include <string_view>

#include "sdq/codes.hpp"

namespace sdq {

enum class DistanceStatus {
  found,            // d_upper is exact (exact == true) or an upper bound
  not_found_below,  // no nontrivial logical of weight <= w_max exists
  budget_exceeded,  // enumeration stopped early; lower_bound holds
};

std::string_view status_name(DistanceStatus s) noexcept;

struct DistanceResult {
  DistanceStatus status = DistanceStatus::found;
  std::uint32_t d_upper = 0;      // weight of witness; 0 when no witness
  std::uint32_t lower_bound = 0;  // certified: every nontrivial logical has weight >= lower_bound
  bool exact = false;
  BinVector witness;
  std::uint64_t effort = 0;  // codewords enumerated, or iterations run

  bool has_witness() const noexcept { return d_upper > 0; }
};

enum class LogicalType { z, x };

struct ExactOptions {
  std::uint32_t w_max = 0;                    // 0: no cap
  std::uint64_t budget = 2'000'000'000ULL;    // codewords enumerated before giving up
  std::optional<BinVector> initial_witness;  // prunes the search when supplied
};

struct RandomizedOptions {
  std::uint64_t iterations = 1000;
  std::uint64_t seed = 0;
  std::uint64_t batch = 32;  // iterations per RNG stream
  std::size_t threads = 0;   // 0: hardware concurrency
  std::optional<BinVector> initial_witness;
};

DistanceResult distance_exact(const StackedCode& code, const ExactOptions& options = {},
                              LogicalType type = LogicalType::z);

DistanceResult distance_randomized(const StackedCode& code, const RandomizedOptions& options = {},
                                   LogicalType type = LogicalType::z);

// Witness checks: in ker(H), outside rowspace(H), weight == d_upper.
bool is_nontrivial_logical(const StackedCode& code, const BinVector& v);
bool witness_valid(const StackedCode& code, const DistanceResult& r);

}  // namespace sdq
