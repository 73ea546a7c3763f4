#pragma once

// Reference catalog of stacked codes with their expected parameters.
//
// Each entry is a base-code recipe plus the expected [[n, k, d]] and logical
// parity of the stacked code. Entries flagged `headline` form the short
// reference list; the rest are the extended listing. `d_is_bound` marks
// distances that are only known as upper bounds.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

#include "sdq/codes.hpp"

namespace sdq::catalog {

struct Entry {
  std::string_view id;
  Family family;
  std::uint32_t l;
  std::uint32_t m;
  std::uint32_t gamma;
  std::string_view a;
  std::string_view b;
  std::size_t n;
  std::size_t k;
  std::uint32_t d;
  bool d_is_bound;
  Parity parity;
  bool headline;
};

std::span<const Entry> entries() noexcept;

// nullptr if absent.
const Entry* find(std::string_view id) noexcept;

// Parses the entry's polynomials on its lattice (reducing exponents).
CodeSpec to_spec(const Entry& e);

}  // namespace sdq::catalog
