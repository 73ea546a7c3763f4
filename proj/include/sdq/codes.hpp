#pragma once

// Base codes (A, B) and their stacked self-dual CSS codes.
//
// Bit layout of the stacked check matrix H = (U | U^T), U = I_2 (x) A + X (x) B^T,
// with N = l*m cells per block and cell = jx * m + jy:
//
//   columns [0N, 1N)  block 0: A     sublattice 0, layer 0
//   columns [1N, 2N)  block 1: B^T   sublattice 0, layer 1
//   columns [2N, 3N)  block 2: A^T   sublattice 1, layer 0
//   columns [3N, 4N)  block 3: B     sublattice 1, layer 1
//
// Rows [0, 2N) of H are the stacked checks, first the N translates of the seed
// stabilizer (row 0), then the N translates of its partner.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sdq/gf2.hpp"
#include "sdq/group_algebra.hpp"

namespace sdq {

enum class Family { bicycle, bb, twisted_bb, reflection };

std::string_view family_name(Family f) noexcept;
Family parse_family(std::string_view name);  // throws SpecError

struct CodeSpec {
  Family family = Family::bicycle;
  LatticeSpec lattice;
  PolySpec a;
  PolySpec b;
  std::string name;

  // Family/lattice consistency plus per-polynomial validity.
  void validate() const;
};

struct BaseCode {
  BinMatrix A;
  BinMatrix B;
  BinMatrix h_x;  // (A | B)
  BinMatrix h_z;  // (B^T | A^T)
};

enum class Condition { ab_commute, a_normal, b_normal, u_normal };

std::string_view condition_name(Condition c) noexcept;

class CommutatorViolation : public std::runtime_error {
 public:
  explicit CommutatorViolation(std::vector<Condition> failed);
  const std::vector<Condition>& failed() const noexcept { return failed_; }

 private:
  std::vector<Condition> failed_;
};

// Accepts (A, B) iff [A,B] = [A,A^T] = [B,B^T] = 0.
BaseCode validate_base(const BinMatrix& A, const BinMatrix& B);

// Accepts (A, B) iff the stacked code is well defined, i.e. U U^T = U^T U.
// This is implied by the three commutators above but is strictly weaker;
// the reflection family is checked with this condition.
BaseCode validate_stackable(const BinMatrix& A, const BinMatrix& B);

BinMatrix stack_u(const BinMatrix& A, const BinMatrix& B);

struct StackedCode {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t rank_h = 0;
  BinMatrix U;
  BinMatrix H;                     // H_X == H_Z
  std::vector<BinVector> logicals;  // coset representatives of ker(H) / rowspace(H)
  bool odd_logical = false;

  const BinMatrix& h_x() const noexcept { return H; }
  const BinMatrix& h_z() const noexcept { return H; }
};

StackedCode stack(const BaseCode& base);

// Evaluates, validates (strict for translation families, UU^T = U^TU for
// reflections) and stacks.
StackedCode build_code(const CodeSpec& spec);

const std::vector<BinVector>& logical_basis(const StackedCode& code) noexcept;

enum class Parity { even, odd };
std::string_view parity_name(Parity p) noexcept;

Parity classify_parity(const StackedCode& code);

// u = f + z * antipode(g) with f <-> A and g <-> B. Translation families only.
StackPolynomial stack_polynomial(const CodeSpec& spec);

struct Site {
  std::uint32_t nu = 0;  // sublattice
  std::uint32_t jx = 0;
  std::uint32_t jy = 0;
  std::uint32_t layer = 0;
  friend auto operator<=>(const Site&, const Site&) = default;
};

// Qubit column <-> site, per the layout above.
Site column_site(const LatticeSpec& lattice, std::size_t column);
std::size_t site_column(const LatticeSpec& lattice, const Site& site);

// Support of row 0 of H, as sites, in column order.
std::vector<Site> seed_stabilizer_support(const CodeSpec& spec);

}  // namespace sdq
