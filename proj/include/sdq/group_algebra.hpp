#pragma once

// Lattice translation/reflection generators and polynomials over them.
//
// A lattice has l x m unit cells, indexed row-major as cell = jx * m + jy.
// The translation group is generated by x and y with y^m = 1 and
// x^l = y^twist (twist = 0 is the ordinary torus). A monomial
// x^ex p^px y^ey q^qy denotes the matrix product T_x^ex M_x^px T_y^ey M_y^qy
// in exactly that factor order; reflections do not commute with translations.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sdq/gf2.hpp"

namespace sdq {

class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct LatticeSpec {
  std::uint32_t l = 1;
  std::uint32_t m = 1;
  std::uint32_t twist = 0;
  bool allow_reflection = false;

  std::size_t cells() const noexcept { return std::size_t{l} * m; }
  bool twisted() const noexcept { return twist != 0; }
  void validate() const;

  friend bool operator==(const LatticeSpec&, const LatticeSpec&) = default;
};

struct MonomialTerm {
  std::uint32_t ex = 0;
  std::uint32_t ey = 0;
  bool px = false;
  bool qy = false;

  bool is_translation() const noexcept { return !px && !qy; }
  friend auto operator<=>(const MonomialTerm&, const MonomialTerm&) = default;
};

struct PolySpec {
  std::vector<MonomialTerm> terms;

  bool has_reflection() const noexcept;
  friend bool operator==(const PolySpec&, const PolySpec&) = default;
};

// u(x, y, z) = f(x, y) + z * antipode(g(x, y)), z^2 = 1.
struct StackPolynomial {
  PolySpec f;
  PolySpec g;
};

struct Generators {
  BinMatrix x;
  BinMatrix y;
  std::optional<BinMatrix> p;
  std::optional<BinMatrix> q;
};

// l x l cyclic shift: row j has its single one in column (j + 1) mod l.
BinMatrix shift_matrix(std::size_t l);
// l x l anti-diagonal reflection.
BinMatrix reflection_matrix(std::size_t l);

Generators generator_matrices(const LatticeSpec& lattice);

// Throws SpecError unless every term is in canonical range for the lattice
// and terms are pairwise distinct.
void validate_poly(const LatticeSpec& lattice, const PolySpec& poly);

BinMatrix eval_poly(const LatticeSpec& lattice, const PolySpec& poly);

// Maps every translation monomial to its group inverse.
PolySpec antipode(const LatticeSpec& lattice, const PolySpec& poly);

// dim of F2[G x Z2] / <u, antipode(u)> as a GF(2) vector space.
std::size_t quotient_dim(const LatticeSpec& lattice, const StackPolynomial& u);

// ------------------------------------------------------------ group helpers

// Translation monomial arithmetic in canonical form (ex < l, ey < m).
MonomialTerm translation_product(const LatticeSpec& lattice, MonomialTerm a, MonomialTerm b);
MonomialTerm translation_inverse(const LatticeSpec& lattice, MonomialTerm a);

// Row -> column map of the permutation matrix of a canonical monomial.
std::vector<std::uint32_t> term_permutation(const LatticeSpec& lattice, const MonomialTerm& term);

// ------------------------------------------------------------ text form
//
// term   := "1" | factor+
// factor := ("x" | "p" | "y" | "q") ["^"] digits?
// Factors must appear in the order x, p, y, q; each at most once. A missing
// exponent means 1. Whitespace is ignored. Polynomials join terms with '+'.
// Exponents are reduced modulo the lattice relations; each reduction that
// changes the written term is reported through `warnings`.

MonomialTerm parse_term(std::string_view text, const LatticeSpec& lattice,
                        std::vector<std::string>* warnings = nullptr);
PolySpec parse_poly(std::string_view text, const LatticeSpec& lattice,
                    std::vector<std::string>* warnings = nullptr);
PolySpec parse_terms(std::span<const std::string> terms, const LatticeSpec& lattice,
                     std::vector<std::string>* warnings = nullptr);

std::string format_term(const MonomialTerm& term);
std::string format_poly(const PolySpec& poly);

}  // namespace sdq
