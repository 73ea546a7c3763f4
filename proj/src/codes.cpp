#include "sdq/codes.hpp"

#include <algorithm>

namespace sdq {

std::string_view family_name(Family f) noexcept {
  switch (f) {
    case Family::bicycle: return "bicycle";
    case Family::bb: return "bb";
    case Family::twisted_bb: return "twisted-bb";
    case Family::reflection: return "reflection";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  for (Family f : {Family::bicycle, Family::bb, Family::twisted_bb, Family::reflection})
    if (family_name(f) == name) return f;
  throw SpecError("unknown family '" + std::string(name) + "' (expected bicycle, bb, twisted-bb or reflection)");
}

void CodeSpec::validate() const {
  lattice.validate();
  switch (family) {
    case Family::bicycle:
      if (lattice.m != 1 || lattice.twisted() || lattice.allow_reflection)
        throw SpecError("bicycle family requires m = 1, no twist and no reflections");
      break;
    case Family::bb:
      if (lattice.m < 2 || lattice.twisted() || lattice.allow_reflection)
        throw SpecError("bb family requires m >= 2, no twist and no reflections");
      break;
    case Family::twisted_bb:
      if (!lattice.twisted() || lattice.allow_reflection)
        throw SpecError("twisted-bb family requires 0 < gamma < m and no reflections");
      break;
    case Family::reflection:
      if (!lattice.allow_reflection) throw SpecError("reflection family requires allow_reflection");
      break;
  }
  if (a.terms.empty() || b.terms.empty()) throw SpecError("polynomials A and B must be non-empty");
  validate_poly(lattice, a);
  validate_poly(lattice, b);
}

// ---------------------------------------------------------------- base codes

std::string_view condition_name(Condition c) noexcept {
  switch (c) {
    case Condition::ab_commute: return "[A,B] != 0";
    case Condition::a_normal: return "[A,A^T] != 0";
    case Condition::b_normal: return "[B,B^T] != 0";
    case Condition::u_normal: return "U U^T != U^T U";
  }
  return "?";
}

namespace {

std::string describe(const std::vector<Condition>& failed) {
  std::string s = "base code rejected:";
  for (Condition c : failed) {
    s += ' ';
    s += condition_name(c);
  }
  return s;
}

bool commutes(const BinMatrix& x, const BinMatrix& y) { return matmul(x, y) == matmul(y, x); }

void require_square_pair(const BinMatrix& A, const BinMatrix& B) {
  if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows())
    throw DimensionError("A and B must be square matrices of equal size");
}

BaseCode make_base(const BinMatrix& A, const BinMatrix& B) {
  BaseCode base{A, B, hstack(A, B), hstack(B.transpose(), A.transpose())};
  return base;
}

}  // namespace

CommutatorViolation::CommutatorViolation(std::vector<Condition> failed)
    : std::runtime_error(describe(failed)), failed_(std::move(failed)) {}

BaseCode validate_base(const BinMatrix& A, const BinMatrix& B) {
  require_square_pair(A, B);
  std::vector<Condition> failed;
  if (!commutes(A, B)) failed.push_back(Condition::ab_commute);
  if (!commutes(A, A.transpose())) failed.push_back(Condition::a_normal);
  if (!commutes(B, B.transpose())) failed.push_back(Condition::b_normal);
  if (!failed.empty()) throw CommutatorViolation(std::move(failed));
  BaseCode base = make_base(A, B);
  if (!matmul(base.h_x, base.h_z.transpose()).is_zero())
    throw std::logic_error("validate_base: h_X h_Z^T != 0 despite commuting blocks");
  return base;
}

BaseCode validate_stackable(const BinMatrix& A, const BinMatrix& B) {
  require_square_pair(A, B);
  const BinMatrix U = stack_u(A, B);
  const BinMatrix Ut = U.transpose();
  if (matmul(U, Ut) != matmul(Ut, U)) throw CommutatorViolation({Condition::u_normal});
  return make_base(A, B);
}

BinMatrix stack_u(const BinMatrix& A, const BinMatrix& B) {
  require_square_pair(A, B);
  const BinMatrix sigma_x = BinMatrix::from_strings({"01", "10"});
  return kron(BinMatrix::identity(2), A) + kron(sigma_x, B.transpose());
}

// ---------------------------------------------------------------- stacking

StackedCode stack(const BaseCode& base) {
  StackedCode code;
  code.U = stack_u(base.A, base.B);
  const BinMatrix Ut = code.U.transpose();
  if (matmul(code.U, Ut) != matmul(Ut, code.U))
    throw std::logic_error("stack: U U^T != U^T U; base code was not validated");
  code.H = hstack(code.U, Ut);
  code.n = code.H.cols();
  if (!matmul(code.H, code.H.transpose()).is_zero()) throw std::logic_error("stack: H H^T != 0");

  // Logical representatives: kernel vectors independent modulo the row space.
  SpanBasis span(code.n);
  for (std::size_t r = 0; r < code.H.rows(); ++r) span.insert(code.H.row(r));
  code.rank_h = span.size();
  code.k = code.n - 2 * code.rank_h;
  for (auto& v : nullspace_basis(code.H)) {
    if (code.logicals.size() == code.k) break;
    if (span.insert(v)) code.logicals.push_back(std::move(v));
  }
  if (code.logicals.size() != code.k) throw std::logic_error("stack: logical basis size mismatch");

  code.odd_logical = !in_rowspace(code.H, BinVector::ones(code.n));
  return code;
}

StackedCode build_code(const CodeSpec& spec) {
  spec.validate();
  const BinMatrix A = eval_poly(spec.lattice, spec.a);
  const BinMatrix B = eval_poly(spec.lattice, spec.b);
  return stack(spec.family == Family::reflection ? validate_stackable(A, B) : validate_base(A, B));
}

const std::vector<BinVector>& logical_basis(const StackedCode& code) noexcept { return code.logicals; }

std::string_view parity_name(Parity p) noexcept { return p == Parity::odd ? "odd" : "even"; }

Parity classify_parity(const StackedCode& code) {
  // Weight parity is the functional <1, v>; it vanishes on ker(H) iff 1 is in rowspace(H).
  return in_rowspace(code.H, BinVector::ones(code.n)) ? Parity::even : Parity::odd;
}

StackPolynomial stack_polynomial(const CodeSpec& spec) {
  if (spec.family == Family::reflection || spec.a.has_reflection() || spec.b.has_reflection())
    throw SpecError("the z-extended polynomial is only defined for translation families");
  return StackPolynomial{spec.a, spec.b};
}

// ---------------------------------------------------------------- geometry

Site column_site(const LatticeSpec& lattice, std::size_t column) {
  const std::size_t cells = lattice.cells();
  if (column >= 4 * cells) throw DimensionError("column out of range");
  const auto block = static_cast<std::uint32_t>(column / cells);
  const std::size_t cell = column % cells;
  return Site{block / 2, static_cast<std::uint32_t>(cell / lattice.m), static_cast<std::uint32_t>(cell % lattice.m),
              block % 2};
}

std::size_t site_column(const LatticeSpec& lattice, const Site& s) {
  if (s.nu > 1 || s.layer > 1 || s.jx >= lattice.l || s.jy >= lattice.m) throw DimensionError("site out of range");
  return (std::size_t{s.nu} * 2 + s.layer) * lattice.cells() + std::size_t{s.jx} * lattice.m + s.jy;
}

std::vector<Site> seed_stabilizer_support(const CodeSpec& spec) {
  if (spec.family == Family::reflection)
    throw SpecError("seed stabilizer geometry is only defined for translation families");
  const StackedCode code = build_code(spec);
  std::vector<Site> out;
  for (std::size_t c : code.H.row_support(0)) out.push_back(column_site(spec.lattice, c));
  return out;
}

}  // namespace sdq
