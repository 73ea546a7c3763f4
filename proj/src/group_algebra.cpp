#include "sdq/group_algebra.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

namespace sdq {

void LatticeSpec::validate() const {
  if (l == 0 || m == 0) throw SpecError("lattice dimensions must be positive");
  if (cells() > (std::size_t{1} << 24)) throw SpecError("lattice too large");
  if (twist >= m) throw SpecError("twist must satisfy 0 <= twist < m");
  if (allow_reflection && twist != 0) throw SpecError("reflections are only defined on untwisted lattices");
}

bool PolySpec::has_reflection() const noexcept {
  return std::ranges::any_of(terms, [](const MonomialTerm& t) { return !t.is_translation(); });
}

BinMatrix shift_matrix(std::size_t l) {
  if (l == 0) throw SpecError("shift matrix size must be positive");
  BinMatrix s(l, l);
  for (std::size_t j = 0; j < l; ++j) s.set(j, (j + 1) % l);
  return s;
}

BinMatrix reflection_matrix(std::size_t l) {
  if (l == 0) throw SpecError("reflection matrix size must be positive");
  BinMatrix r(l, l);
  for (std::size_t j = 0; j < l; ++j) r.set(j, l - 1 - j);
  return r;
}

namespace {

BinMatrix matrix_power(const BinMatrix& a, std::size_t e) {
  BinMatrix out = BinMatrix::identity(a.rows());
  for (std::size_t i = 0; i < e; ++i) out = matmul(out, a);
  return out;
}

}  // namespace

Generators generator_matrices(const LatticeSpec& lattice) {
  lattice.validate();
  const auto il = BinMatrix::identity(lattice.l);
  const auto im = BinMatrix::identity(lattice.m);
  Generators g;
  if (lattice.twisted()) {
    // Block-cyclic with the wrap-around block carrying S_m^twist.
    BinMatrix tx(lattice.cells(), lattice.cells());
    const BinMatrix wrap = matrix_power(shift_matrix(lattice.m), lattice.twist);
    for (std::size_t i = 0; i < lattice.l; ++i) {
      const std::size_t j = (i + 1) % lattice.l;
      const BinMatrix& block = (i + 1 == lattice.l) ? wrap : im;
      for (std::size_t r = 0; r < lattice.m; ++r)
        for (std::size_t c : block.row_support(r)) tx.set(i * lattice.m + r, j * lattice.m + c);
    }
    g.x = std::move(tx);
  } else {
    g.x = kron(shift_matrix(lattice.l), im);
  }
  g.y = kron(il, shift_matrix(lattice.m));
  if (lattice.allow_reflection) {
    g.p = kron(reflection_matrix(lattice.l), im);
    g.q = kron(il, reflection_matrix(lattice.m));
  }
  return g;
}

MonomialTerm translation_product(const LatticeSpec& lattice, MonomialTerm a, MonomialTerm b) {
  std::uint64_t ex = std::uint64_t{a.ex} + b.ex;
  std::uint64_t ey = std::uint64_t{a.ey} + b.ey;
  ey += (ex / lattice.l) * lattice.twist;
  return MonomialTerm{static_cast<std::uint32_t>(ex % lattice.l), static_cast<std::uint32_t>(ey % lattice.m)};
}

MonomialTerm translation_inverse(const LatticeSpec& lattice, MonomialTerm a) {
  // (a, b) * (l - a, -b - twist) = (l, -twist) = identity when a > 0.
  const std::uint32_t ex = (lattice.l - a.ex) % lattice.l;
  std::uint64_t shift = a.ey + (a.ex > 0 ? lattice.twist : 0);
  const auto ey = static_cast<std::uint32_t>((lattice.m - shift % lattice.m) % lattice.m);
  return MonomialTerm{ex, ey};
}

std::vector<std::uint32_t> term_permutation(const LatticeSpec& lattice, const MonomialTerm& term) {
  const std::uint32_t l = lattice.l;
  const std::uint32_t m = lattice.m;
  std::vector<std::uint32_t> perm(lattice.cells());
  for (std::uint32_t jx = 0; jx < l; ++jx) {
    for (std::uint32_t jy = 0; jy < m; ++jy) {
      // Right-multiplication by each factor in turn: row r of P1 P2 lands at P2(P1(r)).
      MonomialTerm c = translation_product(lattice, {jx, jy}, {term.ex, 0});
      if (term.px) c.ex = l - 1 - c.ex;
      c = translation_product(lattice, c, {0, term.ey});
      if (term.qy) c.ey = m - 1 - c.ey;
      perm[jx * m + jy] = c.ex * m + c.ey;
    }
  }
  return perm;
}

void validate_poly(const LatticeSpec& lattice, const PolySpec& poly) {
  lattice.validate();
  std::set<MonomialTerm> seen;
  for (const auto& t : poly.terms) {
    if (t.ex >= lattice.l || t.ey >= lattice.m)
      throw SpecError("term " + format_term(t) + " is not in canonical range for the lattice");
    if (!t.is_translation() && !lattice.allow_reflection)
      throw SpecError("term " + format_term(t) + " uses a reflection on a translation-only lattice");
    if (!seen.insert(t).second) throw SpecError("duplicate term " + format_term(t));
  }
}

BinMatrix eval_poly(const LatticeSpec& lattice, const PolySpec& poly) {
  validate_poly(lattice, poly);
  BinMatrix out(lattice.cells(), lattice.cells());
  for (const auto& t : poly.terms) {
    const auto perm = term_permutation(lattice, t);
    for (std::size_t r = 0; r < perm.size(); ++r) out.flip(r, perm[r]);
  }
  return out;
}

PolySpec antipode(const LatticeSpec& lattice, const PolySpec& poly) {
  validate_poly(lattice, poly);
  PolySpec out;
  out.terms.reserve(poly.terms.size());
  for (const auto& t : poly.terms) {
    if (!t.is_translation()) throw SpecError("antipode is only defined for translation monomials");
    out.terms.push_back(translation_inverse(lattice, t));
  }
  return out;
}

std::size_t quotient_dim(const LatticeSpec& lattice, const StackPolynomial& u) {
  // Elements of G x Z2 are indexed as z * |G| + cell. The ideal is spanned by
  // all translates w * z^c of u and of antipode(u).
  const std::size_t cells = lattice.cells();
  const PolySpec f_bar = antipode(lattice, u.f);
  const PolySpec g_bar = antipode(lattice, u.g);
  // u = f + z g_bar, antipode(u) = f_bar + z g
  const std::pair<const PolySpec*, const PolySpec*> gens[2] = {{&u.f, &g_bar}, {&f_bar, &u.g}};

  BinMatrix span(4 * cells, 2 * cells);
  std::size_t row = 0;
  for (const auto& [p0, p1] : gens) {
    for (std::uint32_t c = 0; c < 2; ++c) {
      for (std::uint32_t wx = 0; wx < lattice.l; ++wx) {
        for (std::uint32_t wy = 0; wy < lattice.m; ++wy) {
          const MonomialTerm w{wx, wy};
          auto put = [&](const PolySpec& p, std::uint32_t z) {
            for (const auto& t : p.terms) {
              const MonomialTerm s = translation_product(lattice, t, w);
              span.flip(row, (z ^ c) * cells + s.ex * lattice.m + s.ey);
            }
          };
          put(*p0, 0);
          put(*p1, 1);
          ++row;
        }
      }
    }
  }
  return 2 * cells - rank(span);
}

// ---------------------------------------------------------------- text form

namespace {

std::string strip_spaces(std::string_view s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

}  // namespace

MonomialTerm parse_term(std::string_view text, const LatticeSpec& lattice, std::vector<std::string>* warnings) {
  lattice.validate();
  const std::string s = strip_spaces(text);
  if (s.empty()) throw SpecError("empty monomial term");

  std::uint64_t exps[4] = {0, 0, 0, 0};  // x, p, y, q
  if (s != "1") {
    static constexpr std::string_view kOrder = "xpyq";
    int last = -1;
    std::size_t i = 0;
    while (i < s.size()) {
      const auto slot = kOrder.find(s[i]);
      if (slot == std::string_view::npos) throw SpecError("unexpected character in term '" + s + "'");
      if (static_cast<int>(slot) <= last)
        throw SpecError("term '" + s + "' must list factors in the order x, p, y, q, each at most once");
      last = static_cast<int>(slot);
      ++i;
      if (i < s.size() && s[i] == '^') ++i;
      std::uint64_t e = 1;
      if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        const auto* first = s.data() + i;
        const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), e);
        if (ec != std::errc{}) throw SpecError("bad exponent in term '" + s + "'");
        i += static_cast<std::size_t>(ptr - first);
      } else if (i > 0 && s[i - 1] == '^') {
        throw SpecError("missing exponent after '^' in term '" + s + "'");
      }
      exps[slot] = e;
    }
  }

  if ((exps[1] || exps[3]) && !lattice.allow_reflection)
    throw SpecError("term '" + s + "' uses a reflection on a translation-only lattice");

  std::vector<std::string> notes;
  if (exps[1] > 1 || exps[3] > 1) notes.push_back("reflection exponents reduced mod 2");
  bool px = exps[1] % 2;
  bool qy = exps[3] % 2;
  std::uint64_t ex = exps[0];
  std::uint64_t ey = exps[2];

  // M_1 = I and M_2 = S_2: fold degenerate reflections into the adjacent shift.
  if (px && lattice.l <= 2) {
    if (lattice.l == 2) ex += 1;
    px = false;
    notes.push_back("p equals " + std::string(lattice.l == 2 ? "x" : "the identity") + " on this lattice");
  }
  if (qy && lattice.m <= 2) {
    if (lattice.m == 2) ey += 1;
    qy = false;
    notes.push_back("q equals " + std::string(lattice.m == 2 ? "y" : "the identity") + " on this lattice");
  }

  MonomialTerm t;
  if (px) {
    // x^ex only wraps within the x factor; no twist on reflection lattices.
    t.ex = static_cast<std::uint32_t>(ex % lattice.l);
    t.ey = static_cast<std::uint32_t>(ey % lattice.m);
  } else {
    const std::uint64_t wraps = ex / lattice.l;
    t.ex = static_cast<std::uint32_t>(ex % lattice.l);
    t.ey = static_cast<std::uint32_t>((ey + (wraps % lattice.m) * lattice.twist) % lattice.m);
  }
  t.px = px;
  t.qy = qy;
  if (ex >= lattice.l || ey >= lattice.m) notes.push_back("exponents reduced modulo the lattice");

  if (warnings) {
    for (const auto& n : notes) warnings->push_back("'" + s + "' -> '" + format_term(t) + "': " + n);
  }
  return t;
}

PolySpec parse_terms(std::span<const std::string> terms, const LatticeSpec& lattice,
                     std::vector<std::string>* warnings) {
  PolySpec p;
  std::set<MonomialTerm> seen;
  for (const auto& text : terms) {
    const MonomialTerm t = parse_term(text, lattice, warnings);
    if (!seen.insert(t).second)
      throw SpecError("term '" + text + "' duplicates an earlier term after reduction (" + format_term(t) + ")");
    p.terms.push_back(t);
  }
  if (p.terms.empty()) throw SpecError("polynomial has no terms");
  return p;
}

PolySpec parse_poly(std::string_view text, const LatticeSpec& lattice, std::vector<std::string>* warnings) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const auto plus = text.find('+', start);
    parts.emplace_back(text.substr(start, plus == std::string_view::npos ? std::string_view::npos : plus - start));
    if (plus == std::string_view::npos) break;
    start = plus + 1;
  }
  return parse_terms(parts, lattice, warnings);
}

std::string format_term(const MonomialTerm& t) {
  std::string s;
  auto factor = [&](char name, std::uint32_t e) {
    if (e == 0) return;
    s.push_back(name);
    if (e != 1) s += std::to_string(e);
  };
  factor('x', t.ex);
  factor('p', t.px ? 1 : 0);
  factor('y', t.ey);
  factor('q', t.qy ? 1 : 0);
  return s.empty() ? "1" : s;
}

std::string format_poly(const PolySpec& poly) {
  std::string s;
  for (const auto& t : poly.terms) {
    if (!s.empty()) s += " + ";
    s += format_term(t);
  }
  return s.empty() ? "0" : s;
}

}  // namespace sdq
