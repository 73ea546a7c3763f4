#include "sdq/search.hpp"

#include <algorithm>
#include <numeric>

#include "sdq/code_io.hpp"
#include "sdq/parallel.hpp"
#include "sdq/rng.hpp"

namespace sdq {

namespace {

using nlohmann::json;
using u128 = unsigned __int128;

constexpr std::uint64_t kIndexLimit = std::uint64_t{1} << 62;
// Candidates evaluated between frontier merges. Fixed, so results do not
// depend on the number of worker threads.
constexpr std::size_t kChunk = 64;

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  u128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r >= kIndexLimit) throw SpecError("search space too large to index");
  }
  return static_cast<std::uint64_t>(r);
}

// Lexicographic unranking of a k-subset of [0, n).
std::vector<std::uint32_t> unrank_subset(std::uint64_t n, std::uint64_t k, std::uint64_t rank) {
  std::vector<std::uint32_t> out;
  out.reserve(k);
  std::uint64_t c = 0;
  for (std::uint64_t slot = 0; slot < k; ++slot) {
    for (;; ++c) {
      const std::uint64_t below = binomial(n - c - 1, k - slot - 1);
      if (rank < below) break;
      rank -= below;
    }
    out.push_back(static_cast<std::uint32_t>(c++));
  }
  return out;
}

bool lattice_admitted(Family family, const LatticeSpec& lat) {
  try {
    lat.validate();
  } catch (const SpecError&) {
    return false;
  }
  switch (family) {
    case Family::bicycle: return lat.m == 1 && !lat.twisted();
    case Family::bb: return lat.m >= 2 && !lat.twisted();
    case Family::twisted_bb: return lat.twisted();
    case Family::reflection: return !lat.twisted();
  }
  return false;
}

std::vector<MonomialTerm> lattice_monomials(const LatticeSpec& lat) {
  std::vector<MonomialTerm> out;
  const bool use_p = lat.allow_reflection && lat.l >= 3;
  const bool use_q = lat.allow_reflection && lat.m >= 3;
  for (std::uint32_t ex = 0; ex < lat.l; ++ex)
    for (int px = 0; px <= (use_p ? 1 : 0); ++px)
      for (std::uint32_t ey = 0; ey < lat.m; ++ey)
        for (int qy = 0; qy <= (use_q ? 1 : 0); ++qy) out.push_back({ex, ey, px == 1, qy == 1});
  std::sort(out.begin(), out.end());
  return out;
}

// ------------------------------------------------------------ symmetry

// Translation group of a lattice as cell indices (cell = ex * m + ey), with a
// product table and the inversion automorphisms that preserve the relations.
struct Group {
  LatticeSpec lat;
  std::uint32_t cells = 0;
  std::vector<std::uint32_t> product;               // cells x cells
  std::vector<std::uint32_t> inverse;               // cells
  std::vector<std::vector<std::uint32_t>> autos;    // non-identity automorphisms

  explicit Group(const LatticeSpec& l) : lat(l), cells(static_cast<std::uint32_t>(l.cells())) {
    auto cell = [&](MonomialTerm t) { return t.ex * lat.m + t.ey; };
    auto term = [&](std::uint32_t c) { return MonomialTerm{c / lat.m, c % lat.m}; };
    product.resize(std::size_t{cells} * cells);
    inverse.resize(cells);
    for (std::uint32_t a = 0; a < cells; ++a) {
      inverse[a] = cell(translation_inverse(lat, term(a)));
      for (std::uint32_t b = 0; b < cells; ++b) product[a * cells + b] = cell(translation_product(lat, term(a), term(b)));
    }
    if (lat.twisted()) {
      autos.push_back(inverse);
    } else {
      std::vector<std::uint32_t> fx(cells), fy(cells), fxy(cells);
      for (std::uint32_t c = 0; c < cells; ++c) {
        const MonomialTerm t = term(c);
        const std::uint32_t ix = (lat.l - t.ex) % lat.l, iy = (lat.m - t.ey) % lat.m;
        fx[c] = ix * lat.m + t.ey;
        fy[c] = t.ex * lat.m + iy;
        fxy[c] = ix * lat.m + iy;
      }
      autos.push_back(fx);
      if (lat.m > 2) {
        autos.push_back(fy);
        autos.push_back(fxy);
      }
    }
  }
};

using Key = std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>;

Key key_of(const LatticeSpec& lat, const CodeSpec& spec) {
  Key k;
  for (const auto& t : spec.a.terms) k.first.push_back(t.ex * lat.m + t.ey);
  for (const auto& t : spec.b.terms) k.second.push_back(t.ex * lat.m + t.ey);
  std::sort(k.first.begin(), k.first.end());
  std::sort(k.second.begin(), k.second.end());
  return k;
}

// Visits every image of `key` under the symmetry group; stops early when the
// visitor returns false.
template <typename Visit>
void for_each_image(const Group& g, const Key& key, Visit&& visit) {
  Key img;
  img.first.resize(key.first.size());
  img.second.resize(key.second.size());
  const std::vector<std::uint32_t>* maps[4] = {nullptr, nullptr, nullptr, nullptr};
  std::size_t nmaps = 1;
  for (const auto& a : g.autos) maps[nmaps++] = &a;
  for (std::size_t f = 0; f < nmaps; ++f) {
    auto phi = [&](std::uint32_t c) { return maps[f] ? (*maps[f])[c] : c; };
    for (std::uint32_t w = 0; w < g.cells; ++w) {
      const std::uint32_t winv = g.inverse[w];
      for (std::size_t i = 0; i < key.first.size(); ++i) img.first[i] = g.product[w * g.cells + phi(key.first[i])];
      for (std::size_t i = 0; i < key.second.size(); ++i)
        img.second[i] = g.product[winv * g.cells + phi(key.second[i])];
      std::sort(img.first.begin(), img.first.end());
      std::sort(img.second.begin(), img.second.end());
      if (!visit(img)) return;
    }
  }
}

bool canonical_in(const Group& g, const Key& key) {
  bool canonical = true;
  for_each_image(g, key, [&](const Key& img) {
    if (img < key) canonical = false;
    return canonical;
  });
  return canonical;
}

PolySpec poly_from_cells(const LatticeSpec& lat, const std::vector<std::uint32_t>& cells) {
  PolySpec p;
  for (auto c : cells) p.terms.push_back({c / lat.m, c % lat.m});
  return p;
}

bool reduces_by_symmetry(const CodeSpec& spec) {
  return spec.family != Family::reflection && !spec.a.has_reflection() && !spec.b.has_reflection();
}

// ------------------------------------------------------------ hits

void insert_hit(std::vector<SearchHit>& frontier, const SearchHit& hit, const HitCallback& on_hit) {
  for (const auto& f : frontier)
    if (dominates(f, hit)) return;
  std::erase_if(frontier, [&](const SearchHit& f) { return dominates(hit, f); });
  frontier.push_back(hit);
  if (on_hit) on_hit(hit);
}

json range_json(const Range& r) { return json::array({r.lo, r.hi}); }

Range range_from(const json& j, const char* field, Range fallback) {
  if (!j.contains(field)) return fallback;
  const json& v = j.at(field);
  try {
    if (v.is_number_integer()) return Range{v.get<std::uint32_t>(), v.get<std::uint32_t>()};
    if (v.is_array() && v.size() == 2) return Range{v[0].get<std::uint32_t>(), v[1].get<std::uint32_t>()};
  } catch (const json::exception&) {
  }
  throw SpecError(std::string("field '") + field + "': expected an integer or [lo, hi]");
}

}  // namespace

// ------------------------------------------------------------ basics

std::string_view parity_filter_name(ParityFilter f) noexcept {
  switch (f) {
    case ParityFilter::any: return "any";
    case ParityFilter::odd_only: return "odd-only";
    case ParityFilter::even_only: return "even-only";
  }
  return "?";
}

ParityFilter parse_parity_filter(std::string_view name) {
  if (name == "any") return ParityFilter::any;
  if (name == "odd-only" || name == "odd") return ParityFilter::odd_only;
  if (name == "even-only" || name == "even") return ParityFilter::even_only;
  throw SpecError("unknown parity filter '" + std::string(name) + "'");
}

void SearchSpace::validate() const {
  if (terms_a == 0 || terms_b == 0) throw SpecError("term counts must be at least 1");
}

Merit Merit::of(std::size_t n, std::size_t k, std::uint32_t d) {
  if (n == 0) return {};
  const std::uint64_t num = std::uint64_t{k} * d * d;
  const std::uint64_t g = std::gcd(num, std::uint64_t{n});
  return {num / g, n / g};
}

std::string Merit::rounded() const {
  // floor(10 x + 1/2) computed exactly.
  const u128 tenths = (u128{num} * 20 + den) / (u128{den} * 2);
  const auto t = static_cast<std::uint64_t>(tenths);
  return std::to_string(t / 10) + "." + std::to_string(t % 10);
}

bool dominates(const SearchHit& a, const SearchHit& b) noexcept {
  const bool ge = a.n <= b.n && a.k >= b.k && a.d_upper >= b.d_upper;
  const bool gt = a.n < b.n || a.k > b.k || a.d_upper > b.d_upper;
  return ge && gt;
}

void sort_hits(std::vector<SearchHit>& hits) {
  std::sort(hits.begin(), hits.end(), [](const SearchHit& a, const SearchHit& b) {
    if (a.merit != b.merit) return a.merit > b.merit;
    if (a.n != b.n) return a.n < b.n;
    return a.position < b.position;
  });
}

// ------------------------------------------------------------ stream

struct CandidateStream::Impl {
  struct Block {
    LatticeSpec lat;
    std::vector<MonomialTerm> monos;
    std::optional<PolySpec> fixed_a, fixed_b;
    std::uint64_t count_b = 1;
    std::uint64_t size = 0;
    std::uint64_t offset = 0;
    std::unique_ptr<Group> group;  // built on first use
  };

  SearchSpace space;
  std::vector<Block> blocks;
  std::uint64_t total = 0;
  std::uint64_t mul = 1, add = 0;
  Cursor cur;

  explicit Impl(const SearchSpace& s) : space(s) {
    space.validate();
    if (space.fixed_a || space.fixed_b) space.symmetry_reduce = false;  // pinned terms break orbits
    if (space.budget == 0) return;
    for (std::uint32_t l = space.l.lo; !space.l.empty() && l <= space.l.hi; ++l) {
      for (std::uint32_t m = space.m.lo; !space.m.empty() && m <= space.m.hi; ++m) {
        for (std::uint32_t g = space.gamma.lo; !space.gamma.empty() && g <= space.gamma.hi; ++g) {
          LatticeSpec lat{l, m, g, space.family == Family::reflection};
          if (!lattice_admitted(space.family, lat)) continue;
          Block b;
          b.lat = lat;
          b.monos = lattice_monomials(lat);
          std::uint64_t count_a = 0;
          try {
            if (space.fixed_a) b.fixed_a = parse_poly(*space.fixed_a, lat);
            if (space.fixed_b) b.fixed_b = parse_poly(*space.fixed_b, lat);
            validate_poly(lat, b.fixed_a.value_or(PolySpec{}));
            validate_poly(lat, b.fixed_b.value_or(PolySpec{}));
          } catch (const SpecError&) {
            continue;
          }
          count_a = b.fixed_a ? 1 : binomial(b.monos.size(), space.terms_a);
          b.count_b = b.fixed_b ? 1 : binomial(b.monos.size(), space.terms_b);
          const u128 size = u128{count_a} * b.count_b;
          if (size == 0) continue;
          if (size + total >= kIndexLimit) throw SpecError("search space too large to index");
          b.size = static_cast<std::uint64_t>(size);
          b.offset = total;
          total += b.size;
          blocks.push_back(std::move(b));
        }
      }
    }
    if (space.shuffle && total > 1) {
      Rng rng(space.seed, "search-order");
      mul = 1 + rng.below(total - 1);
      while (std::gcd(mul, total) != 1) mul = mul % (total - 1) + 1;
      add = rng.below(total);
    }
  }

  std::uint64_t raw_index(std::uint64_t position) const {
    if (!space.shuffle || total <= 1) return position;
    return static_cast<std::uint64_t>((u128{mul} * position + add) % total);
  }

  CodeSpec decode(std::uint64_t raw, Block*& block) {
    auto it = std::upper_bound(blocks.begin(), blocks.end(), raw,
                               [](std::uint64_t v, const Block& b) { return v < b.offset; });
    block = &*std::prev(it);
    const std::uint64_t local = raw - block->offset;
    CodeSpec spec;
    spec.family = space.family;
    spec.lattice = block->lat;
    auto pick = [&](std::uint64_t rank, std::uint32_t terms) {
      PolySpec p;
      for (auto i : unrank_subset(block->monos.size(), terms, rank)) p.terms.push_back(block->monos[i]);
      return p;
    };
    spec.a = block->fixed_a ? *block->fixed_a : pick(local / block->count_b, space.terms_a);
    spec.b = block->fixed_b ? *block->fixed_b : pick(local % block->count_b, space.terms_b);
    return spec;
  }

  bool admit(const CodeSpec& spec, Block& block) {
    if (space.family == Family::reflection) {
      try {
        const BinMatrix A = eval_poly(spec.lattice, spec.a);
        const BinMatrix B = eval_poly(spec.lattice, spec.b);
        if (space.strict_reflection)
          validate_base(A, B);
        else
          validate_stackable(A, B);
      } catch (const CommutatorViolation&) {
        return false;
      }
      return true;
    }
    if (!space.symmetry_reduce) return true;
    if (!block.group) block.group = std::make_unique<Group>(block.lat);
    return canonical_in(*block.group, key_of(block.lat, spec));
  }

  std::optional<std::pair<std::uint64_t, CodeSpec>> next() {
    while (cur.position < total) {
      const std::uint64_t pos = cur.position++;
      Block* block = nullptr;
      CodeSpec spec = decode(raw_index(pos), block);
      if (!admit(spec, *block)) continue;
      ++cur.emitted;
      return std::make_pair(pos, std::move(spec));
    }
    return std::nullopt;
  }
};

CandidateStream::CandidateStream(const SearchSpace& space) : impl_(std::make_unique<Impl>(space)) {}
CandidateStream::~CandidateStream() = default;
CandidateStream::CandidateStream(CandidateStream&&) noexcept = default;
CandidateStream& CandidateStream::operator=(CandidateStream&&) noexcept = default;

std::uint64_t CandidateStream::total() const noexcept { return impl_->total; }
std::optional<std::pair<std::uint64_t, CodeSpec>> CandidateStream::next() { return impl_->next(); }
Cursor CandidateStream::cursor() const noexcept { return impl_->cur; }
void CandidateStream::seek(const Cursor& c) { impl_->cur = c; }

std::vector<CodeSpec> enumerate_candidates(const SearchSpace& space, std::size_t limit) {
  std::vector<CodeSpec> out;
  if (space.budget == 0) return out;
  SearchSpace unlimited = space;
  CandidateStream stream(unlimited);
  while (out.size() < limit) {
    auto c = stream.next();
    if (!c) break;
    out.push_back(std::move(c->second));
  }
  return out;
}

bool is_canonical(const CodeSpec& spec) {
  if (!reduces_by_symmetry(spec)) return true;
  const Group g(spec.lattice);
  return canonical_in(g, key_of(spec.lattice, spec));
}

CodeSpec canonical_form(const CodeSpec& spec) {
  if (!reduces_by_symmetry(spec)) return spec;
  const Group g(spec.lattice);
  const Key start = key_of(spec.lattice, spec);
  Key best = start;
  for_each_image(g, start, [&](const Key& img) {
    if (img < best) best = img;
    return true;
  });
  CodeSpec out = spec;
  out.a = poly_from_cells(spec.lattice, best.first);
  out.b = poly_from_cells(spec.lattice, best.second);
  return out;
}

// ------------------------------------------------------------ search

SearchState search(const SearchSpace& space, const DistanceBudget& budget, SearchState state,
                   const HitCallback& on_hit, std::uint64_t checkpoint_every,
                   const std::function<void(const SearchState&)>& checkpoint) {
  CandidateStream stream(space);
  stream.seek(state.cursor);
  const std::size_t threads = budget.threads ? budget.threads : default_threads();
  std::uint64_t since_checkpoint = 0;

  struct Eval {
    enum { rejected, k_zero, parity, pruned, ok } outcome = ok;
    std::optional<StackedCode> code;
    DistanceResult quick;
    SearchHit hit;
  };

  state.finished = false;
  bool exhausted = false;
  while (!exhausted && state.cursor.emitted < space.budget) {
    std::vector<std::pair<std::uint64_t, CodeSpec>> chunk;
    while (chunk.size() < kChunk && state.cursor.emitted + chunk.size() < space.budget) {
      auto c = stream.next();
      if (!c) {
        exhausted = true;
        break;
      }
      chunk.push_back(std::move(*c));
    }
    if (chunk.empty()) break;

    // Stage 1: rank, parity and a cheap distance bound.
    std::vector<Eval> evals(chunk.size());
    parallel_for(chunk.size(), threads, [&](std::size_t i) {
      Eval& e = evals[i];
      const auto& [pos, spec] = chunk[i];
      try {
        e.code = build_code(spec);
      } catch (const CommutatorViolation&) {
        e.outcome = Eval::rejected;
        return;
      }
      if (e.code->k == 0) {
        e.outcome = Eval::k_zero;
        return;
      }
      const Parity parity = classify_parity(*e.code);
      if ((space.parity == ParityFilter::odd_only && parity != Parity::odd) ||
          (space.parity == ParityFilter::even_only && parity != Parity::even)) {
        e.outcome = Eval::parity;
        return;
      }
      RandomizedOptions q;
      q.iterations = std::max<std::uint64_t>(1, budget.quick_iterations);
      q.seed = derive_seed(space.seed, "search-quick", pos);
      q.threads = 1;
      e.quick = distance_randomized(*e.code, q);
      e.hit.spec = spec;
      e.hit.n = e.code->n;
      e.hit.k = e.code->k;
      e.hit.d_upper = e.quick.d_upper;
      e.hit.parity = parity;
      e.hit.position = pos;
    });

    // Stage 2: full distance only where the cheap bound is not yet dominated.
    // The true distance never exceeds the cheap bound, so pruned candidates
    // could not have joined the frontier.
    std::vector<std::size_t> survivors;
    for (std::size_t i = 0; i < evals.size(); ++i) {
      if (evals[i].outcome != Eval::ok) continue;
      const bool dominated = std::ranges::any_of(state.frontier, [&](const SearchHit& f) { return dominates(f, evals[i].hit); });
      if (dominated)
        evals[i].outcome = Eval::pruned;
      else
        survivors.push_back(i);
    }
    parallel_for(survivors.size(), threads, [&](std::size_t s) {
      Eval& e = evals[survivors[s]];
      const StackedCode& code = *e.code;
      DistanceResult r;
      if (code.n <= budget.exact_max_n) {
        ExactOptions o;
        o.budget = budget.exact_budget;
        o.initial_witness = e.quick.witness;
        r = distance_exact(code, o);
      } else {
        RandomizedOptions o;
        o.iterations = budget.iterations;
        o.seed = derive_seed(space.seed, "search-distance", e.hit.position);
        o.threads = 1;
        o.initial_witness = e.quick.witness;
        r = distance_randomized(code, o);
      }
      e.hit.d_upper = r.d_upper;
      e.hit.exact = r.exact && r.status == DistanceStatus::found;
      e.hit.merit = Merit::of(e.hit.n, e.hit.k, e.hit.d_upper);
      e.code.reset();
    });

    for (auto& e : evals) {
      ++state.stats.evaluated;
      switch (e.outcome) {
        case Eval::rejected: ++state.stats.rejected; break;
        case Eval::k_zero: ++state.stats.k_zero; break;
        case Eval::parity: ++state.stats.parity_skipped; break;
        case Eval::pruned: ++state.stats.pruned; break;
        case Eval::ok:
          ++state.stats.distance_runs;
          insert_hit(state.frontier, e.hit, on_hit);
          break;
      }
    }
    sort_hits(state.frontier);
    state.cursor = stream.cursor();
    since_checkpoint += chunk.size();
    if (checkpoint_every > 0 && checkpoint && since_checkpoint >= checkpoint_every) {
      since_checkpoint = 0;
      checkpoint(state);
    }
  }
  state.finished = true;
  sort_hits(state.frontier);
  if (checkpoint_every > 0 && checkpoint) checkpoint(state);
  return state;
}

std::vector<SearchHit> search_frontier(const SearchSpace& space, const DistanceBudget& budget) {
  return search(space, budget).frontier;
}

// ------------------------------------------------------------ JSON

json space_to_json(const SearchSpace& s) {
  json j;
  j["family"] = family_name(s.family);
  j["l"] = range_json(s.l);
  j["m"] = range_json(s.m);
  j["gamma"] = range_json(s.gamma);
  j["terms_a"] = s.terms_a;
  j["terms_b"] = s.terms_b;
  j["parity"] = parity_filter_name(s.parity);
  j["budget"] = s.budget;
  j["seed"] = s.seed;
  j["shuffle"] = s.shuffle;
  j["symmetry_reduce"] = s.symmetry_reduce;
  j["strict_reflection"] = s.strict_reflection;
  if (s.fixed_a) j["fixed_a"] = *s.fixed_a;
  if (s.fixed_b) j["fixed_b"] = *s.fixed_b;
  return j;
}

SearchSpace space_from_json(const json& j) {
  if (!j.is_object()) throw SpecError("search space must be a JSON object");
  SearchSpace s;
  auto field = [&](const char* name, auto& out) {
    if (!j.contains(name)) return;
    try {
      out = j.at(name).get<std::remove_reference_t<decltype(out)>>();
    } catch (const json::exception& e) {
      throw SpecError(std::string("field '") + name + "': " + e.what());
    }
  };
  if (!j.contains("family")) throw SpecError("field 'family': missing");
  s.family = parse_family(j.at("family").get<std::string>());
  s.l = range_from(j, "l", s.l);
  s.m = range_from(j, "m", s.m);
  s.gamma = range_from(j, "gamma", s.gamma);
  field("terms_a", s.terms_a);
  field("terms_b", s.terms_b);
  if (j.contains("parity")) s.parity = parse_parity_filter(j.at("parity").get<std::string>());
  field("budget", s.budget);
  field("seed", s.seed);
  field("shuffle", s.shuffle);
  field("symmetry_reduce", s.symmetry_reduce);
  field("strict_reflection", s.strict_reflection);
  if (j.contains("fixed_a")) s.fixed_a = j.at("fixed_a").get<std::string>();
  if (j.contains("fixed_b")) s.fixed_b = j.at("fixed_b").get<std::string>();
  s.validate();
  return s;
}

json hit_to_json(const SearchHit& h) {
  json j;
  j["spec"] = spec_to_json(h.spec);
  j["n"] = h.n;
  j["k"] = h.k;
  j["d"] = h.d_upper;
  j["exact"] = h.exact;
  j["parity"] = parity_name(h.parity);
  j["merit"] = h.merit.rounded();
  j["merit_exact"] = json::array({h.merit.num, h.merit.den});
  j["position"] = h.position;
  return j;
}

SearchHit hit_from_json(const json& j) {
  SearchHit h;
  h.spec = spec_from_json(j.at("spec"));
  h.n = j.at("n").get<std::size_t>();
  h.k = j.at("k").get<std::size_t>();
  h.d_upper = j.at("d").get<std::uint32_t>();
  h.exact = j.at("exact").get<bool>();
  h.parity = j.at("parity").get<std::string>() == "odd" ? Parity::odd : Parity::even;
  h.merit = Merit::of(h.n, h.k, h.d_upper);
  h.position = j.at("position").get<std::uint64_t>();
  return h;
}

json state_to_json(const SearchSpace& space, const SearchState& st) {
  json j;
  j["format"] = "sdq-search-checkpoint v1";
  j["space"] = space_to_json(space);
  j["cursor"] = {{"position", st.cursor.position}, {"emitted", st.cursor.emitted}};
  j["stats"] = {{"evaluated", st.stats.evaluated},       {"rejected", st.stats.rejected},
                {"k_zero", st.stats.k_zero},             {"parity_skipped", st.stats.parity_skipped},
                {"pruned", st.stats.pruned},             {"distance_runs", st.stats.distance_runs}};
  j["finished"] = st.finished;
  json hits = json::array();
  for (const auto& h : st.frontier) hits.push_back(hit_to_json(h));
  j["frontier"] = std::move(hits);
  return j;
}

SearchState state_from_json(const SearchSpace& space, const json& j) {
  if (!j.is_object() || j.value("format", "") != "sdq-search-checkpoint v1")
    throw SpecError("not a search checkpoint");
  // The budget may grow between runs; everything else must match.
  json want = space_to_json(space), have = j.at("space");
  want.erase("budget");
  have.erase("budget");
  if (want != have) throw SpecError("checkpoint was written for a different search space");
  SearchState st;
  st.cursor.position = j.at("cursor").at("position").get<std::uint64_t>();
  st.cursor.emitted = j.at("cursor").at("emitted").get<std::uint64_t>();
  const json& s = j.at("stats");
  st.stats.evaluated = s.at("evaluated").get<std::uint64_t>();
  st.stats.rejected = s.at("rejected").get<std::uint64_t>();
  st.stats.k_zero = s.at("k_zero").get<std::uint64_t>();
  st.stats.parity_skipped = s.at("parity_skipped").get<std::uint64_t>();
  st.stats.pruned = s.at("pruned").get<std::uint64_t>();
  st.stats.distance_runs = s.at("distance_runs").get<std::uint64_t>();
  st.finished = j.at("finished").get<bool>();
  for (const auto& h : j.at("frontier")) st.frontier.push_back(hit_from_json(h));
  return st;
}

}  // namespace sdq
