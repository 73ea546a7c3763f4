#include "sdq/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <span>

namespace sdq {

std::string_view bp_variant_name(BpVariant v) noexcept {
  return v == BpVariant::min_sum ? "min-sum" : "product-sum";
}

BpVariant parse_bp_variant(std::string_view name) {
  if (name == "min-sum") return BpVariant::min_sum;
  if (name == "product-sum") return BpVariant::product_sum;
  throw SpecError("unknown BP variant '" + std::string(name) + "'");
}

void DecoderConfig::validate() const {
  if (bp_iters == 0) throw SpecError("bp_iters must be at least 1");
  if (!(min_sum_scale > 0.0 && min_sum_scale <= 1.0)) throw SpecError("min-sum scale must lie in (0, 1]");
  if (osd_method == OsdMethod::exhaustive && osd_order > 16)
    throw SpecError("exhaustive OSD above order 16 is not supported");
}

std::string_view osd_method_name(OsdMethod m) noexcept {
  return m == OsdMethod::exhaustive ? "exhaustive" : "combination-sweep";
}

std::string_view bp_schedule_name(BpSchedule s) noexcept {
  return s == BpSchedule::flooding ? "flooding" : "layered";
}

BpSchedule parse_bp_schedule(std::string_view name) {
  if (name == "flooding") return BpSchedule::flooding;
  if (name == "layered") return BpSchedule::layered;
  throw SpecError("unknown BP schedule '" + std::string(name) + "'");
}

OsdMethod parse_osd_method(std::string_view name) {
  if (name == "exhaustive") return OsdMethod::exhaustive;
  if (name == "combination-sweep") return OsdMethod::combination_sweep;
  throw SpecError("unknown OSD method '" + std::string(name) + "'");
}

namespace {

constexpr double kMaxLlr = 30.0;

double llr_of(double p) {
  p = std::clamp(p, 1e-15, 0.5);
  return std::min(kMaxLlr, std::log((1.0 - p) / p));
}

// Incremental elimination over GF(2) for OSD. Each stored row is a detector
// column (first D bits) followed by the set of pivot slots that combine to it
// (next `slots` bits). Rows have distinct lowest set bits ("leads"), so a
// vector is reduced by repeatedly cancelling its lowest set bit with the row
// that leads there.
class Eliminator {
 public:
  Eliminator(std::size_t d, std::size_t slots)
      : d_(d), stride_(words_for(d + slots)), row_of_lead_(d, kNone), scratch_(stride_) {
    rows_.reserve(slots * stride_);
  }

  std::size_t rank() const noexcept { return rows_.size() / stride_; }

  // Adds `column` as pivot slot rank(); returns false if dependent.
  bool insert(const BinVector& column) {
    load(column);
    const std::size_t slot = rank();
    scratch_[(d_ + slot) / kWordBits] |= word_t{1} << ((d_ + slot) % kWordBits);
    const std::size_t lead = reduce(scratch_.data());
    if (lead >= d_) return false;
    row_of_lead_[lead] = static_cast<std::uint32_t>(slot);
    rows_.insert(rows_.end(), scratch_.begin(), scratch_.end());
    return true;
  }

  // Solves for `target`; on success writes the pivot slots used.
  bool solve(const BinVector& target, std::vector<std::uint32_t>& slots_out) {
    load(target);
    if (reduce(scratch_.data()) < d_) return false;
    slots_out.clear();
    for (std::size_t w = d_ / kWordBits; w < stride_; ++w) {
      word_t bits = scratch_[w];
      if (w == d_ / kWordBits) bits &= ~word_t{0} << (d_ % kWordBits);
      while (bits) {
        const std::size_t bit = w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits));
        bits &= bits - 1;
        slots_out.push_back(static_cast<std::uint32_t>(bit - d_));
      }
    }
    return true;
  }

 private:
  static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

  void load(const BinVector& v) {
    std::fill(scratch_.begin(), scratch_.end(), 0);
    std::copy(v.words().begin(), v.words().end(), scratch_.begin());
  }

  // Cancels set detector bits that have a row; returns the first detector bit
  // left without one (or d_ if none).
  std::size_t reduce(word_t* v) const {
    const std::size_t detector_words = words_for(d_);
    for (std::size_t w = 0; w < detector_words; ++w) {
      while (v[w]) {
        const std::size_t bit = w * kWordBits + static_cast<std::size_t>(std::countr_zero(v[w]));
        if (bit >= d_) break;
        const std::uint32_t r = row_of_lead_[bit];
        if (r == kNone) return bit;
        const word_t* row = rows_.data() + std::size_t{r} * stride_;
        for (std::size_t k = w; k < stride_; ++k) v[k] ^= row[k];
      }
    }
    return d_;
  }

  std::size_t d_, stride_;
  std::vector<word_t> rows_;
  std::vector<std::uint32_t> row_of_lead_;
  std::vector<word_t> scratch_;
};

}  // namespace

Decoder::Decoder(const DetectorModel& model, const DecoderConfig& config)
    : model_(merge_mechanisms(model)), config_(config) {
  config_.validate();
  M_ = model_.mechanisms.size();
  D_ = model_.num_detectors;
  prior_.resize(M_);
  columns_.assign(M_, BinVector(D_));
  std::vector<std::vector<std::uint32_t>> check_vars(D_);
  for (std::uint32_t j = 0; j < M_; ++j) {
    prior_[j] = llr_of(model_.mechanisms[j].p);
    for (auto d : model_.mechanisms[j].detectors) {
      check_vars[d].push_back(j);
      columns_[j].set(d);
    }
  }
  check_start_.assign(D_ + 1, 0);
  for (std::size_t i = 0; i < D_; ++i) {
    check_start_[i + 1] = check_start_[i] + static_cast<std::uint32_t>(check_vars[i].size());
    edge_var_.insert(edge_var_.end(), check_vars[i].begin(), check_vars[i].end());
  }
  rank_ = rank(detector_matrix(model_));
}

BinVector Decoder::syndrome_of(const std::vector<std::uint32_t>& error) const {
  BinVector s(D_);
  for (auto j : error) s ^= columns_[j];
  return s;
}

BinVector Decoder::observables_of(const std::vector<std::uint32_t>& error) const {
  BinVector o(model_.num_observables);
  for (auto j : error)
    for (auto k : model_.mechanisms[j].observables) o.flip(k);
  return o;
}

// Flooding schedule, organised check by check: the messages into check i are
// rebuilt from the previous totals (v2c = total - c2v), the check update
// overwrites c2v, and the new c2v are summed straight into the next totals.
// Only c2v is stored per edge, and every per-edge array is walked in order.
bool Decoder::run_bp(const BinVector& syndrome, Workspace& ws) const {
  const std::size_t E = edge_var_.size();
  ws.c2v.assign(E, 0.0f);
  ws.posterior.resize(M_);
  ws.next.resize(M_);
  for (std::size_t j = 0; j < M_; ++j) ws.posterior[j] = static_cast<float>(prior_[j]);
  ws.hard.assign(M_, 0);

  // Unsatisfied checks under the current hard decision (initially all zero),
  // kept up to date as decisions flip.
  ws.parity.assign(D_, 0);
  std::size_t unsatisfied = 0;
  for (std::size_t i = 0; i < D_; ++i) {
    ws.parity[i] = syndrome.get(i);
    unsatisfied += ws.parity[i];
  }

  const bool min_sum = config_.variant == BpVariant::min_sum;
  const auto alpha = static_cast<float>(config_.min_sum_scale);
  const auto cap = static_cast<float>(kMaxLlr);
  float* c2v = ws.c2v.data();
  const std::uint32_t* var = edge_var_.data();

  // Flooding computes every check from the previous iteration's totals;
  // layered refreshes a mechanism's total as soon as one of its checks has
  // spoken, which damps the oscillation flooding shows on the many short
  // cycles of repeated-round detector graphs.
  const bool layered = config_.schedule == BpSchedule::layered;
  for (std::uint32_t it = 0; it < config_.bp_iters; ++it) {
    float* total = ws.posterior.data();
    float* next = layered ? total : ws.next.data();
    if (!layered)
      for (std::size_t j = 0; j < M_; ++j) next[j] = static_cast<float>(prior_[j]);

    for (std::size_t i = 0; i < D_; ++i) {
      const std::uint32_t b = check_start_[i], end = check_start_[i + 1];
      if (b == end) continue;
      const std::size_t deg = end - b;
      ws.in.resize(deg);
      float* in = ws.in.data();
      for (std::size_t k = 0; k < deg; ++k) in[k] = total[var[b + k]] - c2v[b + k];
      const bool flipped = syndrome.get(i);
      if (min_sum) {
        simd::minsum_check(in, c2v + b, deg, alpha, cap, flipped);
      } else {
        // Exclusive tanh products via prefix / suffix sweeps (robust to zeros).
        ws.tanh_in.resize(deg);
        float* t = ws.tanh_in.data();
        for (std::size_t k = 0; k < deg; ++k) t[k] = std::tanh(in[k] / 2.0f);
        float prefix = 1.0f;
        for (std::size_t k = 0; k < deg; ++k) {
          c2v[b + k] = prefix;
          prefix *= t[k];
        }
        const float sign = flipped ? -1.0f : 1.0f;
        float suffix = 1.0f;
        for (std::size_t k = deg; k-- > 0;) {
          const double prod = std::clamp(static_cast<double>(c2v[b + k]) * suffix, -1.0 + 1e-7, 1.0 - 1e-7);
          c2v[b + k] = std::clamp(sign * 2.0f * static_cast<float>(std::atanh(prod)), -cap, cap);
          suffix *= t[k];
        }
      }
      if (layered)
        for (std::size_t k = 0; k < deg; ++k) total[var[b + k]] = in[k] + c2v[b + k];
      else
        for (std::size_t k = 0; k < deg; ++k) next[var[b + k]] += c2v[b + k];
    }
    if (!layered) std::swap(ws.posterior, ws.next);

    for (std::size_t j = 0; j < M_; ++j) {
      const std::uint8_t hard = ws.posterior[j] < 0.0f;
      if (hard == ws.hard[j]) continue;
      ws.hard[j] = hard;
      for (auto d : model_.mechanisms[j].detectors) {
        unsatisfied += ws.parity[d] ? -1 : 1;
        ws.parity[d] ^= 1U;
      }
    }
    if (unsatisfied == 0) return true;
  }
  return false;
}

bool Decoder::run_osd(const BinVector& syndrome, Workspace& ws, std::vector<std::uint32_t>& error) const {
  ws.order.resize(M_);
  std::iota(ws.order.begin(), ws.order.end(), 0U);
  std::stable_sort(ws.order.begin(), ws.order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return ws.posterior[a] < ws.posterior[b]; });

  const bool sweep = config_.osd_method == OsdMethod::combination_sweep;
  const std::size_t order = config_.osd_order;
  // Non-pivot columns in reliability order: the first `order` of them for
  // the exhaustive method, all of them for the combination sweep.
  const std::size_t want_extra = order == 0 ? 0 : sweep ? M_ : order;
  Eliminator elim(D_, rank_);
  std::vector<std::uint32_t> pivot_cols, extra_cols;
  for (auto j : ws.order) {
    if (elim.rank() < rank_ && elim.insert(columns_[j]))
      pivot_cols.push_back(j);
    else if (extra_cols.size() < want_extra)
      extra_cols.push_back(j);
    else if (elim.rank() == rank_)
      break;
  }

  std::vector<std::uint32_t> slots;
  if (!elim.solve(syndrome, slots)) return false;
  error.clear();
  for (auto s : slots) error.push_back(pivot_cols[s]);
  if (extra_cols.empty()) return true;

  // Candidates are scored by prior weight; the pivot part of a candidate is
  // the base solution XOR the pivot combinations of its flipped columns.
  std::vector<std::uint8_t> in_base(pivot_cols.size(), 0);
  double base_cost = 0.0;
  for (auto s : slots) {
    in_base[s] = 1;
    base_cost += prior_[pivot_cols[s]];
  }
  std::vector<std::vector<std::uint32_t>> combos(extra_cols.size());
  for (std::size_t t = 0; t < extra_cols.size(); ++t) elim.solve(columns_[extra_cols[t]], combos[t]);

  std::vector<std::uint8_t> toggled(pivot_cols.size(), 0);
  auto score = [&](std::span<const std::size_t> flips) {
    double c = base_cost;
    for (auto t : flips) {
      c += prior_[extra_cols[t]];
      for (auto s : combos[t]) toggled[s] ^= 1U;
    }
    for (auto t : flips)
      for (auto s : combos[t])
        if (toggled[s]) {
          c += in_base[s] ? -prior_[pivot_cols[s]] : prior_[pivot_cols[s]];
          toggled[s] = 0;
        }
    return c;
  };

  double best = base_cost;
  std::vector<std::size_t> best_flips, flips;
  auto consider = [&] {
    const double c = score(flips);
    if (c < best) {
      best = c;
      best_flips = flips;
    }
  };
  if (sweep) {
    for (std::size_t a = 0; a < extra_cols.size(); ++a) {
      flips = {a};
      consider();
    }
    const std::size_t head = std::min(order, extra_cols.size());
    for (std::size_t a = 0; a < head; ++a)
      for (std::size_t b = a + 1; b < head; ++b) {
        flips = {a, b};
        consider();
      }
  } else {
    for (std::uint32_t mask = 1; mask < (1U << extra_cols.size()); ++mask) {
      flips.clear();
      for (std::size_t b = 0; b < extra_cols.size(); ++b)
        if (mask >> b & 1U) flips.push_back(b);
      consider();
    }
  }
  if (best_flips.empty()) return true;

  for (auto t : best_flips)
    for (auto s : combos[t]) in_base[s] ^= 1U;
  error.clear();
  for (std::size_t s = 0; s < pivot_cols.size(); ++s)
    if (in_base[s]) error.push_back(pivot_cols[s]);
  for (auto t : best_flips) error.push_back(extra_cols[t]);
  return true;
}

DecodeResult Decoder::decode(const BinVector& detectors) const {
  Workspace ws;
  return decode(detectors, ws);
}

DecodeResult Decoder::decode(const BinVector& detectors, Workspace& ws) const {
  if (detectors.size() != D_) throw DimensionError("decode: detector vector length does not match the model");
  DecodeResult r;
  r.observables = BinVector(model_.num_observables);
  if (detectors.is_zero()) {
    r.valid = r.bp_converged = true;
    return r;
  }
  if (run_bp(detectors, ws)) {
    r.bp_converged = r.valid = true;
    for (std::uint32_t j = 0; j < M_; ++j)
      if (ws.hard[j]) r.error.push_back(j);
  } else if (config_.osd) {
    r.valid = run_osd(detectors, ws, r.error);
    if (!r.valid) r.error.clear();
  } else {
    for (std::uint32_t j = 0; j < M_; ++j)
      if (ws.hard[j]) r.error.push_back(j);
  }
  std::sort(r.error.begin(), r.error.end());
  r.observables = observables_of(r.error);
  return r;
}

// ---------------------------------------------------------------- ML oracle

MlOracle::MlOracle(const DetectorModel& model, unsigned max_kernel_dim) : model_(merge_mechanisms(model)) {
  const std::size_t M = model_.mechanisms.size(), D = model_.num_detectors;
  if (model_.num_observables > 64) throw InstanceTooLarge("ml_oracle: more than 64 observables");
  const BinMatrix h = detector_matrix(model_);
  kernel_ = nullspace_basis(h);
  if (kernel_.size() > max_kernel_dim)
    throw InstanceTooLarge("ml_oracle: coset enumeration needs 2^" + std::to_string(kernel_.size()) +
                           " steps (limit 2^" + std::to_string(max_kernel_dim) + ")");
  weight_.resize(M);
  for (std::size_t j = 0; j < M; ++j) {
    const double p = model_.mechanisms[j].p;
    weight_[j] = std::log(p) - std::log1p(-p);
  }
  for (const auto& k : kernel_) {
    kernel_support_.push_back(k.support());
    std::uint64_t obs = 0;
    for (auto j : k.support())
      for (auto o : model_.mechanisms[j].observables) obs ^= std::uint64_t{1} << o;
    kernel_obs_.push_back(obs);
  }
  BinMatrix aug(D, M + D);
  for (std::size_t i = 0; i < D; ++i) {
    for (std::size_t j = 0; j < M; ++j)
      if (h.get(i, j)) aug.set(i, j);
    aug.set(i, M + i);
  }
  Echelon ech = row_reduce(std::move(aug));
  reduced_ = std::move(ech.reduced);
  pivots_ = std::move(ech.pivots);
}

std::vector<std::pair<std::uint64_t, double>> MlOracle::class_probabilities(const BinVector& detectors) const {
  const std::size_t M = model_.mechanisms.size(), D = model_.num_detectors;
  if (detectors.size() != D) throw DimensionError("ml_oracle: detector vector length does not match the model");

  // Particular solution: row i of the reduced [H | I] is (T H)_i | T_i, so
  // (T s)_i fixes the pivot variable of a row with an H pivot and must vanish
  // on the rows whose H part reduced to zero.
  BinVector e(M);
  for (std::size_t i = 0; i < reduced_.rows(); ++i) {
    bool t_s = false;
    for (std::size_t c = 0; c < D; ++c) t_s ^= reduced_.get(i, M + c) && detectors.get(c);
    if (!t_s) continue;
    if (i < pivots_.size() && pivots_[i] < M)
      e.set(pivots_[i]);
    else
      return {};  // syndrome outside the column space
  }

  double logp = 0.0;
  std::uint64_t cls = 0;
  for (auto j : e.support()) {
    logp += weight_[j];
    for (auto o : model_.mechanisms[j].observables) cls ^= std::uint64_t{1} << o;
  }

  // Per-class running log-sum-exp: total = top + log(sum). Classes index a
  // dense table when there are few observables.
  struct Acc {
    double top = -std::numeric_limits<double>::infinity();
    double sum = 0.0;
  };
  const bool dense = model_.num_observables <= 16;
  std::vector<Acc> table(dense ? std::size_t{1} << model_.num_observables : 0);
  std::map<std::uint64_t, Acc> sparse;
  auto add = [&](std::uint64_t c, double lp) {
    Acc& a = dense ? table[c] : sparse[c];
    if (lp > a.top) {
      a.sum = a.sum * std::exp(a.top - lp) + 1.0;
      a.top = lp;
    } else {
      a.sum += std::exp(lp - a.top);
    }
  };

  // Gray-code walk over the coset e + ker H: step g flips kernel vector
  // countr_zero(g), so each element costs one sparse update.
  add(cls, logp);
  const std::uint64_t steps = std::uint64_t{1} << kernel_.size();
  for (std::uint64_t g = 1; g < steps; ++g) {
    const auto b = static_cast<std::size_t>(std::countr_zero(g));
    for (auto j : kernel_support_[b]) {
      logp += e.get(j) ? -weight_[j] : weight_[j];
      e.flip(j);
    }
    cls ^= kernel_obs_[b];
    add(cls, logp);
  }

  std::vector<std::pair<std::uint64_t, double>> logs;
  if (dense) {
    for (std::size_t c = 0; c < table.size(); ++c)
      if (table[c].sum > 0.0) logs.emplace_back(c, table[c].top + std::log(table[c].sum));
  } else {
    for (const auto& [c, a] : sparse) logs.emplace_back(c, a.top + std::log(a.sum));
  }
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& [c, l] : logs) top = std::max(top, l);
  std::vector<std::pair<std::uint64_t, double>> out;
  double norm = 0.0;
  for (const auto& [c, l] : logs) {
    out.emplace_back(c, std::exp(l - top));
    norm += out.back().second;
  }
  for (auto& [c, w] : out) w /= norm;
  return out;
}

BinVector MlOracle::decode(const BinVector& detectors) const {
  BinVector result(model_.num_observables);
  std::uint64_t best_cls = 0;
  double best = -1.0;
  for (const auto& [c, w] : class_probabilities(detectors))
    if (w > best) {  // ascending classes: ties keep the smaller one
      best = w;
      best_cls = c;
    }
  for (std::size_t o = 0; o < model_.num_observables; ++o)
    if (best_cls >> o & 1U) result.set(o);
  return result;
}

BinVector ml_oracle(const DetectorModel& model, const BinVector& detectors) {
  return MlOracle(model).decode(detectors);
}

}  // namespace sdq
