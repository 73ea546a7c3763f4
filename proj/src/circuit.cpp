#include "sdq/circuit.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace sdq {

std::string_view noise_kind_name(NoiseKind k) noexcept {
  switch (k) {
    case NoiseKind::code_capacity: return "code-capacity";
    case NoiseKind::phenomenological: return "phenomenological";
    case NoiseKind::circuit_level: return "circuit-level";
  }
  return "?";
}

NoiseKind parse_noise_kind(std::string_view name) {
  if (name == "code-capacity") return NoiseKind::code_capacity;
  if (name == "phenomenological") return NoiseKind::phenomenological;
  if (name == "circuit-level" || name == "circuit") return NoiseKind::circuit_level;
  throw SpecError("unknown noise kind '" + std::string(name) + "'");
}

void NoiseModel::validate() const {
  if (!(p >= 0.0 && p <= 1.0)) throw SpecError("noise rate p must lie in [0, 1]");
}

std::string_view op_name(Op op) noexcept {
  switch (op) {
    case Op::reset: return "R";
    case Op::h: return "H";
    case Op::cx: return "CX";
    case Op::measure: return "M";
    case Op::dep1: return "DEPOLARIZE1";
    case Op::dep2: return "DEPOLARIZE2";
    case Op::x_error: return "X_ERROR";
  }
  return "?";
}

std::vector<std::uint32_t> greedy_edge_coloring(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
  std::vector<std::vector<bool>> left, right;  // colours in use at each endpoint
  auto in_use = [](std::vector<std::vector<bool>>& side, std::uint32_t v, std::uint32_t c) {
    if (side.size() <= v) side.resize(v + 1);
    return c < side[v].size() && side[v][c];
  };
  auto mark = [](std::vector<std::vector<bool>>& side, std::uint32_t v, std::uint32_t c) {
    if (side[v].size() <= c) side[v].resize(c + 1, false);
    side[v][c] = true;
  };
  std::vector<std::uint32_t> colour(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto [a, b] = edges[e];
    std::uint32_t c = 0;
    while (in_use(left, a, c) || in_use(right, b, c)) ++c;
    mark(left, a, c);
    mark(right, b, c);
    colour[e] = c;
  }
  return colour;
}

namespace {

using Layers = std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>>;

Layers colour_tanner_graph(const BinMatrix& h) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::size_t r = 0; r < h.rows(); ++r)
    for (auto c : h.row_support(r)) edges.emplace_back(static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c));
  const auto colour = greedy_edge_coloring(edges);
  Layers layers;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (layers.size() <= colour[e]) layers.resize(colour[e] + 1);
    layers[colour[e]].push_back(edges[e]);
  }
  return layers;
}

class Builder {
 public:
  explicit Builder(NoisyCircuit& c) : c_(c) {}

  void op(Op o, std::vector<std::uint32_t> targets, double p = 0.0) {
    if (targets.empty()) return;
    if (o == Op::dep1 || o == Op::dep2 || o == Op::x_error) {
      if (p <= 0.0) return;
    }
    if (o == Op::measure) c_.num_measurements += static_cast<std::uint32_t>(targets.size());
    c_.instructions.push_back({o, p, std::move(targets)});
  }

 private:
  NoisyCircuit& c_;
};

std::vector<std::uint32_t> iota(std::uint32_t first, std::uint32_t count) {
  std::vector<std::uint32_t> v(count);
  for (std::uint32_t i = 0; i < count; ++i) v[i] = first + i;
  return v;
}

}  // namespace

NoisyCircuit build_circuit(const StackedCode& code, const NoiseModel& noise, std::uint32_t rounds, MemoryBasis basis) {
  noise.validate();
  if (rounds == 0) throw SpecError("rounds must be at least 1");
  if (noise.kind == NoiseKind::code_capacity) rounds = 1;

  const BinMatrix& h = code.H;
  NoisyCircuit c;
  c.num_data = static_cast<std::uint32_t>(code.n);
  c.num_checks = static_cast<std::uint32_t>(h.rows());
  c.num_qubits = c.num_data + 2 * c.num_checks;
  c.rounds = rounds;
  c.basis = basis;
  c.noise = noise;
  c.x_layers = colour_tanner_graph(h);
  c.z_layers = c.x_layers;  // H_X == H_Z: same graph, same colouring

  const bool circuit_level = noise.kind == NoiseKind::circuit_level;
  const double p = noise.p;
  const double gate_p = circuit_level ? p : 0.0;
  const std::uint32_t R = c.num_checks;
  const auto data = iota(0, c.num_data);
  const auto x_anc = iota(c.num_data, R);
  const auto ancillas = iota(c.num_data, 2 * R);
  Builder b(c);

  // Preparation.
  b.op(Op::reset, iota(0, c.num_qubits));
  b.op(Op::dep1, data, gate_p);
  if (basis == MemoryBasis::x) {
    b.op(Op::h, data);
    b.op(Op::dep1, data, gate_p);
  }

  auto cnot_layer = [&](const std::vector<std::pair<std::uint32_t, std::uint32_t>>& layer, bool x_type) {
    std::vector<std::uint32_t> pairs;
    std::vector<bool> busy(c.num_qubits, false);
    for (auto [check, q] : layer) {
      const std::uint32_t anc = x_type ? c.x_ancilla(check) : c.z_ancilla(check);
      if (x_type) {
        pairs.push_back(anc);
        pairs.push_back(q);
      } else {
        pairs.push_back(q);
        pairs.push_back(anc);
      }
      busy[anc] = busy[q] = true;
    }
    b.op(Op::cx, pairs);
    b.op(Op::dep2, pairs, gate_p);
    if (circuit_level && noise.idle_noise) {
      std::vector<std::uint32_t> idle;
      for (std::uint32_t q = 0; q < c.num_qubits; ++q)
        if (!busy[q]) idle.push_back(q);
      b.op(Op::dep1, idle, p);
    }
  };

  for (std::uint32_t r = 0; r < rounds; ++r) {
    if (r > 0) b.op(Op::reset, ancillas);
    b.op(Op::dep1, ancillas, gate_p);
    // Data noise of the simplified models: every round, or once up front.
    if (noise.kind == NoiseKind::phenomenological || (noise.kind == NoiseKind::code_capacity && r == 0))
      b.op(Op::dep1, data, p);
    b.op(Op::h, x_anc);
    b.op(Op::dep1, x_anc, gate_p);
    if (basis == MemoryBasis::z) {
      for (const auto& layer : c.x_layers) cnot_layer(layer, true);
      for (const auto& layer : c.z_layers) cnot_layer(layer, false);
    } else {
      for (const auto& layer : c.z_layers) cnot_layer(layer, false);
      for (const auto& layer : c.x_layers) cnot_layer(layer, true);
    }
    b.op(Op::h, x_anc);
    b.op(Op::dep1, x_anc, gate_p);
    b.op(Op::x_error, ancillas, noise.kind == NoiseKind::code_capacity ? 0.0 : p);
    b.op(Op::measure, ancillas);
  }

  // Transversal readout.
  if (basis == MemoryBasis::x) {
    b.op(Op::h, data);
    b.op(Op::dep1, data, gate_p);
  }
  b.op(Op::x_error, data, noise.kind == NoiseKind::code_capacity ? 0.0 : p);
  b.op(Op::measure, data);

  // Detectors. Checks of the memory basis are deterministic from round 0;
  // the other type only from round 1.
  auto meas_x = [&](std::uint32_t r, std::uint32_t check) { return 2 * R * r + check; };
  auto meas_z = [&](std::uint32_t r, std::uint32_t check) { return 2 * R * r + R + check; };
  const std::uint32_t final_base = 2 * R * rounds;
  const bool z_memory = basis == MemoryBasis::z;
  for (std::uint32_t r = 0; r < rounds; ++r) {
    for (int pass = 0; pass < 2; ++pass) {
      const bool z_pass = pass == 0;
      const bool deterministic_first = z_pass == z_memory;
      if (r == 0 && !deterministic_first) continue;
      for (std::uint32_t check = 0; check < R; ++check) {
        const std::uint32_t now = z_pass ? meas_z(r, check) : meas_x(r, check);
        std::vector<std::uint32_t> d;
        if (r > 0) d.push_back(z_pass ? meas_z(r - 1, check) : meas_x(r - 1, check));
        d.push_back(now);
        c.detectors.push_back(std::move(d));
        c.detector_tags.push_back({z_pass ? DetectorTag::z_check : DetectorTag::x_check, check, r});
      }
    }
  }
  for (std::uint32_t check = 0; check < R; ++check) {
    std::vector<std::uint32_t> d;
    for (auto q : h.row_support(check)) d.push_back(final_base + static_cast<std::uint32_t>(q));
    d.push_back(z_memory ? meas_z(rounds - 1, check) : meas_x(rounds - 1, check));
    std::sort(d.begin(), d.end());
    c.detectors.push_back(std::move(d));
    c.detector_tags.push_back({DetectorTag::final, check, rounds});
  }
  for (const auto& logical : code.logicals) {
    std::vector<std::uint32_t> o;
    for (auto q : logical.support()) o.push_back(final_base + static_cast<std::uint32_t>(q));
    c.observables.push_back(std::move(o));
  }
  return c;
}

NoisyCircuit noiseless(const NoisyCircuit& circuit) {
  NoisyCircuit out = circuit;
  std::erase_if(out.instructions, [](const Instruction& i) { return i.is_noise(); });
  out.noise.p = 0.0;
  return out;
}

std::string circuit_to_text(const NoisyCircuit& c) {
  std::ostringstream out;
  out << "# sdq-circuit v1 qubits " << c.num_qubits << " data " << c.num_data << " checks " << c.num_checks
      << " rounds " << c.rounds << " basis " << (c.basis == MemoryBasis::z ? "Z" : "X") << '\n';
  char buf[64];
  for (const auto& ins : c.instructions) {
    out << op_name(ins.op);
    if (ins.is_noise()) {
      std::snprintf(buf, sizeof buf, "(%.17g)", ins.p);
      out << buf;
    }
    for (auto t : ins.targets) out << ' ' << t;
    out << '\n';
  }
  for (const auto& d : c.detectors) {
    out << "DETECTOR";
    for (auto m : d) out << ' ' << m;
    out << '\n';
  }
  for (std::size_t i = 0; i < c.observables.size(); ++i) {
    out << "OBSERVABLE " << i;
    for (auto m : c.observables[i]) out << ' ' << m;
    out << '\n';
  }
  return out.str();
}

}  // namespace sdq
