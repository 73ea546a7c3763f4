#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "sdq/catalog.hpp"
#include "sdq/circuit.hpp"
#include "sdq/detector_model.hpp"
#include "sdq/frame_sim.hpp"

using namespace sdq;

namespace {

StackedCode fixture(std::string_view id) { return build_code(catalog::to_spec(*catalog::find(id))); }

NoiseModel noise(NoiseKind kind, double p, bool idle = false) {
  NoiseModel m;
  m.kind = kind;
  m.p = p;
  m.idle_noise = idle;
  return m;
}

// Index of the detector carrying `tag`, or -1.
long detector_index(const NoisyCircuit& c, DetectorTag::Kind kind, std::uint32_t check, std::uint32_t round) {
  for (std::size_t i = 0; i < c.detector_tags.size(); ++i) {
    const auto& t = c.detector_tags[i];
    if (t.kind == kind && t.check == check && t.round == round) return static_cast<long>(i);
  }
  return -1;
}

// Runs the circuit without noise on one shot, multiplying `pauli` onto
// `qubit` just before instruction `at`; returns the flipped detectors.
std::vector<std::size_t> flipped_detectors(const NoisyCircuit& c, std::size_t at, std::uint32_t qubit, PauliCode pauli) {
  FrameSimulator sim(c.num_qubits, 1);
  Rng rng(0, "unused");
  for (std::size_t i = 0; i < c.instructions.size(); ++i) {
    if (i == at) sim.inject(qubit, pauli);
    sim.apply(c.instructions[i], rng, false);
  }
  SampleSet s;
  s.shots = 1;
  s.detectors = BinMatrix(1, c.detectors.size());
  s.observables = BinMatrix(1, c.observables.size());
  frames_to_samples(c, sim, s, 0);
  return s.detectors.row_support(0);
}

std::size_t nth_instruction(const NoisyCircuit& c, Op op, std::size_t n) {
  for (std::size_t i = 0; i < c.instructions.size(); ++i)
    if (c.instructions[i].op == op && n-- == 0) return i;
  FAIL("instruction not found");
  return 0;
}

// Independent detector model: every elementary fault of every noise
// instruction is pushed forward through the noiseless circuit by the frame
// simulator (one shot per fault), and faults with equal signatures are
// combined as independent events.
DetectorModel brute_force_model(const NoisyCircuit& c) {
  const std::size_t D = c.detectors.size(), K = c.observables.size();
  std::map<BinVector, double> merged;
  for (std::size_t pos = 0; pos < c.instructions.size(); ++pos) {
    const Instruction& ins = c.instructions[pos];
    if (!ins.is_noise()) continue;
    struct Fault {
      std::vector<std::pair<std::uint32_t, PauliCode>> paulis;
      double q;
    };
    std::vector<Fault> faults;
    if (ins.op == Op::dep1) {
      // Three independent X, Y, Z components reproduce the channel when
      // (1 - 2q)^2 = 1 - 4p/3.
      const double q = (1.0 - std::sqrt(1.0 - 4.0 * ins.p / 3.0)) / 2.0;
      for (auto t : ins.targets)
        for (PauliCode pc = 1; pc <= 3; ++pc) faults.push_back({{{t, pc}}, q});
    } else if (ins.op == Op::dep2) {
      // Fifteen components with (1 - 2q)^8 = 1 - 16p/15.
      const double q = (1.0 - std::pow(1.0 - 16.0 * ins.p / 15.0, 1.0 / 8.0)) / 2.0;
      for (std::size_t i = 0; i < ins.targets.size(); i += 2)
        for (unsigned code = 1; code < 16; ++code)
          faults.push_back({{{ins.targets[i], static_cast<PauliCode>(code & 3U)},
                             {ins.targets[i + 1], static_cast<PauliCode>(code >> 2)}},
                            q});
    } else {
      for (auto t : ins.targets) faults.push_back({{{t, PauliCode{1}}}, ins.p});
    }

    FrameSimulator sim(c.num_qubits, faults.size());
    Rng rng(0, "unused");
    for (std::size_t i = 0; i <= pos; ++i) sim.apply(c.instructions[i], rng, false);
    for (std::size_t f = 0; f < faults.size(); ++f)
      for (auto [q, pc] : faults[f].paulis)
        if (pc) sim.inject(q, pc, f);
    for (std::size_t i = pos + 1; i < c.instructions.size(); ++i) sim.apply(c.instructions[i], rng, false);
    SampleSet s;
    s.shots = faults.size();
    s.detectors = BinMatrix(faults.size(), D);
    s.observables = BinMatrix(faults.size(), K);
    frames_to_samples(c, sim, s, 0);

    for (std::size_t f = 0; f < faults.size(); ++f) {
      BinVector sig(D + K);
      for (auto d : s.detectors.row_support(f)) sig.set(d);
      for (auto o : s.observables.row_support(f)) sig.set(D + o);
      if (sig.is_zero()) continue;
      auto [it, fresh] = merged.try_emplace(sig, faults[f].q);
      if (!fresh) it->second = it->second * (1 - faults[f].q) + faults[f].q * (1 - it->second);
    }
  }
  DetectorModel m;
  m.num_detectors = static_cast<std::uint32_t>(D);
  m.num_observables = static_cast<std::uint32_t>(K);
  for (const auto& [sig, q] : merged) {
    Mechanism mech;
    mech.p = q;
    for (auto i : sig.support()) {
      if (i < D)
        mech.detectors.push_back(static_cast<std::uint32_t>(i));
      else
        mech.observables.push_back(static_cast<std::uint32_t>(i - D));
    }
    m.mechanisms.push_back(std::move(mech));
  }
  return m;
}

std::map<std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>, double> by_signature(const DetectorModel& m) {
  std::map<std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>, double> out;
  for (const auto& mech : m.mechanisms) out[{mech.detectors, mech.observables}] = mech.p;
  return out;
}

// P(detector fires) when independent mechanisms flip it.
std::vector<double> analytic_marginals(const DetectorModel& m) {
  std::vector<double> keep(m.num_detectors, 1.0);
  for (const auto& mech : m.mechanisms)
    for (auto d : mech.detectors) keep[d] *= 1.0 - 2.0 * mech.p;
  for (auto& k : keep) k = (1.0 - k) / 2.0;
  return keep;
}

}  // namespace

TEST_CASE("qubit layout of the [[36,4,6]] experiment") {
  const StackedCode code = fixture("bicycle-36-4-6");
  const NoisyCircuit c = build_circuit(code, noise(NoiseKind::circuit_level, 1e-3), 6);
  CHECK(c.num_data == 36);
  CHECK(2 * c.num_checks == 36);  // one X and one Z ancilla per row of H
  CHECK(c.num_qubits == 72);
  CHECK(c.rounds == 6);

  // Every ancilla is measured exactly once per round, then all data once.
  std::vector<std::uint32_t> measured(c.num_qubits, 0);
  std::size_t measure_ops = 0;
  for (const auto& ins : c.instructions)
    if (ins.op == Op::measure) {
      ++measure_ops;
      for (auto q : ins.targets) ++measured[q];
    }
  CHECK(measure_ops == 7);
  for (std::uint32_t q = 0; q < c.num_qubits; ++q) CHECK(measured[q] == (q < c.num_data ? 1u : 6u));
  CHECK(c.num_measurements == 6 * 36 + 36);
  CHECK(c.observables.size() == code.k);

  // Z checks from round 0, X checks from round 1, plus the final comparison.
  CHECK(c.detectors.size() == 18 * 6 + 18 * 5 + 18);
  CHECK(c.instructions.back().op == Op::measure);
  CHECK(c.instructions.back().targets.size() == 36);
}

TEST_CASE("CNOT layers form a proper edge colouring of the Tanner graph") {
  for (auto id : {"bicycle-24-8-4", "bicycle-36-4-6", "bb-32-12-4"}) {
    CAPTURE(id);
    const StackedCode code = fixture(id);
    const NoisyCircuit c = build_circuit(code, noise(NoiseKind::circuit_level, 1e-3), 2);
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    for (const auto& layer : c.x_layers) {
      std::set<std::uint32_t> checks, qubits;
      for (auto [check, q] : layer) {
        CHECK(checks.insert(check).second);
        CHECK(qubits.insert(q).second);
        CHECK(code.H.get(check, q));
        CHECK(seen.insert({check, q}).second);
      }
    }
    std::size_t edges = 0;
    for (std::size_t r = 0; r < code.H.rows(); ++r) edges += code.H.row_weight(r);
    CHECK(seen.size() == edges);
    // Greedy colouring never needs more than 2 * max degree - 1 colours.
    std::size_t max_deg = 0;
    for (std::size_t r = 0; r < code.H.rows(); ++r) max_deg = std::max(max_deg, code.H.row_weight(r));
    CHECK(c.x_layers.size() <= 2 * max_deg - 1);
  }
  const std::vector<std::pair<std::uint32_t, std::uint32_t>> star = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  CHECK(greedy_edge_coloring(star) == std::vector<std::uint32_t>{0, 1, 1, 0});
}

TEST_CASE("noiseless experiments have deterministic zero detectors") {
  const StackedCode code = fixture("bicycle-24-8-4");
  for (auto kind : {NoiseKind::code_capacity, NoiseKind::phenomenological, NoiseKind::circuit_level}) {
    for (auto basis : {MemoryBasis::z, MemoryBasis::x}) {
      CAPTURE(noise_kind_name(kind));
      const NoisyCircuit noisy = build_circuit(code, noise(kind, 0.01, true), 4, basis);
      const NoisyCircuit c = noiseless(noisy);
      CHECK(std::none_of(c.instructions.begin(), c.instructions.end(), [](const Instruction& i) { return i.is_noise(); }));
      const SampleSet s = sample(c, 10000, 5);
      CHECK(s.detectors.is_zero());
      CHECK(s.observables.is_zero());
      // p = 0 builds no noise instructions at all.
      const SampleSet z = sample(build_circuit(code, noise(kind, 0.0), 4, basis), 10000, 6);
      CHECK(z.detectors.is_zero());
      CHECK(z.observables.is_zero());
    }
  }
}

TEST_CASE("noise placement per model kind") {
  const StackedCode code = fixture("bicycle-24-8-4");
  auto count = [](const NoisyCircuit& c, Op op) {
    return std::count_if(c.instructions.begin(), c.instructions.end(), [&](const Instruction& i) { return i.op == op; });
  };
  const NoisyCircuit cap = build_circuit(code, noise(NoiseKind::code_capacity, 0.05), 9);
  CHECK(cap.rounds == 1);
  CHECK(count(cap, Op::dep1) == 1);
  CHECK(count(cap, Op::dep2) == 0);
  CHECK(count(cap, Op::x_error) == 0);

  const NoisyCircuit phen = build_circuit(code, noise(NoiseKind::phenomenological, 0.05), 3);
  CHECK(count(phen, Op::dep1) == 3);
  CHECK(count(phen, Op::dep2) == 0);
  CHECK(count(phen, Op::x_error) == 4);  // ancillas each round, data at the end

  const NoisyCircuit circ = build_circuit(code, noise(NoiseKind::circuit_level, 0.05), 3);
  CHECK(count(circ, Op::dep2) == count(circ, Op::cx));
  for (std::size_t i = 0; i + 1 < circ.instructions.size(); ++i) {
    const Op op = circ.instructions[i].op;
    // Gates and resets are followed by their depolarizing channel.
    if (op == Op::cx) CHECK(circ.instructions[i + 1].op == Op::dep2);
    if (op == Op::h || op == Op::reset) CHECK(circ.instructions[i + 1].op == Op::dep1);
    // Every measurement is preceded by a readout flip.
    if (circ.instructions[i + 1].op == Op::measure) CHECK(op == Op::x_error);
  }
  const NoisyCircuit idle = build_circuit(code, noise(NoiseKind::circuit_level, 0.05, true), 3);
  CHECK(count(idle, Op::dep1) > count(circ, Op::dep1));

  CHECK_THROWS_AS(build_circuit(code, noise(NoiseKind::circuit_level, 0.01), 0), SpecError);
  CHECK_THROWS_AS(build_circuit(code, noise(NoiseKind::circuit_level, 1.5), 2), SpecError);
  CHECK_THROWS_AS(build_circuit(code, noise(NoiseKind::circuit_level, -0.1), 2), SpecError);
  CHECK(parse_noise_kind("circuit") == NoiseKind::circuit_level);
  CHECK(parse_noise_kind("code-capacity") == NoiseKind::code_capacity);
  CHECK_THROWS_AS(parse_noise_kind("biased"), SpecError);
  CHECK(circuit_to_text(cap).rfind("# sdq-circuit v1", 0) == 0);
}

TEST_CASE("a single data error flips exactly the adjacent checks of the first round") {
  const StackedCode code = fixture("bicycle-24-8-4");
  for (auto basis : {MemoryBasis::z, MemoryBasis::x}) {
    const NoisyCircuit c = build_circuit(code, noise(NoiseKind::circuit_level, 1e-3), 3, basis);
    // Z memory: an X error is caught by Z checks; X memory: a Z error by X checks.
    const PauliCode pauli = basis == MemoryBasis::z ? 1 : 2;
    const auto kind = basis == MemoryBasis::z ? DetectorTag::z_check : DetectorTag::x_check;
    const std::size_t first_cx = nth_instruction(c, Op::cx, 0);
    for (std::uint32_t q = 0; q < code.n; ++q) {
      CAPTURE(q);
      std::vector<std::size_t> expected;
      for (std::uint32_t check = 0; check < code.H.rows(); ++check)
        if (code.H.get(check, q)) expected.push_back(static_cast<std::size_t>(detector_index(c, kind, check, 0)));
      std::sort(expected.begin(), expected.end());
      CHECK(flipped_detectors(c, first_cx, q, pauli) == expected);
    }
  }
}

TEST_CASE("a readout flip fires the same check in two consecutive rounds") {
  const StackedCode code = fixture("bicycle-24-8-4");
  const std::uint32_t rounds = 4;
  const NoisyCircuit c = build_circuit(code, noise(NoiseKind::phenomenological, 0.01), rounds);
  for (std::uint32_t r = 0; r < rounds; ++r) {
    const std::size_t at = nth_instruction(c, Op::measure, r);
    for (std::uint32_t check = 0; check < c.num_checks; ++check) {
      CAPTURE(r);
      CAPTURE(check);
      auto flipped = flipped_detectors(c, at, c.z_ancilla(check), 1);
      std::vector<std::size_t> expected = {static_cast<std::size_t>(detector_index(c, DetectorTag::z_check, check, r))};
      expected.push_back(static_cast<std::size_t>(
          r + 1 < rounds ? detector_index(c, DetectorTag::z_check, check, r + 1)
                         : detector_index(c, DetectorTag::final, check, rounds)));
      std::sort(expected.begin(), expected.end());
      CHECK(flipped == expected);
    }
  }
}

TEST_CASE("detector model matches an independent per-fault propagation oracle") {
  const StackedCode code = fixture("bicycle-24-8-4");
  for (auto basis : {MemoryBasis::z, MemoryBasis::x}) {
    for (auto kind : {NoiseKind::circuit_level, NoiseKind::phenomenological}) {
      CAPTURE(noise_kind_name(kind));
      const NoisyCircuit c = build_circuit(code, noise(kind, 0.01), 4, basis);
      const DetectorModel fast = derive_detector_model(c);
      const DetectorModel slow = brute_force_model(c);
      CHECK(fast.mechanisms.size() == slow.mechanisms.size());
      const auto a = by_signature(fast), b = by_signature(slow);
      CHECK(a.size() == b.size());
      bool same_keys = true;
      double worst = 0.0;
      for (const auto& [key, p] : a) {
        const auto it = b.find(key);
        if (it == b.end()) {
          same_keys = false;
          continue;
        }
        worst = std::max(worst, std::fabs(p - it->second) / p);
      }
      CHECK(same_keys);
      CHECK(worst < 1e-9);
      for (const auto& m : fast.mechanisms) {
        CHECK(m.p > 0.0);
        CHECK(m.p <= 0.5);
        CHECK((!m.detectors.empty() || !m.observables.empty()));
        CHECK(std::is_sorted(m.detectors.begin(), m.detectors.end()));
      }
    }
  }
}

TEST_CASE("two-qubit depolarizing at p = 1 draws the 15 Paulis uniformly") {
  NoisyCircuit c;
  c.num_qubits = 2;
  c.instructions = {{Op::reset, 0.0, {0, 1}}, {Op::dep2, 1.0, {0, 1}}};
  const std::size_t shots = 100000;
  FrameSimulator sim(2, shots);
  Rng rng(11, "dep2-test");
  sim.run(c.instructions, rng);
  std::vector<std::size_t> counts(16, 0);
  for (std::size_t s = 0; s < shots; ++s) {
    auto bit = [&](std::span<const word_t> w) { return static_cast<unsigned>(w[s / 64] >> (s % 64) & 1U); };
    const unsigned code = bit(sim.x(0)) | bit(sim.z(0)) << 1 | bit(sim.x(1)) << 2 | bit(sim.z(1)) << 3;
    ++counts[code];
  }
  CHECK(counts[0] == 0);
  const double f = 1.0 / 15.0;
  const double sigma = std::sqrt(f * (1 - f) / shots);
  for (unsigned code = 1; code < 16; ++code) {
    CAPTURE(code);
    CHECK(std::fabs(static_cast<double>(counts[code]) / shots - f) <= 3 * sigma);
  }
}

TEST_CASE("one-qubit depolarizing and readout flips hit their rates") {
  NoisyCircuit c;
  c.num_qubits = 1;
  c.instructions = {{Op::reset, 0.0, {0}}, {Op::dep1, 0.3, {0}}, {Op::x_error, 0.2, {0}}};
  const std::size_t shots = 100000;
  FrameSimulator sim(1, shots);
  Rng rng(12, "dep1-test");
  sim.run(c.instructions, rng);
  std::vector<std::size_t> counts(4, 0);
  for (std::size_t s = 0; s < shots; ++s)
    ++counts[(sim.x(0)[s / 64] >> (s % 64) & 1U) | (sim.z(0)[s / 64] >> (s % 64) & 1U) << 1];
  // X part: X or Y from the channel, XOR the readout flip.
  const double px = 0.2, pd = 0.1;  // each Pauli of the channel
  const double expect[4] = {(1 - 3 * pd) * (1 - px) + pd * px, pd * (1 - px) + (1 - 3 * pd) * px,
                            pd * (1 - px) + pd * px, pd * (1 - px) + pd * px};
  for (int k = 0; k < 4; ++k) {
    const double sigma = std::sqrt(expect[k] * (1 - expect[k]) / shots);
    CHECK(std::fabs(static_cast<double>(counts[k]) / shots - expect[k]) <= 3 * sigma);
  }
}

TEST_CASE("circuit sampling and detector-model sampling agree with analytic marginals") {
  const StackedCode code = fixture("bicycle-24-8-4");
  const NoisyCircuit c = build_circuit(code, noise(NoiseKind::circuit_level, 0.01), 4);
  const DetectorModel dem = derive_detector_model(c);
  const std::size_t shots = 100000;
  const SampleSet direct = sample(c, shots, 21);
  const SampleSet model = sample_model(dem, shots, 22);
  const auto expected = analytic_marginals(dem);
  const BinMatrix dt = direct.detectors.transpose(), mt = model.detectors.transpose();
  for (std::size_t d = 0; d < dem.num_detectors; ++d) {
    CAPTURE(d);
    const double sigma = std::sqrt(expected[d] * (1 - expected[d]) / shots);
    const double a = static_cast<double>(dt.row_weight(d)) / shots;
    const double b = static_cast<double>(mt.row_weight(d)) / shots;
    CHECK(std::fabs(a - expected[d]) <= 3 * sigma);
    CHECK(std::fabs(b - expected[d]) <= 3 * sigma);
    CHECK(std::fabs(a - b) <= 3 * std::sqrt(2.0) * sigma);
  }
}

TEST_CASE("sampling is deterministic and independent of the thread count") {
  const StackedCode code = fixture("bicycle-24-8-4");
  const NoisyCircuit c = build_circuit(code, noise(NoiseKind::circuit_level, 0.01), 3);
  const SampleSet a = sample(c, 5000, 3, 1);
  const SampleSet b = sample(c, 5000, 3, 4);
  CHECK(a.detectors == b.detectors);
  CHECK(a.observables == b.observables);
  CHECK_FALSE(a.detectors.is_zero());
  const SampleSet other = sample(c, 5000, 4, 1);
  CHECK_FALSE(other.detectors == a.detectors);
  const DetectorModel dem = derive_detector_model(c);
  CHECK(sample_model(dem, 3000, 9).detectors == sample_model(dem, 3000, 9).detectors);
}

TEST_CASE("detector model text format round trips and rejects malformed input") {
  const StackedCode code = fixture("bicycle-24-8-4");
  const DetectorModel dem = derive_detector_model(build_circuit(code, noise(NoiseKind::circuit_level, 0.003), 2));
  const std::string text = dem_to_text(dem);
  CHECK(text.rfind("# sdq-dem v1\n", 0) == 0);
  CHECK(dem_from_text(text) == dem);
  CHECK(merge_mechanisms(dem) == dem);

  CHECK_THROWS_AS(dem_from_text("error 0.1 D0\n"), SpecError);
  CHECK_THROWS_AS(dem_from_text("detectors 2 observables 1 mechanisms 1\nerror 0.7 D0\n"), SpecError);
  CHECK_THROWS_AS(dem_from_text("detectors 2 observables 1 mechanisms 1\nerror 0.1 D2\n"), SpecError);
  CHECK_THROWS_AS(dem_from_text("detectors 2 observables 1 mechanisms 2\nerror 0.1 D1\n"), SpecError);
  CHECK_THROWS_AS(dem_from_text("detectors 2 observables 1 mechanisms 1\nerror 0.1\n"), SpecError);
  const DetectorModel tiny = dem_from_text("detectors 2 observables 1 mechanisms 2\nerror 0.1 D1 D0 L0\nerror 0.25 D1\n");
  CHECK(tiny.mechanisms[0].detectors == std::vector<std::uint32_t>{0, 1});

  // Merging composes identical signatures as independent events.
  DetectorModel dup = tiny;
  dup.mechanisms.push_back(dup.mechanisms[1]);
  const DetectorModel merged = merge_mechanisms(dup);
  REQUIRE(merged.mechanisms.size() == 2);
  CHECK(merged.mechanisms[1].p == doctest::Approx(0.25 * 0.75 * 2));
  CHECK(compose_probability(0.5, 0.3) == doctest::Approx(0.5));
}
