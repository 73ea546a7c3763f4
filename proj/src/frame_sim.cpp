#include "sdq/frame_sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "sdq/parallel.hpp"

namespace sdq {

namespace {

constexpr std::size_t kBatchShots = 1024;

void xor_words(word_t* dst, const word_t* src, std::size_t n) { simd::xor_into(dst, src, n); }

}  // namespace

FrameSimulator::FrameSimulator(std::uint32_t num_qubits, std::size_t shots)
    : num_qubits_(num_qubits),
      shots_(shots),
      words_(std::max<std::size_t>(1, words_for(shots))),
      x_(std::size_t{num_qubits} * words_, 0),
      z_(std::size_t{num_qubits} * words_, 0) {}

// Calls hit(index) for each success of `count` independent Bernoulli(p)
// trials, in increasing index order.
template <typename Hit>
void FrameSimulator::for_each_fault(std::size_t count, double p, Rng& rng, Hit&& hit) {
  if (p <= 0.0 || count == 0) return;
  if (p >= 1.0) {
    for (std::size_t i = 0; i < count; ++i) hit(i);
    return;
  }
  const double log1m = std::log1p(-p);
  std::size_t i = 0;
  for (;;) {
    const std::uint64_t skip = rng.geometric_skip(log1m);
    if (skip >= count - i) return;
    i += skip;
    hit(i);
    if (++i >= count) return;
  }
}

void FrameSimulator::apply(const Instruction& ins, Rng& rng, bool noisy) {
  const auto& t = ins.targets;
  const std::size_t W = words_;
  const std::size_t S = shots_;
  auto flip = [](word_t* w, std::size_t shot) { w[shot / kWordBits] ^= word_t{1} << (shot % kWordBits); };
  auto apply_pauli = [&](std::uint32_t q, std::size_t shot, unsigned code) {
    if (code & 1U) flip(xw(q), shot);
    if (code & 2U) flip(zw(q), shot);
  };

  switch (ins.op) {
    case Op::reset:
      for (auto q : t) {
        std::fill_n(xw(q), W, 0);
        std::fill_n(zw(q), W, 0);
      }
      break;
    case Op::h:
      for (auto q : t) std::swap_ranges(xw(q), xw(q) + W, zw(q));
      break;
    case Op::cx:
      for (std::size_t i = 0; i < t.size(); i += 2) {
        xor_words(xw(t[i + 1]), xw(t[i]), W);
        xor_words(zw(t[i]), zw(t[i + 1]), W);
      }
      break;
    case Op::measure:
      for (auto q : t) records_.insert(records_.end(), xw(q), xw(q) + W);
      break;
    case Op::dep1:
      if (!noisy) break;
      for_each_fault(t.size() * S, ins.p, rng, [&](std::size_t i) {
        apply_pauli(t[i / S], i % S, 1 + static_cast<unsigned>(rng.below(3)));
      });
      break;
    case Op::dep2:
      if (!noisy) break;
      for_each_fault(t.size() / 2 * S, ins.p, rng, [&](std::size_t i) {
        const std::size_t pair = i / S, shot = i % S;
        const auto code = 1 + static_cast<unsigned>(rng.below(15));
        apply_pauli(t[2 * pair], shot, code & 3U);
        apply_pauli(t[2 * pair + 1], shot, code >> 2);
      });
      break;
    case Op::x_error:
      if (!noisy) break;
      for_each_fault(t.size() * S, ins.p, rng, [&](std::size_t i) { flip(xw(t[i / S]), i % S); });
      break;
  }
}

void FrameSimulator::run(std::span<const Instruction> program, Rng& rng, bool noisy) {
  for (const auto& ins : program) apply(ins, rng, noisy);
}

void FrameSimulator::inject(std::uint32_t qubit, PauliCode pauli) {
  const word_t full = ~word_t{0};
  for (std::size_t w = 0; w < words_; ++w) {
    // Keep padding bits past the last shot clear.
    const std::size_t live = std::min(kWordBits, shots_ - w * kWordBits);
    const word_t mask = live == kWordBits ? full : (word_t{1} << live) - 1;
    if (pauli & 1U) xw(qubit)[w] ^= mask;
    if (pauli & 2U) zw(qubit)[w] ^= mask;
  }
}

void FrameSimulator::inject(std::uint32_t qubit, PauliCode pauli, std::size_t shot) {
  const word_t bit = word_t{1} << (shot % kWordBits);
  if (pauli & 1U) xw(qubit)[shot / kWordBits] ^= bit;
  if (pauli & 2U) zw(qubit)[shot / kWordBits] ^= bit;
}

void frames_to_samples(const NoisyCircuit& c, const FrameSimulator& sim, SampleSet& out, std::size_t first_row) {
  const std::size_t W = sim.words();
  std::vector<word_t> acc(W);
  auto emit = [&](const std::vector<std::uint32_t>& meas, BinMatrix& table, std::size_t column) {
    std::fill(acc.begin(), acc.end(), 0);
    for (auto m : meas) xor_words(acc.data(), sim.record(m).data(), W);
    for (std::size_t w = 0; w < W; ++w) {
      word_t bits = acc[w];
      while (bits) {
        const std::size_t shot = w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits));
        bits &= bits - 1;
        if (shot < sim.shots()) table.set(first_row + shot, column);
      }
    }
  };
  for (std::size_t d = 0; d < c.detectors.size(); ++d) emit(c.detectors[d], out.detectors, d);
  for (std::size_t o = 0; o < c.observables.size(); ++o) emit(c.observables[o], out.observables, o);
}

SampleSet sample(const NoisyCircuit& circuit, std::uint64_t shots, std::uint64_t seed, std::size_t threads) {
  SampleSet out;
  out.shots = shots;
  out.detectors = BinMatrix(shots, circuit.detectors.size());
  out.observables = BinMatrix(shots, circuit.observables.size());
  const std::size_t batches = (shots + kBatchShots - 1) / kBatchShots;
  // Batches write disjoint rows, and rows never share words.
  parallel_for(batches, threads ? threads : default_threads(), [&](std::size_t b) {
    const std::size_t first = b * kBatchShots;
    const std::size_t count = std::min<std::size_t>(kBatchShots, shots - first);
    FrameSimulator sim(circuit.num_qubits, count);
    Rng rng(seed, "frame-sample", b);
    sim.run(circuit.instructions, rng);
    frames_to_samples(circuit, sim, out, first);
  });
  return out;
}

SampleSet sample_model(const DetectorModel& model, std::uint64_t shots, std::uint64_t seed) {
  SampleSet out;
  out.shots = shots;
  out.detectors = BinMatrix(shots, model.num_detectors);
  out.observables = BinMatrix(shots, model.num_observables);
  for (std::size_t j = 0; j < model.mechanisms.size(); ++j) {
    const Mechanism& m = model.mechanisms[j];
    Rng rng(seed, "model-sample", j);
    const double log1m = std::log1p(-m.p);
    std::uint64_t s = 0;
    for (;;) {
      const std::uint64_t skip = rng.geometric_skip(log1m);
      if (skip >= shots - s) break;
      s += skip;
      for (auto d : m.detectors) out.detectors.flip(s, d);
      for (auto o : m.observables) out.observables.flip(s, o);
      if (++s >= shots) break;
    }
  }
  return out;
}

}  // namespace sdq
