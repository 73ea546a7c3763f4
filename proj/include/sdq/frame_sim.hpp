#pragma once

// Bit-parallel Pauli-frame sampling.
//
// Every qubit carries an X word and a Z word per 64 shots; bit s of the words
// is the Pauli error riding on that qubit in shot s, relative to the noiseless
// reference run. Measurement records therefore hold flips, and detectors and
// observables (XORs of records) are zero in the absence of noise.
//
// Noise channels are sampled with geometric skipping over the flattened
// (target, shot) index, so the cost is proportional to the number of faults
// rather than to targets x shots.

#include <cstdint>
#include <span>
#include <vector>

#include "sdq/circuit.hpp"
#include "sdq/detector_model.hpp"
#include "sdq/rng.hpp"

namespace sdq {

// Pauli codes: bit 0 = X part, bit 1 = Z part (1 = X, 2 = Z, 3 = Y).
using PauliCode = std::uint8_t;

class FrameSimulator {
 public:
  FrameSimulator(std::uint32_t num_qubits, std::size_t shots);

  std::size_t shots() const noexcept { return shots_; }
  std::size_t words() const noexcept { return words_; }

  // Applies one instruction. Noise instructions draw from `rng`; pass
  // noisy = false to treat them as identities.
  void apply(const Instruction& ins, Rng& rng, bool noisy = true);
  void run(std::span<const Instruction> program, Rng& rng, bool noisy = true);

  // Multiplies `pauli` onto `qubit` in every shot, or in one shot.
  void inject(std::uint32_t qubit, PauliCode pauli);
  void inject(std::uint32_t qubit, PauliCode pauli, std::size_t shot);

  std::span<const word_t> x(std::uint32_t q) const noexcept { return {x_.data() + q * words_, words_}; }
  std::span<const word_t> z(std::uint32_t q) const noexcept { return {z_.data() + q * words_, words_}; }

  std::size_t num_measurements() const noexcept { return records_.size() / words_; }
  std::span<const word_t> record(std::size_t m) const noexcept { return {records_.data() + m * words_, words_}; }

 private:
  word_t* xw(std::uint32_t q) noexcept { return x_.data() + q * words_; }
  word_t* zw(std::uint32_t q) noexcept { return z_.data() + q * words_; }
  template <typename Hit>
  void for_each_fault(std::size_t count, double p, Rng& rng, Hit&& hit);

  std::uint32_t num_qubits_;
  std::size_t shots_;
  std::size_t words_;
  std::vector<word_t> x_, z_;
  std::vector<word_t> records_;
};

// Shot-major sample tables.
struct SampleSet {
  std::size_t shots = 0;
  BinMatrix detectors;    // shots x num_detectors
  BinMatrix observables;  // shots x num_observables
};

// Shots are simulated in fixed batches of 1024, batch b drawing from the
// stream (seed, "frame-sample", b); the result is independent of `threads`.
SampleSet sample(const NoisyCircuit& circuit, std::uint64_t shots, std::uint64_t seed, std::size_t threads = 0);

// Writes the detector and observable flips of a finished simulation into
// rows [first_row, first_row + sim.shots()) of `out`.
void frames_to_samples(const NoisyCircuit& circuit, const FrameSimulator& sim, SampleSet& out, std::size_t first_row);

// Independent sampling of the mechanisms of a detector model.
SampleSet sample_model(const DetectorModel& model, std::uint64_t shots, std::uint64_t seed);

}  // namespace sdq
