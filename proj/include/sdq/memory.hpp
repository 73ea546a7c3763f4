#pragma once

// Memory experiments end to end: build the circuit, derive its detector
// model, sample shots, decode them, and turn failure counts into per-round
// logical failure rates.
//
// A shot fails when the decoder's predicted observable flips differ from the
// sampled ones on any logical. With N_c rounds and P_L = failures / shots,
//
//   LFR       = 1 - (1 - P_L)^(1/N_c)
//   sigma_LFR = (1/N_c) (1 - P_L)^(1/N_c - 1) sqrt(P_L (1 - P_L) / shots)
//
// the second being the binomial error of P_L pushed through the first.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sdq/circuit.hpp"
#include "sdq/decoder.hpp"
#include "sdq/frame_sim.hpp"

namespace sdq {

struct SimResult {
  std::uint64_t shots = 0;
  std::uint64_t failures = 0;
  std::uint32_t rounds = 0;
  double P_L = 0.0;
  double LFR = 0.0;
  double sigma_LFR = 0.0;
};

// Throws SpecError if shots == 0, failures > shots or rounds == 0.
SimResult summarize(std::uint64_t shots, std::uint64_t failures, std::uint32_t rounds);

// Probability that at least one of k unprotected qubits fails: 1 - (1-p)^k.
double grey_line(double p, std::size_t k);

struct MemoryConfig {
  NoiseModel noise;
  std::uint32_t rounds = 1;  // ignored (forced to 1) for code capacity
  MemoryBasis basis = MemoryBasis::z;
  std::uint64_t shots = 1000;
  std::uint64_t seed = 0;
  std::size_t threads = 0;  // 0 = hardware concurrency
  DecoderConfig decoder;
};

struct MemoryRun {
  SimResult result;
  std::uint64_t invalid = 0;       // decodes that did not reproduce their syndrome
  std::uint64_t bp_converged = 0;
  std::vector<std::uint64_t> batch_failures;  // per 1024-shot batch, in batch order
};

// Deterministic in (code, config) and independent of config.threads.
MemoryRun run_memory(const StackedCode& code, const MemoryConfig& config);

// Decodes every shot of `samples`; same counting as run_memory.
MemoryRun decode_samples(const Decoder& decoder, const SampleSet& samples, std::uint32_t rounds, std::size_t threads = 0);

// ------------------------------------------------------------------ curves

struct CurvePoint {
  double p = 0.0;
  SimResult result;
  double grey = 0.0;
};

// Header "p,shots,failures,P_L,LFR,sigma_LFR,grey"; numbers in %.17g.
std::string curve_to_csv(const std::vector<CurvePoint>& points);

struct CsvPoint {
  double p = 0.0;
  double LFR = 0.0;
};
// Reads the p and LFR columns of a curve CSV (any column order). Throws SpecError.
std::vector<CsvPoint> curve_from_csv(std::string_view text);

// Crossings of LFR(p) with grey_line(p, k), in increasing p. Between
// bracketing grid points the crossing is found by linear interpolation of
// log LFR - log grey in log p (plain linear interpolation of LFR - grey when
// an endpoint has LFR = 0). A grid point where the two agree exactly is a
// crossing itself; a run of such points reports only its first. Points with
// p <= 0 are ignored.
std::vector<double> pseudo_thresholds(const std::vector<CsvPoint>& points, std::size_t k);

// ------------------------------------------------------- packed sample file
//
// Layout (little endian):
//   8 bytes  magic "SDQSMP01"
//   u64      shots
//   u32      detectors D
//   u32      observables K
//   u32      bit width of one record entry (always 1)
//   u32      bytes per shot record = ceil((D + K) / 8)
// then one record per shot: bit i (LSB first within each byte) is detector i
// for i < D and observable i - D otherwise; padding bits are zero.

void write_samples(std::ostream& out, const SampleSet& samples);
SampleSet read_samples(std::istream& in);  // throws SpecError on malformed input

}  // namespace sdq
