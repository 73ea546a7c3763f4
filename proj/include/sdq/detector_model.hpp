#pragma once

// Detector error model: independent fault mechanisms and what they flip.
//
// Derivation walks the circuit backwards keeping, for every qubit, the set of
// detectors and observables an X or a Z error at the current point would
// flip. Each noise instruction is decomposed into independent Pauli
// components so that their composition reproduces the channel exactly:
//
//   depolarize-1(p): X, Y, Z each independently with q = (1 - sqrt(1 - 4p/3)) / 2
//   depolarize-2(p): all 15 pairs independently with q = (1 - (1 - 16p/15)^(1/8)) / 2
//   x_error(p):      one component with probability p
//
// Components with identical signatures are merged with
// q = q1 (1 - q2) + q2 (1 - q1); components that flip nothing are dropped.
//
// Text form ("# sdq-dem v1"):
//
//   # sdq-dem v1
//   detectors <D> observables <K> mechanisms <M>
//   error <p> D<i> ... L<j> ...
//
// one mechanism per line, detector and observable ids ascending, p printed
// with 17 significant digits so the file round-trips exactly.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sdq/circuit.hpp"

namespace sdq {

struct Mechanism {
  double p = 0.0;
  std::vector<std::uint32_t> detectors;    // ascending
  std::vector<std::uint32_t> observables;  // ascending

  friend bool operator==(const Mechanism&, const Mechanism&) = default;
};

struct DetectorModel {
  std::uint32_t num_detectors = 0;
  std::uint32_t num_observables = 0;
  std::vector<Mechanism> mechanisms;  // sorted by (detectors, observables)

  friend bool operator==(const DetectorModel&, const DetectorModel&) = default;
};

double compose_probability(double a, double b) noexcept;
double depolarize1_component(double p);  // throws SpecError for p > 3/4
double depolarize2_component(double p);  // throws SpecError for p > 15/16

DetectorModel derive_detector_model(const NoisyCircuit& circuit);

// Merges identical signatures, drops empty ones, sorts.
DetectorModel merge_mechanisms(DetectorModel model);

// Detector-only parity check matrix (detectors x mechanisms) and observable
// matrix (observables x mechanisms).
BinMatrix detector_matrix(const DetectorModel& model);
BinMatrix observable_matrix(const DetectorModel& model);

std::string dem_to_text(const DetectorModel& model);
DetectorModel dem_from_text(std::string_view text);  // throws SpecError

}  // namespace sdq
