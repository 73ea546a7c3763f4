#pragma once

// Syndrome-extraction memory experiment for a stacked code.
//
// Qubit numbering: data 0..n-1, then one X-check ancilla per row of H, then
// one Z-check ancilla per row of H. Each round resets the ancillas, prepares
// the X ancillas with H, applies the CNOT layers of the X checks
// (ancilla -> data) and of the Z checks (data -> ancilla), undoes the H and
// measures every ancilla, X ancillas first. The checks of the memory basis
// are entangled second, so the X-basis experiment mirrors the Z-basis one
// under Hadamard conjugation (up to the H gates on X ancillas, which have no
// Z-check counterpart). The experiment ends with a transversal data
// measurement in the memory basis.
//
// CNOT layers come from a greedy edge colouring of each Tanner graph: edges
// are visited check by check, qubits ascending, and take the smallest colour
// free at both endpoints. X-check and Z-check edges never share a layer.
//
// Measurement indices: round r, X ancilla c -> 2Rr + c; Z ancilla c ->
// 2Rr + R + c; final data qubit q -> 2R * rounds + q.

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sdq/codes.hpp"

namespace sdq {

enum class NoiseKind { code_capacity, phenomenological, circuit_level };

std::string_view noise_kind_name(NoiseKind k) noexcept;
NoiseKind parse_noise_kind(std::string_view name);  // throws SpecError

struct NoiseModel {
  NoiseKind kind = NoiseKind::circuit_level;
  double p = 0.0;
  // Depolarize-1 on qubits left idle by a CNOT layer (circuit level only).
  bool idle_noise = false;

  void validate() const;  // 0 <= p <= 1
};

enum class MemoryBasis { z, x };

enum class Op : std::uint8_t {
  reset,    // to |0>
  h,
  cx,       // targets are (control, target) pairs
  measure,  // Z basis; appends one record per target
  dep1,     // X, Y, Z each with p / 3
  dep2,     // each of the 15 non-identity pairs with p / 15; targets are pairs
  x_error,  // readout flip
};

std::string_view op_name(Op op) noexcept;

struct Instruction {
  Op op = Op::reset;
  double p = 0.0;
  std::vector<std::uint32_t> targets;

  bool is_noise() const noexcept { return op == Op::dep1 || op == Op::dep2 || op == Op::x_error; }
};

struct DetectorTag {
  enum Kind : std::uint8_t { z_check, x_check, final } kind = z_check;
  std::uint32_t check = 0;
  std::uint32_t round = 0;  // rounds for `final`
};

struct NoisyCircuit {
  std::uint32_t num_data = 0;
  std::uint32_t num_checks = 0;  // rows of H; ancillas = 2 * num_checks
  std::uint32_t num_qubits = 0;
  std::uint32_t rounds = 0;
  MemoryBasis basis = MemoryBasis::z;
  NoiseModel noise;

  std::vector<Instruction> instructions;
  std::uint32_t num_measurements = 0;
  std::vector<std::vector<std::uint32_t>> detectors;    // measurement indices, ascending
  std::vector<DetectorTag> detector_tags;
  std::vector<std::vector<std::uint32_t>> observables;  // measurement indices, ascending

  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> x_layers;  // (check, data)
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> z_layers;

  std::uint32_t x_ancilla(std::uint32_t check) const noexcept { return num_data + check; }
  std::uint32_t z_ancilla(std::uint32_t check) const noexcept { return num_data + num_checks + check; }
};

// rounds >= 1; the code-capacity kind always uses a single round.
NoisyCircuit build_circuit(const StackedCode& code, const NoiseModel& noise, std::uint32_t rounds,
                           MemoryBasis basis = MemoryBasis::z);

// Same circuit with every noise instruction removed.
NoisyCircuit noiseless(const NoisyCircuit& circuit);

// Line-oriented listing (one instruction per line, then DETECTOR and
// OBSERVABLE lines with measurement indices).
std::string circuit_to_text(const NoisyCircuit& circuit);

// Greedy edge colouring used for the CNOT schedule; colour of each edge in
// input order.
std::vector<std::uint32_t> greedy_edge_coloring(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges);

}  // namespace sdq
