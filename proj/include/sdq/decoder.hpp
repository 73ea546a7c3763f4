#pragma once

// Decoding detector samples into predicted observable flips.
//
// Decoder runs syndrome belief propagation over the detector model's Tanner
// graph (mechanisms are variables, detectors are checks; priors enter as
// log-likelihood ratios log((1-p)/p)). When BP does not reach an error that
// reproduces the syndrome, ordered-statistics decoding takes over: mechanisms
// are sorted from most to least likely flipped according to the BP
// posteriors, the first linearly independent columns form an information set,
// and the syndrome is solved on it exactly. With osd_order = w > 0 further
// candidates flip non-pivot columns (see OsdMethod) and the solution of least
// prior weight is kept.
//
// MlOracle is the exact maximum-likelihood decoder for small models: it
// enumerates the whole coset {e : H e = s} (2^dim ker H elements) and returns
// the observable class of largest total probability.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sdq/detector_model.hpp"

namespace sdq {

enum class BpVariant { product_sum, min_sum };

std::string_view bp_variant_name(BpVariant v) noexcept;
BpVariant parse_bp_variant(std::string_view name);  // throws SpecError

// Message-passing schedule. `flooding` updates every check from the previous
// iteration's beliefs; `layered` sweeps the checks in order and refreshes
// beliefs after each one.
enum class BpSchedule { flooding, layered };

std::string_view bp_schedule_name(BpSchedule s) noexcept;
BpSchedule parse_bp_schedule(std::string_view name);  // throws SpecError

// Higher-order OSD: `exhaustive` tries all 2^w subsets of the w most likely
// non-pivot columns; `combination_sweep` tries every single non-pivot column
// and every pair among the w most likely ones.
enum class OsdMethod { exhaustive, combination_sweep };

std::string_view osd_method_name(OsdMethod m) noexcept;
OsdMethod parse_osd_method(std::string_view name);  // throws SpecError

struct DecoderConfig {
  std::uint32_t bp_iters = 100;
  BpVariant variant = BpVariant::min_sum;
  double min_sum_scale = 0.8;
  BpSchedule schedule = BpSchedule::layered;
  bool osd = true;
  std::uint32_t osd_order = 0;
  OsdMethod osd_method = OsdMethod::exhaustive;

  void validate() const;  // throws SpecError
};

struct DecodeResult {
  BinVector observables;
  bool valid = false;         // `error` reproduces the input syndrome
  bool bp_converged = false;
  std::vector<std::uint32_t> error;  // mechanism indices (into model())
};

class Decoder {
 public:
  // Scratch buffers for one decode call; reuse across calls on one thread.
  struct Workspace {
    std::vector<float> c2v, in, tanh_in, posterior, next;
    std::vector<std::uint8_t> hard, parity;
    std::vector<std::uint32_t> order;
  };

  // Identical mechanisms are merged before the graph is built.
  explicit Decoder(const DetectorModel& model, const DecoderConfig& config = {});

  DecodeResult decode(const BinVector& detectors) const;
  DecodeResult decode(const BinVector& detectors, Workspace& ws) const;

  const DetectorModel& model() const noexcept { return model_; }
  const DecoderConfig& config() const noexcept { return config_; }

  BinVector syndrome_of(const std::vector<std::uint32_t>& error) const;
  BinVector observables_of(const std::vector<std::uint32_t>& error) const;

 private:
  bool run_bp(const BinVector& syndrome, Workspace& ws) const;
  bool run_osd(const BinVector& syndrome, Workspace& ws, std::vector<std::uint32_t>& error) const;

  DetectorModel model_;
  DecoderConfig config_;
  std::size_t M_ = 0, D_ = 0;
  std::vector<double> prior_;                  // LLR per mechanism
  std::vector<std::uint32_t> check_start_;     // CSR over detectors; entries are edges
  std::vector<std::uint32_t> edge_var_;        // variable of each edge (check-major order)
  std::vector<BinVector> columns_;             // detector column of each mechanism
  std::size_t rank_ = 0;                       // rank of the detector matrix
};

class InstanceTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MlOracle {
 public:
  // Throws InstanceTooLarge if the coset has more than 2^max_kernel_dim elements.
  explicit MlOracle(const DetectorModel& model, unsigned max_kernel_dim = 26);

  // Most likely observable class (ties go to the numerically smallest class
  // bitmask); zero if the syndrome is not reachable.
  BinVector decode(const BinVector& detectors) const;

  // Posterior probability of every observable class (bitmask over the
  // observables) with nonzero weight given the syndrome, ascending by class.
  std::vector<std::pair<std::uint64_t, double>> class_probabilities(const BinVector& detectors) const;

  std::size_t kernel_dim() const noexcept { return kernel_.size(); }

 private:
  DetectorModel model_;
  std::vector<double> weight_;             // log(p / (1 - p)) per mechanism
  std::vector<BinVector> kernel_;          // basis of ker H (length M)
  std::vector<std::vector<std::size_t>> kernel_support_;
  std::vector<std::uint64_t> kernel_obs_;  // observable flips of each kernel vector
  BinMatrix reduced_;                      // RREF of [H | I_D] for particular solutions
  std::vector<std::size_t> pivots_;
};

// One-shot convenience wrapper.
BinVector ml_oracle(const DetectorModel& model, const BinVector& detectors);

}  // namespace sdq
