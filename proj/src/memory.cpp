#include "sdq/memory.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>

#include "sdq/parallel.hpp"

namespace sdq {

SimResult summarize(std::uint64_t shots, std::uint64_t failures, std::uint32_t rounds) {
  if (shots == 0) throw SpecError("summarize: shots must be positive");
  if (failures > shots) throw SpecError("summarize: more failures than shots");
  if (rounds == 0) throw SpecError("summarize: rounds must be positive");
  SimResult r;
  r.shots = shots;
  r.failures = failures;
  r.rounds = rounds;
  r.P_L = static_cast<double>(failures) / static_cast<double>(shots);
  const double inv = 1.0 / rounds;
  // 1 - (1 - P_L)^(1/N_c) in the cancellation-free form -expm1(log1p(-P_L) / N_c),
  // which keeps full relative precision when LFR is small.
  const double log_survive = std::log1p(-r.P_L);
  r.LFR = failures == shots ? 1.0 : -std::expm1(log_survive * inv);
  // At P_L = 1 the derivative blows up while the binomial term vanishes;
  // report zero spread, as for P_L = 0.
  if (failures == 0 || failures == shots) return r;
  const double survive = 1.0 - r.P_L;
  r.sigma_LFR = inv * std::exp(log_survive * (inv - 1.0)) * std::sqrt(r.P_L * survive / static_cast<double>(shots));
  return r;
}

double grey_line(double p, std::size_t k) { return 1.0 - std::pow(1.0 - p, static_cast<double>(k)); }

namespace {

constexpr std::size_t kBatchShots = 1024;

struct BatchCount {
  std::uint64_t failures = 0, invalid = 0, converged = 0;
};

BatchCount decode_rows(const Decoder& decoder, const SampleSet& s, std::size_t first, std::size_t count,
                       Decoder::Workspace& ws) {
  BatchCount c;
  for (std::size_t row = first; row < first + count; ++row) {
    const DecodeResult r = decoder.decode(s.detectors.row(row), ws);
    c.invalid += !r.valid;
    c.converged += r.bp_converged;
    c.failures += r.observables != s.observables.row(row);
  }
  return c;
}

MemoryRun collect(const std::vector<BatchCount>& batches, std::uint64_t shots, std::uint32_t rounds) {
  MemoryRun run;
  std::uint64_t failures = 0;
  for (const auto& b : batches) {
    failures += b.failures;
    run.invalid += b.invalid;
    run.bp_converged += b.converged;
    run.batch_failures.push_back(b.failures);
  }
  run.result = summarize(shots, failures, rounds);
  return run;
}

}  // namespace

MemoryRun run_memory(const StackedCode& code, const MemoryConfig& config) {
  if (config.shots == 0) throw SpecError("shots must be positive");
  const NoisyCircuit circuit = build_circuit(code, config.noise, config.rounds, config.basis);
  const Decoder decoder(derive_detector_model(circuit), config.decoder);
  const std::size_t batches = (config.shots + kBatchShots - 1) / kBatchShots;
  std::vector<BatchCount> counts(batches);
  // Each batch samples exactly as sample() would (same stream per batch), so
  // run_memory agrees with decode_samples(sample(...)).
  parallel_for(batches, config.threads ? config.threads : default_threads(), [&](std::size_t b) {
    const std::size_t first = b * kBatchShots;
    const std::size_t count = std::min<std::size_t>(kBatchShots, config.shots - first);
    FrameSimulator sim(circuit.num_qubits, count);
    Rng rng(config.seed, "frame-sample", b);
    sim.run(circuit.instructions, rng);
    SampleSet local;
    local.shots = count;
    local.detectors = BinMatrix(count, circuit.detectors.size());
    local.observables = BinMatrix(count, circuit.observables.size());
    frames_to_samples(circuit, sim, local, 0);
    Decoder::Workspace ws;
    counts[b] = decode_rows(decoder, local, 0, count, ws);
  });
  return collect(counts, config.shots, circuit.rounds);
}

MemoryRun decode_samples(const Decoder& decoder, const SampleSet& samples, std::uint32_t rounds, std::size_t threads) {
  if (samples.detectors.cols() != decoder.model().num_detectors ||
      samples.observables.cols() != decoder.model().num_observables)
    throw DimensionError("decode_samples: sample widths do not match the detector model");
  const std::size_t batches = (samples.shots + kBatchShots - 1) / kBatchShots;
  std::vector<BatchCount> counts(batches);
  parallel_for(batches, threads ? threads : default_threads(), [&](std::size_t b) {
    const std::size_t first = b * kBatchShots;
    Decoder::Workspace ws;
    counts[b] = decode_rows(decoder, samples, first, std::min<std::size_t>(kBatchShots, samples.shots - first), ws);
  });
  return collect(counts, samples.shots, rounds);
}

// ------------------------------------------------------------------ curves

std::string curve_to_csv(const std::vector<CurvePoint>& points) {
  std::string out = "p,shots,failures,P_L,LFR,sigma_LFR,grey\n";
  char buf[256];
  for (const auto& pt : points) {
    std::snprintf(buf, sizeof buf, "%.17g,%llu,%llu,%.17g,%.17g,%.17g,%.17g\n", pt.p,
                  static_cast<unsigned long long>(pt.result.shots), static_cast<unsigned long long>(pt.result.failures),
                  pt.result.P_L, pt.result.LFR, pt.result.sigma_LFR, pt.grey);
    out += buf;
  }
  return out;
}

std::vector<CsvPoint> curve_from_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
  };
  if (!std::getline(in, line)) throw SpecError("curve CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split(line);
  const auto p_col = std::find(header.begin(), header.end(), "p") - header.begin();
  const auto l_col = std::find(header.begin(), header.end(), "LFR") - header.begin();
  if (p_col == static_cast<std::ptrdiff_t>(header.size()) || l_col == static_cast<std::ptrdiff_t>(header.size()))
    throw SpecError("curve CSV needs 'p' and 'LFR' columns");
  std::vector<CsvPoint> points;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) throw SpecError("curve CSV line " + std::to_string(line_no) + ": wrong cell count");
    try {
      points.push_back({std::stod(cells[p_col]), std::stod(cells[l_col])});
    } catch (const std::exception&) {
      throw SpecError("curve CSV line " + std::to_string(line_no) + ": not a number");
    }
  }
  return points;
}

std::vector<double> pseudo_thresholds(const std::vector<CsvPoint>& raw, std::size_t k) {
  std::vector<CsvPoint> pts;
  for (const auto& pt : raw)
    if (pt.p > 0.0) pts.push_back(pt);
  std::sort(pts.begin(), pts.end(), [](const CsvPoint& a, const CsvPoint& b) { return a.p < b.p; });

  std::vector<double> gap(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) gap[i] = pts[i].LFR - grey_line(pts[i].p, k);

  std::vector<double> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (gap[i] == 0.0) {
      if (i == 0 || gap[i - 1] != 0.0) out.push_back(pts[i].p);
      continue;
    }
    if (i + 1 == pts.size() || gap[i + 1] == 0.0 || (gap[i] < 0.0) == (gap[i + 1] < 0.0)) continue;
    const CsvPoint& a = pts[i];
    const CsvPoint& b = pts[i + 1];
    if (a.LFR > 0.0 && b.LFR > 0.0) {
      const double ga = std::log(a.LFR) - std::log(grey_line(a.p, k));
      const double gb = std::log(b.LFR) - std::log(grey_line(b.p, k));
      const double ta = std::log(a.p), tb = std::log(b.p);
      out.push_back(std::exp(ta - ga * (tb - ta) / (gb - ga)));
    } else {
      out.push_back(a.p - gap[i] * (b.p - a.p) / (gap[i + 1] - gap[i]));
    }
  }
  return out;
}

// ------------------------------------------------------- packed sample file

namespace {

constexpr std::array<char, 8> kMagic = {'S', 'D', 'Q', 'S', 'M', 'P', '0', '1'};

template <typename T>
void put(std::ostream& out, T v) {
  unsigned char bytes[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i) bytes[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  unsigned char bytes[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T))) throw SpecError("sample file: truncated header");
  T v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(bytes[i]) << (8 * i);
  return v;
}

}  // namespace

void write_samples(std::ostream& out, const SampleSet& s) {
  const std::size_t D = s.detectors.cols(), K = s.observables.cols();
  const std::size_t record = (D + K + 7) / 8;
  out.write(kMagic.data(), kMagic.size());
  put<std::uint64_t>(out, s.shots);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(D));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(K));
  put<std::uint32_t>(out, 1);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(record));
  std::vector<char> buf(record);
  for (std::size_t shot = 0; shot < s.shots; ++shot) {
    std::fill(buf.begin(), buf.end(), 0);
    auto mark = [&](std::size_t bit) { buf[bit / 8] = static_cast<char>(buf[bit / 8] | (1 << (bit % 8))); };
    for (std::size_t d = 0; d < D; ++d)
      if (s.detectors.get(shot, d)) mark(d);
    for (std::size_t o = 0; o < K; ++o)
      if (s.observables.get(shot, o)) mark(D + o);
    out.write(buf.data(), static_cast<std::streamsize>(record));
  }
}

SampleSet read_samples(std::istream& in) {
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) throw SpecError("sample file: bad magic");
  SampleSet s;
  s.shots = get<std::uint64_t>(in);
  const std::size_t D = get<std::uint32_t>(in), K = get<std::uint32_t>(in);
  if (get<std::uint32_t>(in) != 1) throw SpecError("sample file: unsupported bit width");
  const std::size_t record = get<std::uint32_t>(in);
  if (record != (D + K + 7) / 8) throw SpecError("sample file: record size does not match counts");
  s.detectors = BinMatrix(s.shots, D);
  s.observables = BinMatrix(s.shots, K);
  std::vector<unsigned char> buf(record);
  for (std::size_t shot = 0; shot < s.shots; ++shot) {
    if (!in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(record)))
      throw SpecError("sample file: truncated at shot " + std::to_string(shot));
    for (std::size_t bit = 0; bit < D + K; ++bit) {
      if (!(buf[bit / 8] >> (bit % 8) & 1U)) continue;
      if (bit < D)
        s.detectors.set(shot, bit);
      else
        s.observables.set(shot, bit - D);
    }
    for (std::size_t bit = D + K; bit < record * 8; ++bit)
      if (buf[bit / 8] >> (bit % 8) & 1U) throw SpecError("sample file: nonzero padding bit");
  }
  return s;
}

}  // namespace sdq
