#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sdq/catalog.hpp"
#include "sdq/memory.hpp"

using namespace sdq;

namespace {

StackedCode fixture(std::string_view id) { return build_code(catalog::to_spec(*catalog::find(id))); }

// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_statistic(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const std::uint64_t x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

}  // namespace

TEST_CASE("summarize matches frozen closed-form values") {
  // Frozen with an independent arbitrary-precision evaluation of
  // LFR = 1 - (1 - P_L)^(1/N_c) and its propagated binomial error.
  const SimResult r = summarize(10000, 1000, 10);
  CHECK(r.P_L == 0.1);
  CHECK(r.LFR == doctest::Approx(0.010480741793785607).epsilon(1e-15));
  CHECK(r.sigma_LFR == doctest::Approx(0.0003298397527354048).epsilon(1e-15));

  const SimResult zero = summarize(500, 0, 3);
  CHECK(zero.P_L == 0.0);
  CHECK(zero.LFR == 0.0);
  CHECK(zero.sigma_LFR == 0.0);

  const SimResult half = summarize(10, 5, 1);
  CHECK(half.LFR == 0.5);

  const SimResult all = summarize(7, 7, 2);
  CHECK(all.LFR == 1.0);
  CHECK(all.sigma_LFR == 0.0);

  CHECK_THROWS_AS(summarize(0, 0, 1), SpecError);
  CHECK_THROWS_AS(summarize(5, 6, 1), SpecError);
  CHECK_THROWS_AS(summarize(5, 1, 0), SpecError);
}

TEST_CASE("grey line") {
  CHECK(grey_line(1e-3, 4) == doctest::Approx(0.003994003999).epsilon(1e-12));
  CHECK(grey_line(0.0, 12) == 0.0);
  CHECK(grey_line(0.3, 1) == doctest::Approx(0.3));
}

TEST_CASE("pseudo-threshold interpolation") {
  const std::size_t k = 4;
  const std::vector<double> grid = {1e-3, 2e-3, 4e-3, 7e-3, 1e-2};

  SUBCASE("LFR identical to the grey line reports the first grid point") {
    std::vector<CsvPoint> pts;
    for (double p : grid) pts.push_back({p, grey_line(p, k)});
    const auto t = pseudo_thresholds(pts, k);
    REQUIRE(t.size() == 1);
    CHECK(t[0] == grid[0]);
  }
  SUBCASE("LFR = grey * (p / p*) crosses at p*") {
    for (double star : {1.5e-3, 3e-3, 5.5e-3, 9e-3}) {
      std::vector<CsvPoint> pts;
      for (double p : grid) pts.push_back({p, grey_line(p, k) * p / star});
      const auto t = pseudo_thresholds(pts, k);
      REQUIRE(t.size() == 1);
      CHECK(t[0] == doctest::Approx(star).epsilon(1e-12));
    }
  }
  SUBCASE("no crossing") {
    std::vector<CsvPoint> pts;
    for (double p : grid) pts.push_back({p, 2.0 * grey_line(p, k)});
    CHECK(pseudo_thresholds(pts, k).empty());
  }
  SUBCASE("multiple crossings are all reported, in order") {
    const std::vector<double> ratio = {0.5, 2.0, 0.5, 0.5, 2.0};
    std::vector<CsvPoint> pts;
    for (std::size_t i = 0; i < grid.size(); ++i) pts.push_back({grid[i], ratio[i] * grey_line(grid[i], k)});
    std::reverse(pts.begin(), pts.end());  // input order does not matter
    const auto t = pseudo_thresholds(pts, k);
    REQUIRE(t.size() == 3);
    CHECK(t[0] > grid[0]);
    CHECK(t[0] < grid[1]);
    CHECK(t[1] > grid[1]);
    CHECK(t[1] < grid[2]);
    CHECK(t[2] > grid[3]);
    CHECK(t[2] < grid[4]);
    // Symmetric log-ratio on a log-spaced pair: the crossing sits at the geometric mean.
    CHECK(t[0] == doctest::Approx(std::sqrt(grid[0] * grid[1])));
  }
  SUBCASE("zero LFR endpoint falls back to linear interpolation") {
    const double g2 = grey_line(grid[1], k);
    const std::vector<CsvPoint> pts = {{grid[0], 0.0}, {grid[1], 3.0 * g2}};
    const auto t = pseudo_thresholds(pts, k);
    REQUIRE(t.size() == 1);
    const double g1 = grey_line(grid[0], k);
    const double expect = grid[0] + g1 * (grid[1] - grid[0]) / (2.0 * g2 + g1);
    CHECK(t[0] == doctest::Approx(expect).epsilon(1e-12));
  }
  SUBCASE("non-positive p is ignored") {
    const std::vector<CsvPoint> pts = {{0.0, 0.0}, {grid[0], 0.5 * grey_line(grid[0], k)},
                                       {grid[1], 0.5 * grey_line(grid[1], k)}};
    CHECK(pseudo_thresholds(pts, k).empty());
  }
}

TEST_CASE("curve CSV round trip") {
  std::vector<CurvePoint> curve;
  for (double p : {0.0, 1e-3, 0.0123456789}) curve.push_back({p, summarize(1000, static_cast<std::uint64_t>(p * 1e4), 5), grey_line(p, 4)});
  const std::string csv = curve_to_csv(curve);
  CHECK(csv.rfind("p,shots,failures,P_L,LFR,sigma_LFR,grey\n", 0) == 0);
  const auto back = curve_from_csv(csv);
  REQUIRE(back.size() == curve.size());
  for (std::size_t i = 0; i < curve.size(); ++i) {
    CHECK(back[i].p == curve[i].p);  // %.17g round-trips doubles exactly
    CHECK(back[i].LFR == curve[i].result.LFR);
  }
  CHECK(curve_from_csv("LFR,p\n0.25,0.5\n")[0].p == 0.5);
  CHECK_THROWS_AS(curve_from_csv(""), SpecError);
  CHECK_THROWS_AS(curve_from_csv("p,shots\n1,2\n"), SpecError);
  CHECK_THROWS_AS(curve_from_csv("p,LFR\n1\n"), SpecError);
  CHECK_THROWS_AS(curve_from_csv("p,LFR\nx,1\n"), SpecError);
}

TEST_CASE("packed sample file round trip and validation") {
  NoiseModel n;
  n.p = 0.02;
  const NoisyCircuit c = build_circuit(fixture("bb-32-12-4"), n, 1);
  const SampleSet s = sample(c, 300, 4);
  std::stringstream buf;
  write_samples(buf, s);
  const std::string bytes = buf.str();
  const std::size_t record = (s.detectors.cols() + s.observables.cols() + 7) / 8;
  CHECK(bytes.size() == 8 + 8 + 4 * 4 + record * 300);
  CHECK(bytes.substr(0, 8) == "SDQSMP01");

  std::stringstream in(bytes);
  const SampleSet back = read_samples(in);
  CHECK(back.shots == s.shots);
  CHECK(back.detectors == s.detectors);
  CHECK(back.observables == s.observables);

  std::string bad = bytes;
  bad[0] = 'X';
  std::stringstream bad_magic(bad);
  CHECK_THROWS_AS(read_samples(bad_magic), SpecError);

  const std::size_t bits = s.detectors.cols() + s.observables.cols();
  REQUIRE(bits % 8 != 0);  // the fixture leaves padding bits in every record
  bad = bytes;
  bad[32 + record - 1] = static_cast<char>(bad[32 + record - 1] | 0x80);
  std::stringstream bad_pad(bad);
  CHECK_THROWS_AS(read_samples(bad_pad), SpecError);

  std::stringstream truncated(bytes.substr(0, bytes.size() - 1));
  CHECK_THROWS_AS(read_samples(truncated), SpecError);
}

TEST_CASE("memory runs are deterministic, thread independent and match decode_samples") {
  MemoryConfig cfg;
  cfg.noise.p = 0.004;
  cfg.rounds = 2;
  cfg.shots = 2500;  // three batches, the last one partial
  cfg.seed = 77;
  cfg.threads = 1;
  const StackedCode code = fixture("bicycle-24-8-4");
  const MemoryRun a = run_memory(code, cfg);
  cfg.threads = 3;
  const MemoryRun b = run_memory(code, cfg);
  CHECK(a.result.failures == b.result.failures);
  CHECK(a.batch_failures == b.batch_failures);
  CHECK(a.batch_failures.size() == 3);
  CHECK(a.invalid == 0);
  CHECK(a.result.failures > 0);

  const NoisyCircuit circuit = build_circuit(code, cfg.noise, cfg.rounds);
  const Decoder dec(derive_detector_model(circuit), cfg.decoder);
  const MemoryRun c = decode_samples(dec, sample(circuit, cfg.shots, cfg.seed), circuit.rounds, 2);
  CHECK(c.result.failures == a.result.failures);
  CHECK(c.batch_failures == a.batch_failures);

  cfg.seed = 78;
  CHECK(run_memory(code, cfg).batch_failures != a.batch_failures);
  cfg.shots = 0;
  CHECK_THROWS_AS(run_memory(code, cfg), SpecError);
}

TEST_CASE("noiseless memory never fails") {
  for (auto kind : {NoiseKind::code_capacity, NoiseKind::phenomenological, NoiseKind::circuit_level}) {
    MemoryConfig cfg;
    cfg.noise.kind = kind;
    cfg.rounds = 3;
    cfg.shots = 2000;
    const MemoryRun r = run_memory(fixture("bb-32-12-4"), cfg);
    CHECK(r.result.failures == 0);
    CHECK(r.result.LFR == 0.0);
  }
}

TEST_CASE("LFR is monotone in p within two standard deviations") {
  const StackedCode code = fixture("bicycle-24-8-4");
  for (auto kind : {NoiseKind::code_capacity, NoiseKind::phenomenological}) {
    CAPTURE(noise_kind_name(kind));
    double prev = -1.0, prev_sigma = 0.0;
    for (double p : {0.005, 0.01, 0.02, 0.04, 0.08}) {
      MemoryConfig cfg;
      cfg.noise.kind = kind;
      cfg.noise.p = p;
      cfg.rounds = 3;
      cfg.shots = 3000;
      cfg.seed = 11;
      const SimResult r = run_memory(code, cfg).result;
      CAPTURE(p);
      CHECK(r.LFR + 2.0 * std::hypot(r.sigma_LFR, prev_sigma) >= prev);
      prev = r.LFR;
      prev_sigma = r.sigma_LFR;
    }
  }
}

TEST_CASE("X and Z memories are statistically indistinguishable") {
  // Per-batch failure counts from the two bases, compared with a two-sample
  // KS test at significance 0.001 (critical value 1.95 sqrt((n + m) / (n m))).
  const StackedCode code = fixture("bicycle-24-8-4");
  MemoryConfig cfg;
  cfg.noise.kind = NoiseKind::phenomenological;
  cfg.noise.p = 0.02;
  cfg.rounds = 3;
  cfg.shots = 40 * 1024;
  cfg.seed = 2024;
  cfg.basis = MemoryBasis::z;
  const MemoryRun z = run_memory(code, cfg);
  cfg.basis = MemoryBasis::x;
  cfg.seed = 4048;
  const MemoryRun x = run_memory(code, cfg);
  const double n = static_cast<double>(z.batch_failures.size());
  const double d = ks_statistic(z.batch_failures, x.batch_failures);
  MESSAGE("failures Z " << z.result.failures << " X " << x.result.failures << ", KS D = " << d);
  CHECK(z.result.failures > 100);
  CHECK(d < 1.95 * std::sqrt(2.0 / n));
}
