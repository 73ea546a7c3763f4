// sdq: command-line front end for building, analysing, searching and
// simulating stacked self-dual codes.
//
// Every subcommand writes its artifacts into --out-dir together with a
// <subcommand>.manifest.json listing the effective configuration, the seed,
// the library version, the wall-clock time and a SHA-256 digest of every file
// written. Any flag can also be given in a JSON config file (--config) whose
// keys are the long flag names without dashes; flags on the command line win.
//
// Exit codes: 0 success, 2 invalid input, 3 budget exhausted (the partial
// result is still written).

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sdq/catalog.hpp"
#include "sdq/code_io.hpp"
#include "sdq/distance.hpp"
#include "sdq/memory.hpp"
#include "sdq/search.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace sdq;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitBudget = 3;

struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ------------------------------------------------------------ artifacts

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

// Collects the files a run writes; all writes happen on the calling thread
// in the order the subcommand issues them.
class Artifacts {
 public:
  explicit Artifacts(fs::path dir) : dir_(std::move(dir)) {}

  fs::path write(const std::string& name, const std::string& bytes) {
    fs::create_directories(dir_);
    const fs::path path = dir_ / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot write '" + path.string() + "'");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    files_.push_back({{"path", name}, {"bytes", bytes.size()}, {"sha256", sha256_hex(bytes)}});
    return path;
  }

  void manifest(const std::string& subcommand, const json& config, std::uint64_t seed, double seconds) {
    json m;
    m["subcommand"] = subcommand;
    m["config"] = config;
    m["seed"] = seed;
    m["version"] = SDQ_VERSION;
    m["wall_clock_seconds"] = seconds;
    m["outputs"] = files_;
    fs::create_directories(dir_);
    std::ofstream(dir_ / (subcommand + ".manifest.json")) << m.dump(2) << "\n";
  }

 private:
  fs::path dir_;
  json files_ = json::array();
};

// ------------------------------------------------------------ config files

// Fills options not given on the command line from a JSON object keyed by
// long option names (or positional names).
void apply_config(CLI::App& sub, const std::string& path) {
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput("config file '" + path + "' is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw InvalidInput("config file must hold a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "config") continue;
    CLI::Option* opt = sub.get_option_no_throw("--" + key);
    if (!opt) opt = sub.get_option_no_throw(key);
    if (!opt) throw InvalidInput("config file: unknown key '" + key + "' for '" + sub.get_name() + "'");
    if (opt->count() > 0) continue;  // the command line wins
    std::vector<std::string> items;
    auto text = [&](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    if (value.is_array())
      for (const auto& v : value) items.push_back(text(v));
    else
      items.push_back(text(value));
    for (const auto& s : items) opt->add_result(s);
    try {
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw InvalidInput("config file: key '" + key + "': " + e.what());
    }
  }
}

// ------------------------------------------------------------ code input

struct CodeInput {
  std::string spec_file;
  std::string catalog_id;
};

void add_code_options(CLI::App& sub, CodeInput& in) {
  sub.add_option("spec", in.spec_file, "Code spec file (JSON)");
  sub.add_option("--code", in.catalog_id, "Catalog code id instead of a spec file (see `sdq params --list`)");
}

struct LoadedCode {
  CodeSpec spec;
  const catalog::Entry* entry = nullptr;
  json source;
};

LoadedCode load_code(const CodeInput& in) {
  LoadedCode out;
  if (in.spec_file.empty() == in.catalog_id.empty()) throw InvalidInput("give exactly one of a spec file or --code");
  if (!in.catalog_id.empty()) {
    out.entry = catalog::find(in.catalog_id);
    if (!out.entry) throw InvalidInput("unknown catalog code '" + in.catalog_id + "'");
    out.spec = catalog::to_spec(*out.entry);
    out.source = {{"code", in.catalog_id}};
    return out;
  }
  std::vector<std::string> warnings;
  out.spec = load_spec_file(in.spec_file, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  out.source = {{"spec", in.spec_file}, {"parsed", spec_to_json(out.spec)}};
  return out;
}

std::string params_text(std::size_t n, std::size_t k, std::uint32_t d, bool exact) {
  return "[[" + std::to_string(n) + "," + std::to_string(k) + "," + (exact ? "" : "<=") + std::to_string(d) + "]]";
}

json distance_json(const DistanceResult& r) {
  json j = {{"status", status_name(r.status)},
            {"d_upper", r.d_upper},
            {"lower_bound", r.lower_bound},
            {"exact", r.exact},
            {"effort", r.effort}};
  if (r.has_witness()) j["witness"] = r.witness.support();
  return j;
}

// ------------------------------------------------------------ subcommands

struct DistanceFlags {
  std::string method = "auto";
  std::uint64_t iterations = 2000;
  std::uint64_t budget = 2'000'000'000ULL;
  std::uint32_t w_max = 0;
  std::size_t exact_max_n = 40;
};

void add_distance_options(CLI::App& sub, DistanceFlags& f) {
  sub.add_option("--method", f.method, "exact | randomized | auto (exact up to --exact-max-n)")
      ->check(CLI::IsMember({"exact", "randomized", "auto"}));
  sub.add_option("--iterations", f.iterations, "Randomized information-set iterations");
  sub.add_option("--budget", f.budget, "Exact enumeration budget (codewords)");
  sub.add_option("--w-max", f.w_max, "Exact search weight cap (0: none)");
  sub.add_option("--exact-max-n", f.exact_max_n, "Largest n for which auto picks the exact method");
}

DistanceResult run_distance(const StackedCode& code, const DistanceFlags& f, std::uint64_t seed, std::size_t threads) {
  const bool exact = f.method == "exact" || (f.method == "auto" && code.n <= f.exact_max_n);
  if (exact) {
    ExactOptions o;
    o.w_max = f.w_max;
    o.budget = f.budget;
    return distance_exact(code, o);
  }
  RandomizedOptions o;
  o.iterations = f.iterations;
  o.seed = seed;
  o.threads = threads;
  return distance_randomized(code, o);
}

struct Common {
  std::string config;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  std::size_t threads = 0;
};

void add_common(CLI::App& sub, Common& c) {
  sub.add_option("--config", c.config, "JSON config file; keys are long flag names");
  sub.add_option("--out-dir", c.out_dir, "Directory for outputs and the manifest");
  sub.add_option("--seed", c.seed, "Master seed");
  sub.add_option("--threads", c.threads, "Worker threads (0: all cores)");
}

// Effective values of every option of `sub`, for the manifest echo.
json echo(const CLI::App& sub) {
  json j = json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt->get_name() == "--help" || opt->get_name().empty()) continue;
    std::string key = opt->get_single_name();
    const auto res = opt->results();
    if (res.empty()) {
      const std::string def = opt->get_default_str();
      if (!def.empty()) j[key] = def;
      continue;
    }
    j[key] = res.size() == 1 ? json(res[0]) : json(res);
  }
  return j;
}

int cmd_list() {
  for (const auto& e : catalog::entries())
    std::cout << e.id << "  " << params_text(e.n, e.k, e.d, !e.d_is_bound) << " " << parity_name(e.parity) << "\n";
  return kExitOk;
}

int cmd_params(const CodeInput& in, const DistanceFlags& df, bool skip_distance, const Common& c, Artifacts& out) {
  const LoadedCode lc = load_code(in);
  const StackedCode code = build_code(lc.spec);
  json report = lc.source;
  report["n"] = code.n;
  report["k"] = code.k;
  report["parity"] = parity_name(classify_parity(code));
  if (lc.spec.family != Family::reflection) {
    const std::size_t kmax = quotient_dim(lc.spec.lattice, stack_polynomial(lc.spec));
    report["k_max"] = kmax;
    report["k_equals_2_k_max"] = 2 * kmax == code.k;
  }
  int rc = kExitOk;
  std::string line;
  if (skip_distance || code.k == 0) {
    line = "[[" + std::to_string(code.n) + "," + std::to_string(code.k) + "]]";
  } else {
    const DistanceResult d = run_distance(code, df, c.seed, c.threads);
    report["distance"] = distance_json(d);
    if (d.has_witness()) {
      const Merit merit = Merit::of(code.n, code.k, d.d_upper);
      report["merit"] = merit.rounded();
      line = params_text(code.n, code.k, d.d_upper, d.exact);
      line += " " + std::string(parity_name(classify_parity(code))) + "\nkd^2/n " + merit.rounded();
    } else {
      line = "[[" + std::to_string(code.n) + "," + std::to_string(code.k) + ",>=" + std::to_string(d.lower_bound) + "]]";
    }
    if (d.status == DistanceStatus::budget_exceeded) rc = kExitBudget;
  }
  if (line.find(' ') == std::string::npos) line += " " + std::string(parity_name(classify_parity(code)));
  std::cout << line << "\n";
  if (report.contains("k_max"))
    std::cout << "k_max " << report["k_max"].get<std::size_t>() << " (2 k_max " << (report["k_equals_2_k_max"] ? "==" : "!=")
              << " k)\n";
  out.write("params.json", report.dump(2) + "\n");
  return rc;
}

int cmd_distance(const CodeInput& in, const DistanceFlags& df, const Common& c, Artifacts& out) {
  const LoadedCode lc = load_code(in);
  const StackedCode code = build_code(lc.spec);
  const DistanceResult d = run_distance(code, df, c.seed, c.threads);
  json report = lc.source;
  report["n"] = code.n;
  report["k"] = code.k;
  report["distance"] = distance_json(d);
  std::cout << status_name(d.status) << " d_upper=" << d.d_upper << " lower_bound=" << d.lower_bound
            << (d.exact ? " exact" : "") << "\n";
  out.write("distance.json", report.dump(2) + "\n");
  return d.status == DistanceStatus::budget_exceeded ? kExitBudget : kExitOk;
}

struct SearchFlags {
  std::string space_file;
  std::int64_t budget = -1;
  std::uint64_t iterations = 2000;
  std::uint64_t quick_iterations = 40;
  std::string resume;
  std::uint64_t checkpoint_every = 0;
};

int cmd_search(const SearchFlags& f, const Common& c, Artifacts& out) {
  if (f.space_file.empty()) throw InvalidInput("search needs a search-space file");
  std::ifstream in(f.space_file);
  if (!in) throw InvalidInput("cannot open '" + f.space_file + "'");
  SearchSpace space;
  try {
    space = space_from_json(json::parse(in));
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("search space: ") + e.what());
  }
  if (f.budget >= 0) space.budget = static_cast<std::uint64_t>(f.budget);
  space.seed = c.seed;
  space.validate();
  DistanceBudget db;
  db.iterations = f.iterations;
  db.quick_iterations = f.quick_iterations;
  db.threads = c.threads;
  SearchState state;
  if (!f.resume.empty()) {
    std::ifstream r(f.resume);
    if (!r) throw InvalidInput("cannot open checkpoint '" + f.resume + "'");
    state = state_from_json(space, json::parse(r));
  }
  const fs::path ckpt = fs::path(c.out_dir) / "search.checkpoint.json";
  state = search(space, db, std::move(state), {}, f.checkpoint_every, [&](const SearchState& s) {
    fs::create_directories(c.out_dir);
    std::ofstream(ckpt) << state_to_json(space, s).dump() << "\n";
  });
  json frontier = json::array();
  for (const auto& h : state.frontier) {
    frontier.push_back(hit_to_json(h));
    std::cout << params_text(h.n, h.k, h.d_upper, h.exact) << " " << parity_name(h.parity) << " kd^2/n "
              << h.merit.rounded() << "\n";
  }
  const json stats = {{"evaluated", state.stats.evaluated}, {"rejected", state.stats.rejected},
                      {"k_zero", state.stats.k_zero},       {"parity_skipped", state.stats.parity_skipped},
                      {"pruned", state.stats.pruned},       {"distance_runs", state.stats.distance_runs}};
  out.write("frontier.json", json({{"space", space_to_json(space)}, {"stats", stats}, {"frontier", frontier}}).dump(2) + "\n");
  out.write("search.state.json", state_to_json(space, state).dump() + "\n");
  std::cerr << state.stats.evaluated << " candidates evaluated, " << state.frontier.size() << " on the frontier\n";
  return kExitOk;
}

struct NoiseFlags {
  std::string kind = "circuit";
  std::vector<double> p;
  std::uint32_t rounds = 0;
  std::string basis = "z";
  bool idle = false;
};

void add_noise_options(CLI::App& sub, NoiseFlags& f, bool grid) {
  sub.add_option("--noise", f.kind, "circuit | phenomenological | code-capacity")
      ->check(CLI::IsMember({"circuit", "circuit-level", "phenomenological", "code-capacity"}));
  if (grid)
    sub.add_option("--p", f.p, "Physical error rates (comma separated)")->delimiter(',');
  else
    sub.add_option("--p", f.p, "Physical error rate")->expected(1);
  sub.add_option("--rounds", f.rounds, "Syndrome rounds (0: the code distance)");
  sub.add_option("--basis", f.basis, "Memory basis z | x")->check(CLI::IsMember({"z", "x"}));
  sub.add_flag("--idle-noise", f.idle, "Depolarize qubits idle during a CNOT layer");
}

NoiseModel noise_at(const NoiseFlags& f, double p) {
  NoiseModel n;
  n.kind = parse_noise_kind(f.kind == "circuit" ? "circuit-level" : f.kind);
  n.p = p;
  n.idle_noise = f.idle;
  n.validate();
  return n;
}

// Rounds default to the code distance: the catalog value when known,
// otherwise the distance computed with the default budgets.
std::uint32_t resolve_rounds(const NoiseFlags& f, const LoadedCode& lc, const StackedCode& code, std::uint64_t seed,
                             std::size_t threads) {
  if (f.rounds > 0) return f.rounds;
  if (lc.entry) return lc.entry->d;
  const DistanceResult d = run_distance(code, DistanceFlags{}, seed, threads);
  if (!d.has_witness()) throw InvalidInput("cannot default --rounds: no distance found; pass --rounds");
  return d.d_upper;
}

struct DecoderFlags {
  std::uint32_t bp_iters = 100;
  std::string bp_variant = "min-sum";
  double min_sum_scale = 0.8;
  std::string schedule = "layered";
  std::uint32_t osd_order = 0;
  std::string osd_method = "exhaustive";
  bool no_osd = false;
};

void add_decoder_options(CLI::App& sub, DecoderFlags& f) {
  sub.add_option("--bp-iters", f.bp_iters, "BP iterations");
  sub.add_option("--bp-variant", f.bp_variant, "min-sum | product-sum");
  sub.add_option("--min-sum-scale", f.min_sum_scale, "Min-sum scaling factor in (0, 1]");
  sub.add_option("--schedule", f.schedule, "layered | flooding");
  sub.add_option("--osd-order", f.osd_order, "OSD order (0: OSD-0)");
  sub.add_option("--osd-method", f.osd_method, "exhaustive | combination-sweep");
  sub.add_flag("--no-osd", f.no_osd, "BP only");
}

DecoderConfig decoder_config(const DecoderFlags& f) {
  DecoderConfig d;
  d.bp_iters = f.bp_iters;
  d.variant = parse_bp_variant(f.bp_variant);
  d.min_sum_scale = f.min_sum_scale;
  d.schedule = parse_bp_schedule(f.schedule);
  d.osd_order = f.osd_order;
  d.osd_method = parse_osd_method(f.osd_method);
  d.osd = !f.no_osd;
  d.validate();
  return d;
}

int cmd_simulate(const CodeInput& in, const NoiseFlags& nf, const DecoderFlags& df, std::uint64_t shots, const Common& c,
                 Artifacts& out, std::string csv_name) {
  const LoadedCode lc = load_code(in);
  const StackedCode code = build_code(lc.spec);
  if (nf.p.empty()) throw InvalidInput("simulate needs at least one --p value");
  if (shots == 0) throw InvalidInput("--shots must be positive");
  MemoryConfig mc;
  mc.rounds = resolve_rounds(nf, lc, code, c.seed, c.threads);
  mc.basis = nf.basis == "x" ? MemoryBasis::x : MemoryBasis::z;
  mc.shots = shots;
  mc.seed = c.seed;
  mc.threads = c.threads;
  mc.decoder = decoder_config(df);
  for (double p : nf.p) noise_at(nf, p);  // reject bad rates before running anything
  std::vector<CurvePoint> curve;
  for (double p : nf.p) {
    mc.noise = noise_at(nf, p);
    const MemoryRun run = run_memory(code, mc);
    curve.push_back({p, run.result, grey_line(p, code.k)});
    std::cerr << "p=" << p << " failures " << run.result.failures << "/" << run.result.shots << " LFR "
              << run.result.LFR << " +- " << run.result.sigma_LFR << "\n";
  }
  const std::string csv = curve_to_csv(curve);
  std::cout << csv;
  out.write(csv_name, csv);
  return kExitOk;
}

int cmd_pseudothreshold(const std::string& csv_file, std::size_t k, Artifacts& out) {
  if (csv_file.empty()) throw InvalidInput("pseudothreshold needs a curve CSV");
  if (k == 0) throw InvalidInput("--k must be positive");
  std::ifstream in(csv_file);
  if (!in) throw InvalidInput("cannot open '" + csv_file + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  const auto points = curve_from_csv(ss.str());
  if (points.size() < 2) throw InvalidInput("need at least two grid points");
  const auto crossings = pseudo_thresholds(points, k);
  if (crossings.empty()) std::cout << "no crossing in range\n";
  for (double p0 : crossings) std::printf("p0 %.6g\n", p0);
  out.write("pseudothreshold.json", json({{"csv", csv_file}, {"k", k}, {"p0", crossings}}).dump(2) + "\n");
  return kExitOk;
}

struct ExportFlags {
  std::vector<std::string> what = {"h", "seed"};
  std::string format = "alist";
};

int cmd_export(const CodeInput& in, const ExportFlags& f, const NoiseFlags& nf, const Common& c, Artifacts& out) {
  const LoadedCode lc = load_code(in);
  const StackedCode code = build_code(lc.spec);
  const auto matrix = [&](const BinMatrix& m) { return f.format == "alist" ? to_alist(m) : to_dense(m); };
  for (const auto& w : f.what) {
    if (w == "h") {
      out.write("H." + f.format, matrix(code.H));
    } else if (w == "u") {
      out.write("U." + f.format, matrix(code.U));
    } else if (w == "logicals") {
      BinMatrix l(code.logicals.size(), code.n);
      for (std::size_t i = 0; i < code.logicals.size(); ++i) l.set_row(i, code.logicals[i]);
      out.write("logicals." + f.format, matrix(l));
    } else if (w == "seed") {
      json sites = json::array();
      for (const auto& s : seed_stabilizer_support(lc.spec))
        sites.push_back({{"sublattice", s.nu}, {"x", s.jx}, {"y", s.jy}, {"layer", s.layer}});
      out.write("seed_support.json", json({{"spec", spec_to_json(lc.spec)}, {"support", sites}}).dump(2) + "\n");
    } else if (w == "spec") {
      out.write("spec.json", spec_to_json(lc.spec).dump(2) + "\n");
    } else if (w == "circuit" || w == "dem") {
      if (nf.p.size() != 1) throw InvalidInput("exporting a circuit or detector model needs exactly one --p");
      const NoisyCircuit circuit = build_circuit(code, noise_at(nf, nf.p[0]), resolve_rounds(nf, lc, code, c.seed, c.threads),
                                                 nf.basis == "x" ? MemoryBasis::x : MemoryBasis::z);
      if (w == "circuit")
        out.write("circuit.txt", circuit_to_text(circuit));
      else
        out.write("model.dem", dem_to_text(derive_detector_model(circuit)));
    } else {
      throw InvalidInput("unknown export item '" + w + "'");
    }
  }
  return kExitOk;
}

int cmd_sample(const CodeInput& in, const NoiseFlags& nf, std::uint64_t shots, const Common& c, Artifacts& out) {
  const LoadedCode lc = load_code(in);
  const StackedCode code = build_code(lc.spec);
  if (nf.p.size() != 1) throw InvalidInput("sample needs exactly one --p");
  if (shots == 0) throw InvalidInput("--shots must be positive");
  const NoisyCircuit circuit = build_circuit(code, noise_at(nf, nf.p[0]), resolve_rounds(nf, lc, code, c.seed, c.threads),
                                             nf.basis == "x" ? MemoryBasis::x : MemoryBasis::z);
  std::ostringstream bin;
  write_samples(bin, sample(circuit, shots, c.seed, c.threads));
  out.write("samples.bin", bin.str());
  out.write("model.dem", dem_to_text(derive_detector_model(circuit)));
  std::cerr << shots << " shots, " << circuit.detectors.size() << " detectors, " << circuit.observables.size()
            << " observables, " << circuit.rounds << " rounds\n";
  return kExitOk;
}

int cmd_decode(const std::string& dem_file, const std::string& samples_file, std::uint32_t rounds, const DecoderFlags& df,
               const Common& c, Artifacts& out) {
  if (dem_file.empty() || samples_file.empty()) throw InvalidInput("decode needs --dem and --samples");
  std::ifstream dem_in(dem_file);
  if (!dem_in) throw InvalidInput("cannot open '" + dem_file + "'");
  std::stringstream dem_text;
  dem_text << dem_in.rdbuf();
  const Decoder decoder(dem_from_text(dem_text.str()), decoder_config(df));
  std::ifstream sin(samples_file, std::ios::binary);
  if (!sin) throw InvalidInput("cannot open '" + samples_file + "'");
  const SampleSet samples = read_samples(sin);
  const MemoryRun run = decode_samples(decoder, samples, rounds, c.threads);
  const json j = {{"shots", run.result.shots},   {"failures", run.result.failures}, {"rounds", run.result.rounds},
                  {"P_L", run.result.P_L},       {"LFR", run.result.LFR},           {"sigma_LFR", run.result.sigma_LFR},
                  {"invalid", run.invalid},      {"bp_converged", run.bp_converged}};
  std::cout << j.dump(2) << "\n";
  out.write("decode.json", j.dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stacked self-dual quantum codes: construction, distance, search and memory simulation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(SDQ_VERSION));
  app.option_defaults()->always_capture_default();

  Common common;
  CodeInput code_in;
  DistanceFlags dist;
  NoiseFlags noise;
  DecoderFlags dec;
  SearchFlags sf;
  ExportFlags ef;
  std::uint64_t shots = 10000;
  bool list = false, skip_distance = false;
  std::string csv_file, csv_name = "curve.csv", dem_file, samples_file;
  std::size_t k_logical = 0;
  std::uint32_t decode_rounds = 1;

  auto* params = app.add_subcommand("params", "Print n, k, parity, k_max cross-check, distance and kd^2/n");
  add_code_options(*params, code_in);
  add_distance_options(*params, dist);
  params->add_flag("--list", list, "List catalog codes and exit");
  params->add_flag("--no-distance", skip_distance, "Skip the distance computation");
  add_common(*params, common);

  auto* distance = app.add_subcommand("distance", "Compute or bound the code distance");
  add_code_options(*distance, code_in);
  add_distance_options(*distance, dist);
  add_common(*distance, common);

  auto* search_cmd = app.add_subcommand("search", "Search base-code polynomials for high kd^2/n");
  search_cmd->add_option("space", sf.space_file, "Search-space file (JSON)");
  search_cmd->add_option("--budget", sf.budget, "Candidates to evaluate (overrides the space file)");
  search_cmd->add_option("--iterations", sf.iterations, "Randomized distance iterations per survivor");
  search_cmd->add_option("--quick-iterations", sf.quick_iterations, "Iterations of the pruning bound");
  search_cmd->add_option("--resume", sf.resume, "Resume from a checkpoint / state file");
  search_cmd->add_option("--checkpoint-every", sf.checkpoint_every, "Write a checkpoint every N candidates");
  add_common(*search_cmd, common);

  auto* simulate = app.add_subcommand("simulate", "Memory experiment over a p grid; writes a curve CSV");
  add_code_options(*simulate, code_in);
  add_noise_options(*simulate, noise, true);
  add_decoder_options(*simulate, dec);
  simulate->add_option("--shots", shots, "Shots per grid point");
  simulate->add_option("--csv", csv_name, "CSV file name inside --out-dir");
  add_common(*simulate, common);

  auto* pseudo = app.add_subcommand("pseudothreshold", "Crossings of a curve CSV with the grey line 1-(1-p)^k");
  pseudo->add_option("csv", csv_file, "Curve CSV written by simulate");
  pseudo->add_option("--k", k_logical, "Number of logical qubits");
  add_common(*pseudo, common);

  auto* export_cmd = app.add_subcommand("export", "Write check matrices, seed support, circuits or detector models");
  add_code_options(*export_cmd, code_in);
  export_cmd->add_option("--what", ef.what, "Items: h, u, logicals, seed, spec, circuit, dem")->delimiter(',');
  export_cmd->add_option("--format", ef.format, "Matrix format alist | dense")->check(CLI::IsMember({"alist", "dense"}));
  add_noise_options(*export_cmd, noise, false);
  add_common(*export_cmd, common);

  auto* sample_cmd = app.add_subcommand("sample", "Sample detector / observable records to a packed binary file");
  add_code_options(*sample_cmd, code_in);
  add_noise_options(*sample_cmd, noise, false);
  sample_cmd->add_option("--shots", shots, "Shots");
  add_common(*sample_cmd, common);

  auto* decode_cmd = app.add_subcommand("decode", "Decode a packed sample file against a detector model");
  decode_cmd->add_option("--dem", dem_file, "Detector model text file");
  decode_cmd->add_option("--samples", samples_file, "Packed sample file");
  decode_cmd->add_option("--rounds", decode_rounds, "Rounds used for the per-round failure rate");
  add_decoder_options(*decode_cmd, dec);
  add_common(*decode_cmd, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInvalid;
  }

  CLI::App* sub = app.get_subcommands().front();
  const auto start = std::chrono::steady_clock::now();
  try {
    apply_config(*sub, common.config);
    Artifacts out(common.out_dir);
    int rc = kExitOk;
    if (sub == params && list) return cmd_list();
    if (sub == params) rc = cmd_params(code_in, dist, skip_distance, common, out);
    if (sub == distance) rc = cmd_distance(code_in, dist, common, out);
    if (sub == search_cmd) rc = cmd_search(sf, common, out);
    if (sub == simulate) rc = cmd_simulate(code_in, noise, dec, shots, common, out, csv_name);
    if (sub == pseudo) rc = cmd_pseudothreshold(csv_file, k_logical, out);
    if (sub == export_cmd) rc = cmd_export(code_in, ef, noise, common, out);
    if (sub == sample_cmd) rc = cmd_sample(code_in, noise, shots, common, out);
    if (sub == decode_cmd) rc = cmd_decode(dem_file, samples_file, decode_rounds, dec, common, out);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.manifest(sub->get_name(), echo(*sub), common.seed, seconds);
    return rc;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const CommutatorViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const InstanceTooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const json::exception& e) {
    std::cerr << "error: malformed JSON input: " << e.what() << "\n";
  }
  return kExitInvalid;
}
