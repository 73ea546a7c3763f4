#include "sdq/detector_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace sdq {

double compose_probability(double a, double b) noexcept { return a * (1.0 - b) + b * (1.0 - a); }

double depolarize1_component(double p) {
  if (p < 0.0 || p > 0.75) throw SpecError("depolarize-1 probability must lie in [0, 3/4]");
  return 0.5 - 0.5 * std::sqrt(1.0 - 4.0 * p / 3.0);
}

double depolarize2_component(double p) {
  if (p < 0.0 || p > 15.0 / 16.0) throw SpecError("depolarize-2 probability must lie in [0, 15/16]");
  return 0.5 - 0.5 * std::pow(1.0 - 16.0 * p / 15.0, 0.125);
}

namespace {

class Accumulator {
 public:
  void add(const BinVector& signature, double q) {
    if (q <= 0.0 || signature.is_zero()) return;
    auto [it, inserted] = merged_.try_emplace(signature, q);
    if (!inserted) it->second = compose_probability(it->second, q);
  }

  DetectorModel finish(std::uint32_t detectors, std::uint32_t observables) const {
    DetectorModel m;
    m.num_detectors = detectors;
    m.num_observables = observables;
    for (const auto& [sig, q] : merged_) {
      Mechanism mech;
      mech.p = q;
      for (auto i : sig.support()) {
        if (i < detectors)
          mech.detectors.push_back(static_cast<std::uint32_t>(i));
        else
          mech.observables.push_back(static_cast<std::uint32_t>(i - detectors));
      }
      m.mechanisms.push_back(std::move(mech));
    }
    std::sort(m.mechanisms.begin(), m.mechanisms.end(), [](const Mechanism& a, const Mechanism& b) {
      return std::tie(a.detectors, a.observables) < std::tie(b.detectors, b.observables);
    });
    return m;
  }

 private:
  std::map<BinVector, double> merged_;
};

}  // namespace

DetectorModel derive_detector_model(const NoisyCircuit& c) {
  const auto D = static_cast<std::uint32_t>(c.detectors.size());
  const auto K = static_cast<std::uint32_t>(c.observables.size());
  const std::size_t bits = std::size_t{D} + K;

  // What flipping measurement m flips.
  std::vector<BinVector> meas_sens(c.num_measurements, BinVector(bits));
  for (std::uint32_t d = 0; d < D; ++d)
    for (auto m : c.detectors[d]) meas_sens[m].flip(d);
  for (std::uint32_t o = 0; o < K; ++o)
    for (auto m : c.observables[o]) meas_sens[m].flip(D + o);

  std::vector<BinVector> xs(c.num_qubits, BinVector(bits)), zs(c.num_qubits, BinVector(bits));
  Accumulator acc;
  std::uint32_t next_measurement = c.num_measurements;

  for (auto it = c.instructions.rbegin(); it != c.instructions.rend(); ++it) {
    const Instruction& ins = *it;
    const auto& t = ins.targets;
    switch (ins.op) {
      case Op::reset:
        for (auto q : t) {
          xs[q] = BinVector(bits);
          zs[q] = BinVector(bits);
        }
        break;
      case Op::h:
        for (auto q : t) std::swap(xs[q], zs[q]);
        break;
      case Op::cx:
        for (std::size_t i = 0; i < t.size(); i += 2) {
          // X_c -> X_c X_t and Z_t -> Z_c Z_t going forward.
          xs[t[i]] ^= xs[t[i + 1]];
          zs[t[i + 1]] ^= zs[t[i]];
        }
        break;
      case Op::measure:
        next_measurement -= static_cast<std::uint32_t>(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) xs[t[i]] ^= meas_sens[next_measurement + i];
        break;
      case Op::dep1: {
        const double q = depolarize1_component(ins.p);
        for (auto target : t) {
          acc.add(xs[target], q);
          acc.add(zs[target], q);
          acc.add(xs[target] ^ zs[target], q);
        }
        break;
      }
      case Op::dep2: {
        const double q = depolarize2_component(ins.p);
        for (std::size_t i = 0; i < t.size(); i += 2) {
          const BinVector* parts[2][2] = {{&xs[t[i]], &zs[t[i]]}, {&xs[t[i + 1]], &zs[t[i + 1]]}};
          for (unsigned code = 1; code < 16; ++code) {
            BinVector sig(bits);
            for (unsigned bit = 0; bit < 4; ++bit)
              if (code >> bit & 1U) sig ^= *parts[bit / 2][bit % 2];
            acc.add(sig, q);
          }
        }
        break;
      }
      case Op::x_error:
        if (ins.p > 0.5) throw SpecError("readout flip probability must lie in [0, 1/2]");
        for (auto target : t) acc.add(xs[target], ins.p);
        break;
    }
  }
  return acc.finish(D, K);
}

DetectorModel merge_mechanisms(DetectorModel model) {
  Accumulator acc;
  for (const auto& m : model.mechanisms) {
    BinVector sig(std::size_t{model.num_detectors} + model.num_observables);
    for (auto d : m.detectors) sig.flip(d);
    for (auto o : m.observables) sig.flip(model.num_detectors + o);
    acc.add(sig, m.p);
  }
  return acc.finish(model.num_detectors, model.num_observables);
}

BinMatrix detector_matrix(const DetectorModel& model) {
  BinMatrix h(model.num_detectors, model.mechanisms.size());
  for (std::size_t j = 0; j < model.mechanisms.size(); ++j)
    for (auto d : model.mechanisms[j].detectors) h.set(d, j);
  return h;
}

BinMatrix observable_matrix(const DetectorModel& model) {
  BinMatrix l(model.num_observables, model.mechanisms.size());
  for (std::size_t j = 0; j < model.mechanisms.size(); ++j)
    for (auto o : model.mechanisms[j].observables) l.set(o, j);
  return l;
}

std::string dem_to_text(const DetectorModel& model) {
  std::ostringstream out;
  out << "# sdq-dem v1\n";
  out << "detectors " << model.num_detectors << " observables " << model.num_observables << " mechanisms "
      << model.mechanisms.size() << '\n';
  char buf[40];
  for (const auto& m : model.mechanisms) {
    std::snprintf(buf, sizeof buf, "%.17g", m.p);
    out << "error " << buf;
    for (auto d : m.detectors) out << " D" << d;
    for (auto o : m.observables) out << " L" << o;
    out << '\n';
  }
  return out.str();
}

DetectorModel dem_from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  DetectorModel model;
  bool header = false;
  std::size_t expected = 0, line_no = 0;
  auto fail = [&](const std::string& why) {
    throw SpecError("detector model line " + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    if (word == "detectors") {
      std::string w1, w2;
      if (!(ls >> model.num_detectors >> w1 >> model.num_observables >> w2 >> expected) || w1 != "observables" ||
          w2 != "mechanisms")
        fail("malformed header");
      header = true;
    } else if (word == "error") {
      if (!header) fail("mechanism before header");
      Mechanism m;
      if (!(ls >> m.p) || !(m.p > 0.0 && m.p <= 0.5)) fail("probability must lie in (0, 1/2]");
      std::string id;
      while (ls >> id) {
        if (id.size() < 2 || (id[0] != 'D' && id[0] != 'L')) fail("bad target '" + id + "'");
        std::uint32_t v = 0;
        try {
          v = static_cast<std::uint32_t>(std::stoul(id.substr(1)));
        } catch (const std::exception&) {
          fail("bad target '" + id + "'");
        }
        if (id[0] == 'D') {
          if (v >= model.num_detectors) fail("detector id out of range");
          m.detectors.push_back(v);
        } else {
          if (v >= model.num_observables) fail("observable id out of range");
          m.observables.push_back(v);
        }
      }
      std::sort(m.detectors.begin(), m.detectors.end());
      std::sort(m.observables.begin(), m.observables.end());
      if (m.detectors.empty() && m.observables.empty()) fail("mechanism flips nothing");
      model.mechanisms.push_back(std::move(m));
    } else {
      fail("unknown record '" + word + "'");
    }
  }
  if (!header) throw SpecError("detector model: missing header");
  if (model.mechanisms.size() != expected) throw SpecError("detector model: mechanism count mismatch");
  return model;
}

}  // namespace sdq
