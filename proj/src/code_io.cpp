#include "sdq/code_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace sdq {

namespace {

using nlohmann::json;

template <typename Fn>
auto with_field(std::string_view field, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw SpecError("field '" + std::string(field) + "': " + e.what());
  } catch (const SpecError& e) {
    throw SpecError("field '" + std::string(field) + "': " + e.what());
  }
}

std::uint32_t read_dim(const json& j, const char* field, std::uint32_t fallback, bool required) {
  return with_field(field, [&]() -> std::uint32_t {
    if (!j.contains(field)) {
      if (required) throw SpecError("missing");
      return fallback;
    }
    const json& v = j.at(field);
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0 || v.get<std::int64_t>() > (1 << 24))
      throw SpecError("expected a non-negative integer");
    return v.get<std::uint32_t>();
  });
}

PolySpec read_poly(const json& j, const char* field, const LatticeSpec& lattice, std::vector<std::string>* warnings) {
  return with_field(field, [&]() -> PolySpec {
    if (!j.contains(field)) throw SpecError("missing");
    const json& v = j.at(field);
    if (v.is_string()) return parse_poly(v.get<std::string>(), lattice, warnings);
    if (!v.is_array()) throw SpecError("expected an array of term strings or a polynomial string");
    std::vector<std::string> terms;
    for (const auto& t : v) {
      if (!t.is_string()) throw SpecError("terms must be strings");
      terms.push_back(t.get<std::string>());
    }
    return parse_terms(terms, lattice, warnings);
  });
}

}  // namespace

CodeSpec spec_from_json(const json& j, std::vector<std::string>* warnings) {
  if (!j.is_object()) throw SpecError("spec must be a JSON object");
  CodeSpec spec;
  spec.family = with_field("family", [&] {
    if (!j.contains("family")) throw SpecError("missing");
    return parse_family(j.at("family").get<std::string>());
  });
  spec.lattice.l = read_dim(j, "l", 1, true);
  spec.lattice.m = read_dim(j, "m", 1, spec.family != Family::bicycle);
  spec.lattice.twist = read_dim(j, "gamma", 0, false);
  spec.lattice.allow_reflection = spec.family == Family::reflection;
  with_field("l", [&] { spec.lattice.validate(); });
  spec.a = read_poly(j, "a_terms", spec.lattice, warnings);
  spec.b = read_poly(j, "b_terms", spec.lattice, warnings);
  if (j.contains("name")) spec.name = with_field("name", [&] { return j.at("name").get<std::string>(); });
  spec.validate();
  return spec;
}

json spec_to_json(const CodeSpec& spec) {
  auto terms = [](const PolySpec& p) {
    json arr = json::array();
    for (const auto& t : p.terms) arr.push_back(format_term(t));
    return arr;
  };
  json j;
  j["family"] = family_name(spec.family);
  j["l"] = spec.lattice.l;
  j["m"] = spec.lattice.m;
  j["gamma"] = spec.lattice.twist;
  j["a_terms"] = terms(spec.a);
  j["b_terms"] = terms(spec.b);
  if (!spec.name.empty()) j["name"] = spec.name;
  return j;
}

CodeSpec load_spec_file(const std::filesystem::path& path, std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open spec file '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SpecError("spec file '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return spec_from_json(j, warnings);
}

// ---------------------------------------------------------------- alist

std::string to_alist(const BinMatrix& h) {
  const BinMatrix ht = h.transpose();
  std::size_t max_col = 0, max_row = 0;
  for (std::size_t c = 0; c < ht.rows(); ++c) max_col = std::max(max_col, ht.row_weight(c));
  for (std::size_t r = 0; r < h.rows(); ++r) max_row = std::max(max_row, h.row_weight(r));

  std::ostringstream out;
  out << h.cols() << ' ' << h.rows() << '\n' << max_col << ' ' << max_row << '\n';
  for (std::size_t c = 0; c < ht.rows(); ++c) out << (c ? " " : "") << ht.row_weight(c);
  out << '\n';
  for (std::size_t r = 0; r < h.rows(); ++r) out << (r ? " " : "") << h.row_weight(r);
  out << '\n';
  auto lists = [&](const BinMatrix& m, std::size_t width) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
      auto support = m.row_support(i);
      support.resize(width, static_cast<std::size_t>(-1));
      for (std::size_t j = 0; j < width; ++j) out << (j ? " " : "") << support[j] + 1;  // -1 + 1 == 0 pads
      out << '\n';
    }
  };
  lists(ht, max_col);
  lists(h, max_row);
  return out.str();
}

BinMatrix from_alist(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::size_t cols = 0, rows = 0, max_col = 0, max_row = 0;
  if (!(in >> cols >> rows >> max_col >> max_row)) throw DimensionError("alist: bad header");
  std::vector<std::size_t> col_w(cols), row_w(rows);
  for (auto& w : col_w)
    if (!(in >> w)) throw DimensionError("alist: truncated column weights");
  for (auto& w : row_w)
    if (!(in >> w)) throw DimensionError("alist: truncated row weights");

  BinMatrix h(rows, cols);
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t j = 0; j < max_col; ++j) {
      std::size_t r = 0;
      if (!(in >> r)) throw DimensionError("alist: truncated column lists");
      if (r == 0) continue;
      if (r > rows) throw DimensionError("alist: row index out of range");
      h.set(r - 1, c);
    }
  }
  // Row lists are redundant; check them for consistency.
  for (std::size_t r = 0; r < rows; ++r) {
    std::size_t count = 0;
    for (std::size_t j = 0; j < max_row; ++j) {
      std::size_t c = 0;
      if (!(in >> c)) throw DimensionError("alist: truncated row lists");
      if (c == 0) continue;
      if (c > cols || !h.get(r, c - 1)) throw DimensionError("alist: row and column lists disagree");
      ++count;
    }
    if (count != h.row_weight(r) || count != row_w[r]) throw DimensionError("alist: row weight mismatch");
  }
  for (std::size_t c = 0; c < cols; ++c) {
    std::size_t w = 0;
    for (std::size_t r = 0; r < rows; ++r) w += h.get(r, c);
    if (w != col_w[c]) throw DimensionError("alist: column weight mismatch");
  }
  return h;
}

// ---------------------------------------------------------------- dense

std::string to_dense(const BinMatrix& m) { return m.to_string(); }

BinMatrix from_dense(std::string_view text) {
  std::vector<std::string> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    rows.push_back(line);
  }
  return BinMatrix::from_strings(std::span<const std::string>(rows));
}

}  // namespace sdq
