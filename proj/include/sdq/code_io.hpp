#pragma once

// Serialization of code specs and check matrices.
//
// Spec files are JSON objects:
//
//   {"family": "bb", "l": 5, "m": 5, "gamma": 0,
//    "a_terms": ["xy", "x4y"], "b_terms": "y2 + x4y3", "name": "bb-100"}
//
// "gamma" and "name" are optional. Term lists are either arrays of monomial
// strings or a single '+'-joined polynomial string; see group_algebra.hpp for
// the monomial grammar. Errors name the offending field.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "sdq/codes.hpp"

namespace sdq {

CodeSpec spec_from_json(const nlohmann::json& j, std::vector<std::string>* warnings = nullptr);
nlohmann::json spec_to_json(const CodeSpec& spec);

CodeSpec load_spec_file(const std::filesystem::path& path, std::vector<std::string>* warnings = nullptr);

// MacKay alist: header "cols rows", max column/row weights, per-column and
// per-row weights, then 1-based column and row adjacency lists (zero padded
// to the maximum weight).
std::string to_alist(const BinMatrix& h);
BinMatrix from_alist(std::string_view text);

// One row per line, '0'/'1' characters, no separators.
std::string to_dense(const BinMatrix& m);
BinMatrix from_dense(std::string_view text);

}  // namespace sdq
