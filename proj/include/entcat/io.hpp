#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "entcat/catalysis.hpp"
#include "entcat/experiments.hpp"
#include "entcat/majorization.hpp"
#include "entcat/region.hpp"
#include "entcat/search.hpp"

namespace entcat {

inline constexpr std::string_view kVersion = "0.1.0";

/// On-disk state: {"name": "...", "coeffs": [ ... ]}.
struct StateFile {
  std::string name;
  std::vector<double> coeffs;
};

/// Shortest decimal that parses back to the same double (at most 17
/// significant digits).
inline std::string format_real(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline StateFile parse_state(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, e.what());
  }
  if (!doc.is_object()) fail(ErrorCode::ParseError, "state must be a JSON object");
  if (!doc.contains("coeffs") || !doc["coeffs"].is_array()) {
    fail(ErrorCode::ParseError, "missing \"coeffs\" array");
  }
  StateFile state;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) fail(ErrorCode::ParseError, "\"name\" must be a string");
    state.name = doc["name"].get<std::string>();
  }
  const auto& coeffs = doc["coeffs"];
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (!coeffs[i].is_number()) {
      fail(ErrorCode::ParseError, "coeffs[" + std::to_string(i) + "] is not a number");
    }
    state.coeffs.push_back(coeffs[i].get<double>());
  }
  return state;
}

inline nlohmann::json to_json(const StateFile& s) {
  return {{"name", s.name}, {"coeffs", s.coeffs}};
}

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::ParseError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct NamedState {
  std::string name;
  OscVector state;
};

inline NamedState load_state(const std::filesystem::path& path, const Tolerance& tol = {}) {
  const StateFile file = parse_state(read_text(path));
  try {
    return {file.name, make_osc(file.coeffs, tol)};
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.detail());
  }
}

inline nlohmann::json to_json(const OscVector& v) {
  return nlohmann::json(std::vector<double>(v.begin(), v.end()));
}

inline nlohmann::json to_json(const MajorizationVerdict& v) {
  nlohmann::json j{{"relation", to_string(v.relation)}, {"holds", v.holds()}};
  j["first_violation"] = v.first_violation ? nlohmann::json(*v.first_violation) : nlohmann::json(nullptr);
  return j;
}

inline nlohmann::json to_json(const CatalystClass& c) {
  return {{"kind", to_string(c.kind)},
          {"entropy_kind", to_string(c.entropy_kind)},
          {"time_reverse", c.time_reverse},
          {"entropy_before", c.entropy_before},
          {"entropy_after", c.entropy_after}};
}

inline nlohmann::json to_json(const CatalystReport& r) {
  nlohmann::json j{{"feasible", r.feasible}};
  j["classification"] = r.classification ? to_json(*r.classification) : nlohmann::json(nullptr);
  j["residual"] = r.residual ? to_json(*r.residual) : nlohmann::json(nullptr);
  return j;
}

inline nlohmann::json to_json(const SearchOutcome& o) {
  nlohmann::json j{{"status", to_string(o.status)},
                   {"trials_used", o.trials_used},
                   {"seed", o.seed}};
  j["catalyst"] = o.catalyst ? to_json(*o.catalyst) : nlohmann::json(nullptr);
  return j;
}

inline nlohmann::json to_json(const CatalyzablePair& p) {
  return {{"index", p.index},
          {"seed", p.seed},
          {"psi", to_json(p.query.psi)},
          {"phi", to_json(p.query.phi)},
          {"witness", to_json(p.witness)}};
}

inline CatalyzablePair pair_from_json(const nlohmann::json& j, const Tolerance& tol = {}) {
  try {
    auto vec = [&](const char* key) { return make_osc(j.at(key).get<std::vector<double>>(), tol); };
    return {{vec("psi"), vec("phi")},
            vec("witness"),
            j.at("seed").get<std::uint64_t>(),
            j.at("index").get<std::size_t>()};
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, e.what());
  }
}

/// One JSON object per line.
inline void write_pairs_jsonl(std::ostream& out, std::span<const CatalyzablePair> pairs) {
  for (const auto& p : pairs) out << to_json(p).dump() << '\n';
}

inline std::vector<CatalyzablePair> read_pairs_jsonl(std::istream& in, const Tolerance& tol = {}) {
  std::vector<CatalyzablePair> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      pairs.push_back(pair_from_json(nlohmann::json::parse(line), tol));
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return pairs;
}

/// Columns: x1p,x2p,valid,feasible; one row per cell, x1' major.
inline void write_region_csv(std::ostream& out, const RegionGrid& grid) {
  out << "x1p,x2p,valid,feasible\n";
  const std::size_t r = grid.resolution();
  std::vector<std::string> centers(r);
  for (std::size_t i = 0; i < r; ++i) centers[i] = format_real(grid.center(i));
  std::string row;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      row.clear();
      row += centers[i];
      row += ',';
      row += centers[j];
      row += grid.valid(i, j) ? ",1" : ",0";
      row += grid.feasible(i, j) ? ",1\n" : ",0\n";
      out << row;
    }
  }
}

/// Columns: M,success_fraction,pairs,seed.
inline void write_curve_csv(std::ostream& out, std::span<const CurvePoint> curve) {
  out << "M,success_fraction,pairs,seed\n";
  for (const auto& p : curve) {
    out << p.big_number << ',' << format_real(p.success_fraction) << ',' << p.pairs << ','
        << p.seed << '\n';
  }
}

struct InputDigest {
  std::string path;
  std::string sha256;
};

/// Everything needed to regenerate an output file.
struct RunManifest {
  std::string command;
  std::vector<InputDigest> inputs;
  std::uint64_t seed = 0;
  Tolerance tol{};
  std::string version{kVersion};
  nlohmann::json parameters = nlohmann::json::object();
};

inline nlohmann::json to_json(const RunManifest& m) {
  nlohmann::json inputs = nlohmann::json::array();
  for (const auto& in : m.inputs) inputs.push_back({{"path", in.path}, {"sha256", in.sha256}});
  return {{"command", m.command},
          {"inputs", inputs},
          {"seed", m.seed},
          {"tolerance",
           {{"eps_major", m.tol.eps_major},
            {"eps_norm", m.tol.eps_norm},
            {"eps_entropy", m.tol.eps_entropy}}},
          {"version", m.version},
          {"parameters", m.parameters}};
}

}  // namespace entcat
