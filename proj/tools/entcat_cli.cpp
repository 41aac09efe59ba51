// entcat: command-line front end.
//
// Exit status: 0 feasible / success, 1 infeasible / failure, 2 error.

#include <openssl/evp.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "entcat/entcat.hpp"
#include "entcat/io.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace entcat;

namespace {

constexpr int kFeasible = 0;
constexpr int kInfeasible = 1;
constexpr int kError = 2;

struct Globals {
  double tol_major = Tolerance{}.eps_major;
  double tol_norm = Tolerance{}.eps_norm;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  unsigned threads = 1;

  Tolerance tol() const {
    Tolerance t;
    t.eps_major = tol_major;
    t.eps_norm = tol_norm;
    return validate(t);
  }
};

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    fail(ErrorCode::DomainError, "sha256 failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

InputDigest digest(const std::string& path) { return {path, sha256_hex(read_text(path))}; }

std::vector<double> sums(const OscVector& v) { return partial_sums(v); }

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

fs::path out_dir(const Globals& g) {
  fs::path dir = g.out_dir.empty() ? fs::path(".") : fs::path(g.out_dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::DomainError, "cannot write " + path.string());
  out << text;
}

void write_manifest(const fs::path& path, const RunManifest& m) {
  write_file(path, to_json(m).dump(2) + "\n");
}

// check ---------------------------------------------------------------

int cmd_check(const Globals& g, const std::string& psi_file, const std::string& phi_file) {
  const Tolerance tol = g.tol();
  const auto psi = load_state(psi_file, tol);
  const auto phi = load_state(phi_file, tol);
  const auto verdict = majorizes_check(psi.state, phi.state, tol);
  json j = to_json(verdict);
  j["psi"] = {{"name", psi.name}, {"partial_sums", sums(psi.state)}};
  j["phi"] = {{"name", phi.name}, {"partial_sums", sums(phi.state)}};
  print(j);
  if (!g.out_dir.empty()) {
    const auto dir = out_dir(g);
    write_file(dir / "check.json", j.dump(2) + "\n");
    write_manifest(dir / "check.manifest.json",
                   {.command = "check", .inputs = {digest(psi_file), digest(phi_file)}, .tol = tol});
  }
  return verdict.holds() ? kFeasible : kInfeasible;
}

// catalyze ------------------------------------------------------------

struct CatalyzeArgs {
  std::string psi_file, phi_file, chi_file, residual_file;
  std::optional<std::size_t> k;
  std::string mode = "standard";
  std::uint64_t big_number = 1000;
};

int cmd_catalyze(const Globals& g, const CatalyzeArgs& a) {
  const Tolerance tol = g.tol();
  if (a.chi_file.empty() == !a.k.has_value()) {
    fail(ErrorCode::DomainError, "give exactly one of --catalyst FILE or -k K");
  }
  if (!a.residual_file.empty() && a.chi_file.empty()) {
    fail(ErrorCode::DomainError, "--residual needs --catalyst");
  }
  const TransformQuery q{load_state(a.psi_file, tol).state, load_state(a.phi_file, tol).state};
  std::vector<InputDigest> inputs{digest(a.psi_file), digest(a.phi_file)};
  json j{{"mode", a.mode}, {"psi_converts_directly", locc_feasible(q, tol)}};
  bool ok = false;

  if (!a.chi_file.empty()) {
    inputs.push_back(digest(a.chi_file));
    const auto chi = load_state(a.chi_file, tol).state;
    std::optional<OscVector> chi_prime;
    if (!a.residual_file.empty()) {
      inputs.push_back(digest(a.residual_file));
      chi_prime = load_state(a.residual_file, tol).state;
    } else if (a.mode == "standard") {
      chi_prime = chi;
    }
    if (chi_prime) {
      const auto source = tensor_spectrum(q.psi, chi);
      const auto target = tensor_spectrum(q.phi, *chi_prime);
      ok = majorized_by(source, target, tol);
      j["feasible"] = ok;
      j["residual"] = to_json(*chi_prime);
      j["classification"] = ok ? to_json(classify_catalyst(q, chi, *chi_prime, tol)) : json(nullptr);
      j["source_partial_sums"] = sums(source);
      j["target_partial_sums"] = sums(target);
    } else {
      const auto report = is_general_catalyst(q, chi, tol);
      ok = report.feasible;
      j.update(to_json(report));
    }
  } else if (a.mode == "general") {
    ok = general_catalyst_exists(q, *a.k, tol);
    j["k"] = *a.k;
    j["feasible"] = ok;
  } else if (locc_feasible(q, tol)) {
    ok = true;
    j["feasible"] = true;
    j["status"] = "NotNeeded";
  } else {
    const SearchConfig cfg{.k = *a.k,
                           .big_number = a.big_number,
                           .seed = g.seed.value_or(0),
                           .tol = tol,
                           .threads = g.threads};
    const auto outcome = monte_carlo_standard_catalyst(q, cfg);
    ok = outcome.status == SearchStatus::Success;
    j["k"] = *a.k;
    j["big_number"] = a.big_number;
    j["feasible"] = ok;
    j.update(to_json(outcome));
  }

  print(j);
  if (!g.out_dir.empty()) {
    const auto dir = out_dir(g);
    write_file(dir / "catalyze.json", j.dump(2) + "\n");
    write_manifest(dir / "catalyze.manifest.json",
                   {.command = "catalyze",
                    .inputs = inputs,
                    .seed = g.seed.value_or(0),
                    .tol = tol,
                    .parameters = {{"mode", a.mode},
                                   {"k", a.k ? json(*a.k) : json(nullptr)},
                                   {"big_number", a.big_number}}});
  }
  return ok ? kFeasible : kInfeasible;
}

// region --------------------------------------------------------------

struct RegionArgs {
  std::string psi_file, phi_file, chi_file;
  std::size_t resolution = 1000;
};

int cmd_region(const Globals& g, const RegionArgs& a) {
  const Tolerance tol = g.tol();
  std::vector<InputDigest> inputs;
  auto pick = [&](const std::string& file, OscVector fallback) {
    if (file.empty()) return fallback;
    inputs.push_back(digest(file));
    return load_state(file, tol).state;
  };
  const auto pair = fixtures::mutual_pair();
  const auto psi = pick(a.psi_file, pair.psi);
  const auto phi = pick(a.phi_file, pair.phi);
  const auto chi = pick(a.chi_file, fixtures::mutual_catalyst());

  const auto grid = mutual_region_scan(psi, phi, chi, a.resolution, tol, g.threads);
  const auto dir = out_dir(g);
  std::ostringstream csv;
  write_region_csv(csv, grid);
  write_file(dir / "region.csv", csv.str());
  write_manifest(dir / "region.manifest.json",
                 {.command = "region",
                  .inputs = inputs,
                  .tol = tol,
                  .parameters = {{"resolution", a.resolution},
                                 {"psi", to_json(psi)},
                                 {"phi", to_json(phi)},
                                 {"chi", to_json(chi)}}});

  std::optional<double> min_x1;
  for (std::size_t i = 0; i < a.resolution && !min_x1; ++i) {
    for (std::size_t j = 0; j < a.resolution; ++j) {
      if (grid.feasible(i, j)) {
        min_x1 = grid.center(i);
        break;
      }
    }
  }
  print({{"resolution", a.resolution},
         {"feasible_cells", grid.feasible_count()},
         {"min_feasible_x1p", min_x1 ? json(*min_x1) : json(nullptr)},
         {"csv", (dir / "region.csv").string()}});
  return kFeasible;
}

// genpairs / curve ----------------------------------------------------

struct GenArgs {
  std::size_t n = 8;
  std::size_t k = 4;
  std::size_t count = 5000;
  std::uint64_t max_rejections = PairGenSpec{}.max_rejections;
};

PairGenSpec gen_spec(const Globals& g, const GenArgs& a, std::uint64_t seed) {
  return {.n = a.n,
          .k = a.k,
          .count = a.count,
          .seed = seed,
          .max_rejections = a.max_rejections,
          .tol = g.tol(),
          .threads = g.threads};
}

json gen_params(const PairGenSpec& s) {
  return {{"n", s.n}, {"k", s.k}, {"count", s.count}, {"seed", s.seed},
          {"max_rejections", s.max_rejections}};
}

int cmd_genpairs(const Globals& g, const GenArgs& a) {
  const auto spec = gen_spec(g, a, g.seed.value_or(PairGenSpec{}.seed));
  const auto pairs = generate_catalyzable_pairs(spec);
  const auto dir = out_dir(g);
  std::ostringstream jsonl;
  write_pairs_jsonl(jsonl, pairs);
  write_file(dir / "pairs.jsonl", jsonl.str());
  write_manifest(dir / "pairs.manifest.json",
                 {.command = "genpairs", .inputs = {}, .seed = spec.seed, .tol = spec.tol,
                  .parameters = gen_params(spec)});
  print({{"pairs", pairs.size()}, {"file", (dir / "pairs.jsonl").string()}});
  return kFeasible;
}

struct CurveArgs {
  GenArgs gen;
  std::string pairs_file;
  std::uint64_t gen_seed = PairGenSpec{}.seed;
  std::vector<std::uint64_t> m_values{1, 5, 10, 25, 50, 100};
};

int cmd_curve(const Globals& g, const CurveArgs& a) {
  const Tolerance tol = g.tol();
  std::vector<CatalyzablePair> pairs;
  RunManifest manifest{.command = "curve", .inputs = {}, .seed = g.seed.value_or(0), .tol = tol};
  if (!a.pairs_file.empty()) {
    std::istringstream in(read_text(a.pairs_file));
    pairs = read_pairs_jsonl(in, tol);
    manifest.inputs.push_back(digest(a.pairs_file));
    for (const auto& p : pairs) {
      if (!certifies(p, tol)) {
        fail(ErrorCode::NotACatalyst, "pair " + std::to_string(p.index) + " fails its certificate");
      }
    }
  } else {
    const auto spec = gen_spec(g, a.gen, a.gen_seed);
    pairs = generate_catalyzable_pairs(spec);
    manifest.parameters["generator"] = gen_params(spec);
  }
  if (pairs.empty()) fail(ErrorCode::DomainError, "no pairs");
  const std::size_t k = pairs.front().witness.size();
  const auto curve = success_probability_curve(std::span<const CatalyzablePair>(pairs), k,
                                               a.m_values, manifest.seed, tol, g.threads);
  manifest.parameters["k"] = k;
  manifest.parameters["m_values"] = a.m_values;

  const auto dir = out_dir(g);
  std::ostringstream csv;
  write_curve_csv(csv, curve);
  write_file(dir / "curve.csv", csv.str());
  write_manifest(dir / "curve.manifest.json", manifest);

  json points = json::array();
  for (const auto& p : curve) {
    points.push_back({{"M", p.big_number}, {"success_fraction", p.success_fraction},
                      {"successes", p.successes}, {"pairs", p.pairs}});
  }
  print({{"curve", points}, {"csv", (dir / "curve.csv").string()}});
  return kFeasible;
}

// fixtures ------------------------------------------------------------

int cmd_fixtures(const Globals& g) {
  const auto report = worked_example_suite();
  json results = json::array();
  for (const auto& r : report.results) {
    results.push_back({{"name", r.name},
                       {"passed", r.passed},
                       {"detail", r.detail},
                       {"source_partial_sums", r.source_sums},
                       {"target_partial_sums", r.target_sums}});
  }
  const json j{{"all_passed", report.all_passed()}, {"results", results}};
  print(j);
  if (!g.out_dir.empty()) {
    const auto dir = out_dir(g);
    write_file(dir / "fixtures.json", j.dump(2) + "\n");
    write_manifest(dir / "fixtures.manifest.json", {.command = "fixtures", .inputs = {}, .seed = 0, .tol = g.tol()});
  }
  return report.all_passed() ? kFeasible : kInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Majorization, entanglement catalysis and catalyst search"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--tol-major", g.tol_major, "Slack on partial-sum comparisons");
  app.add_option("--tol-norm", g.tol_norm, "Allowed distance of inputs from normalization");
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--out", g.out_dir, "Output directory");
  app.add_option("--threads", g.threads, "Worker threads (speed only)")->check(CLI::Range(1u, 1024u));

  int status = kError;

  auto* check = app.add_subcommand("check", "Is psi -> phi possible by LOCC?");
  std::string check_psi, check_phi;
  check->add_option("psi", check_psi)->required();
  check->add_option("phi", check_phi)->required();
  check->callback([&] { status = cmd_check(g, check_psi, check_phi); });

  auto* catalyze = app.add_subcommand("catalyze", "Test a catalyst or search for one");
  CatalyzeArgs ca;
  catalyze->add_option("psi", ca.psi_file)->required();
  catalyze->add_option("phi", ca.phi_file)->required();
  catalyze->add_option("--catalyst,-c", ca.chi_file, "Catalyst state file");
  catalyze->add_option("--residual", ca.residual_file, "Residual catalyst state file");
  catalyze->add_option("-k", ca.k, "Catalyst dimension to search");
  catalyze->add_option("--mode", ca.mode)->check(CLI::IsMember({"general", "standard"}));
  catalyze->add_option("-M,--big-number", ca.big_number, "Monte Carlo trial budget");
  catalyze->callback([&] { status = cmd_catalyze(g, ca); });

  auto* region = app.add_subcommand("region", "Scan the residual-catalyst region (3 x 3 case)");
  RegionArgs ra;
  region->add_option("--psi", ra.psi_file);
  region->add_option("--phi", ra.phi_file);
  region->add_option("--chi", ra.chi_file);
  region->add_option("--resolution", ra.resolution)->check(CLI::PositiveNumber);
  region->callback([&] { status = cmd_region(g, ra); });

  auto add_gen = [](CLI::App* cmd, GenArgs& a, const char* count_flag) {
    cmd->add_option("-n", a.n, "State dimension");
    cmd->add_option("-k", a.k, "Catalyst dimension");
    cmd->add_option(count_flag, a.count, "Number of pairs");
    cmd->add_option("--max-rejections", a.max_rejections, "Per-pair cap on rejected draws");
  };

  auto* genpairs = app.add_subcommand("genpairs", "Generate certified catalyzable pairs");
  GenArgs ga;
  add_gen(genpairs, ga, "--count");
  genpairs->callback([&] { status = cmd_genpairs(g, ga); });

  auto* curve = app.add_subcommand("curve", "Monte Carlo success probability against M");
  CurveArgs cu;
  add_gen(curve, cu.gen, "--pairs");
  curve->add_option("--pairs-file", cu.pairs_file, "Read pairs from a JSONL archive");
  curve->add_option("--gen-seed", cu.gen_seed, "Seed for generated pairs");
  curve->add_option("-M", cu.m_values, "Trial budgets")->delimiter(',');
  curve->callback([&] { status = cmd_curve(g, cu); });

  auto* fix = app.add_subcommand("fixtures", "Run the worked-example regression suite");
  fix->callback([&] { status = cmd_fixtures(g); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
  return status;
}
