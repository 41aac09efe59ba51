#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "entcat/catalysis.hpp"
#include "entcat/region.hpp"
#include "entcat/spectrum.hpp"

namespace entcat {

struct FixtureResult {
  std::string name;
  bool passed = false;
  std::string detail;
  /// Partial sums of the two sides of the decisive majorization, if any.
  std::vector<double> source_sums;
  std::vector<double> target_sums;
};

struct FixtureReport {
  std::vector<FixtureResult> results;

  bool all_passed() const {
    return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
  }
};

namespace fixtures {

inline TransformQuery jonathan_plenio() {
  return {make_osc({0.4, 0.4, 0.1, 0.1}), make_osc({0.5, 0.25, 0.25, 0.0})};
}

inline TransformQuery jonathan_plenio_shifted_target() {
  return {make_osc({0.4, 0.4, 0.1, 0.1}), make_osc({0.48, 0.27, 0.25, 0.0})};
}

inline OscVector jonathan_plenio_catalyst() { return make_osc({0.6, 0.4}); }

inline TransformQuery time_reverse_pair() {
  const double s = 1.0 / 6.0, t = 1.0 / 12.0;
  return {make_osc({1.0 / 3.0, 1.0 / 3.0, s, s}), make_osc({s, s, s, s, t, t, t, t})};
}

inline TransformQuery mutual_pair() {
  return {make_osc({0.5, 0.26, 0.24}), make_osc({0.49, 0.48, 0.03})};
}

inline OscVector mutual_catalyst() { return make_osc({0.62, 0.3, 0.08}); }

}  // namespace fixtures

/// Regression suite over the worked instances the library is built around.
inline FixtureReport worked_example_suite() {
  FixtureReport report;
  auto record = [&](std::string name, const OscVector& source, const OscVector& target,
                    std::function<bool()> check, std::string detail) {
    FixtureResult r;
    r.name = std::move(name);
    r.source_sums = partial_sums(source);
    r.target_sums = partial_sums(target);
    r.detail = std::move(detail);
    try {
      r.passed = check();
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail += std::string("; threw: ") + e.what();
    }
    report.results.push_back(std::move(r));
  };

  const auto jp = fixtures::jonathan_plenio();
  const auto jp_shift = fixtures::jonathan_plenio_shifted_target();
  const auto chi = fixtures::jonathan_plenio_catalyst();
  const auto chi_sub = make_osc({2.0 / 3.0, 1.0 / 3.0});

  record("jp_pair_incomparable", jp.psi, jp.phi, [&] {
    const auto v = majorizes_check(jp.psi, jp.phi);
    return v.relation == Relation::Incomparable && v.first_violation == 2u;
  }, "psi=(0.4,0.4,0.1,0.1) vs phi=(0.5,0.25,0.25,0): fails at l=2");

  const auto jp_src = tensor_spectrum(jp.psi, chi);
  const auto jp_dst = tensor_spectrum(jp.phi, chi);
  record("jp_standard_catalyst", jp_src, jp_dst, [&] {
    return majorized_by(jp_src, jp_dst) &&
           classify_catalyst(jp, chi, chi).kind == CatalystKind::Standard;
  }, "chi=(0.6,0.4) enables psi -> phi and is returned intact");

  const auto shift_dst = tensor_spectrum(jp_shift.phi, chi);
  record("jp_catalyst_fails_shifted_target", jp_src, shift_dst,
         [&] { return !majorized_by(jp_src, shift_dst); },
         "chi=(0.6,0.4) cannot catalyze psi -> (0.48,0.27,0.25,0)");

  const auto sub_dst = tensor_spectrum(jp_shift.phi, chi_sub);
  record("jp_subcatalyst", jp_src, sub_dst, [&] {
    return majorized_by(jp_src, sub_dst) &&
           classify_catalyst(jp_shift, chi, chi_sub).kind == CatalystKind::Sub;
  }, "chi=(0.6,0.4) -> chi'=(2/3,1/3) enables psi -> (0.48,0.27,0.25,0)");

  const auto tr = fixtures::time_reverse_pair();
  const auto chi4 = uniform_spectrum(4);
  const auto chi2 = uniform_spectrum(2);
  const auto tr_src = tensor_spectrum(tr.psi, chi4);
  const auto tr_dst = tensor_spectrum(tr.phi, chi2);
  record("time_reverse_subcatalyst", tr_src, tr_dst, [&] {
    const auto c = classify_catalyst(tr, chi4, chi2);
    return is_time_reverse(tr, chi4, chi2) && c.kind == CatalystKind::TimeReverse &&
           c.entropy_kind == CatalystKind::Sub &&
           std::abs(c.entropy_before - c.entropy_after - 1.0) <= 1e-12;
  }, "identical product spectra (8 x 1/12, 8 x 1/24); entropy drop 1 bit");

  const auto mp = fixtures::mutual_pair();
  const auto mchi = fixtures::mutual_catalyst();
  const auto mchi_prime = make_osc({0.81, 0.10, 0.09});
  const auto m_src = tensor_spectrum(mp.psi, mchi);
  const auto m_dst = tensor_spectrum(mp.phi, mchi_prime);
  record("mutual_assistance_point", m_src, m_dst, [&] {
    return majorized_by(m_src, m_dst) && eq_sol_system(0.81, 0.10) &&
           majorizes_check(mchi, mchi_prime).relation == Relation::Incomparable &&
           majorizes_check(mp.psi, mp.phi).relation == Relation::Incomparable;
  }, "chi'=(0.81,0.10,0.09) lies in the feasible region; both pairs incomparable");

  record("mutual_pair_catalyst_bound", mp.psi, mp.phi,
         [&] { return std::abs(theorem2_bound(mp) - 0.98) <= 1e-12; },
         "min(0.49/0.5, 0.97/0.76) = 0.98");

  record("mutual_region_excludes_low_x1", m_src, m_dst,
         [&] { return !eq_sol_system(0.60, 0.10) && !eq_sol_lines(0.60, 0.10)[0]; },
         "x1' = 0.60 < 31/49 violates the first inequality");

  return report;
}

}  // namespace entcat
