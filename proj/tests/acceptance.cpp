// SPDX-License-Identifier: Apache-2.0
// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include "test_support.hpp"
#include "umat/errors.hpp"
#include "umat/input_deck.hpp"
#include "umat/kinematics.hpp"
#include "umat/point_driver.hpp"
#include "umat/presets.hpp"
#include "umat/verify.hpp"

namespace {

using namespace umat;

struct Outcome {
  bool passed = true;
  std::string detail;

  void fail(const std::string& why) {
    if (passed) detail = why;
    passed = false;
  }
};

MaterialSpec preset_for_sweep(const std::string& name) {
  if (preset_info(name).required.empty()) return build_preset(name);
  return build_preset(name, {{"N", 4}});
}

double entry_error(const CheckReport& r, const std::string& name) {
  for (const auto& e : r.entries)
    if (e.name == name) return e.max_error;
  return NAN;
}

int entry_samples(const CheckReport& r, const std::string& name) {
  for (const auto& e : r.entries)
    if (e.name == name) return e.samples;
  return 0;
}

// Fails unless `err` is finite and strictly below `tol`.
void require_below(Outcome& o, const std::string& label, double err, double tol) {
  if (!(err < tol)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s: %.3g >= %.3g", label.c_str(), err, tol);
    o.fail(buf);
  }
}

std::vector<std::filesystem::path> files_in(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.path().extension() == ".inp") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

Outcome closed_forms() {
  Outcome o;
  const CheckReport r = check_closed_forms();
  for (const char* n : {"closed_form_neo_hooke", "closed_form_mooney_rivlin", "closed_form_yeoh",
                        "closed_form_holzapfel_two_fiber"}) {
    require_below(o, n, entry_error(r, n), 1e-10);
    if (entry_samples(r, n) < 50) o.fail(std::string(n) + ": fewer than 50 states");
  }
  return o;
}

Outcome derivative_consistency() {
  Outcome o;
  for (const auto& name : preset_names()) {
    const MaterialSpec s = preset_for_sweep(name);
    const CheckReport e = check_energy_derivatives(s.table, 100, 42);
    require_below(o, name + " UI1", entry_error(e, "energy_first_derivatives"), 1e-8);
    require_below(o, name + " UI2", entry_error(e, "energy_second_derivatives_diagonal"), 1e-6);
    const CheckReport st = check_stress_fd(s.table, s.fiber_set(), 100, 42);
    require_below(o, name + " sigma", entry_error(st, "stress_fd"), 1e-6);
  }
  return o;
}

Outcome reference_state() {
  Outcome o;
  for (const auto& name : preset_names()) {
    const MaterialSpec s = preset_for_sweep(name);
    const CheckReport r = check_reference_state(s.table, s.fiber_set(), 3);
    require_below(o, name, entry_error(r, "reference_state"), 1e-10);
  }
  return o;
}

Outcome objectivity() {
  Outcome o;
  for (const auto& name : preset_names()) {
    const MaterialSpec s = preset_for_sweep(name);
    const CheckReport r = check_symmetries(s.table, s.fiber_set(), 11, 100);
    require_below(o, name + " psi", entry_error(r, "objectivity_energy"), 1e-9);
    require_below(o, name + " sigma", entry_error(r, "objectivity_stress"), 1e-8);
  }
  return o;
}

Outcome goh_limits() {
  Outcome o;
  const CheckReport r = check_closed_forms();
  require_below(o, "kappa=0", entry_error(r, "goh_kappa_zero_matches_holzapfel"), 1e-12);
  require_below(o, "kappa=1/3", entry_error(r, "goh_kappa_third_fiber_independent"), 1e-12);
  return o;
}

Outcome volumetric_identity() {
  Outcome o;
  require_below(o, "ogden", entry_error(check_closed_forms(), "volumetric_ogden_identity"), 1e-12);
  return o;
}

Outcome uniaxial_driver() {
  Outcome o;
  const double c10 = 0.5;
  const MaterialSpec nh = build_preset("neo_hooke", {{"C10", c10}, {"D1", 0.0}});
  double worst = 0.0;
  for (const auto& [a, b] : {std::pair{1.0, 2.0}, std::pair{1.0, 0.5}}) {
    LoadPath path;
    path.control = linear_range(a, b, 61);
    for (const CurvePoint& p : run_path(nh, path)) {
      const double l = p.control;
      const double want = 2.0 * c10 * (l * l - 1.0 / l);
      worst = std::max(worst, std::abs(p.sigma(0, 0) - want) / std::max(1.0, std::abs(want)));
    }
  }
  require_below(o, "uniaxial", worst, 1e-8);
  worst = 0.0;
  LoadPath shear;
  shear.mode = LoadMode::SimpleShear;
  shear.control = linear_range(0.0, 0.5, 51);
  for (const CurvePoint& p : run_path(nh, shear))
    worst = std::max(worst, std::abs(p.sigma(0, 1) - 2.0 * c10 * p.control));
  require_below(o, "shear", worst, 1e-8);
  return o;
}

Outcome parser() {
  Outcome o;
  const auto decks = files_in(test::data_dir() / "decks");
  if (decks.size() != 26) o.fail("expected 26 printed decks");
  for (const auto& path : decks) {
    const std::string name = path.stem().string();
    const MaterialSpec got = parse_deck(test::read_text(path));
    const ParameterTable want = build_preset(name).table;
    bool same = got.table.material_type == want.material_type && got.table.ndir == want.ndir &&
                got.table.rows.size() == want.rows.size() && got.table.mixed == want.mixed;
    for (std::size_t i = 0; same && i < want.rows.size(); ++i) {
      const NeuronRow& a = got.table.rows[i];
      const NeuronRow& b = want.rows[i];
      same = a.kfinv == b.kfinv && a.kf0 == b.kf0 && a.kf1 == b.kf1 && a.kf2 == b.kf2 &&
             std::abs(a.w0 - b.w0) <= 1e-14 * std::abs(b.w0) && std::abs(a.w1 - b.w1) <= 1e-14 * std::abs(b.w1) &&
             std::abs(a.w2 - b.w2) <= 1e-14 * std::abs(b.w2);
    }
    if (!same) o.fail(name + ": rows differ from the catalog");
    const std::string text = serialize_deck(got);
    if (!(parse_deck(text) == got) || serialize_deck(parse_deck(text)) != text) o.fail(name + ": round trip");
  }
  for (const auto& name : preset_names()) {
    const MaterialSpec s = preset_for_sweep(name);
    if (!(parse_deck(serialize_deck(s)) == s)) o.fail(name + ": preset round trip");
  }
  const auto bad = files_in(test::data_dir() / "malformed");
  if (bad.size() != 20) o.fail("expected 20 malformed decks");
  const std::regex expect_re(R"(^\*\* expect-line: ([0-9]+))");
  for (const auto& path : bad) {
    const std::string text = test::read_text(path);
    std::smatch m;
    if (!std::regex_search(text, m, expect_re)) {
      o.fail(path.filename().string() + ": no expect-line header");
      continue;
    }
    std::optional<MaterialSpec> result;
    try {
      result = parse_deck(text);
      o.fail(path.filename().string() + ": accepted");
    } catch (const ParseError& e) {
      if (e.line() != std::stoi(m[1])) o.fail(path.filename().string() + ": wrong line");
    }
    if (result) o.fail(path.filename().string() + ": partial spec");
  }
  return o;
}

bool monotone_magnitude(const std::vector<double>& values) {
  for (std::size_t i = 1; i < values.size(); ++i)
    if (std::abs(values[i]) < std::abs(values[i - 1])) return false;
  return true;
}

Outcome sanity_sweeps() {
  Outcome o;
  const std::vector<std::string> names = {
      "brain_mooney_rivlin_gray",     "brain_mooney_rivlin_white",     "brain_blatz_ko_gray",
      "brain_blatz_ko_white",         "brain_discovered_six_term_gray", "brain_discovered_six_term_white",
      "skin_neohooke_holzapfel",      "skin_discovered",               "artery_discovered_media",
      "artery_discovered_adventitia", "artery_goh_media",              "artery_goh_adventitia",
      "valve_fung_anterior",          "valve_fung_posterior",          "valve_fung_septal",
      "heart_guan",                   "heart_generalized_holzapfel",   "heart_discovered"};
  for (const auto& name : names) {
    const MaterialSpec s = build_preset(name);
    std::vector<LoadPath> paths(3);
    paths[0].control = linear_range(1.0, 1.1, 21);
    paths[1].control = linear_range(1.0, 0.9, 21);
    paths[2].mode = LoadMode::SimpleShear;
    paths[2].control = linear_range(0.0, 0.3, 31);
    for (const LoadPath& path : paths) {
      const bool shear = path.mode == LoadMode::SimpleShear;
      const std::string label = name + (shear ? " shear" : path.control.back() > 1.0 ? " tension" : " compression");
      try {
        const std::vector<CurvePoint> curve = run_path(s, path);
        if (test::max_abs(curve.front().sigma) >= 1e-10) o.fail(label + ": stress at reference");
        std::vector<double> component;
        for (const CurvePoint& p : curve) component.push_back(shear ? p.sigma(0, 1) : p.sigma(0, 0));
        if (!monotone_magnitude(component)) o.fail(label + ": stress magnitude not monotone");
      } catch (const Error& e) {
        o.fail(label + ": " + e.what());
      }
    }
  }
  return o;
}

Outcome invariant_numbering() {
  Outcome o;
  std::set<int> seen;
  auto record = [&](InvariantKind kind, int a, int b) {
    const int slot = invariant_index(kind, a, b);
    if (slot < 1 || slot > kNumInvariants || !seen.insert(slot).second) o.fail("slot collision or range");
    const SlotDescriptor d = describe_slot(slot);
    if (d.kind != kind || d.alpha != a || d.beta != b) o.fail("describe_slot does not invert");
  };
  record(InvariantKind::I1, 0, 0);
  record(InvariantKind::I2, 0, 0);
  record(InvariantKind::I3, 0, 0);
  for (int a = 1; a <= 3; ++a)
    for (int b = a; b <= 3; ++b) {
      record(InvariantKind::I4, a, b);
      record(InvariantKind::I5, a, b);
    }
  if (seen.size() != 15) o.fail("not 15 slots");
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b < a; ++b) {
      bool rejected = false;
      try {
        invariant_index(InvariantKind::I4, a, b);
      } catch (const Error& e) {
        rejected = e.code() == ErrorCode::InvalidPair;
      }
      if (!rejected) o.fail("b < a accepted");
    }
  const std::vector<std::pair<std::pair<int, int>, int>> heart = {
      {{1, 1}, 4}, {{2, 2}, 8}, {{3, 3}, 14}, {{1, 2}, 6}, {{2, 3}, 12}};
  for (const auto& [ab, slot] : heart)
    if (invariant_index(InvariantKind::I4, ab.first, ab.second) != slot) o.fail("heart slot mismatch");
  return o;
}

struct Criterion {
  const char* title;
  double time_limit_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"closed-form equivalence", 5.0, closed_forms},
      {"derivative consistency", 30.0, derivative_consistency},
      {"reference-state exactness", 0.0, reference_state},
      {"objectivity", 0.0, objectivity},
      {"dispersion limits", 0.0, goh_limits},
      {"volumetric identity", 0.0, volumetric_identity},
      {"uniaxial and shear driver", 0.0, uniaxial_driver},
      {"deck parser", 0.0, parser},
      {"tissue sanity sweeps", 60.0, sanity_sweeps},
      {"invariant numbering", 0.0, invariant_numbering},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Criterion& c = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0.0 && seconds >= c.time_limit_s) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "took %.2f s, limit %.0f s", seconds, c.time_limit_s);
      o.fail(buf);
    }
    if (!o.passed) ++failures;
    std::printf("%s  %2zu %-28s %7.3f s%s%s\n", o.passed ? "PASS" : "FAIL", i + 1, c.title, seconds,
                o.detail.empty() ? "" : "  ", o.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
