// SPDX-License-Identifier: Apache-2.0
// Command-line front end over the C API.
#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "umat/umat.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInput = 2;
constexpr int kExitSolve = 3;

struct MaterialDeleter {
  void operator()(umat_material* m) const { umat_material_free(m); }
};
using Material = std::unique_ptr<umat_material, MaterialDeleter>;

struct OwnedString {
  char* text = nullptr;
  ~OwnedString() { umat_string_free(text); }
  std::string str() const { return text ? text : ""; }
};

// Thrown inside the command handlers; carries the process exit code.
struct CliFailure {
  int exit_code;
};

int exit_code_for(umat_status status) {
  switch (status) {
    case UMAT_OK: return kExitOk;
    case UMAT_ERR_NO_CONVERGENCE:
    case UMAT_ERR_STEP_FAILURE: return kExitSolve;
    case UMAT_ERR_INTERNAL:
    case UMAT_ERR_NULL_ARGUMENT: return kExitFailure;
    default: return kExitInput;
  }
}

void check(umat_status status) {
  if (status == UMAT_OK) return;
  std::cerr << "error: " << umat_status_name(status) << ": " << umat_last_error() << '\n';
  throw CliFailure{exit_code_for(status)};
}

[[noreturn]] void input_error(const std::string& message) {
  std::cerr << "error: " << message << '\n';
  throw CliFailure{kExitInput};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) input_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double parse_double(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || end != text.data() + text.size())
    input_error("not a number: '" + std::string(text) + "'");
  return v;
}

std::vector<double> parse_list(std::string_view text, char sep) {
  std::vector<double> out;
  while (true) {
    const auto pos = text.find(sep);
    out.push_back(parse_double(text.substr(0, pos)));
    if (pos == std::string_view::npos) break;
    text.remove_prefix(pos + 1);
  }
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v == 0.0 ? 0.0 : v);
  return buf;
}

struct MaterialSource {
  std::string preset;
  std::string deck;
  std::string params;
  std::string fibers;

  void add_options(CLI::App* cmd) {
    auto* p = cmd->add_option("--preset", preset, "Named preset (see `umat preset list`)");
    auto* d = cmd->add_option("--deck", deck, "Keyword deck file")->check(CLI::ExistingFile);
    p->excludes(d);
    d->excludes(p);
    cmd->add_option("--param", params, "Preset parameter overrides, \"key=value,...\"");
    cmd->add_option("--fibers", fibers, "Fiber directions \"x,y,z;x,y,z\" (normalized on input)");
  }

  bool given() const { return !preset.empty() || !deck.empty(); }

  Material load() const {
    if (!given()) input_error("one of --preset or --deck is required");
    if (!params.empty() && preset.empty()) input_error("--param applies to --preset only");
    umat_material* raw = nullptr;
    if (!preset.empty()) {
      check(umat_material_from_preset(preset.c_str(), params.c_str(), &raw));
    } else {
      const std::string text = read_file(deck);
      check(umat_material_from_deck(text.c_str(), &raw));
    }
    Material m(raw);
    const std::string warnings = umat_material_warnings(m.get());
    if (!warnings.empty()) {
      std::istringstream lines(warnings);
      for (std::string line; std::getline(lines, line);) std::cerr << "warning: " << deck << ':' << line << '\n';
    }
    if (!fibers.empty()) {
      std::vector<double> flat;
      std::string_view rest = fibers;
      int count = 0;
      while (true) {
        const auto pos = rest.find(';');
        const auto v = parse_list(rest.substr(0, pos), ',');
        if (v.size() != 3) input_error("each fiber direction needs three components");
        flat.insert(flat.end(), v.begin(), v.end());
        ++count;
        if (pos == std::string_view::npos) break;
        rest.remove_prefix(pos + 1);
      }
      check(umat_material_set_fibers(m.get(), flat.data(), count));
    }
    return m;
  }
};

int run_eval(const MaterialSource& source, const std::string& f_text, const std::optional<double>& pressure) {
  const auto F = parse_list(f_text, ',');
  if (F.size() != 9) input_error("--F needs nine comma-separated components f11,f12,...,f33");
  Material m = source.load();

  double values[15];
  double offsets[15];
  check(umat_invariants(m.get(), F.data(), values, offsets));
  double psi = 0.0;
  check(umat_strain_energy(m.get(), F.data(), &psi));
  double sigma[9];
  check(umat_cauchy_stress(m.get(), F.data(), pressure ? &*pressure : nullptr, sigma));

  const std::string units = umat_material_units(m.get());
  const std::string suffix = units.empty() ? "" : " [" + units + "]";
  std::cout << "psi" << suffix << ": " << fmt(psi) << '\n';
  std::cout << "sigma" << suffix << ":\n";
  for (int i = 0; i < 3; ++i)
    std::cout << "  " << fmt(sigma[3 * i]) << ' ' << fmt(sigma[3 * i + 1]) << ' ' << fmt(sigma[3 * i + 2]) << '\n';
  std::cout << "invariants:";
  for (double v : values) std::cout << ' ' << fmt(v);
  std::cout << '\n';
  return kExitOk;
}

umat_load_mode parse_mode(const std::string& mode) {
  if (mode == "uniaxial") return UMAT_LOAD_UNIAXIAL;
  if (mode == "equibiaxial") return UMAT_LOAD_EQUIBIAXIAL;
  if (mode == "shear") return UMAT_LOAD_SIMPLE_SHEAR;
  if (mode == "volumetric") return UMAT_LOAD_VOLUMETRIC;
  input_error("unknown mode '" + mode + "'");
}

std::vector<double> parse_range(const std::string& text) {
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? a : text.find(':', a + 1);
  if (b == std::string::npos) input_error("--range expects A:B:N");
  const double lo = parse_double(std::string_view(text).substr(0, a));
  const double hi = parse_double(std::string_view(text).substr(a + 1, b - a - 1));
  const double n_real = parse_double(std::string_view(text).substr(b + 1));
  const int n = static_cast<int>(n_real);
  if (n != n_real || n < 1) input_error("--range: N must be a positive integer");
  if (n == 1) return {lo};
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  out.back() = hi;
  return out;
}

int run_curve(const MaterialSource& source, const std::string& mode_text, const std::string& range,
              const std::string& plane, const std::string& out_path, double tol, int max_iter) {
  const umat_load_mode mode = parse_mode(mode_text);
  const auto controls = parse_range(range);
  int a = 1;
  int b = 2;
  if (!plane.empty()) {
    if (mode != UMAT_LOAD_SIMPLE_SHEAR) input_error("--plane applies to --mode shear only");
    if (plane.size() != 2 || plane[0] < '1' || plane[0] > '3' || plane[1] < '1' || plane[1] > '3' ||
        plane[0] == plane[1])
      input_error("--plane expects two distinct axes from 1..3, e.g. 12");
    a = plane[0] - '0';
    b = plane[1] - '0';
  }
  Material m = source.load();
  OwnedString csv;
  check(umat_run_curve(m.get(), mode, controls.data(), controls.size(), a, b, tol, max_iter, &csv.text));
  if (out_path.empty() || out_path == "-") {
    std::cout << csv.str();
  } else {
    std::ofstream out(out_path, std::ios::binary);
    out << csv.str();
    if (!out) {
      std::cerr << "error: cannot write " << out_path << '\n';
      return kExitFailure;
    }
  }
  return kExitOk;
}

struct CheckRecord {
  std::string material;
  std::string name;
  long samples = 0;
  long skipped = 0;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

void parse_tsv(const std::string& material, const std::string& tsv, std::vector<CheckRecord>& records) {
  std::istringstream lines(tsv);
  for (std::string line; std::getline(lines, line);) {
    std::vector<std::string> f;
    std::istringstream cells(line);
    for (std::string cell; std::getline(cells, cell, '\t');) f.push_back(cell);
    if (f.size() != 6) continue;
    records.push_back({material, f[0], std::stol(f[1]), std::stol(f[2]), std::stod(f[3]), std::stod(f[4]),
                       f[5] == "PASS"});
  }
}

int run_check(const MaterialSource& source, unsigned long long seed, const std::string& report_path) {
  std::vector<CheckRecord> records;
  auto run_one = [&](const std::string& label, const umat_material* m) {
    OwnedString tsv;
    int passed = 0;
    check(umat_check(m, seed, UMAT_REPORT_TSV, &passed, &tsv.text));
    parse_tsv(label, tsv.str(), records);
  };

  if (source.given()) {
    Material m = source.load();
    run_one(source.preset.empty() ? source.deck : source.preset, m.get());
  } else {
    run_one("closed_forms", nullptr);
    OwnedString names;
    check(umat_preset_list(&names.text));
    std::istringstream lines(names.str());
    for (std::string name; std::getline(lines, name);) {
      umat_material* raw = nullptr;
      // Presets with required parameters have no default instance.
      const umat_status status = umat_material_from_preset(name.c_str(), "", &raw);
      if (status == UMAT_ERR_MISSING_PARAMETER) continue;
      check(status);
      Material m(raw);
      run_one(name, m.get());
    }
  }

  bool all = true;
  for (const auto& r : records) {
    all = all && r.passed;
    std::printf("%s  %-24s %-36s samples=%-5ld skipped=%-4ld max_error=%-12.3e tol=%.1e\n", r.passed ? "PASS" : "FAIL",
                r.material.c_str(), r.name.c_str(), r.samples, r.skipped, r.max_error, r.tolerance);
  }
  std::printf("%s: %zu checks\n", all ? "PASS" : "FAIL", records.size());

  if (!report_path.empty()) {
    nlohmann::json doc = nlohmann::json::array();
    for (const auto& r : records) {
      doc.push_back({{"material", r.material},
                     {"name", r.name},
                     {"samples", r.samples},
                     {"skipped", r.skipped},
                     {"max_error", r.max_error},
                     {"tolerance", r.tolerance},
                     {"status", r.passed ? "pass" : "fail"}});
    }
    std::ofstream out(report_path);
    out << doc.dump(2) << '\n';
    if (!out) {
      std::cerr << "error: cannot write " << report_path << '\n';
      return kExitFailure;
    }
  }
  return all ? kExitOk : kExitFailure;
}

int run_preset_list() {
  OwnedString names;
  check(umat_preset_list(&names.text));
  std::cout << names.str();
  return kExitOk;
}

int run_preset_show(const std::string& name) {
  OwnedString text;
  check(umat_preset_describe(name.c_str(), &text.text));
  std::cout << text.str();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariant-based anisotropic hyperelastic material kernel"};
  app.require_subcommand(1);

  MaterialSource eval_source;
  std::string f_text;
  std::optional<double> pressure;
  auto* eval = app.add_subcommand("eval", "Energy, Cauchy stress and invariants at one deformation gradient");
  eval_source.add_options(eval);
  eval->add_option("--F", f_text, "Deformation gradient, row-major \"f11,f12,...,f33\"")->required();
  eval->add_option("--pressure", pressure, "Hydrostatic pressure (incompressible tables)");

  MaterialSource curve_source;
  std::string mode;
  std::string range;
  std::string plane;
  std::string out_path;
  double tol = 1e-10;
  int max_iter = 50;
  auto* curve = app.add_subcommand("curve", "Drive a homogeneous load path and write CSV");
  curve_source.add_options(curve);
  curve->add_option("--mode", mode, "uniaxial | equibiaxial | shear | volumetric")->required();
  curve->add_option("--range", range, "Controls A:B:N; A must be the reference (1 or 0 for shear)")->required();
  curve->add_option("--plane", plane, "Shear plane ab for F = I + g e_a (x) e_b (default 12)");
  curve->add_option("--out", out_path, "Output CSV file ('-' or omitted: stdout)");
  curve->add_option("--tol", tol, "Newton tolerance");
  curve->add_option("--max-iter", max_iter, "Newton iteration limit");

  auto* preset = app.add_subcommand("preset", "Inspect the preset catalog");
  preset->require_subcommand(1);
  auto* preset_list = preset->add_subcommand("list", "List preset names");
  std::string show_name;
  auto* preset_show = preset->add_subcommand("show", "Describe a preset and print its default deck");
  preset_show->add_option("name", show_name, "Preset name")->required();

  MaterialSource check_source;
  unsigned long long seed = 42;
  std::string report_path;
  auto* check_cmd = app.add_subcommand("check", "Run the verification suite (all presets when no material is given)");
  check_source.add_options(check_cmd);
  check_cmd->add_option("--seed", seed, "Sampling seed");
  check_cmd->add_option("--report", report_path, "Write a JSON report to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    if (eval->parsed()) return run_eval(eval_source, f_text, pressure);
    if (curve->parsed()) return run_curve(curve_source, mode, range, plane, out_path, tol, max_iter);
    if (preset_list->parsed()) return run_preset_list();
    if (preset_show->parsed()) return run_preset_show(show_name);
    if (check_cmd->parsed()) return run_check(check_source, seed, report_path);
  } catch (const CliFailure& f) {
    return f.exit_code;
  }
  return kExitFailure;
}
