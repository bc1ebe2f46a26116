// SPDX-License-Identifier: Apache-2.0
#include "umat/umat.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "umat/errors.hpp"
#include "umat/input_deck.hpp"
#include "umat/kinematics.hpp"
#include "umat/point_driver.hpp"
#include "umat/presets.hpp"
#include "umat/stress_tangent.hpp"
#include "umat/verify.hpp"

struct umat_material {
  umat::MaterialSpec spec;
  umat::FiberSet fibers;
  std::string warnings;
};

namespace {

thread_local std::string g_last_error;

umat_status fail(umat_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

umat_status status_of(umat::ErrorCode code) { return static_cast<umat_status>(static_cast<int>(code) + 1); }

template <class Fn>
umat_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return UMAT_OK;
  } catch (const umat::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(UMAT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(UMAT_ERR_INTERNAL, e.what());
  }
}

char* copy_string(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

umat::Mat3 read_matrix(const double* m) {
  umat::Mat3 out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out(i, j) = m[i * 3 + j];
  return out;
}

void write_matrix(const umat::Mat3& m, double* out) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i * 3 + j] = m(i, j);
}

std::optional<double> read_pressure(const double* p) {
  if (!p) return std::nullopt;
  return *p;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

umat::PresetParams parse_params(std::string_view text) {
  umat::PresetParams params;
  while (!trim(text).empty()) {
    const auto comma = text.find(',');
    const std::string_view item = trim(text.substr(0, comma));
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos)
      throw umat::Error(umat::ErrorCode::InvalidArgument, "expected key=value, got '" + std::string(item) + "'");
    const std::string_view key = trim(item.substr(0, eq));
    const std::string_view value = trim(item.substr(eq + 1));
    double v = 0.0;
    const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (key.empty() || value.empty() || ec != std::errc() || end != value.data() + value.size())
      throw umat::Error(umat::ErrorCode::InvalidArgument, "invalid parameter '" + std::string(item) + "'");
    params[std::string(key)] = v;
  }
  return params;
}

std::string format_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

umat_material* make_material(umat::MaterialSpec spec, std::string warnings) {
  auto* m = new umat_material{std::move(spec), {}, std::move(warnings)};
  m->fibers = m->spec.fiber_set();
  return m;
}

}  // namespace

extern "C" {

const char* umat_status_name(umat_status status) {
  if (status == UMAT_OK) return "Ok";
  if (status == UMAT_ERR_NULL_ARGUMENT) return "NullArgument";
  if (status < UMAT_OK || status > UMAT_ERR_NULL_ARGUMENT) return "Unknown";
  return umat::to_string(static_cast<umat::ErrorCode>(static_cast<int>(status) - 1));
}

const char* umat_last_error(void) { return g_last_error.c_str(); }

void umat_string_free(char* text) { std::free(text); }

umat_status umat_material_from_deck(const char* text, umat_material** out) {
  if (!text || !out) return fail(UMAT_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] {
    std::vector<umat::Diagnostic> diags;
    umat::MaterialSpec spec = umat::parse_deck(text, &diags);
    std::string warnings;
    for (const auto& d : diags) warnings += std::to_string(d.line) + ": " + d.message + "\n";
    *out = make_material(std::move(spec), std::move(warnings));
  });
}

umat_status umat_material_from_preset(const char* name, const char* params, umat_material** out) {
  if (!name || !out) return fail(UMAT_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] {
    const auto parsed = parse_params(params ? params : "");
    *out = make_material(umat::build_preset(name, parsed), "");
  });
}

void umat_material_free(umat_material* material) { delete material; }

umat_status umat_material_set_fibers(umat_material* material, const double* directions, int count) {
  if (!material || (!directions && count > 0)) return fail(UMAT_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] {
    if (count != material->spec.table.ndir)
      throw umat::Error(umat::ErrorCode::InvalidArgument, "expected " + std::to_string(material->spec.table.ndir) +
                                                              " fiber directions, got " + std::to_string(count));
    std::vector<umat::Vec3> dirs;
    for (int a = 0; a < count; ++a) dirs.emplace_back(directions[3 * a], directions[3 * a + 1], directions[3 * a + 2]);
    for (const auto& d : dirs)
      if (!(d.norm() > 0.0) || !d.allFinite())
        throw umat::Error(umat::ErrorCode::InvalidArgument, "fiber direction must be finite and non-zero");
    auto fibers = umat::FiberSet::normalized(std::move(dirs));
    material->spec.fibers = fibers;
    material->fibers = std::move(fibers);
  });
}

umat_status umat_material_properties(const umat_material* material, int* incompressible, int* ndir, int* rows,
                                     int* mixed_rows) {
  if (!material) return fail(UMAT_ERR_NULL_ARGUMENT, "null argument");
  const auto& t = material->spec.table;
  if (incompressible) *incompressible = t.material_type == umat::MaterialType::Incompressible ? 1 : 0;
  if (ndir) *ndir = t.ndir;
  if (rows) *rows = static_cast<int>(t.rows.size());
  if (mixed_rows) *mixed_rows = static_cast<int>(t.mixed.size());
  g_last_error.clear();
  return UMAT_OK;
}

const char* umat_material_name(const umat_material* material) { return material ? material->spec.name.c_str() : ""; }

const char* umat_material_units(const umat_material* material) {
  return material ? material->spec.units.c_str() : "";
}

const char* umat_material_warnings(const umat_material* material) {
  return material ? material->warnings.c_str() : "";
}

umat_status umat_material_serialize(const umat_material* material, char** out_text) {
  if (!material || !out_text) return fail(UMAT_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] { *out_text = copy_string(umat::serialize_deck(material->spec)); });
}

umat_status umat_uanisohyper_inv(const umat_material* material, const double invariants[15], double* ua,
                                 double ui1[15], double ui2[120]) {
  if (!material || !invariants) return fail(UMAT_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] {
    std::array<double, umat::kNumInvariants> values{};
    std::copy(invariants, invariants + umat::kNumInvariants, values.begin());
    const auto inv = umat::InvariantState::from_base(values, umat::reference_offsets(material->fibers),
                                                     material->spec.table.mixed);
    const auto e = umat::evaluate_energy(material->spec.table, inv);
    if (ua) *ua = e.UA;
    if (ui1) std::copy(e.UI1.begin(), e.UI1.end(), ui1);
    if (ui2) std::copy(e.UI2.begin(), e.UI2.end(), ui2);
  });
}

umat_status umat_invariants(const umat_material* material, const double F[9], double values[15],
                            double offsets[15]) {
  if (!material || !F) return fail(UMAT_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] {
    const auto state = umat::make_deformation_state(read_matrix(F));
    const auto inv = umat::compute_invariants(state, material->fibers, material->spec.table.mixed);
    if (values) std::copy(inv.values.begin(), inv.values.end(), values);
    if (offsets) std::copy(inv.offsets.begin(), inv.offsets.end(), offsets);
  });
}

umat_status umat_strain_energy(const umat_material* material, const double F[9], double* psi) {
  if (!material || !F || !psi) return fail(UMAT_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] {
    const umat::Mat3 m = read_matrix(F);
    if (!(m.determinant() > 0.0))
      throw umat::Error(umat::ErrorCode::NonPositiveJacobian, "det F must be positive");
    *psi = umat::strain_energy(material->spec.table, m, material->fibers);
  });
}

umat_status umat_cauchy_stress(const umat_material* material, const double F[9], const double* pressure,
                               double sigma[9]) {
  if (!material || !F || !sigma) return fail(UMAT_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] {
    const auto s = umat::cauchy_stress(material->spec.table, read_matrix(F), material->fibers, read_pressure(pressure));
    write_matrix(s.sigma, sigma);
  });
}

umat_status umat_tangent(const umat_material* material, const double F[9], const double* pressure, double step,
                         double dsigma_dF[81]) {
  if (!material || !F || !dsigma_dF) return fail(UMAT_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] {
    const auto t = umat::tangent_fd(material->spec.table, read_matrix(F), material->fibers, read_pressure(pressure),
                                    step > 0.0 ? step : 1e-6);
    std::copy(t.dsigma_dF.data().begin(), t.dsigma_dF.data().end(), dsigma_dF);
  });
}

umat_status umat_run_curve(const umat_material* material, umat_load_mode mode, const double* controls, size_t count,
                           int shear_a, int shear_b, double tol, int max_iter, char** out_csv) {
  if (!material || (!controls && count > 0) || !out_csv) return fail(UMAT_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] {
    umat::LoadPath path;
    switch (mode) {
      case UMAT_LOAD_UNIAXIAL: path.mode = umat::LoadMode::Uniaxial; break;
      case UMAT_LOAD_EQUIBIAXIAL: path.mode = umat::LoadMode::Equibiaxial; break;
      case UMAT_LOAD_SIMPLE_SHEAR: path.mode = umat::LoadMode::SimpleShear; break;
      case UMAT_LOAD_VOLUMETRIC: path.mode = umat::LoadMode::Volumetric; break;
      default: throw umat::Error(umat::ErrorCode::InvalidArgument, "unknown load mode");
    }
    path.control.assign(controls, controls + count);
    path.shear_a = shear_a;
    path.shear_b = shear_b;
    umat::DriverOptions options;
    if (tol > 0.0) options.tol = tol;
    if (max_iter > 0) options.max_iter = max_iter;
    umat::MaterialSpec spec = material->spec;
    spec.fibers = material->fibers;
    const auto curve = umat::run_path(spec, path, options);
    *out_csv = copy_string(umat::emit_csv(curve, spec.units));
  });
}

umat_status umat_check(const umat_material* material, unsigned long long seed, umat_report_format format, int* passed,
                       char** out_report) {
  return guarded([&] {
    umat::CheckReport report;
    if (material) {
      umat::MaterialSpec spec = material->spec;
      spec.fibers = material->fibers;
      report = umat::run_material_checks(spec, seed);
    } else {
      report = umat::check_closed_forms(seed);
    }
    if (passed) *passed = report.passed() ? 1 : 0;
    if (!out_report) return;
    if (format == UMAT_REPORT_TSV) {
      std::string text;
      for (const auto& e : report.entries) {
        text += e.name + '\t' + std::to_string(e.samples) + '\t' + std::to_string(e.skipped) + '\t' +
                format_g(e.max_error) + '\t' + format_g(e.tolerance) + '\t' + (e.passed ? "PASS" : "FAIL") + '\n';
      }
      *out_report = copy_string(text);
    } else {
      *out_report = copy_string(report.to_text());
    }
  });
}

umat_status umat_preset_list(char** out_text) {
  if (!out_text) return fail(UMAT_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] {
    std::string text;
    for (const auto& n : umat::preset_names()) text += n + '\n';
    *out_text = copy_string(text);
  });
}

umat_status umat_preset_describe(const char* name, char** out_text) {
  if (!name || !out_text) return fail(UMAT_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] {
    const auto& info = umat::preset_info(name);
    std::string text = info.name + "\n" + info.description + "\nunits: " + info.units + "\nparameters:\n";
    for (const auto& p : info.parameters) {
      text += "  " + p.name + " = " + format_g(p.default_value);
      if (!p.description.empty()) text += "  (" + p.description + ")";
      text += '\n';
    }
    if (!info.required.empty()) {
      text += "required:";
      for (const auto& r : info.required) text += ' ' + r;
      text += "\n";
    } else {
      text += "deck:\n" + umat::serialize_deck(umat::build_preset(name));
    }
    *out_text = copy_string(text);
  });
}

}  // extern "C"
