// SPDX-License-Identifier: Apache-2.0
#include "umat/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <random>

#include "umat/energy_net.hpp"
#include "umat/errors.hpp"
#include "umat/kinematics.hpp"
#include "umat/presets.hpp"
#include "umat/stress_tangent.hpp"

namespace umat {

namespace {

constexpr double kFirstStep = 1e-6;
constexpr double kSecondStep = 1e-4;
constexpr double kKinkRadius = 1e-3;
constexpr double kLogMargin = 0.1;
constexpr double kTiny = std::numeric_limits<double>::min();
// Attempts per requested sample before a check gives up on finding admissible states.
constexpr int kAttemptFactor = 50;

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

double inf_norm(const Mat3& m) { return m.cwiseAbs().maxCoeff(); }

Mat3 random_rotation(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Quaterniond q(n(rng), n(rng), n(rng), n(rng));
  q.normalize();
  return q.toRotationMatrix();
}

Mat3 random_deformation(Rng& rng) {
  while (true) {
    Mat3 F = Mat3::Identity();
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) F(i, j) += uniform(rng, -0.25, 0.25);
    }
    const double J = F.determinant();
    if (J >= 0.8 && J <= 1.25) return F;
  }
}

class EntryBuilder {
 public:
  EntryBuilder(std::string name, double tolerance) {
    entry_.name = std::move(name);
    entry_.tolerance = tolerance;
  }
  void sample(double error) {
    ++entry_.samples;
    if (std::isnan(entry_.max_error)) return;
    if (std::isnan(error) || error > entry_.max_error) entry_.max_error = error;
  }
  void skip() { ++entry_.skipped; }
  CheckEntry finish(int wanted, std::string detail = {}) {
    entry_.detail = std::move(detail);
    entry_.passed = !std::isnan(entry_.max_error) && entry_.max_error < entry_.tolerance;
    if (entry_.samples < wanted) {
      entry_.passed = false;
      entry_.detail = "only " + std::to_string(entry_.samples) + " admissible samples";
    }
    return std::move(entry_);
  }

 private:
  CheckEntry entry_;
};

// True when every row argument stays clear of activation kinks and of the
// logarithmic singularity at `inv`.
bool admissible(const ParameterTable& table, const InvariantState& inv) {
  for (const auto& row : table.rows) {
    if (!inv.has(row.kfinv)) return false;
    const double x = inv.value(row.kfinv) - inv.offset(row.kfinv);
    if (row.kf0 != ZerothActivation::Identity && std::abs(x) < kKinkRadius) return false;
    if (row.kf2 == SecondActivation::NegativeLog) {
      const double u = row.w1 * eval_f1(row.kf1, row.w0, eval_f0(row.kf0, x).f).f;
      if (1.0 - u < kLogMargin) return false;
    }
  }
  return true;
}

std::vector<int> used_slots(const ParameterTable& table) {
  std::vector<bool> used(kNumInvariants + 1, false);
  for (const auto& row : table.rows) {
    if (row.kfinv <= kNumInvariants) {
      used[static_cast<std::size_t>(row.kfinv)] = true;
      continue;
    }
    for (const auto& m : table.mixed) {
      if (m.index != row.kfinv) continue;
      for (int j = 1; j <= kNumInvariants; ++j) {
        if (m.kappa[static_cast<std::size_t>(j - 1)] != 0.0) used[static_cast<std::size_t>(j)] = true;
      }
    }
  }
  std::vector<int> slots;
  for (int j = 1; j <= kNumInvariants; ++j) {
    if (used[static_cast<std::size_t>(j)]) slots.push_back(j);
  }
  return slots;
}

std::array<double, kNumInvariants> random_invariants(Rng& rng, const std::array<double, kNumInvariants>& offsets,
                                                     int ndir) {
  std::array<double, kNumInvariants> v = offsets;
  v[0] = uniform(rng, 3.0, 5.0);
  v[1] = uniform(rng, 3.0, 5.0);
  v[2] = uniform(rng, 0.9, 1.1);
  for (int slot = 4; slot <= kNumInvariants; ++slot) {
    const SlotDescriptor d = describe_slot(slot);
    if (d.beta > ndir) continue;
    auto& x = v[static_cast<std::size_t>(slot - 1)];
    x = d.alpha == d.beta ? uniform(rng, 0.8, 1.5) : x + uniform(rng, -0.3, 0.3);
  }
  return v;
}

std::optional<EnergyEvaluation> try_energy(const ParameterTable& table, const InvariantState& inv) {
  try {
    return evaluate_energy(table, inv);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::LogDomain) return std::nullopt;
    throw;
  }
}

bool uses_only_isotropic_slots(const ParameterTable& table) {
  const auto slots = used_slots(table);
  return std::all_of(slots.begin(), slots.end(), [](int s) { return s <= 3; });
}

// Hand-coded energy and stress of a model written in bbar and the isochoric fibers.
struct ClosedForm {
  double psi;
  Mat3 sigma;
};

struct IsochoricDerivatives {
  double psi = 0.0;
  double psi1 = 0.0;  // dpsi/dI1
  double psi2 = 0.0;  // dpsi/dI2
  double psiJ = 0.0;  // dpsi/dJ
  std::vector<double> psi4;  // dpsi/dI4(aa) per fiber
};

ClosedForm assemble_closed_form(const Mat3& F, const std::vector<Vec3>& fibers,
                                const std::function<IsochoricDerivatives(double I1, double I2, double J,
                                                                         const std::vector<double>& I4)>& model) {
  const double J = F.determinant();
  const Mat3 Fb = F / std::cbrt(J);
  const Mat3 bb = Fb * Fb.transpose();
  const double I1 = bb.trace();
  const double I2 = 0.5 * (I1 * I1 - (bb * bb).trace());
  std::vector<Vec3> a;
  std::vector<double> I4;
  for (const auto& n : fibers) {
    a.push_back(Fb * n);
    I4.push_back(a.back().squaredNorm());
  }
  const IsochoricDerivatives d = model(I1, I2, J, I4);
  auto dev = [](const Mat3& A) -> Mat3 { return A - A.trace() / 3.0 * Mat3::Identity(); };
  Mat3 sigma = (2.0 / J) * dev((d.psi1 + I1 * d.psi2) * bb - d.psi2 * bb * bb) + d.psiJ * Mat3::Identity();
  for (std::size_t k = 0; k < a.size(); ++k) sigma += (2.0 / J) * d.psi4[k] * dev(a[k] * a[k].transpose());
  return {d.psi, sigma};
}

CheckEntry compare_with_closed_form(const std::string& name, const MaterialSpec& spec, std::uint64_t seed,
                                    const std::function<IsochoricDerivatives(double, double, double,
                                                                             const std::vector<double>&)>& model) {
  constexpr int kStates = 50;
  Rng rng(seed);
  EntryBuilder b(name, 1e-10);
  const FiberSet fibers = spec.fiber_set();
  std::vector<Vec3> dirs(fibers.directions().begin(), fibers.directions().end());
  for (int s = 0; s < kStates; ++s) {
    const Mat3 F = random_deformation(rng);
    const ClosedForm ref = assemble_closed_form(F, dirs, model);
    const double psi = strain_energy(spec.table, F, fibers);
    const Mat3 sigma = constitutive_stress(spec.table, make_deformation_state(F), fibers);
    const double e_psi = std::abs(psi - ref.psi) / std::max(std::abs(ref.psi), kTiny);
    const double e_sigma = inf_norm(sigma - ref.sigma) / std::max(inf_norm(ref.sigma), kTiny);
    b.sample(std::max(e_psi, e_sigma));
  }
  return b.finish(kStates, "energy and stress vs closed form");
}

}  // namespace

bool CheckReport::passed() const {
  return std::all_of(entries.begin(), entries.end(), [](const CheckEntry& e) { return e.passed; });
}

void CheckReport::append(const CheckReport& other) {
  entries.insert(entries.end(), other.entries.begin(), other.entries.end());
}

std::string CheckReport::to_text() const {
  std::string out;
  char line[512];
  for (const auto& e : entries) {
    std::snprintf(line, sizeof(line), "%s  %-40s samples=%-5d skipped=%-5d max_error=%.3e tol=%.1e%s%s\n",
                  e.passed ? "PASS" : "FAIL", e.name.c_str(), e.samples, e.skipped, e.max_error, e.tolerance,
                  e.detail.empty() ? "" : "  ", e.detail.c_str());
    out += line;
  }
  out += passed() ? "overall: PASS\n" : "overall: FAIL\n";
  return out;
}

CheckReport check_energy_derivatives(const ParameterTable& table, int samples, std::uint64_t seed) {
  Rng rng(seed);
  const FiberSet frame = FiberSet::cartesian(table.ndir);
  const auto offsets = reference_offsets(frame);
  const auto slots = used_slots(table);

  EntryBuilder first("energy_first_derivatives", 1e-8);
  EntryBuilder diagonal("energy_second_derivatives_diagonal", 1e-6);
  EntryBuilder mixed("energy_second_derivatives_mixed", 1e-6);

  auto state_at = [&](std::array<double, kNumInvariants> v, int slot, double h) {
    v[static_cast<std::size_t>(slot - 1)] += h;
    return InvariantState::from_base(v, offsets, table.mixed);
  };
  auto energy_at = [&](const std::array<double, kNumInvariants>& v, int slot, double h) {
    return evaluate_energy(table, state_at(v, slot, h));
  };

  int accepted = 0;
  for (int attempt = 0; accepted < samples && attempt < kAttemptFactor * samples; ++attempt) {
    const auto v = random_invariants(rng, offsets, table.ndir);
    const InvariantState inv = InvariantState::from_base(v, offsets, table.mixed);
    const auto center = try_energy(table, inv);
    // A state is admissible when the widest stencil stays clear of kinks and singularities.
    bool ok = center.has_value() && admissible(table, inv);
    for (int slot : slots) {
      if (!ok) break;
      ok = admissible(table, state_at(v, slot, kSecondStep)) && admissible(table, state_at(v, slot, -kSecondStep));
    }
    if (!ok) {
      first.skip();
      diagonal.skip();
      mixed.skip();
      continue;
    }
    ++accepted;
    const EnergyEvaluation& e = *center;
    double scale = std::abs(e.UA);
    for (double g : e.UI1) scale = std::max(scale, std::abs(g));
    for (double g : e.UI2) scale = std::max(scale, std::abs(g));
    scale = std::max(scale, kTiny);

    double err1 = 0.0;
    double err2 = 0.0;
    double err_mixed = 0.0;
    for (int i : slots) {
      const EnergyEvaluation ep = energy_at(v, i, kFirstStep);
      const EnergyEvaluation em = energy_at(v, i, -kFirstStep);
      const double fd1 = (ep.UA - em.UA) / (2.0 * kFirstStep);
      err1 = std::max(err1, std::abs(fd1 - e.first(i)));

      // Richardson extrapolation of the central second difference.
      auto second_difference = [&](double h) {
        return (energy_at(v, i, h).UA - 2.0 * e.UA + energy_at(v, i, -h).UA) / (h * h);
      };
      const double d_h = second_difference(kSecondStep);
      const double d_h2 = second_difference(0.5 * kSecondStep);
      const double fd2 = (4.0 * d_h2 - d_h) / 3.0;
      err2 = std::max(err2, std::abs(fd2 - e.second(i, i)));

      for (int j : slots) {
        const double fd = (ep.first(j) - em.first(j)) / (2.0 * kFirstStep);
        err_mixed = std::max(err_mixed, std::abs(fd - e.second(i, j)));
      }
    }
    first.sample(err1 / scale);
    diagonal.sample(err2 / scale);
    mixed.sample(err_mixed / scale);
  }

  CheckReport report;
  report.entries.push_back(first.finish(samples, "UI1 vs central differences of UA"));
  report.entries.push_back(diagonal.finish(samples, "diagonal UI2 vs Richardson second differences of UA"));
  report.entries.push_back(mixed.finish(samples, "UI2 vs central differences of UI1"));
  return report;
}

CheckReport check_stress_fd(const ParameterTable& table, const FiberSet& fibers, int samples, std::uint64_t seed) {
  Rng rng(seed);
  EntryBuilder b("stress_fd", 1e-6);
  int accepted = 0;
  for (int attempt = 0; accepted < samples && attempt < kAttemptFactor * samples; ++attempt) {
    const Mat3 F = random_deformation(rng);
    const DeformationState state = make_deformation_state(F);
    if (!admissible(table, compute_invariants(state, fibers, table.mixed))) {
      b.skip();
      continue;
    }
    try {
      const double psi = strain_energy(table, F, fibers);
      const Mat3 sigma = constitutive_stress(table, state, fibers);
      Mat3 P = Mat3::Zero();
      bool stencil_ok = true;
      for (int k = 0; k < 3 && stencil_ok; ++k) {
        for (int l = 0; l < 3 && stencil_ok; ++l) {
          Mat3 Fp = F;
          Mat3 Fm = F;
          Fp(k, l) += kFirstStep;
          Fm(k, l) -= kFirstStep;
          stencil_ok = admissible(table, compute_invariants(make_deformation_state(Fp), fibers, table.mixed)) &&
                       admissible(table, compute_invariants(make_deformation_state(Fm), fibers, table.mixed));
          if (stencil_ok) {
            P(k, l) = (strain_energy(table, Fp, fibers) - strain_energy(table, Fm, fibers)) / (2.0 * kFirstStep);
          }
        }
      }
      if (!stencil_ok) {
        b.skip();
        continue;
      }
      const Mat3 sigma_fd = P * F.transpose() / state.J;
      const double scale = std::max({inf_norm(sigma), inf_norm(sigma_fd), std::abs(psi), kTiny});
      b.sample(inf_norm(sigma - sigma_fd) / scale);
      ++accepted;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::LogDomain) throw;
      b.skip();
    }
  }
  CheckReport report;
  report.entries.push_back(b.finish(samples, "sigma vs (1/J) dpsi/dF F^T"));
  return report;
}

CheckReport check_closed_forms(std::uint64_t seed) {
  CheckReport report;

  {
    const MaterialSpec nh = build_preset("neo_hooke");
    const double c10 = 0.5;
    const double d1 = 0.01;
    report.entries.push_back(compare_with_closed_form(
        "closed_form_neo_hooke", nh, seed, [&](double I1, double, double J, const std::vector<double>&) {
          IsochoricDerivatives d;
          d.psi = c10 * (I1 - 3.0) + (J - 1.0) * (J - 1.0) / d1;
          d.psi1 = c10;
          d.psiJ = 2.0 * (J - 1.0) / d1;
          return d;
        }));
  }
  {
    const MaterialSpec mr = build_preset("mooney_rivlin");
    const double c10 = 0.3;
    const double c01 = 0.2;
    const double d1 = 0.01;
    report.entries.push_back(compare_with_closed_form(
        "closed_form_mooney_rivlin", mr, seed + 1, [&](double I1, double I2, double J, const std::vector<double>&) {
          IsochoricDerivatives d;
          d.psi = c10 * (I1 - 3.0) + c01 * (I2 - 3.0) + (J - 1.0) * (J - 1.0) / d1;
          d.psi1 = c10;
          d.psi2 = c01;
          d.psiJ = 2.0 * (J - 1.0) / d1;
          return d;
        }));
  }
  {
    const double c[3] = {0.5, 0.05, 0.01};
    const double dinv[3] = {1.0 / 0.01, 1.0 / 0.02, 1.0 / 0.03};
    const MaterialSpec yeoh = build_preset("yeoh", {{"D2", 0.02}, {"D3", 0.03}});
    report.entries.push_back(compare_with_closed_form(
        "closed_form_yeoh", yeoh, seed + 2, [&](double I1, double, double J, const std::vector<double>&) {
          IsochoricDerivatives d;
          const double x = I1 - 3.0;
          const double y = J - 1.0;
          d.psi = c[0] * x + c[1] * x * x + c[2] * x * x * x + dinv[0] * std::pow(y, 2) + dinv[1] * std::pow(y, 4) +
                  dinv[2] * std::pow(y, 6);
          d.psi1 = c[0] + 2.0 * c[1] * x + 3.0 * c[2] * x * x;
          d.psiJ = 2.0 * dinv[0] * y + 4.0 * dinv[1] * std::pow(y, 3) + 6.0 * dinv[2] * std::pow(y, 5);
          return d;
        }));
  }
  {
    const MaterialSpec hz = build_preset("holzapfel_two_fiber");
    const double c10 = 3.0;
    const double k1 = 2.3632;
    const double k2 = 0.8393;
    const double dinv = 1.0 / 0.002;
    report.entries.push_back(compare_with_closed_form(
        "closed_form_holzapfel_two_fiber", hz, seed + 3,
        [&](double I1, double, double J, const std::vector<double>& I4) {
          IsochoricDerivatives d;
          d.psi = c10 * (I1 - 3.0) + dinv * ((J * J - 1.0) / 2.0 - std::log(J));
          d.psi1 = c10;
          d.psiJ = dinv * (J - 1.0 / J);
          for (double i4 : I4) {
            const double x = std::max(i4 - 1.0, 0.0);
            d.psi += k1 / (2.0 * k2) * (std::exp(k2 * x * x) - 1.0);
            d.psi4.push_back(k1 * x * std::exp(k2 * x * x));
          }
          return d;
        }));
  }

  // kappa = 0: the dispersion table reduces to the two-fiber table.
  {
    const MaterialSpec goh = build_preset("goh_dispersion", {{"kappa", 0.0}});
    const MaterialSpec hz = build_preset("holzapfel_two_fiber");
    Rng rng(seed + 4);
    EntryBuilder b("goh_kappa_zero_matches_holzapfel", 1e-12);
    for (int s = 0; s < 50; ++s) {
      const Mat3 F = random_deformation(rng);
      const FiberSet fibers = FiberSet::symmetric_pair(uniform(rng, 0.0, std::numbers::pi));
      const DeformationState st = make_deformation_state(F);
      const double pg = strain_energy(goh.table, F, fibers);
      const double ph = strain_energy(hz.table, F, fibers);
      const Mat3 sg = constitutive_stress(goh.table, st, fibers);
      const Mat3 sh = constitutive_stress(hz.table, st, fibers);
      const double e_psi = std::abs(pg - ph) / std::max(std::abs(ph), kTiny);
      const double e_sig = inf_norm(sg - sh) / std::max(inf_norm(sh), kTiny);
      b.sample(std::max(e_psi, e_sig));
    }
    report.entries.push_back(b.finish(50, "energy and stress, random fiber angles"));
  }

  // kappa = 1/3: fully dispersed fibers, stress independent of the fiber directions.
  {
    const MaterialSpec goh = build_preset("goh_dispersion", {{"kappa", 1.0 / 3.0}});
    Rng rng(seed + 5);
    EntryBuilder b("goh_kappa_third_fiber_independent", 1e-12);
    for (int s = 0; s < 50; ++s) {
      const Mat3 F = random_deformation(rng);
      const DeformationState st = make_deformation_state(F);
      const FiberSet base = goh.fiber_set();
      const FiberSet turned = base.rotated(random_rotation(rng));
      const Mat3 s0 = constitutive_stress(goh.table, st, base);
      const Mat3 s1 = constitutive_stress(goh.table, st, turned);
      b.sample(inf_norm(s1 - s0) / std::max(inf_norm(s0), kTiny));
    }
    report.entries.push_back(b.finish(50, "stress under random fiber rotation"));
  }

  // Three-row volumetric table vs K/2 ((J^2-1)/2 - ln J), energy and dpsi/dJ.
  {
    EntryBuilder b("volumetric_ogden_identity", 1e-12);
    for (double K : {1.0, 2.5}) {
      const MaterialSpec vol = build_preset("vol_ogden_modified", {{"K", K}});
      const auto offsets = reference_offsets(FiberSet());
      for (int k = 0; k <= 45; ++k) {
        const double J = (80 + k) / 100.0;
        auto values = offsets;
        values[2] = J;
        const EnergyEvaluation e = evaluate_energy(vol.table, InvariantState::from_base(values, offsets));
        const long double Jl = J;
        const long double psi = K / 2.0L * ((Jl * Jl - 1.0L) / 2.0L - std::log(Jl));
        const long double dpsi = K / 2.0L * (Jl - 1.0L / Jl);
        const double scale = std::max({std::abs(static_cast<double>(psi)), std::abs(static_cast<double>(dpsi)), kTiny});
        const double err = std::max(std::abs(static_cast<double>(e.UA - psi)), std::abs(static_cast<double>(e.first(3) - dpsi)));
        b.sample(err / scale);
      }
    }
    report.entries.push_back(b.finish(92, "J = 0.80..1.25, K = 1 and 2.5"));
  }
  return report;
}

CheckReport check_symmetries(const ParameterTable& table, const FiberSet& fibers, std::uint64_t seed, int samples) {
  Rng rng(seed);
  EntryBuilder energy("objectivity_energy", 1e-9);
  EntryBuilder stress("objectivity_stress", 1e-8);
  const bool isotropic = uses_only_isotropic_slots(table);
  EntryBuilder coaxial("isotropy_coaxiality", 1e-9);

  int accepted = 0;
  for (int attempt = 0; accepted < samples && attempt < kAttemptFactor * samples; ++attempt) {
    const Mat3 F = random_deformation(rng);
    const Mat3 Q = random_rotation(rng);
    try {
      const DeformationState st = make_deformation_state(F);
      const double psi = strain_energy(table, F, fibers);
      const double psi_q = strain_energy(table, Q * F, fibers);
      const Mat3 sigma = constitutive_stress(table, st, fibers);
      const Mat3 sigma_q = constitutive_stress(table, make_deformation_state(Q * F), fibers);
      const double sn = inf_norm(sigma);
      energy.sample(std::abs(psi_q - psi) / std::max({std::abs(psi), sn, kTiny}));
      stress.sample(inf_norm(sigma_q - Q * sigma * Q.transpose()) / std::max(sn, kTiny));
      if (isotropic) {
        const double denom = std::max(sigma.norm() * st.b.norm(), kTiny);
        coaxial.sample((sigma * st.b - st.b * sigma).norm() / denom);
      }
      ++accepted;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::LogDomain) throw;
      energy.skip();
      stress.skip();
    }
  }
  CheckReport report;
  report.entries.push_back(energy.finish(samples, "psi(QF) vs psi(F)"));
  report.entries.push_back(stress.finish(samples, "sigma(QF) vs Q sigma(F) Q^T"));
  if (isotropic) report.entries.push_back(coaxial.finish(samples, "sigma b = b sigma"));
  return report;
}

CheckReport check_reference_state(const ParameterTable& table, const FiberSet& fibers, std::uint64_t seed) {
  constexpr int kFrames = 20;
  Rng rng(seed);
  EntryBuilder b("reference_state", 1e-10);
  const DeformationState identity = make_deformation_state(Mat3::Identity());
  for (int k = 0; k <= kFrames; ++k) {
    const FiberSet f = k == 0 ? fibers : fibers.rotated(random_rotation(rng));
    const double psi = strain_energy(table, Mat3::Identity(), f);
    const Mat3 sigma = constitutive_stress(table, identity, f);
    b.sample(std::max(std::abs(psi), inf_norm(sigma)));
  }
  CheckReport report;
  report.entries.push_back(b.finish(kFrames + 1, "|psi(I)| and |sigma(I)|_inf, absolute"));
  return report;
}

CheckReport run_material_checks(const MaterialSpec& spec, std::uint64_t seed) {
  const FiberSet fibers = spec.fiber_set();
  CheckReport report;
  report.append(check_reference_state(spec.table, fibers, seed));
  report.append(check_energy_derivatives(spec.table, 200, seed));
  report.append(check_stress_fd(spec.table, fibers, 100, seed));
  report.append(check_symmetries(spec.table, fibers, seed));
  return report;
}

}  // namespace umat
