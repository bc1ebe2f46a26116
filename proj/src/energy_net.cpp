// SPDX-License-Identifier: Apache-2.0
#include "umat/energy_net.hpp"

#include <cmath>
#include <string>

#include "umat/errors.hpp"

namespace umat {

namespace {

double ipow(double x, int n) {
  double r = 1.0;
  for (int k = 0; k < n; ++k) r *= x;
  return r;
}

}  // namespace

Activation eval_f0(ZerothActivation kind, double x) {
  switch (kind) {
    case ZerothActivation::Identity: return {x, 1.0, 0.0};
    case ZerothActivation::Macauley:
      if (x > 0.0) return {x, 1.0, 0.0};
      return {0.0, 0.0, 0.0};
    case ZerothActivation::Absolute:
      if (x > 0.0) return {x, 1.0, 0.0};
      if (x < 0.0) return {-x, -1.0, 0.0};
      return {0.0, 0.0, 0.0};
  }
  throw Error(ErrorCode::InvalidArgument, "unknown zeroth-layer activation");
}

Activation eval_f1(int power, double w0, double x) {
  if (power < 1 || power > kMaxPower) {
    throw Error(ErrorCode::InvalidArgument, "first-layer power must be in 1.." + std::to_string(kMaxPower));
  }
  const double y = w0 * x;
  const double m = power;
  Activation a;
  a.f = ipow(y, power);
  a.df = m * w0 * ipow(y, power - 1);
  a.ddf = power >= 2 ? m * (m - 1.0) * w0 * w0 * ipow(y, power - 2) : 0.0;
  return a;
}

Activation eval_f2(SecondActivation kind, double w1, double x) {
  switch (kind) {
    case SecondActivation::Linear: return {w1 * x, w1, 0.0};
    case SecondActivation::Exponential: {
      const double u = w1 * x;
      const double e = std::exp(u);
      return {std::expm1(u), w1 * e, w1 * w1 * e};
    }
    case SecondActivation::NegativeLog: {
      const double u = w1 * x;
      if (u >= 1.0) {
        throw Error(ErrorCode::LogDomain, "logarithmic activation outside its domain (w1*x = " +
                                              std::to_string(u) + " >= 1)");
      }
      const double d = 1.0 - u;
      return {-std::log1p(-u), w1 / d, w1 * w1 / (d * d)};
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown second-layer activation");
}

NeuronContribution ucann_neuron(double x_inv, const NeuronRow& row) {
  const Activation a0 = eval_f0(row.kf0, x_inv);
  const Activation a1 = eval_f1(row.kf1, row.w0, a0.f);
  const Activation a2 = eval_f2(row.kf2, row.w1, a1.f);

  NeuronContribution c;
  c.energy = row.w2 * a2.f;
  c.first = row.w2 * a2.df * a1.df * a0.df;
  c.second = row.w2 * ((a2.ddf * a1.df * a1.df + a2.df * a1.ddf) * a0.df * a0.df + a2.df * a1.df * a0.ddf);
  return c;
}

EnergyEvaluation evaluate_energy(const ParameterTable& table, const InvariantState& inv) {
  EnergyEvaluation out;
  for (const auto& row : table.rows) {
    if (row.kfinv == 3 && table.material_type == MaterialType::Incompressible) {
      throw Error(ErrorCode::VolumetricInIncompressible,
                  "incompressible table contains a volumetric (slot 3) row");
    }
    if (!inv.has(row.kfinv)) {
      throw Error(ErrorCode::UnknownInvariantSlot,
                  "table row addresses undefined invariant slot " + std::to_string(row.kfinv));
    }
    const NeuronContribution c = ucann_neuron(inv.value(row.kfinv) - inv.offset(row.kfinv), row);
    out.UA += c.energy;

    if (row.kfinv <= kNumInvariants) {
      const auto i = static_cast<std::size_t>(row.kfinv - 1);
      out.UI1[i] += c.first;
      out.UI2[static_cast<std::size_t>(packed_index(row.kfinv, row.kfinv) - 1)] += c.second;
      continue;
    }

    const auto& kappa = inv.mixed_kappa.at(row.kfinv);
    for (int j = 1; j <= kNumInvariants; ++j) {
      const double kj = kappa[static_cast<std::size_t>(j - 1)];
      if (kj == 0.0) continue;
      out.UI1[static_cast<std::size_t>(j - 1)] += kj * c.first;
      for (int i = 1; i <= j; ++i) {
        const double ki = kappa[static_cast<std::size_t>(i - 1)];
        if (ki == 0.0) continue;
        out.UI2[static_cast<std::size_t>(packed_index(i, j) - 1)] += ki * kj * c.second;
      }
    }
  }
  return out;
}

}  // namespace umat
