// SPDX-License-Identifier: Apache-2.0
#include "umat/kinematics.hpp"

#include <cmath>
#include <string>

#include "umat/errors.hpp"

namespace umat {

namespace {

Mat3 symmetric_part(const Mat3& A) { return 0.5 * (A + A.transpose()); }

constexpr double kUnitTolerance = 1e-12;

// (kind, alpha, beta) for slots 1..15, built from invariant_index.
const std::array<SlotDescriptor, kNumInvariants>& slot_table() {
  static const std::array<SlotDescriptor, kNumInvariants> table = [] {
    std::array<SlotDescriptor, kNumInvariants> t{};
    t[0] = {InvariantKind::I1, 0, 0};
    t[1] = {InvariantKind::I2, 0, 0};
    t[2] = {InvariantKind::I3, 0, 0};
    for (int beta = 1; beta <= 3; ++beta) {
      for (int alpha = 1; alpha <= beta; ++alpha) {
        t[invariant_index(InvariantKind::I4, alpha, beta) - 1] = {InvariantKind::I4, alpha, beta};
        t[invariant_index(InvariantKind::I5, alpha, beta) - 1] = {InvariantKind::I5, alpha, beta};
      }
    }
    return t;
  }();
  return table;
}

}  // namespace

DeformationState make_deformation_state(const Mat3& F) {
  if (!F.allFinite()) {
    throw Error(ErrorCode::InvalidArgument, "deformation gradient has non-finite entries");
  }
  DeformationState s;
  s.F = F;
  s.J = F.determinant();
  if (!(s.J > 0.0)) {
    throw Error(ErrorCode::NonPositiveJacobian,
                "det F = " + std::to_string(s.J) + " is not positive (inverted or degenerate deformation)");
  }
  s.Fbar = F / std::cbrt(s.J);
  s.b = symmetric_part(F * F.transpose());
  s.C = symmetric_part(F.transpose() * F);
  s.bbar = symmetric_part(s.Fbar * s.Fbar.transpose());
  s.Cbar = symmetric_part(s.Fbar.transpose() * s.Fbar);
  return s;
}

FiberSet::FiberSet(std::vector<Vec3> directions) : dirs_(std::move(directions)) {
  if (dirs_.size() > 3) {
    throw Error(ErrorCode::InvalidArgument, "at most three fiber directions are supported");
  }
  for (const auto& n : dirs_) {
    if (!n.allFinite() || std::abs(n.norm() - 1.0) > kUnitTolerance) {
      throw Error(ErrorCode::InvalidArgument, "fiber directions must be unit vectors");
    }
  }
}

FiberSet FiberSet::normalized(std::vector<Vec3> directions) {
  for (auto& n : directions) {
    const double len = n.norm();
    if (!(len > 0.0) || !std::isfinite(len)) {
      throw Error(ErrorCode::InvalidArgument, "fiber direction has zero or non-finite length");
    }
    if (std::abs(len - 1.0) > kUnitTolerance) n /= len;
  }
  return FiberSet(std::move(directions));
}

FiberSet FiberSet::symmetric_pair(double angle_rad) {
  const double c = std::cos(angle_rad);
  const double s = std::sin(angle_rad);
  return FiberSet({Vec3(c, s, 0.0), Vec3(c, -s, 0.0)});
}

FiberSet FiberSet::cartesian(int ndir) {
  if (ndir < 0 || ndir > 3) throw Error(ErrorCode::InvalidArgument, "ndir must be in 0..3");
  std::vector<Vec3> dirs;
  for (int a = 0; a < ndir; ++a) dirs.push_back(Vec3::Unit(a));
  return FiberSet(std::move(dirs));
}

double FiberSet::zeta(int alpha, int beta) const { return direction(alpha).dot(direction(beta)); }

FiberSet FiberSet::rotated(const Mat3& Q) const {
  std::vector<Vec3> dirs;
  for (const auto& n : dirs_) dirs.push_back(Q * n);
  return normalized(std::move(dirs));
}

FiberSet FiberSet::negated(int alpha) const {
  auto dirs = dirs_;
  dirs.at(static_cast<std::size_t>(alpha - 1)) *= -1.0;
  return FiberSet(std::move(dirs));
}

int invariant_index(InvariantKind kind, int alpha, int beta) {
  switch (kind) {
    case InvariantKind::I1: return 1;
    case InvariantKind::I2: return 2;
    case InvariantKind::I3: return 3;
    case InvariantKind::I4:
    case InvariantKind::I5: break;
  }
  if (alpha < 1 || alpha > 3 || beta < 1 || beta > 3 || beta < alpha) {
    throw Error(ErrorCode::InvalidPair, "invalid fiber pair (" + std::to_string(alpha) + "," +
                                            std::to_string(beta) + "); need 1 <= alpha <= beta <= 3");
  }
  const int base = kind == InvariantKind::I4 ? 4 : 5;
  return base + 2 * (alpha - 1) + beta * (beta - 1);
}

SlotDescriptor describe_slot(int slot) {
  if (slot < 1 || slot > kNumInvariants) {
    throw Error(ErrorCode::UnknownInvariantSlot, "no base invariant slot " + std::to_string(slot));
  }
  return slot_table()[static_cast<std::size_t>(slot - 1)];
}

double InvariantState::value(int slot) const {
  if (slot >= 1 && slot <= kNumInvariants) return values[static_cast<std::size_t>(slot - 1)];
  auto it = mixed_values.find(slot);
  if (it == mixed_values.end()) {
    throw Error(ErrorCode::UnknownInvariantSlot, "invariant slot " + std::to_string(slot) + " is not defined");
  }
  return it->second;
}

double InvariantState::offset(int slot) const {
  if (slot >= 1 && slot <= kNumInvariants) return offsets[static_cast<std::size_t>(slot - 1)];
  auto it = mixed_offsets.find(slot);
  if (it == mixed_offsets.end()) {
    throw Error(ErrorCode::UnknownInvariantSlot, "invariant slot " + std::to_string(slot) + " is not defined");
  }
  return it->second;
}

bool InvariantState::has(int slot) const {
  return (slot >= 1 && slot <= kNumInvariants) || mixed_values.count(slot) > 0;
}

InvariantState InvariantState::from_base(const std::array<double, kNumInvariants>& values,
                                         const std::array<double, kNumInvariants>& offsets,
                                         std::span<const MixedInvariantRow> mixed) {
  InvariantState inv;
  inv.values = values;
  inv.offsets = offsets;
  for (const auto& row : mixed) {
    double v = 0.0;
    double v0 = 0.0;
    for (std::size_t j = 0; j < kNumInvariants; ++j) {
      v += row.kappa[j] * values[j];
      v0 += row.kappa[j] * offsets[j];
    }
    inv.mixed_values[row.index] = v;
    inv.mixed_offsets[row.index] = v0;
    inv.mixed_kappa[row.index] = row.kappa;
  }
  return inv;
}

std::array<double, kNumInvariants> reference_offsets(const FiberSet& fibers) {
  std::array<double, kNumInvariants> offsets{};
  offsets[0] = 3.0;
  offsets[1] = 3.0;
  offsets[2] = 1.0;
  for (int beta = 1; beta <= 3; ++beta) {
    for (int alpha = 1; alpha <= beta; ++alpha) {
      const double z = beta <= fibers.ndir() ? fibers.zeta(alpha, beta) : (alpha == beta ? 1.0 : 0.0);
      offsets[static_cast<std::size_t>(invariant_index(InvariantKind::I4, alpha, beta) - 1)] = z;
      offsets[static_cast<std::size_t>(invariant_index(InvariantKind::I5, alpha, beta) - 1)] = z;
    }
  }
  return offsets;
}

InvariantState compute_invariants(const DeformationState& state, const FiberSet& fibers,
                                  std::span<const MixedInvariantRow> mixed) {
  const auto offsets = reference_offsets(fibers);
  std::array<double, kNumInvariants> values = offsets;

  const Mat3& Cb = state.Cbar;
  const double I1 = Cb.trace();
  values[0] = I1;
  values[1] = 0.5 * (I1 * I1 - Cb.squaredNorm());
  values[2] = state.J;

  const Mat3 Cb2 = Cb * Cb;
  for (int beta = 1; beta <= fibers.ndir(); ++beta) {
    for (int alpha = 1; alpha <= beta; ++alpha) {
      const Vec3& na = fibers.direction(alpha);
      const Vec3& nb = fibers.direction(beta);
      values[static_cast<std::size_t>(invariant_index(InvariantKind::I4, alpha, beta) - 1)] = na.dot(Cb * nb);
      values[static_cast<std::size_t>(invariant_index(InvariantKind::I5, alpha, beta) - 1)] = na.dot(Cb2 * nb);
    }
  }
  return InvariantState::from_base(values, offsets, mixed);
}

std::array<Mat3, kNumInvariants> invariant_gradients(const DeformationState& state, const FiberSet& fibers) {
  std::array<Mat3, kNumInvariants> grads;
  for (auto& g : grads) g.setZero();

  const Mat3 FinvT = state.F.inverse().transpose();
  const double Jm23 = std::pow(state.J, -2.0 / 3.0);
  const Mat3& Cb = state.Cbar;

  // dI/dF for an isochoric invariant with symmetric dI/dCbar = G:
  //   2 J^{-2/3} F G - (2/3) (G : Cbar) F^{-T}
  auto isochoric = [&](const Mat3& G) -> Mat3 {
    return 2.0 * Jm23 * state.F * G - (2.0 / 3.0) * (G.cwiseProduct(Cb).sum()) * FinvT;
  };

  const double I1 = Cb.trace();
  grads[0] = isochoric(Mat3::Identity());
  grads[1] = isochoric(I1 * Mat3::Identity() - Cb);
  grads[2] = state.J * FinvT;

  for (int beta = 1; beta <= fibers.ndir(); ++beta) {
    for (int alpha = 1; alpha <= beta; ++alpha) {
      const Vec3& na = fibers.direction(alpha);
      const Vec3& nb = fibers.direction(beta);
      const Mat3 G4 = 0.5 * (na * nb.transpose() + nb * na.transpose());
      const Mat3 A5 = na * (Cb * nb).transpose() + (Cb * na) * nb.transpose();
      const Mat3 G5 = 0.5 * (A5 + A5.transpose());
      grads[static_cast<std::size_t>(invariant_index(InvariantKind::I4, alpha, beta) - 1)] = isochoric(G4);
      grads[static_cast<std::size_t>(invariant_index(InvariantKind::I5, alpha, beta) - 1)] = isochoric(G5);
    }
  }
  return grads;
}

}  // namespace umat
