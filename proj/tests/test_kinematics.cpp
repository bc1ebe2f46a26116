// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "test_support.hpp"
#include "umat/errors.hpp"
#include "umat/kinematics.hpp"

namespace umat {
namespace {

Mat3 simple_shear(double g) {
  Mat3 F = Mat3::Identity();
  F(0, 1) = g;
  return F;
}

InvariantState invariants_at(const Mat3& F, const FiberSet& fibers) {
  return compute_invariants(make_deformation_state(F), fibers);
}

TEST(InvariantIndex, MatchesClosedFormNumbering) {
  EXPECT_EQ(invariant_index(InvariantKind::I1), 1);
  EXPECT_EQ(invariant_index(InvariantKind::I2), 2);
  EXPECT_EQ(invariant_index(InvariantKind::I3), 3);
  for (int a = 1; a <= 3; ++a) {
    for (int b = a; b <= 3; ++b) {
      EXPECT_EQ(invariant_index(InvariantKind::I4, a, b), 4 + 2 * (a - 1) + b * (b - 1));
      EXPECT_EQ(invariant_index(InvariantKind::I5, a, b), 5 + 2 * (a - 1) + b * (b - 1));
    }
  }
}

TEST(InvariantIndex, IsBijectionOntoFifteenSlots) {
  std::set<int> seen;
  seen.insert(invariant_index(InvariantKind::I1));
  seen.insert(invariant_index(InvariantKind::I2));
  seen.insert(invariant_index(InvariantKind::I3));
  for (int a = 1; a <= 3; ++a) {
    for (int b = a; b <= 3; ++b) {
      seen.insert(invariant_index(InvariantKind::I4, a, b));
      seen.insert(invariant_index(InvariantKind::I5, a, b));
    }
  }
  ASSERT_EQ(seen.size(), 15u);
  EXPECT_EQ(*seen.begin(), 1);
  EXPECT_EQ(*seen.rbegin(), 15);
  for (int slot = 1; slot <= 15; ++slot) {
    const SlotDescriptor d = describe_slot(slot);
    EXPECT_EQ(invariant_index(d.kind, d.alpha, d.beta), slot);
  }
}

TEST(InvariantIndex, CardiacFrameSlots) {
  EXPECT_EQ(invariant_index(InvariantKind::I4, 1, 1), 4);
  EXPECT_EQ(invariant_index(InvariantKind::I4, 2, 2), 8);
  EXPECT_EQ(invariant_index(InvariantKind::I4, 3, 3), 14);
  EXPECT_EQ(invariant_index(InvariantKind::I4, 1, 2), 6);
  EXPECT_EQ(invariant_index(InvariantKind::I4, 2, 3), 12);
}

TEST(InvariantIndex, RejectsInvalidPairs) {
  const auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Internal;
  };
  EXPECT_EQ(code_of([] { invariant_index(InvariantKind::I4, 2, 1); }), ErrorCode::InvalidPair);
  EXPECT_EQ(code_of([] { invariant_index(InvariantKind::I4, 0, 1); }), ErrorCode::InvalidPair);
  EXPECT_EQ(code_of([] { invariant_index(InvariantKind::I5, 1, 4); }), ErrorCode::InvalidPair);
  EXPECT_THROW(describe_slot(0), Error);
  EXPECT_THROW(describe_slot(16), Error);
}

TEST(DeformationState, RejectsNonPositiveJacobian) {
  Mat3 F = Mat3::Identity();
  F(2, 2) = -1.0;
  try {
    make_deformation_state(F);
    FAIL() << "expected NonPositiveJacobian";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonPositiveJacobian);
  }
  EXPECT_THROW(make_deformation_state(Mat3::Zero()), Error);
}

TEST(DeformationState, IsochoricSplit) {
  std::mt19937_64 rng(3);
  const Mat3 F = test::random_deformation(rng);
  const DeformationState s = make_deformation_state(F);
  EXPECT_NEAR(s.J, F.determinant(), 1e-14);
  EXPECT_NEAR(s.Fbar.determinant(), 1.0, 1e-14);
  EXPECT_LT(test::max_abs(s.Cbar - s.Fbar.transpose() * s.Fbar), 1e-14);
  EXPECT_LT(test::max_abs(s.b - F * F.transpose()), 1e-14);
}

TEST(FiberSet, ValidatesDirections) {
  EXPECT_THROW(FiberSet({Vec3(1.0, 1.0, 0.0)}), Error);
  EXPECT_THROW(FiberSet({Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ(), Vec3::UnitX()}), Error);
  const FiberSet f = FiberSet::normalized({Vec3(3.0, 4.0, 0.0)});
  EXPECT_NEAR(f.direction(1).norm(), 1.0, 1e-15);
  const FiberSet pair = FiberSet::symmetric_pair(M_PI / 6.0);
  EXPECT_NEAR(pair.zeta(1, 2), std::cos(M_PI / 3.0), 1e-15);
}

TEST(Invariants, SimpleShearOracle) {
  const auto inv = invariants_at(simple_shear(0.5), FiberSet::cartesian(3));
  EXPECT_NEAR(inv.values[0], 3.25, 1e-14);
  EXPECT_NEAR(inv.values[1], 3.25, 1e-14);
  EXPECT_NEAR(inv.values[2], 1.0, 1e-15);
  EXPECT_NEAR(inv.values[invariant_index(InvariantKind::I4, 2, 2) - 1], 1.25, 1e-14);
  EXPECT_NEAR(inv.values[invariant_index(InvariantKind::I4, 1, 2) - 1], 0.5, 1e-14);
  EXPECT_NEAR(inv.values[invariant_index(InvariantKind::I4, 1, 1) - 1], 1.0, 1e-14);
}

TEST(Invariants, ReferenceValuesEqualOffsets) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const FiberSet fibers({test::random_unit(rng), test::random_unit(rng), test::random_unit(rng)});
    const auto inv = invariants_at(Mat3::Identity(), fibers);
    for (int i = 0; i < kNumInvariants; ++i) EXPECT_NEAR(inv.values[i], inv.offsets[i], 1e-14) << "slot " << i + 1;
    EXPECT_NEAR(inv.offsets[invariant_index(InvariantKind::I4, 1, 2) - 1], fibers.zeta(1, 2), 1e-15);
    EXPECT_NEAR(inv.offsets[invariant_index(InvariantKind::I5, 2, 3) - 1], fibers.zeta(2, 3), 1e-15);
  }
  const auto offsets = reference_offsets(FiberSet::cartesian(0));
  EXPECT_EQ(offsets[0], 3.0);
  EXPECT_EQ(offsets[1], 3.0);
  EXPECT_EQ(offsets[2], 1.0);
}

TEST(Invariants, UnusedFiberSlotsStayAtOffsetWithZeroGradient) {
  std::mt19937_64 rng(5);
  const Mat3 F = test::random_deformation(rng);
  const FiberSet fibers = FiberSet::cartesian(1);
  const auto state = make_deformation_state(F);
  const auto inv = compute_invariants(state, fibers);
  const auto grads = invariant_gradients(state, fibers);
  for (int slot : {6, 7, 8, 9, 10, 11, 12, 13, 14, 15}) {
    EXPECT_EQ(inv.values[slot - 1], inv.offsets[slot - 1]) << "slot " << slot;
    EXPECT_EQ(test::max_abs(grads[slot - 1]), 0.0) << "slot " << slot;
  }
}

TEST(Invariants, ObjectiveUnderSpatialRotation) {
  std::mt19937_64 rng(8);
  const FiberSet fibers({test::random_unit(rng), test::random_unit(rng)});
  for (int trial = 0; trial < 50; ++trial) {
    const Mat3 F = test::random_deformation(rng);
    const Mat3 Q = test::random_rotation(rng);
    const auto a = invariants_at(F, fibers);
    const auto b = invariants_at(Q * F, fibers);
    for (int i = 0; i < kNumInvariants; ++i) EXPECT_NEAR(a.values[i], b.values[i], 1e-12);
  }
}

TEST(Invariants, MixedRowsAreWeightedSums) {
  std::mt19937_64 rng(2);
  const FiberSet fibers = FiberSet::symmetric_pair(0.4);
  MixedInvariantRow row;
  row.index = 101;
  row.kappa[0] = 0.2;
  row.kappa[3] = 0.4;
  row.kappa[7] = 0.1;
  const std::vector<MixedInvariantRow> mixed{row};
  const Mat3 F = test::random_deformation(rng);
  const auto inv = compute_invariants(make_deformation_state(F), fibers, mixed);
  ASSERT_TRUE(inv.has(101));
  EXPECT_NEAR(inv.value(101), 0.2 * inv.value(1) + 0.4 * inv.value(4) + 0.1 * inv.value(8), 1e-14);
  EXPECT_NEAR(inv.offset(101), 0.2 * 3.0 + 0.4 + 0.1, 1e-14);
  EXPECT_FALSE(inv.has(102));
}

TEST(Gradients, FiberInvariantAtIdentity) {
  const auto state = make_deformation_state(Mat3::Identity());
  const auto grads = invariant_gradients(state, FiberSet::cartesian(1));
  Mat3 expected = Mat3::Zero();
  expected.diagonal() << 4.0 / 3.0, -2.0 / 3.0, -2.0 / 3.0;
  EXPECT_LT(test::max_abs(grads[3] - expected), 1e-14);
  EXPECT_LT(test::max_abs(grads[0]), 1e-14);
  EXPECT_LT(test::max_abs(grads[2] - Mat3::Identity()), 1e-14);
}

TEST(Gradients, MatchCentralDifferences) {
  std::mt19937_64 rng(21);
  const double h = 1e-6;
  for (int trial = 0; trial < 25; ++trial) {
    const FiberSet fibers({test::random_unit(rng), test::random_unit(rng), test::random_unit(rng)});
    const Mat3 F = test::random_deformation(rng);
    const auto grads = invariant_gradients(make_deformation_state(F), fibers);
    for (int k = 0; k < 3; ++k) {
      for (int l = 0; l < 3; ++l) {
        Mat3 Fp = F;
        Mat3 Fm = F;
        Fp(k, l) += h;
        Fm(k, l) -= h;
        const auto ip = invariants_at(Fp, fibers);
        const auto im = invariants_at(Fm, fibers);
        for (int i = 0; i < kNumInvariants; ++i) {
          const double fd = (ip.values[i] - im.values[i]) / (2.0 * h);
          EXPECT_NEAR(grads[i](k, l), fd, 1e-7) << "slot " << i + 1 << " entry " << k << l;
        }
      }
    }
  }
}

}  // namespace
}  // namespace umat
