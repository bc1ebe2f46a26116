// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <map>
#include <span>
#include <vector>

#include "umat/types.hpp"

namespace umat {

/// Number of base invariant slots (three fiber families).
inline constexpr int kNumInvariants = 15;
/// Slots at or above this index address mixed invariants.
inline constexpr int kFirstMixedIndex = 101;

/// Deformation gradient with its volumetric/isochoric split and Cauchy-Green tensors.
struct DeformationState {
  Mat3 F;
  double J = 1.0;
  Mat3 Fbar;
  Mat3 b;     // F F^T
  Mat3 C;     // F^T F
  Mat3 bbar;  // Fbar Fbar^T
  Mat3 Cbar;  // Fbar^T Fbar
};

/// Throws ErrorCode::NonPositiveJacobian when det F <= 0 and InvalidArgument on
/// non-finite entries.
DeformationState make_deformation_state(const Mat3& F);

/// Up to three unit reference directions and their pairwise dot products.
class FiberSet {
 public:
  FiberSet() = default;
  /// Directions must be unit length within 1e-12; at most three.
  explicit FiberSet(std::vector<Vec3> directions);

  /// Normalizes each direction before construction.
  static FiberSet normalized(std::vector<Vec3> directions);
  /// Two directions at +/-angle from e1 in the e1-e2 plane.
  static FiberSet symmetric_pair(double angle_rad);
  /// The first `ndir` Cartesian basis vectors.
  static FiberSet cartesian(int ndir);

  int ndir() const { return static_cast<int>(dirs_.size()); }
  bool empty() const { return dirs_.empty(); }
  /// 1-based direction access.
  const Vec3& direction(int alpha) const { return dirs_.at(static_cast<std::size_t>(alpha - 1)); }
  std::span<const Vec3> directions() const { return dirs_; }
  /// Reference dot product n_a . n_b (1-based).
  double zeta(int alpha, int beta) const;

  FiberSet rotated(const Mat3& Q) const;
  FiberSet negated(int alpha) const;

  bool operator==(const FiberSet&) const = default;

 private:
  std::vector<Vec3> dirs_;
};

enum class InvariantKind { I1, I2, I3, I4, I5 };

/// Slot numbering for the 15 base invariants: I1, I2 and I3 map to 1, 2, 3;
/// I4(ab) to 4 + 2(a-1) + b(b-1) and I5(ab) to 5 + 2(a-1) + b(b-1).
/// Throws InvalidPair for b < a or fiber indices outside 1..3.
int invariant_index(InvariantKind kind, int alpha = 0, int beta = 0);

/// Inverse of invariant_index for slots 1..15.
struct SlotDescriptor {
  InvariantKind kind;
  int alpha = 0;
  int beta = 0;
};
SlotDescriptor describe_slot(int slot);

/// A mixed invariant: value = sum_j kappa_j * I_j over the base slots.
struct MixedInvariantRow {
  int index = kFirstMixedIndex;
  std::array<double, kNumInvariants> kappa{};

  bool operator==(const MixedInvariantRow&) const = default;
};

/// The 15 base invariants (1-based accessors), their reference values, and mixed
/// extensions. Slot 3 stores J.
struct InvariantState {
  std::array<double, kNumInvariants> values{};
  std::array<double, kNumInvariants> offsets{};
  std::map<int, double> mixed_values;
  std::map<int, double> mixed_offsets;
  std::map<int, std::array<double, kNumInvariants>> mixed_kappa;

  double value(int slot) const;
  double offset(int slot) const;
  bool has(int slot) const;

  /// Builds a state from base values/offsets, deriving the mixed entries.
  static InvariantState from_base(const std::array<double, kNumInvariants>& values,
                                  const std::array<double, kNumInvariants>& offsets,
                                  std::span<const MixedInvariantRow> mixed = {});
};

/// Reference offsets: 3, 3, 1 and the zeta pattern. Slots of unused fiber pairs
/// take 1 on the diagonal and 0 off it.
std::array<double, kNumInvariants> reference_offsets(const FiberSet& fibers);

InvariantState compute_invariants(const DeformationState& state, const FiberSet& fibers,
                                  std::span<const MixedInvariantRow> mixed = {});

/// Analytic dI_i/dF for every base slot (index 0 holds slot 1). Unused fiber
/// slots have zero gradient.
std::array<Mat3, kNumInvariants> invariant_gradients(const DeformationState& state,
                                                     const FiberSet& fibers);

}  // namespace umat
