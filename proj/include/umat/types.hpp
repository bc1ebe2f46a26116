// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstddef>

namespace umat {

using Mat3 = Eigen::Matrix3d;
using Vec3 = Eigen::Vector3d;

/// Dense 3x3x3x3 array, row-major over (i, j, k, l).
class Tensor4 {
 public:
  double& operator()(int i, int j, int k, int l) { return data_[flat(i, j, k, l)]; }
  double operator()(int i, int j, int k, int l) const { return data_[flat(i, j, k, l)]; }
  const std::array<double, 81>& data() const { return data_; }
  std::array<double, 81>& data() { return data_; }

 private:
  static constexpr std::size_t flat(int i, int j, int k, int l) {
    return static_cast<std::size_t>(((i * 3 + j) * 3 + k) * 3 + l);
  }
  std::array<double, 81> data_{};
};

}  // namespace umat
