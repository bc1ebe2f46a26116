// SPDX-License-Identifier: Apache-2.0
#include "umat/point_driver.hpp"

#include <cmath>
#include <cstdio>

#include "umat/errors.hpp"
#include "umat/kinematics.hpp"
#include "umat/stress_tangent.hpp"

namespace umat {

namespace {

constexpr double kFdStep = 1e-6;
constexpr int kMaxBacktracks = 40;

bool is_log_domain(const Error& e) { return e.code() == ErrorCode::LogDomain; }

double inf_norm(const Mat3& m) { return m.cwiseAbs().maxCoeff(); }

class PointSolver {
 public:
  PointSolver(const MaterialSpec& spec, const LoadPath& path, const DriverOptions& options)
      : table_(spec.table), fibers_(spec.fiber_set()), path_(path), options_(options) {}

  bool incompressible() const { return table_.material_type == MaterialType::Incompressible; }

  // Stress without the pressure term, in the load frame. Empty on a log-domain failure.
  std::optional<Mat3> try_stress(const Mat3& F_load) const {
    try {
      return stress(F_load);
    } catch (const Error& e) {
      if (is_log_domain(e)) return std::nullopt;
      throw;
    }
  }

  Mat3 stress(const Mat3& F_load) const {
    const Mat3& R = path_.frame;
    const DeformationState state = make_deformation_state(R * F_load * R.transpose());
    return R.transpose() * constitutive_stress(table_, state, fibers_) * R;
  }

  Mat3 stress_or_fail(const Mat3& F_load, double control) const {
    try {
      return stress(F_load);
    } catch (const Error& e) {
      if (is_log_domain(e)) throw StepFailure(control, e.what());
      throw;
    }
  }

  // d sigma_load / d F_load along dF_load, from the central-difference tangent.
  Mat3 stress_derivative(const Tensor4& T, const Mat3& dF_load) const {
    const Mat3& R = path_.frame;
    const Mat3 dFg = R * dF_load * R.transpose();
    Mat3 ds = Mat3::Zero();
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        double acc = 0.0;
        for (int k = 0; k < 3; ++k) {
          for (int l = 0; l < 3; ++l) acc += T(i, j, k, l) * dFg(k, l);
        }
        ds(i, j) = acc;
      }
    }
    return R.transpose() * ds * R;
  }

  Tensor4 tangent(const Mat3& F_load, double control) const {
    const Mat3& R = path_.frame;
    try {
      return tangent_fd(table_, R * F_load * R.transpose(), fibers_, std::nullopt, kFdStep).dsigma_dF;
    } catch (const Error& e) {
      if (is_log_domain(e)) throw StepFailure(control, e.what());
      throw;
    }
  }

  bool converged(double residual, const Mat3& sigma) const {
    return std::abs(residual) < options_.tol * (1.0 + inf_norm(sigma));
  }

  // Scalar Newton with central-difference slope and backtracking. `eval`
  // returns (residual, full stress) or nothing on a log-domain failure.
  template <class Eval>
  double solve_scalar(Eval eval, double x, double control, int& iterations) const {
    auto current = eval(x);
    if (!current) throw StepFailure(control, "logarithmic term outside its domain at the initial guess");
    for (iterations = 0; iterations <= options_.max_iter; ++iterations) {
      const auto& [r, sigma] = *current;
      if (converged(r, sigma)) return x;
      if (iterations == options_.max_iter) break;
      const double h = kFdStep * std::max(1.0, std::abs(x));
      const auto plus = eval(x + h);
      const auto minus = eval(x - h);
      if (!plus || !minus) throw StepFailure(control, "logarithmic term outside its domain near the solution");
      const double slope = (plus->first - minus->first) / (2.0 * h);
      if (slope == 0.0 || !std::isfinite(slope)) throw NoConvergence(control, std::abs(r));
      const double dx = -r / slope;
      bool accepted = false;
      double t = 1.0;
      for (int k = 0; k < kMaxBacktracks && !accepted; ++k, t *= 0.5) {
        const double xn = x + t * dx;
        if (!(xn > 0.0)) continue;
        auto trial = eval(xn);
        if (trial && std::abs(trial->first) < std::abs(r)) {
          x = xn;
          current = std::move(trial);
          accepted = true;
        }
      }
      if (!accepted) throw NoConvergence(control, std::abs(r));
    }
    throw NoConvergence(control, std::abs(current->first));
  }

  std::vector<CurvePoint> run() {
    validate();
    std::vector<CurvePoint> curve;
    curve.reserve(path_.control.size());
    for (double c : path_.control) {
      CurvePoint pt = solve_point(c);
      pt.control = c;
      const Mat3& R = path_.frame;
      const auto inv = compute_invariants(make_deformation_state(R * pt.F * R.transpose()), fibers_, table_.mixed);
      pt.invariants = inv.values;
      prev_ = pt;
      curve.push_back(pt);
    }
    return curve;
  }

 private:
  void validate() const {
    const auto& c = path_.control;
    if (c.empty()) throw Error(ErrorCode::InvalidArgument, "load path has no control values");
    for (double v : c) {
      if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "load path control is not finite");
      if (path_.mode != LoadMode::SimpleShear && !(v > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "stretch and volume-ratio controls must be positive");
      }
    }
    const double reference = path_.mode == LoadMode::SimpleShear ? 0.0 : 1.0;
    if (std::abs(c.front() - reference) > 1e-12) {
      throw Error(ErrorCode::InvalidArgument, "load path must start at the reference state (" +
                                                  std::string(reference == 0.0 ? "0" : "1") + ")");
    }
    if (c.size() > 1) {
      const bool increasing = c[1] > c[0];
      for (std::size_t i = 1; i < c.size(); ++i) {
        if (increasing ? !(c[i] > c[i - 1]) : !(c[i] < c[i - 1])) {
          throw Error(ErrorCode::InvalidArgument, "load path controls must be strictly monotone");
        }
      }
    }
    if (path_.mode == LoadMode::SimpleShear) {
      const int a = path_.shear_a;
      const int b = path_.shear_b;
      if (a < 1 || a > 3 || b < 1 || b > 3 || a == b) {
        throw Error(ErrorCode::InvalidArgument, "shear plane needs two distinct axes in 1..3");
      }
    }
    if (path_.mode == LoadMode::Volumetric && incompressible()) {
      throw Error(ErrorCode::InvalidArgument, "volumetric paths need a compressible table");
    }
    const Mat3& R = path_.frame;
    if (!R.allFinite() || (R.transpose() * R - Mat3::Identity()).cwiseAbs().maxCoeff() > 1e-10 ||
        std::abs(R.determinant() - 1.0) > 1e-10) {
      throw Error(ErrorCode::InvalidArgument, "load frame must be a proper rotation");
    }
  }

  CurvePoint solve_point(double c) {
    switch (path_.mode) {
      case LoadMode::Uniaxial: return incompressible() ? uniaxial_incompressible(c) : uniaxial_compressible(c);
      case LoadMode::Equibiaxial: return equibiaxial(c);
      case LoadMode::SimpleShear: return simple_shear(c);
      case LoadMode::Volumetric: return volumetric(c);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown load mode");
  }

  static Mat3 diag(double a, double b, double c) { return Vec3(a, b, c).asDiagonal(); }

  CurvePoint uniaxial_incompressible(double l) {
    // Lateral anisotropy ratio l2 / l^(-1/2) carried over from the previous point.
    const double ratio = prev_ ? prev_->lambda2 * std::sqrt(prev_->control) : 1.0;
    auto eval = [&](double l2) -> std::optional<std::pair<double, Mat3>> {
      const auto s = try_stress(diag(l, l2, 1.0 / (l * l2)));
      if (!s) return std::nullopt;
      const Mat3 full = *s - (*s)(2, 2) * Mat3::Identity();
      return std::make_pair(full(1, 1), full);
    };
    CurvePoint pt;
    const double l2 = solve_scalar(eval, ratio / std::sqrt(l), l, pt.iterations);
    pt.lambda2 = l2;
    pt.lambda3 = 1.0 / (l * l2);
    pt.F = diag(l, pt.lambda2, pt.lambda3);
    const Mat3 s = stress_or_fail(pt.F, l);
    pt.pressure = s(2, 2);
    pt.sigma = s - *pt.pressure * Mat3::Identity();
    return pt;
  }

  CurvePoint uniaxial_compressible(double l) {
    Eigen::Vector2d x(1.0, 1.0);
    if (prev_) {
      const double scale = std::sqrt(prev_->control / l);
      x = Eigen::Vector2d(prev_->lambda2 * scale, prev_->lambda3 * scale);
    }
    auto F_of = [&](const Eigen::Vector2d& v) { return diag(l, v(0), v(1)); };
    auto residual = [](const Mat3& s) { return Eigen::Vector2d(s(1, 1), s(2, 2)); };

    CurvePoint pt;
    Mat3 sigma = stress_or_fail(F_of(x), l);
    Eigen::Vector2d r = residual(sigma);
    for (pt.iterations = 0;; ++pt.iterations) {
      if (r.cwiseAbs().maxCoeff() < options_.tol * (1.0 + inf_norm(sigma))) break;
      if (pt.iterations == options_.max_iter) throw NoConvergence(l, r.cwiseAbs().maxCoeff());
      const Tensor4 T = tangent(F_of(x), l);
      Eigen::Matrix2d jac;
      for (int b = 0; b < 2; ++b) {
        Mat3 dF = Mat3::Zero();
        dF(b + 1, b + 1) = 1.0;
        const Mat3 ds = stress_derivative(T, dF);
        jac(0, b) = ds(1, 1);
        jac(1, b) = ds(2, 2);
      }
      const Eigen::Vector2d dx = jac.fullPivLu().solve(-r);
      if (!dx.allFinite()) throw NoConvergence(l, r.cwiseAbs().maxCoeff());
      bool accepted = false;
      double t = 1.0;
      for (int k = 0; k < kMaxBacktracks && !accepted; ++k, t *= 0.5) {
        const Eigen::Vector2d xn = x + t * dx;
        if (!(xn.minCoeff() > 0.0)) continue;
        const auto s = try_stress(F_of(xn));
        if (!s) continue;
        const Eigen::Vector2d rn = residual(*s);
        if (rn.norm() < r.norm()) {
          x = xn;
          sigma = *s;
          r = rn;
          accepted = true;
        }
      }
      if (!accepted) throw NoConvergence(l, r.cwiseAbs().maxCoeff());
    }
    pt.lambda2 = x(0);
    pt.lambda3 = x(1);
    pt.F = F_of(x);
    pt.sigma = sigma;
    return pt;
  }

  CurvePoint equibiaxial(double l) {
    CurvePoint pt;
    pt.lambda2 = l;
    if (incompressible()) {
      pt.lambda3 = 1.0 / (l * l);
      pt.F = diag(l, l, pt.lambda3);
      const Mat3 s = stress_or_fail(pt.F, l);
      pt.pressure = s(2, 2);
      pt.sigma = s - *pt.pressure * Mat3::Identity();
      return pt;
    }
    auto eval = [&](double l3) -> std::optional<std::pair<double, Mat3>> {
      const auto s = try_stress(diag(l, l, l3));
      if (!s) return std::nullopt;
      return std::make_pair((*s)(2, 2), *s);
    };
    const double guess = prev_ ? prev_->lambda3 * std::pow(prev_->control / l, 2.0) : 1.0;
    pt.lambda3 = solve_scalar(eval, guess, l, pt.iterations);
    pt.F = diag(l, l, pt.lambda3);
    pt.sigma = stress_or_fail(pt.F, l);
    return pt;
  }

  CurvePoint simple_shear(double g) {
    const int a = path_.shear_a - 1;
    const int b = path_.shear_b - 1;
    const int c = 3 - a - b;
    CurvePoint pt;
    pt.F = Mat3::Identity();
    pt.F(a, b) = g;
    const Mat3 s = stress_or_fail(pt.F, g);
    if (incompressible()) {
      pt.pressure = s(c, c);
      pt.sigma = s - *pt.pressure * Mat3::Identity();
    } else {
      pt.sigma = s;
    }
    return pt;
  }

  CurvePoint volumetric(double J) {
    CurvePoint pt;
    const double s = std::cbrt(J);
    pt.lambda2 = pt.lambda3 = s;
    pt.F = s * Mat3::Identity();
    pt.sigma = stress_or_fail(pt.F, J);
    return pt;
  }

  const ParameterTable& table_;
  FiberSet fibers_;
  const LoadPath& path_;
  DriverOptions options_;
  std::optional<CurvePoint> prev_;
};

void append_number(std::string& out, double v) {
  if (v == 0.0) v = 0.0;  // drops the sign of -0
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  out += buf;
}

}  // namespace

std::vector<CurvePoint> run_path(const MaterialSpec& spec, const LoadPath& path, const DriverOptions& options) {
  if (!(options.tol > 0.0) || options.max_iter < 1) {
    throw Error(ErrorCode::InvalidArgument, "driver tolerance and iteration limit must be positive");
  }
  return PointSolver(spec, path, options).run();
}

std::vector<double> linear_range(double a, double b, int n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "a range needs at least two points");
  if (!std::isfinite(a) || !std::isfinite(b)) throw Error(ErrorCode::InvalidArgument, "range bounds must be finite");
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
  v.back() = b;
  return v;
}

std::string emit_csv(std::span<const CurvePoint> curve, std::string_view units) {
  const std::string unit = units.empty() ? "" : "[" + std::string(units) + "]";
  std::string out = "control";
  for (const char* comp : {"11", "22", "33", "23", "13", "12"}) out += ",sigma_" + std::string(comp) + unit;
  for (int i = 1; i <= kNumInvariants; ++i) out += ",I" + std::to_string(i);
  out += ",lambda_2,lambda_3,pressure" + unit + "\n";

  constexpr int voigt[6][2] = {{0, 0}, {1, 1}, {2, 2}, {1, 2}, {0, 2}, {0, 1}};
  for (const auto& pt : curve) {
    append_number(out, pt.control);
    for (const auto& [i, j] : voigt) {
      out += ',';
      append_number(out, pt.sigma(i, j));
    }
    for (double v : pt.invariants) {
      out += ',';
      append_number(out, v);
    }
    out += ',';
    append_number(out, pt.lambda2);
    out += ',';
    append_number(out, pt.lambda3);
    out += ',';
    if (pt.pressure) append_number(out, *pt.pressure);
    out += '\n';
  }
  return out;
}

}  // namespace umat
