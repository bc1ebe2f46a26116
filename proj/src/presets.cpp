// SPDX-License-Identifier: Apache-2.0
#include "umat/presets.hpp"

#include <cmath>
#include <numbers>

#include "umat/errors.hpp"

namespace umat {

namespace {

constexpr double kDegree = std::numbers::pi / 180.0;

class TableBuilder {
 public:
  TableBuilder(MaterialType type, int ndir) {
    table_.material_type = type;
    table_.ndir = ndir;
  }

  void add(int kfinv, int kf0, int kf1, int kf2, double w1, double w2) {
    if (w2 == 0.0) return;
    table_.rows.push_back({kfinv, static_cast<ZerothActivation>(kf0), kf1, static_cast<SecondActivation>(kf2), 1.0,
                           w1, w2});
  }

  // w2 * (x)^m
  void power(int slot, int m, double w2) { add(slot, 1, m, 1, 1.0, w2); }

  // a/2b (exp(b x^m) - 1), optionally Macauley-gated.
  void exponential(int slot, int m, double a, double b, const char* rate_name, bool macauley = false) {
    if (a == 0.0) return;
    if (!(b > 0.0)) {
      throw Error(ErrorCode::NonPositiveModulus, std::string(rate_name) + " must be positive");
    }
    add(slot, macauley ? 2 : 1, m, 2, b, a / (2.0 * b));
  }

  // -alpha/2beta ln(1 - beta x^m)
  void logarithmic(int slot, int m, double alpha, double beta, const char* rate_name) {
    if (alpha == 0.0) return;
    if (!(beta > 0.0)) {
      throw Error(ErrorCode::NonPositiveModulus, std::string(rate_name) + " must be positive");
    }
    add(slot, 1, m, 3, beta, alpha / (2.0 * beta));
  }

  // w ((J^2-1)/2 - ln J) as the three-row reformulation in J - 1.
  void ogden_volumetric(double w) {
    add(3, 1, 1, 1, 1.0, w);
    add(3, 1, 2, 1, 0.5, w);
    add(3, 1, 1, 3, -1.0, w);
  }

  void mixed(int index, std::array<double, kNumInvariants> kappa) { table_.mixed.push_back({index, kappa}); }

  // Compressible textbook tables without any volumetric row fall back to incompressible.
  ParameterTable finish() {
    if (table_.material_type == MaterialType::Compressible) {
      bool has_volumetric = false;
      for (const auto& r : table_.rows) has_volumetric = has_volumetric || r.kfinv == 3;
      if (!has_volumetric) table_.material_type = MaterialType::Incompressible;
    }
    return std::move(table_);
  }

 private:
  ParameterTable table_;
};

double inverse_modulus(const PresetParams& p, std::string_view key) {
  const double d = p.find(key)->second;
  if (d < 0.0) throw Error(ErrorCode::NonPositiveModulus, std::string(key) + " must not be negative");
  return d == 0.0 ? 0.0 : 1.0 / d;
}

double get(const PresetParams& p, std::string_view key) { return p.find(key)->second; }

MaterialSpec make_spec(const PresetInfo& info, ParameterTable table, std::optional<FiberSet> fibers = std::nullopt) {
  MaterialSpec spec;
  spec.name = info.name;
  spec.units = info.units;
  spec.table = std::move(table);
  spec.fibers = std::move(fibers);
  return spec;
}

FiberSet heart_frame() { return FiberSet::cartesian(3); }

using Builder = MaterialSpec (*)(const PresetInfo&, const PresetParams&);

struct Entry {
  PresetInfo info;
  Builder build;
};

MaterialSpec build_neo_hooke(const PresetInfo& info, const PresetParams& p) {
  TableBuilder t(MaterialType::Compressible, 0);
  t.power(1, 1, get(p, "C10"));
  t.add(3, 1, 2, 1, 1.0, inverse_modulus(p, "D1"));
  return make_spec(info, t.finish());
}

MaterialSpec build_mooney_rivlin(const PresetInfo& info, const PresetParams& p) {
  TableBuilder t(MaterialType::Compressible, 0);
  t.power(1, 1, get(p, "C10"));
  t.power(2, 1, get(p, "C01"));
  t.add(3, 1, 2, 1, 1.0, inverse_modulus(p, "D1"));
  return make_spec(info, t.finish());
}

MaterialSpec build_yeoh(const PresetInfo& info, const PresetParams& p) {
  TableBuilder t(MaterialType::Compressible, 0);
  t.power(1, 1, get(p, "C10"));
  t.power(1, 2, get(p, "C20"));
  t.power(1, 3, get(p, "C30"));
  t.power(3, 2, inverse_modulus(p, "D1"));
  t.power(3, 4, inverse_modulus(p, "D2"));
  t.power(3, 6, inverse_modulus(p, "D3"));
  return make_spec(info, t.finish());
}

constexpr int kMaxPolynomialOrder = 6;

MaterialSpec build_polynomial(const PresetInfo& info, const PresetParams& p) {
  const double n_value = get(p, "N");
  const int n = static_cast<int>(n_value);
  if (n_value != n || n < 1 || n > kMaxPolynomialOrder) {
    throw Error(ErrorCode::InvalidArgument, "polynomial order N must be an integer in 1..6");
  }
  TableBuilder t(MaterialType::Compressible, 0);
  for (int i = 1; i <= kMaxPolynomialOrder; ++i) {
    const std::string c = "C" + std::to_string(i) + "0";
    const std::string d = "D" + std::to_string(i);
    if (i > n) {
      if (get(p, c) != 0.0 || get(p, d) != 0.0) {
        throw Error(ErrorCode::InvalidArgument, c + "/" + d + " set beyond polynomial order N = " + std::to_string(n));
      }
      continue;
    }
    t.power(1, i, get(p, c));
  }
  for (int i = 1; i <= n; ++i) t.power(3, 2 * i, inverse_modulus(p, "D" + std::to_string(i)));
  return make_spec(info, t.finish());
}

MaterialSpec build_holzapfel(const PresetInfo& info, const PresetParams& p) {
  TableBuilder t(MaterialType::Compressible, 2);
  t.power(1, 1, get(p, "C10"));
  t.exponential(4, 2, get(p, "k1"), get(p, "k2"), "k2", true);
  t.exponential(8, 2, get(p, "k1"), get(p, "k2"), "k2", true);
  t.ogden_volumetric(inverse_modulus(p, "D"));
  return make_spec(info, t.finish(), FiberSet::symmetric_pair(get(p, "angle") * kDegree));
}

MaterialSpec build_kaliske(const PresetInfo& info, const PresetParams& p) {
  TableBuilder t(MaterialType::Compressible, 2);
  for (int i = 1; i <= 3; ++i) t.power(1, i, get(p, "a" + std::to_string(i)));
  for (int j = 1; j <= 3; ++j) t.power(2, j, get(p, "b" + std::to_string(j)));
  const std::pair<char, int> anisotropic[] = {{'c', 4}, {'d', 5}, {'e', 8}, {'f', 9}};
  for (const auto& [prefix, slot] : anisotropic) {
    for (int k = 2; k <= 6; ++k) t.power(slot, k, get(p, std::string(1, prefix) + std::to_string(k)));
  }
  t.ogden_volumetric(inverse_modulus(p, "D"));
  return make_spec(info, t.finish(), FiberSet::symmetric_pair(get(p, "angle") * kDegree));
}

void add_dispersion_rows(TableBuilder& t, double kappa) {
  if (kappa < 0.0 || kappa > 1.0 / 3.0) {
    throw Error(ErrorCode::InvalidArgument, "dispersion kappa must lie in [0, 1/3]");
  }
  std::array<double, kNumInvariants> k1{};
  std::array<double, kNumInvariants> k2{};
  k1[0] = k2[0] = kappa;
  k1[3] = 1.0 - 3.0 * kappa;
  k2[7] = 1.0 - 3.0 * kappa;
  t.mixed(kFirstMixedIndex, k1);
  t.mixed(kFirstMixedIndex + 1, k2);
}

MaterialSpec build_goh(const PresetInfo& info, const PresetParams& p) {
  TableBuilder t(MaterialType::Compressible, 2);
  add_dispersion_rows(t, get(p, "kappa"));
  t.power(1, 1, get(p, "C10"));
  t.exponential(kFirstMixedIndex, 2, get(p, "k1"), get(p, "k2"), "k2", true);
  t.exponential(kFirstMixedIndex + 1, 2, get(p, "k1"), get(p, "k2"), "k2", true);
  t.ogden_volumetric(inverse_modulus(p, "D"));
  return make_spec(info, t.finish(), FiberSet::symmetric_pair(get(p, "angle") * kDegree));
}

MaterialSpec build_vol_simo(const PresetInfo& info, const PresetParams& p) {
  TableBuilder t(MaterialType::Compressible, 0);
  t.power(3, 2, get(p, "K") / 2.0);
  return make_spec(info, t.finish());
}

MaterialSpec build_vol_ogden(const PresetInfo& info, const PresetParams& p) {
  TableBuilder t(MaterialType::Compressible, 0);
  t.ogden_volumetric(get(p, "K") / 2.0);
  return make_spec(info, t.finish());
}

MaterialSpec build_brain_mooney_rivlin(const PresetInfo& info, const PresetParams& p) {
  TableBuilder t(MaterialType::Incompressible, 0);
  t.power(1, 1, get(p, "mu1") / 2.0);
  t.power(2, 1, get(p, "mu2") / 2.0);
  return make_spec(info, t.finish());
}

MaterialSpec build_brain_blatz_ko(const PresetInfo& info, const PresetParams& p) {
  TableBuilder t(MaterialType::Incompressible, 0);
  t.power(2, 1, get(p, "mu") / 2.0);
  return make_spec(info, t.finish());
}

MaterialSpec build_brain_six_term(const PresetInfo& info, const PresetParams& p) {
  TableBuilder t(MaterialType::Incompressible, 0);
  t.power(2, 1, get(p, "mu1"));
  t.exponential(2, 1, get(p, "a1"), get(p, "b1"), "b1");
  t.logarithmic(2, 1, get(p, "alpha1"), get(p, "beta1"), "beta1");
  t.power(2, 2, get(p, "mu2"));
  t.exponential(2, 2, get(p, "a2"), get(p, "b2"), "b2");
  t.logarithmic(2, 2, get(p, "alpha2"), get(p, "beta2"), "beta2");
  return make_spec(info, t.finish());
}

MaterialSpec build_skin_neohooke_holzapfel(const PresetInfo& info, const PresetParams& p) {
  TableBuilder t(MaterialType::Incompressible, 1);
  t.power(1, 1, get(p, "mu"));
  t.exponential(4, 2, get(p, "a4"), get(p, "b4"), "b4", true);
  return make_spec(info, t.finish(), FiberSet::cartesian(1));
}

MaterialSpec build_skin_discovered(const PresetInfo& info, const PresetParams& p) {
  TableBuilder t(MaterialType::Incompressible, 1);
  t.exponential(1, 2, get(p, "a1"), get(p, "b1"), "b1");
  t.exponential(4, 2, get(p, "a4"), get(p, "b4"), "b4", true);
  return make_spec(info, t.finish(), FiberSet::cartesian(1));
}

MaterialSpec build_artery_discovered(const PresetInfo& info, const PresetParams& p) {
  TableBuilder t(MaterialType::Incompressible, 2);
  t.power(1, 1, get(p, "mu1") / 2.0);
  t.exponential(1, 1, get(p, "a"), get(p, "b"), "b");
  t.add(5, 2, 2, 1, 1.0, get(p, "mu5") / 2.0);
  t.add(9, 2, 2, 1, 1.0, get(p, "mu5") / 2.0);
  return make_spec(info, t.finish(), FiberSet::symmetric_pair(get(p, "angle") * kDegree));
}

MaterialSpec build_artery_goh(const PresetInfo& info, const PresetParams& p) {
  TableBuilder t(MaterialType::Incompressible, 2);
  add_dispersion_rows(t, get(p, "kappa"));
  t.power(1, 1, get(p, "mu") / 2.0);
  t.exponential(kFirstMixedIndex, 2, get(p, "a"), get(p, "b"), "b", true);
  t.exponential(kFirstMixedIndex + 1, 2, get(p, "a"), get(p, "b"), "b", true);
  return make_spec(info, t.finish(), FiberSet::symmetric_pair(get(p, "angle") * kDegree));
}

MaterialSpec build_valve_fung(const PresetInfo& info, const PresetParams& p) {
  TableBuilder t(MaterialType::Incompressible, 0);
  t.power(1, 1, get(p, "c0") / 2.0);
  const double c2 = get(p, "c2");
  if (get(p, "c1") != 0.0 && !(c2 > 0.0)) throw Error(ErrorCode::NonPositiveModulus, "c2 must be positive");
  t.add(1, 1, 2, 2, c2, get(p, "c1") / 2.0);
  return make_spec(info, t.finish());
}

MaterialSpec build_heart_guan(const PresetInfo& info, const PresetParams& p) {
  TableBuilder t(MaterialType::Incompressible, 3);
  t.exponential(1, 1, get(p, "a"), get(p, "b"), "b");
  t.exponential(4, 2, get(p, "af"), get(p, "bf"), "bf", true);
  t.exponential(14, 2, get(p, "an"), get(p, "bn"), "bn", true);
  t.exponential(6, 2, get(p, "afs"), get(p, "bfs"), "bfs");
  return make_spec(info, t.finish(), heart_frame());
}

MaterialSpec build_heart_generalized_holzapfel(const PresetInfo& info, const PresetParams& p) {
  TableBuilder t(MaterialType::Incompressible, 3);
  t.exponential(1, 1, get(p, "a"), get(p, "b"), "b");
  t.exponential(4, 2, get(p, "af"), get(p, "bf"), "bf", true);
  t.exponential(8, 2, get(p, "as"), get(p, "bs"), "bs", true);
  t.exponential(14, 2, get(p, "an"), get(p, "bn"), "bn", true);
  t.exponential(6, 2, get(p, "afs"), get(p, "bfs"), "bfs");
  t.exponential(12, 2, get(p, "asn"), get(p, "bsn"), "bsn");
  return make_spec(info, t.finish(), heart_frame());
}

MaterialSpec build_heart_discovered(const PresetInfo& info, const PresetParams& p) {
  TableBuilder t(MaterialType::Incompressible, 3);
  t.add(2, 1, 1, 2, 1.0, get(p, "mu") / 2.0);
  t.exponential(4, 2, get(p, "af"), get(p, "bf"), "bf", true);
  t.exponential(14, 2, get(p, "an"), get(p, "bn"), "bn", true);
  t.exponential(6, 2, get(p, "afs"), get(p, "bfs"), "bfs");
  return make_spec(info, t.finish(), heart_frame());
}

std::vector<PresetParameter> params(std::initializer_list<PresetParameter> list) { return list; }

// Illustrative defaults: a weakly anisotropic rubber-like set with every term family present.
std::vector<PresetParameter> kaliske_params() {
  const double a[] = {0.5, 0.05, 0.0};
  const double b[] = {0.1, 0.0, 0.0};
  const double aniso[][5] = {{1.0, 0.2, 0.0, 0.0, 0.0}, {0.1, 0.0, 0.0, 0.0, 0.0}, {1.0, 0.2, 0.0, 0.0, 0.0},
                             {0.1, 0.0, 0.0, 0.0, 0.0}};
  std::vector<PresetParameter> out;
  for (int i = 1; i <= 3; ++i) out.push_back({"a" + std::to_string(i), a[i - 1], "coefficient of (I1-3)^" + std::to_string(i)});
  for (int j = 1; j <= 3; ++j) out.push_back({"b" + std::to_string(j), b[j - 1], "coefficient of (I2-3)^" + std::to_string(j)});
  const std::pair<char, const char*> anisotropic[] = {{'c', "I4(11)"}, {'d', "I5(11)"}, {'e', "I4(22)"}, {'f', "I5(22)"}};
  int family = 0;
  for (const auto& [prefix, inv] : anisotropic) {
    for (int k = 2; k <= 6; ++k) {
      out.push_back({std::string(1, prefix) + std::to_string(k), aniso[family][k - 2],
                     std::string("coefficient of (") + inv + "-1)^" + std::to_string(k)});
    }
    ++family;
  }
  out.push_back({"D", 0.01, "volumetric compliance; 0 means incompressible"});
  out.push_back({"angle", 30.0, "fiber angle from e1 in degrees (pair at +/- angle)"});
  return out;
}

std::vector<PresetParameter> polynomial_params() {
  std::vector<PresetParameter> out{{"N", 0.0, "polynomial order, 1..6 (required)"}};
  for (int i = 1; i <= kMaxPolynomialOrder; ++i) {
    out.push_back({"C" + std::to_string(i) + "0", i == 1 ? 0.5 : 0.0, "coefficient of (I1-3)^" + std::to_string(i)});
  }
  for (int i = 1; i <= kMaxPolynomialOrder; ++i) {
    out.push_back({"D" + std::to_string(i), i == 1 ? 0.01 : 0.0,
                   "compliance of (J-1)^" + std::to_string(2 * i) + "; 0 omits the term"});
  }
  return out;
}

std::vector<PresetParameter> six_term_params(const double (&v)[10]) {
  return {{"mu1", v[0], "linear I2 term"},          {"a1", v[1], "exponential I2 stiffness"},
          {"b1", v[2], "exponential I2 rate"},      {"alpha1", v[3], "logarithmic I2 stiffness"},
          {"beta1", v[4], "logarithmic I2 rate"},   {"mu2", v[5], "quadratic I2 term"},
          {"a2", v[6], "exponential (I2-3)^2 stiffness"}, {"b2", v[7], "exponential (I2-3)^2 rate"},
          {"alpha2", v[8], "logarithmic (I2-3)^2 stiffness"}, {"beta2", v[9], "logarithmic (I2-3)^2 rate"}};
}

std::vector<PresetParameter> artery_discovered_params(double mu1, double a, double b, double mu5, double angle) {
  return {{"mu1", mu1, "linear I1 modulus"},
          {"a", a, "exponential I1 stiffness"},
          {"b", b, "exponential I1 rate"},
          {"mu5", mu5, "Macauley-gated quadratic I5 modulus"},
          {"angle", angle, "fiber angle from the circumferential axis e1, degrees"}};
}

std::vector<PresetParameter> artery_goh_params(double mu, double a, double b, double kappa, double angle) {
  return {{"mu", mu, "linear I1 modulus"},
          {"a", a, "fiber stiffness"},
          {"b", b, "fiber rate"},
          {"kappa", kappa, "fiber dispersion in [0, 1/3]"},
          {"angle", angle, "fiber angle from the circumferential axis e1, degrees"}};
}

std::vector<PresetParameter> valve_params(double c0, double c1, double c2) {
  return {{"c0", c0, "linear I1 modulus"}, {"c1", c1, "exponential stiffness"}, {"c2", c2, "exponential rate"}};
}

const std::vector<Entry>& catalog() {
  static const std::vector<Entry> entries = [] {
    const double six_gray[10] = {0.0, 0.0, 0.0, 1.2520, 0.9875, 3.8007, 6.2285, 1.6495, 4.6743, 1.6663};
    const double six_white[10] = {0.2215, 0.2350, 0.2398, 0.0, 0.0, 0.0, 6.3703, 1.8893, 4.5065, 1.1789};
    const auto holzapfel_params = params({{"C10", 3.0, "ground matrix modulus"},
                                          {"k1", 2.3632, "fiber stiffness"},
                                          {"k2", 0.8393, "fiber rate (positive)"},
                                          {"D", 0.002, "volumetric compliance; 0 means incompressible"},
                                          {"angle", 29.0, "fiber angle from e1 in degrees (pair at +/- angle)"}});
    auto goh_params = holzapfel_params;
    goh_params.insert(goh_params.end() - 1, {"kappa", 0.226, "fiber dispersion in [0, 1/3]"});

    std::vector<Entry> e;
    e.push_back({{"neo_hooke", "compressible neo-Hooke: C10 (I1-3) + (J-1)^2 / D1", "MPa",
                  params({{"C10", 0.5, "shear-like modulus (mu = 2 C10)"},
                          {"D1", 0.01, "volumetric compliance; 0 means incompressible"}}),
                  {}},
                 build_neo_hooke});
    e.push_back({{"mooney_rivlin", "compressible Mooney-Rivlin: C10 (I1-3) + C01 (I2-3) + (J-1)^2 / D1", "MPa",
                  params({{"C10", 0.3, "first invariant modulus"},
                          {"C01", 0.2, "second invariant modulus"},
                          {"D1", 0.01, "volumetric compliance; 0 means incompressible"}}),
                  {}},
                 build_mooney_rivlin});
    e.push_back({{"yeoh", "compressible Yeoh: sum Ci0 (I1-3)^i + sum (J-1)^2i / Di", "MPa",
                  params({{"C10", 0.5, "coefficient of (I1-3)"},
                          {"C20", 0.05, "coefficient of (I1-3)^2"},
                          {"C30", 0.01, "coefficient of (I1-3)^3"},
                          {"D1", 0.01, "compliance of (J-1)^2; 0 omits the term"},
                          {"D2", 0.0, "compliance of (J-1)^4; 0 omits the term"},
                          {"D3", 0.0, "compliance of (J-1)^6; 0 omits the term"}}),
                  {}},
                 build_yeoh});
    e.push_back({{"polynomial", "compressible first-invariant polynomial of order N", "MPa", polynomial_params(),
                  {"N"}},
                 build_polynomial});
    e.push_back({{"holzapfel_two_fiber",
                  "two-fiber Holzapfel: C10 (I1-3) + k1/2k2 (exp(k2 <I4-1>^2) - 1) per fiber + Ogden-type volumetric",
                  "kPa", holzapfel_params, {}},
                 build_holzapfel});
    e.push_back({{"kaliske", "two-fiber Kaliske polynomial in I1, I2, I4, I5 + Ogden-type volumetric", "MPa",
                  kaliske_params(), {}},
                 build_kaliske});
    e.push_back({{"goh_dispersion",
                  "Holzapfel dispersion model on mixed invariants kappa (I1-3) + (1-3 kappa)(I4-1)", "kPa",
                  goh_params, {}},
                 build_goh});
    e.push_back({{"vol_simo", "volumetric K/2 (J-1)^2", "MPa", params({{"K", 1.0, "bulk modulus"}}), {}},
                 build_vol_simo});
    e.push_back({{"vol_ogden_modified", "volumetric K/2 ((J^2-1)/2 - ln J) as three rows", "MPa",
                  params({{"K", 1.0, "bulk modulus"}}), {}},
                 build_vol_ogden});

    const auto brain_mr = [](double mu1, double mu2) {
      return params({{"mu1", mu1, "first invariant modulus"}, {"mu2", mu2, "second invariant modulus"}});
    };
    e.push_back({{"brain_mooney_rivlin_gray", "brain gray matter, Mooney-Rivlin", "kPa", brain_mr(0.0021, 1.8817), {}},
                 build_brain_mooney_rivlin});
    e.push_back({{"brain_mooney_rivlin_white", "brain white matter, Mooney-Rivlin", "kPa", brain_mr(0.0168, 0.9697),
                  {}},
                 build_brain_mooney_rivlin});
    e.push_back({{"brain_blatz_ko_gray", "brain gray matter, reduced Blatz-Ko mu/2 (I2-3)", "kPa",
                  params({{"mu", 1.9043, "shear modulus"}}), {}},
                 build_brain_blatz_ko});
    e.push_back({{"brain_blatz_ko_white", "brain white matter, reduced Blatz-Ko mu/2 (I2-3)", "kPa",
                  params({{"mu", 0.9556, "shear modulus"}}), {}},
                 build_brain_blatz_ko});
    e.push_back({{"brain_discovered_six_term_gray", "brain gray matter, discovered six-term I2 model", "kPa",
                  six_term_params(six_gray), {}},
                 build_brain_six_term});
    e.push_back({{"brain_discovered_six_term_white", "brain white matter, discovered six-term I2 model", "kPa",
                  six_term_params(six_white), {}},
                 build_brain_six_term});
    e.push_back({{"skin_neohooke_holzapfel", "skin, neo-Hooke + exponential fiber term (fiber e1)", "MPa",
                  params({{"mu", 0.2492, "weight of (I1-3)"},
                          {"a4", 0.1054, "fiber stiffness"},
                          {"b4", 10.7914, "fiber rate"}}),
                  {}},
                 build_skin_neohooke_holzapfel});
    e.push_back({{"skin_discovered", "skin, discovered two-term exponential model (fiber e1)", "MPa",
                  params({{"a1", 1.3291, "isotropic stiffness"},
                          {"b1", 0.8207, "isotropic rate"},
                          {"a4", 0.2656, "fiber stiffness"},
                          {"b4", 0.3921, "fiber rate"}}),
                  {}},
                 build_skin_discovered});
    e.push_back({{"artery_discovered_media", "aortic media, discovered I1 + I5 model", "kPa",
                  artery_discovered_params(33.45, 3.74, 6.66, 2.17, 7.00), {}},
                 build_artery_discovered});
    e.push_back({{"artery_discovered_adventitia", "aortic adventitia, discovered I1 + I5 model", "kPa",
                  artery_discovered_params(8.30, 1.42, 6.34, 0.49, 66.78), {}},
                 build_artery_discovered});
    e.push_back({{"artery_goh_media", "aortic media, dispersion-type Holzapfel", "kPa",
                  artery_goh_params(48.68, 6.67, 23.17, 0.074, 7.00), {}},
                 build_artery_goh});
    e.push_back({{"artery_goh_adventitia", "aortic adventitia, dispersion-type Holzapfel", "kPa",
                  artery_goh_params(13.22, 0.93, 12.06, 0.091, 66.78), {}},
                 build_artery_goh});
    e.push_back({{"valve_fung_anterior", "tricuspid anterior leaflet, isotropic Fung-type", "kPa",
                  valve_params(1.0, 0.124, 4.57), {}},
                 build_valve_fung});
    e.push_back({{"valve_fung_posterior", "tricuspid posterior leaflet, isotropic Fung-type", "kPa",
                  valve_params(1.0, 0.188, 14.86), {}},
                 build_valve_fung});
    e.push_back({{"valve_fung_septal", "tricuspid septal leaflet, isotropic Fung-type", "kPa",
                  valve_params(1.0, 0.191, 17.75), {}},
                 build_valve_fung});
    e.push_back({{"heart_guan", "myocardium, four-term Guan model (f, s, n = e1, e2, e3)", "kPa",
                  params({{"a", 0.782, "isotropic stiffness"},
                          {"b", 7.248, "isotropic rate"},
                          {"af", 4.488, "fiber stiffness"},
                          {"bf", 14.571, "fiber rate"},
                          {"an", 2.513, "normal stiffness"},
                          {"bn", 10.929, "normal rate"},
                          {"afs", 0.436, "fiber-sheet stiffness"},
                          {"bfs", 4.959, "fiber-sheet rate"}}),
                  {}},
                 build_heart_guan});
    e.push_back({{"heart_generalized_holzapfel", "myocardium, generalized Holzapfel model (f, s, n = e1, e2, e3)",
                  "kPa",
                  params({{"a", 0.950, "isotropic stiffness"},
                          {"b", 5.457, "isotropic rate"},
                          {"af", 3.318, "fiber stiffness"},
                          {"bf", 23.701, "fiber rate"},
                          {"as", 1.405, "sheet stiffness"},
                          {"bs", 20.067, "sheet rate"},
                          {"an", 2.037, "normal stiffness"},
                          {"bn", 16.976, "normal rate"},
                          {"afs", 0.586, "fiber-sheet stiffness"},
                          {"bfs", 1.081, "fiber-sheet rate"},
                          {"asn", 0.047, "sheet-normal stiffness"},
                          {"bsn", 11.842, "sheet-normal rate"}}),
                  {}},
                 build_heart_generalized_holzapfel});
    e.push_back({{"heart_discovered", "myocardium, discovered four-term model (f, s, n = e1, e2, e3)", "kPa",
                  params({{"mu", 5.162, "second invariant stiffness"},
                          {"af", 3.426, "fiber stiffness"},
                          {"bf", 21.151, "fiber rate"},
                          {"an", 2.754, "normal stiffness"},
                          {"bn", 4.371, "normal rate"},
                          {"afs", 0.494, "fiber-sheet stiffness"},
                          {"bfs", 0.508, "fiber-sheet rate"}}),
                  {}},
                 build_heart_discovered});
    return e;
  }();
  return entries;
}

const Entry& find_entry(std::string_view name) {
  for (const auto& e : catalog()) {
    if (e.info.name == name) return e;
  }
  throw Error(ErrorCode::UnknownPreset, "unknown preset '" + std::string(name) + "'");
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& e : catalog()) names.push_back(e.info.name);
  return names;
}

const PresetInfo& preset_info(std::string_view name) { return find_entry(name).info; }

MaterialSpec build_preset(std::string_view name, const PresetParams& params) {
  const Entry& entry = find_entry(name);
  PresetParams merged;
  for (const auto& p : entry.info.parameters) merged[p.name] = p.default_value;
  for (const auto& [key, value] : params) {
    if (merged.find(key) == merged.end()) {
      throw Error(ErrorCode::UnknownParameter, "preset '" + entry.info.name + "' has no parameter '" + key + "'");
    }
    if (!std::isfinite(value)) throw Error(ErrorCode::InvalidArgument, "parameter '" + key + "' is not finite");
    merged[key] = value;
  }
  for (const auto& key : entry.info.required) {
    if (params.find(key) == params.end()) {
      throw Error(ErrorCode::MissingParameter, "preset '" + entry.info.name + "' requires parameter '" + key + "'");
    }
  }
  return entry.build(entry.info, merged);
}

}  // namespace umat
