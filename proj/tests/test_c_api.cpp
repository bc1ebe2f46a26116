// SPDX-License-Identifier: Apache-2.0
// Exercises the shared library strictly through its C header.
#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "test_support.hpp"
#include "umat/umat.h"

namespace {

struct Handle {
  umat_material* m = nullptr;
  ~Handle() { umat_material_free(m); }
};

std::string take(char* text) {
  std::string out = text ? text : "";
  umat_string_free(text);
  return out;
}

TEST(CApi, StatusNames) {
  EXPECT_STREQ(umat_status_name(UMAT_OK), "Ok");
  EXPECT_STREQ(umat_status_name(UMAT_ERR_PARSE), "ParseError");
  EXPECT_STREQ(umat_status_name(UMAT_ERR_NO_CONVERGENCE), "NoConvergence");
  EXPECT_STREQ(umat_status_name(UMAT_ERR_INTERNAL), "Internal");
  EXPECT_STREQ(umat_status_name(UMAT_ERR_NULL_ARGUMENT), "NullArgument");
  EXPECT_STREQ(umat_status_name(static_cast<umat_status>(99)), "Unknown");
}

TEST(CApi, ParseErrorReportsLineAndLeavesOutputUntouched) {
  umat_material* m = nullptr;
  const char* deck =
      "*ANISOTROPIC HYPERELASTIC, USER, FORMULATION=INVARIANT, TYPE=INCOMPRESSIBLE, LOCAL DIRECTIONS=0\n"
      "*PARAMETER TABLE, TYPE=\"UNIVERSAL_TAB\"\n"
      "1,1,1,1,1.0,1.0\n";
  EXPECT_EQ(umat_material_from_deck(deck, &m), UMAT_ERR_PARSE);
  EXPECT_EQ(m, nullptr);
  EXPECT_EQ(std::string(umat_last_error()).rfind("3:", 0), 0u) << umat_last_error();
}

TEST(CApi, NullArguments) {
  umat_material* m = nullptr;
  EXPECT_EQ(umat_material_from_deck(nullptr, &m), UMAT_ERR_NULL_ARGUMENT);
  EXPECT_EQ(umat_material_from_preset("neo_hooke", nullptr, nullptr), UMAT_ERR_NULL_ARGUMENT);
  double psi = 0.0;
  const double F[9] = {1, 0, 0, 0, 1, 0, 0, 0, 1};
  EXPECT_EQ(umat_strain_energy(nullptr, F, &psi), UMAT_ERR_NULL_ARGUMENT);
  umat_material_free(nullptr);
}

TEST(CApi, PresetWithParametersAndProperties) {
  Handle h;
  ASSERT_EQ(umat_material_from_preset("neo_hooke", "C10=2, D1=0", &h.m), UMAT_OK);
  int inc = -1;
  int ndir = -1;
  int rows = -1;
  int mixed = -1;
  ASSERT_EQ(umat_material_properties(h.m, &inc, &ndir, &rows, &mixed), UMAT_OK);
  EXPECT_EQ(inc, 1);
  EXPECT_EQ(ndir, 0);
  EXPECT_EQ(rows, 1);
  EXPECT_EQ(mixed, 0);
  EXPECT_STREQ(umat_material_name(h.m), "neo_hooke");
  EXPECT_STREQ(umat_material_units(h.m), "MPa");
  EXPECT_STREQ(umat_last_error(), "");

  umat_material* bad = nullptr;
  EXPECT_EQ(umat_material_from_preset("neo_hooke", "C10", &bad), UMAT_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(umat_material_from_preset("neo_hooke", "X=1", &bad), UMAT_ERR_UNKNOWN_PARAMETER);
  EXPECT_EQ(umat_material_from_preset("no_such_model", "", &bad), UMAT_ERR_UNKNOWN_PRESET);
  EXPECT_EQ(umat_material_from_preset("polynomial", "", &bad), UMAT_ERR_MISSING_PARAMETER);
  EXPECT_EQ(bad, nullptr);
}

TEST(CApi, StressEnergyAndTangent) {
  Handle h;
  ASSERT_EQ(umat_material_from_preset("neo_hooke", "C10=0.5,D1=0", &h.m), UMAT_OK);
  const double g = 0.3;
  const double F[9] = {1, g, 0, 0, 1, 0, 0, 0, 1};
  double sigma[9];
  EXPECT_EQ(umat_cauchy_stress(h.m, F, nullptr, sigma), UMAT_ERR_MISSING_PRESSURE);
  const double p = 0.0;
  ASSERT_EQ(umat_cauchy_stress(h.m, F, &p, sigma), UMAT_OK);
  EXPECT_NEAR(sigma[1], 0.3, 1e-14);
  EXPECT_NEAR(sigma[3], 0.3, 1e-14);
  double psi = 0.0;
  ASSERT_EQ(umat_strain_energy(h.m, F, &psi), UMAT_OK);
  EXPECT_NEAR(psi, 0.5 * g * g, 1e-14);
  double tangent[81];
  ASSERT_EQ(umat_tangent(h.m, F, &p, 0.0, tangent), UMAT_OK);
  EXPECT_TRUE(std::isfinite(tangent[0]));

  const double inverted[9] = {-1, 0, 0, 0, 1, 0, 0, 0, 1};
  EXPECT_EQ(umat_strain_energy(h.m, inverted, &psi), UMAT_ERR_NON_POSITIVE_JACOBIAN);
  const double swollen[9] = {1.1, 0, 0, 0, 1, 0, 0, 0, 1};
  EXPECT_EQ(umat_cauchy_stress(h.m, swollen, &p, sigma), UMAT_ERR_INCOMPRESSIBILITY_VIOLATED);
}

TEST(CApi, UanisohyperInvYeoh) {
  const char* deck =
      "*ANISOTROPIC HYPERELASTIC, USER, FORMULATION=INVARIANT, TYPE=INCOMPRESSIBLE, LOCAL DIRECTIONS=0\n"
      "*PARAMETER TABLE, TYPE=\"UNIVERSAL_TAB\"\n"
      "1,1,1,1,1.0,1.0,1.0\n1,1,2,1,1.0,1.0,1.0\n1,1,3,1,1.0,1.0,1.0\n";
  Handle h;
  ASSERT_EQ(umat_material_from_deck(deck, &h.m), UMAT_OK);
  double inv[15] = {3.2, 3, 1, 1, 1, 0, 0, 1, 1, 0, 0, 0, 0, 1, 1};
  double ua = 0.0;
  double ui1[15];
  double ui2[120];
  ASSERT_EQ(umat_uanisohyper_inv(h.m, inv, &ua, ui1, ui2), UMAT_OK);
  EXPECT_NEAR(ua, 0.248, 1e-14);
  EXPECT_NEAR(ui1[0], 1.52, 1e-14);
  EXPECT_NEAR(ui2[0], 3.2, 1e-14);
  EXPECT_EQ(umat_uanisohyper_inv(h.m, inv, nullptr, nullptr, nullptr), UMAT_OK);
}

TEST(CApi, InvariantsWithCustomFibers) {
  Handle h;
  ASSERT_EQ(umat_material_from_preset("holzapfel_two_fiber", "", &h.m), UMAT_OK);
  const double dirs[6] = {2, 0, 0, 0, 3, 0};
  ASSERT_EQ(umat_material_set_fibers(h.m, dirs, 2), UMAT_OK);
  EXPECT_EQ(umat_material_set_fibers(h.m, dirs, 1), UMAT_ERR_INVALID_ARGUMENT);
  const double zero[6] = {0, 0, 0, 1, 0, 0};
  EXPECT_EQ(umat_material_set_fibers(h.m, zero, 2), UMAT_ERR_INVALID_ARGUMENT);
  const double F[9] = {1.2, 0, 0, 0, 1, 0, 0, 0, 1};
  double values[15];
  double offsets[15];
  ASSERT_EQ(umat_invariants(h.m, F, values, offsets), UMAT_OK);
  const double cbrt = std::cbrt(1.2);
  EXPECT_NEAR(values[3], 1.44 / (cbrt * cbrt), 1e-14);
  EXPECT_NEAR(values[7], 1.0 / (cbrt * cbrt), 1e-14);
  EXPECT_EQ(offsets[5], 0.0);
  const std::string deck = [&] {
    char* text = nullptr;
    EXPECT_EQ(umat_material_serialize(h.m, &text), UMAT_OK);
    return take(text);
  }();
  EXPECT_NE(deck.find("*FIBER DIRECTIONS\n1.0,0.0,0.0\n0.0,1.0,0.0\n"), std::string::npos) << deck;
}

TEST(CApi, CurveCsvAndFailures) {
  Handle h;
  ASSERT_EQ(umat_material_from_preset("neo_hooke", "D1=0", &h.m), UMAT_OK);
  const double controls[3] = {1.0, 1.25, 1.5};
  char* csv = nullptr;
  ASSERT_EQ(umat_run_curve(h.m, UMAT_LOAD_UNIAXIAL, controls, 3, 1, 2, 0.0, 0, &csv), UMAT_OK);
  const std::string text = take(csv);
  EXPECT_NE(text.find("\n1.5,1.583333333,"), std::string::npos) << text;

  const double bad[2] = {1.1, 1.2};
  EXPECT_EQ(umat_run_curve(h.m, UMAT_LOAD_UNIAXIAL, bad, 2, 1, 2, 0.0, 0, &csv), UMAT_ERR_INVALID_ARGUMENT);

  Handle log_model;
  ASSERT_EQ(umat_material_from_preset("brain_discovered_six_term_gray", nullptr, &log_model.m), UMAT_OK);
  const double far[4] = {1.0, 1.5, 2.0, 2.5};
  EXPECT_EQ(umat_run_curve(log_model.m, UMAT_LOAD_UNIAXIAL, far, 4, 1, 2, 0.0, 0, &csv), UMAT_ERR_STEP_FAILURE);
}

TEST(CApi, CheckReports) {
  int passed = 0;
  char* report = nullptr;
  ASSERT_EQ(umat_check(nullptr, 7, UMAT_REPORT_TSV, &passed, &report), UMAT_OK);
  const std::string tsv = take(report);
  EXPECT_EQ(passed, 1);
  EXPECT_NE(tsv.find("closed_form_neo_hooke\t50\t0\t"), std::string::npos) << tsv;

  Handle h;
  ASSERT_EQ(umat_material_from_preset("valve_fung_septal", "", &h.m), UMAT_OK);
  ASSERT_EQ(umat_check(h.m, 42, UMAT_REPORT_TEXT, &passed, &report), UMAT_OK);
  EXPECT_EQ(passed, 1);
  EXPECT_NE(take(report).find("stress_fd"), std::string::npos);
}

TEST(CApi, PresetListAndDescribe) {
  char* text = nullptr;
  ASSERT_EQ(umat_preset_list(&text), UMAT_OK);
  const std::string list = take(text);
  EXPECT_EQ(list.rfind("neo_hooke\n", 0), 0u);
  EXPECT_NE(list.find("heart_discovered\n"), std::string::npos);
  ASSERT_EQ(umat_preset_describe("valve_fung_anterior", &text), UMAT_OK);
  const std::string desc = take(text);
  EXPECT_NE(desc.find("c2 = 4.57"), std::string::npos) << desc;
  EXPECT_NE(desc.find("1,1,2,2,1.0,4.57,0.062"), std::string::npos) << desc;
  EXPECT_EQ(umat_preset_describe("nope", &text), UMAT_ERR_UNKNOWN_PRESET);
}

TEST(CApi, DeckWarningsAreExposed) {
  Handle h;
  ASSERT_EQ(umat_material_from_deck("*ANISOTROPIC HYPERELASTIC, USER, FORMULATION=INVARIANT, TYPE=INCOMPRESSIBLE, "
                                    "LOCAL DIRECTIONS=0\n*PARAMETER TABLE, TYPE=\"UNIVERSAL_TAB\"\n"
                                    "4,1,2,1,1.0,1.0,1.0\n",
                                    &h.m),
            UMAT_OK);
  EXPECT_EQ(std::string(umat_material_warnings(h.m)).rfind("3: ", 0), 0u) << umat_material_warnings(h.m);
}

}  // namespace
