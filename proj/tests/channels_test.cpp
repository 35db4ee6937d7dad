// Copyright 2026 The esd-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <limits>
#include <numbers>

#include <gtest/gtest.h>

#include "esdlab/channels.hpp"
#include "support/random_states.hpp"

namespace esdlab {
namespace {

using testing::Rng;

const double kLn2 = std::numbers::ln2;
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

double max_abs_diff(const Mat4& a, const Mat4& b) { return (a - b).cwiseAbs().maxCoeff(); }

XState case_one() { return XState(1.0 / 3, 1.0 / 6, 1.0 / 6, 1.0 / 3, 1.0 / 3, 0.0); }

Mat4 diag(double a, double b, double c, double d) {
  Mat4 m = Mat4::Zero();
  m.diagonal() << a, b, c, d;
  return m;
}

std::vector<double> log_spaced(double lo, double hi, int n) {
  std::vector<double> out;
  for (int k = 0; k < n; ++k) {
    out.push_back(lo * std::pow(hi / lo, static_cast<double>(k) / (n - 1)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// rates

TEST(DephasingRates, T2IsInverseRateAndInfiniteAtZero) {
  const auto g = DephasingRates::global(4.0);
  EXPECT_EQ(g.model(), NoiseModel::Global);
  EXPECT_DOUBLE_EQ(g.t2(), 0.25);
  const auto l = DephasingRates::local(2.0, 0.0);
  EXPECT_DOUBLE_EQ(l.t2_a(), 0.5);
  EXPECT_TRUE(std::isinf(l.t2_b()));
  EXPECT_THROW(DephasingRates::global(-1.0), std::domain_error);
  EXPECT_THROW(DephasingRates::local(1.0, std::numeric_limits<double>::infinity()),
               std::domain_error);
}

// ---------------------------------------------------------------------------
// global_kraus

TEST(GlobalKraus, IdentityAtTimeZero) {
  const KrausSet k = global_kraus(0.0, 3.0);
  ASSERT_EQ(k.ops.size(), 3u);
  EXPECT_EQ(k.ops[0], Mat4(Mat4::Identity()));
  EXPECT_EQ(k.ops[1], Mat4(Mat4::Zero()));
  EXPECT_EQ(k.ops[2], Mat4(Mat4::Zero()));
}

TEST(GlobalKraus, ParametersAtGammaTLn2) {
  // e^{-Gamma t} = 1/2: gamma = omega1 = 1/sqrt2, omega2 = -1/(2 sqrt2),
  // omega3 = (1/2) sqrt(3/2).
  const GlobalKrausParameters p = global_kraus_parameters(kLn2, 1.0);
  EXPECT_NEAR(p.gamma, kInvSqrt2, 1e-15);
  EXPECT_NEAR(p.omega1, kInvSqrt2, 1e-15);
  EXPECT_NEAR(p.omega2, -0.5 * kInvSqrt2, 1e-15);
  EXPECT_NEAR(p.omega3, 0.5 * std::sqrt(1.5), 1e-15);

  const KrausSet k = global_kraus(kLn2 / 2.0, 2.0);
  EXPECT_LE(max_abs_diff(k.ops[0], diag(kInvSqrt2, 1, 1, kInvSqrt2)), 1e-15);
  EXPECT_LE(max_abs_diff(k.ops[1], diag(kInvSqrt2, 0, 0, -0.5 * kInvSqrt2)), 1e-15);
  EXPECT_LE(max_abs_diff(k.ops[2], diag(0, 0, 0, 0.5 * std::sqrt(1.5))), 1e-15);
}

TEST(GlobalKraus, LongTimeLimit) {
  const GlobalKrausParameters p = global_kraus_parameters(1e3, 1.0);
  EXPECT_LT(p.gamma, 1e-200);
  EXPECT_DOUBLE_EQ(p.omega1, 1.0);
  EXPECT_LT(std::abs(p.omega2), 1e-200);
  EXPECT_DOUBLE_EQ(p.omega3, 1.0);
  EXPECT_LE(global_kraus(1e3, 1.0).completeness_defect(), 1e-15);
}

TEST(GlobalKraus, RejectsNegativeArguments) {
  EXPECT_THROW(global_kraus(-1.0, 1.0), std::domain_error);
  EXPECT_THROW(global_kraus(1.0, -1.0), std::domain_error);
  EXPECT_THROW(global_kraus(std::numeric_limits<double>::infinity(), 1.0), std::domain_error);
}

TEST(GlobalKraus, ZeroRateIsIdentityChannelForAllTimes) {
  for (double t : {0.0, 1.0, 1e6}) {
    const KrausSet k = global_kraus(t, 0.0);
    EXPECT_EQ(k.ops[0], Mat4(Mat4::Identity()));
    EXPECT_EQ(k.ops[1], Mat4(Mat4::Zero()));
    EXPECT_EQ(k.ops[2], Mat4(Mat4::Zero()));
  }
}

// ---------------------------------------------------------------------------
// local_kraus

TEST(LocalKraus, IdentityAtTimeZero) {
  const KrausSet k = local_kraus(0.0, 1.0, 2.0);
  ASSERT_EQ(k.ops.size(), 4u);
  EXPECT_EQ(k.ops[0], Mat4(Mat4::Identity()));
  for (int i = 1; i < 4; ++i) EXPECT_EQ(k.ops[i], Mat4(Mat4::Zero()));
}

TEST(LocalKraus, EqualRatesAtGammaTLn2) {
  const LocalKrausParameters p = local_kraus_parameters(kLn2, 1.0, 1.0);
  EXPECT_NEAR(p.gamma_a, kInvSqrt2, 1e-15);
  EXPECT_NEAR(p.gamma_b, kInvSqrt2, 1e-15);
  EXPECT_NEAR(p.omega_a, kInvSqrt2, 1e-15);
  EXPECT_NEAR(p.omega_b, kInvSqrt2, 1e-15);
}

TEST(LocalKraus, CompositeProductsMatchFactorMatrices) {
  const double t = 0.7, ga = 1.3, gb = 0.4;
  const KrausSet k = local_kraus(t, ga, gb);
  const auto e = qubit_a_factors(t, ga);
  const auto f = qubit_b_factors(t, gb);
  EXPECT_LE(max_abs_diff(k.ops[0], e[0] * f[0]), 1e-15);
  EXPECT_LE(max_abs_diff(k.ops[1], e[0] * f[1]), 1e-15);
  EXPECT_LE(max_abs_diff(k.ops[2], e[1] * f[0]), 1e-15);
  EXPECT_LE(max_abs_diff(k.ops[3], e[1] * f[1]), 1e-15);
}

TEST(LocalKraus, OneSidedNoiseReducesToQubitADephasing) {
  const double t = 0.9, ga = 1.7;
  const LocalKrausParameters p = local_kraus_parameters(t, ga, 0.0);
  EXPECT_EQ(p.gamma_b, 1.0);
  EXPECT_EQ(p.omega_b, 0.0);
  const KrausSet k = local_kraus(t, ga, 0.0);
  const auto e = qubit_a_factors(t, ga);
  EXPECT_LE(max_abs_diff(k.ops[0], e[0]), 0.0);
  EXPECT_LE(max_abs_diff(k.ops[2], e[1]), 0.0);
  EXPECT_EQ(k.ops[1], Mat4(Mat4::Zero()));
  EXPECT_EQ(k.ops[3], Mat4(Mat4::Zero()));
}

TEST(LocalKraus, RejectsNegativeArguments) {
  EXPECT_THROW(local_kraus(-0.1, 1.0, 1.0), std::domain_error);
  EXPECT_THROW(local_kraus(0.1, -1.0, 1.0), std::domain_error);
  EXPECT_THROW(local_kraus(0.1, 1.0, -1.0), std::domain_error);
}

TEST(KrausSets, CompletenessOnLogSpacedTimes) {
  for (double gt : log_spaced(1e-6, 50.0, 100)) {
    EXPECT_LE(global_kraus(gt, 1.0).completeness_defect(), 1e-12) << gt;
    EXPECT_LE(local_kraus(gt, 1.0, 1.0).completeness_defect(), 1e-12) << gt;
    EXPECT_LE(local_kraus(gt, 1.0, 0.3).completeness_defect(), 1e-12) << gt;
  }
}

// ---------------------------------------------------------------------------
// apply_channel

TEST(ApplyChannel, TimeZeroLeavesStateUnchanged) {
  Rng rng(21);
  const DensityMatrix rho = testing::random_density(rng);
  EXPECT_LE(max_abs_diff(apply_channel(global_kraus(0.0, 1.0), rho).matrix(), rho.matrix()), 0.0);
  EXPECT_LE(max_abs_diff(apply_channel(local_kraus(0.0, 1.0, 1.0), rho).matrix(), rho.matrix()),
            0.0);
}

TEST(ApplyChannel, GlobalNoiseHalvesRho14AtSuddenDeathTime) {
  const DensityMatrix rho0 = embed(case_one());
  const DensityMatrix rho = apply_channel(global_kraus(0.5 * kLn2, 1.0), rho0);
  EXPECT_NEAR(rho(0, 3).real(), 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(rho(0, 3).imag(), 0.0, 1e-15);
  for (int i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(rho(i, i).real(), rho0(i, i).real());
}

TEST(ApplyChannel, RejectsIncompleteKrausSet) {
  KrausSet broken = global_kraus(1.0, 1.0);
  broken.ops.pop_back();
  EXPECT_THROW(apply_channel(broken, DensityMatrix::maximally_mixed()), std::invalid_argument);
  KrausSet empty{NoiseModel::Global, 0.0, {}};
  EXPECT_THROW(apply_channel(empty, DensityMatrix::maximally_mixed()), std::invalid_argument);
}

TEST(ApplyChannel, LocalMatchesClosedFormOnRandomStates) {
  Rng rng(22);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const DensityMatrix rho = testing::random_density(rng);
    const double t = u(rng), ga = u(rng), gb = u(rng);
    const Mat4 via_kraus = apply_channel(local_kraus(t, ga, gb), rho).matrix();
    const Mat4 closed = evolve_local_closed_form(rho, t, ga, gb).matrix();
    ASSERT_LE(max_abs_diff(via_kraus, closed), 1e-12) << "trial " << trial;
  }
}

TEST(ApplyChannel, GlobalMatchesClosedFormOnRandomXStates) {
  Rng rng(23);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const XState x = testing::random_x_state(rng);
    const double t = u(rng), g = u(rng);
    const Mat4 via_kraus = apply_channel(global_kraus(t, g), embed(x)).matrix();
    const Mat4 closed = embed(evolve_global_closed_form(x, t, g)).matrix();
    ASSERT_LE(max_abs_diff(via_kraus, closed), 1e-12) << "trial " << trial;
  }
}

TEST(ApplyChannel, GlobalMatchesElementPatternOnGeneralStates) {
  Rng rng(24);
  for (int trial = 0; trial < 200; ++trial) {
    const DensityMatrix rho = testing::random_density(rng);
    const auto rates = DephasingRates::global(0.8);
    const Mat4 via_kraus = apply_channel(kraus_set(rates, 1.1), rho).matrix();
    EXPECT_LE(max_abs_diff(via_kraus, evolve_closed_form(rho, rates, 1.1).matrix()), 1e-12);
  }
}

TEST(ApplyChannel, OutputIsPhysicalAndKeepsXForm) {
  Rng rng(25);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (int trial = 0; trial < 300; ++trial) {
    const XState x = testing::random_x_state(rng);
    for (const KrausSet& k : {global_kraus(u(rng), 1.0), local_kraus(u(rng), u(rng), u(rng))}) {
      const DensityMatrix out = apply_channel(k, embed(x));
      EXPECT_TRUE(validate_density(out.matrix()).valid);
      EXPECT_NEAR(out.matrix().trace().real(), 1.0, 1e-12);
      // Entries off the X pattern stay exactly zero.
      EXPECT_TRUE(as_x_state(out).has_value());
    }
  }
}

// ---------------------------------------------------------------------------
// closed forms

TEST(EvolveGlobalClosedForm, IdentityAtTimeZero) {
  Rng rng(26);
  const XState x = testing::random_x_state(rng);
  EXPECT_EQ(evolve_global_closed_form(x, 0.0, 2.0), x);
}

TEST(EvolveGlobalClosedForm, WReachesSqrtBcAtSuddenDeathTime) {
  const XState xt = evolve_global_closed_form(case_one(), 0.5 * kLn2, 1.0);
  EXPECT_NEAR(xt.w().real(), 1.0 / 6.0, 1e-15);
  EXPECT_EQ(xt.a(), case_one().a());
  EXPECT_EQ(xt.b(), case_one().b());
}

TEST(EvolveGlobalClosedForm, ZCoherenceIsDecoherenceFree) {
  const XState x(0.2, 0.3, 0.3, 0.2, Complex(0.1, 0.05), Complex(0.2, -0.1));
  const XState xt = evolve_global_closed_form(x, 10.0, 1.0);
  EXPECT_EQ(xt.z(), x.z());
  EXPECT_LT(std::abs(xt.w()), 1e-9);
}

TEST(EvolveGlobalClosedForm, RejectsNegativeTime) {
  EXPECT_THROW(evolve_global_closed_form(case_one(), -1.0, 1.0), std::domain_error);
}

TEST(EvolveLocalClosedForm, IdentityAtTimeZero) {
  Rng rng(27);
  const DensityMatrix rho = testing::random_density(rng);
  EXPECT_EQ(evolve_local_closed_form(rho, 0.0, 1.0, 2.0).matrix(), rho.matrix());
}

TEST(EvolveLocalClosedForm, EqualRatesAtGammaTLn2) {
  const DensityMatrix rho = evolve_local_closed_form(embed(case_one()), kLn2, 1.0, 1.0);
  EXPECT_NEAR(rho(0, 3).real(), 1.0 / 6.0, 1e-15);
  const DensityMatrix via_kraus = apply_channel(local_kraus(kLn2, 1.0, 1.0), embed(case_one()));
  EXPECT_LE(max_abs_diff(rho.matrix(), via_kraus.matrix()), 1e-15);
}

TEST(EvolveLocalClosedForm, OneSidedNoiseLeavesQubitBCoherencesAlone) {
  Rng rng(28);
  const DensityMatrix rho = testing::random_density(rng);
  const double t = 1.3, ga = 0.9;
  const double factor = std::exp(-0.5 * ga * t);
  const DensityMatrix out = evolve_local_closed_form(rho, t, ga, 0.0);
  EXPECT_EQ(out(0, 1), rho(0, 1));
  EXPECT_EQ(out(2, 3), rho(2, 3));
  for (auto [i, j] : {std::pair{0, 2}, {1, 3}, {0, 3}, {1, 2}}) {
    EXPECT_LE(std::abs(out(i, j) - factor * rho(i, j)), 1e-16);
  }
}

TEST(EvolveLocalClosedForm, RejectsNegativeArguments) {
  EXPECT_THROW(evolve_local_closed_form(DensityMatrix::maximally_mixed(), -1.0, 1.0, 1.0),
               std::domain_error);
  EXPECT_THROW(evolve_local_closed_form(DensityMatrix::maximally_mixed(), 1.0, -1.0, 1.0),
               std::domain_error);
}

TEST(ClosedForms, SemigroupProperty) {
  Rng rng(29);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double t1 = u(rng), t2 = u(rng), g = u(rng), ga = u(rng), gb = u(rng);
    const XState x = testing::random_x_state(rng);
    const XState twice = evolve_global_closed_form(evolve_global_closed_form(x, t1, g), t2, g);
    EXPECT_LE(std::abs(twice.w() - evolve_global_closed_form(x, t1 + t2, g).w()), 1e-12);

    const DensityMatrix rho = testing::random_density(rng);
    const Mat4 two_step =
        evolve_local_closed_form(evolve_local_closed_form(rho, t1, ga, gb), t2, ga, gb).matrix();
    EXPECT_LE(max_abs_diff(two_step, evolve_local_closed_form(rho, t1 + t2, ga, gb).matrix()),
              1e-12);
  }
}

TEST(ClosedForms, GlobalDecaysRho14TwiceAsFastAsLocal) {
  const double t = 0.8, g = 1.0;
  const double global = evolve_global_closed_form(case_one(), t, g).w().real();
  const double local = evolve_local_closed_form(case_one(), t, g, g).w().real();
  const double w0 = case_one().w().real();
  EXPECT_NEAR(global / w0, std::exp(-2.0 * g * t), 1e-15);
  EXPECT_NEAR(local / w0, std::exp(-g * t), 1e-15);
  EXPECT_NEAR((global / w0) / (local / w0), std::exp(-g * t), 1e-15);
}

TEST(ClosedForms, XStateOverloadAgreesWithMatrixOverload) {
  Rng rng(30);
  const XState x = testing::random_x_state(rng);
  const Mat4 a = embed(evolve_local_closed_form(x, 0.6, 0.4, 1.9)).matrix();
  const Mat4 b = evolve_local_closed_form(embed(x), 0.6, 0.4, 1.9).matrix();
  EXPECT_LE(max_abs_diff(a, b), 1e-16);
}

}  // namespace
}  // namespace esdlab
