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

#include "esdlab/channels.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace esdlab {

namespace {

void require_rate(double rate, const char* what) {
  if (!std::isfinite(rate) || rate < 0.0) {
    throw std::domain_error(std::string(what) + ": rate must be finite and >= 0");
  }
}

void require_time(double t, const char* what) {
  if (!std::isfinite(t) || t < 0.0) {
    throw std::domain_error(std::string(what) + ": time must be finite and >= 0");
  }
}

Mat4 diagonal(double d0, double d1, double d2, double d3) {
  Mat4 m = Mat4::Zero();
  m(0, 0) = d0;
  m(1, 1) = d1;
  m(2, 2) = d2;
  m(3, 3) = d3;
  return m;
}

// 1 - e^{-x} without cancellation for small x.
double one_minus_exp(double x) { return -std::expm1(-x); }

}  // namespace

std::string_view to_string(NoiseModel model) {
  return model == NoiseModel::Global ? "global" : "local";
}

DephasingRates DephasingRates::global(double gamma) {
  require_rate(gamma, "DephasingRates::global");
  return DephasingRates(NoiseModel::Global, gamma, gamma);
}

DephasingRates DephasingRates::local(double gamma_a, double gamma_b) {
  require_rate(gamma_a, "DephasingRates::local");
  require_rate(gamma_b, "DephasingRates::local");
  return DephasingRates(NoiseModel::Local, gamma_a, gamma_b);
}

double DephasingRates::inverse(double rate) {
  return rate == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / rate;
}

GlobalKrausParameters global_kraus_parameters(double t, double gamma) {
  require_time(t, "global_kraus");
  require_rate(gamma, "global_kraus");
  const double x = gamma * t;
  const double decay = std::exp(-x);
  const double omega1_sq = one_minus_exp(x);
  GlobalKrausParameters p;
  p.gamma = std::exp(-0.5 * x);
  p.omega1 = std::sqrt(omega1_sq);
  p.omega2 = -p.omega1 * decay;
  p.omega3 = omega1_sq * std::sqrt(1.0 + decay);
  return p;
}

LocalKrausParameters local_kraus_parameters(double t, double gamma_a, double gamma_b) {
  require_time(t, "local_kraus");
  require_rate(gamma_a, "local_kraus");
  require_rate(gamma_b, "local_kraus");
  LocalKrausParameters p;
  p.gamma_a = std::exp(-0.5 * gamma_a * t);
  p.gamma_b = std::exp(-0.5 * gamma_b * t);
  p.omega_a = std::sqrt(one_minus_exp(gamma_a * t));
  p.omega_b = std::sqrt(one_minus_exp(gamma_b * t));
  return p;
}

Mat4 KrausSet::completeness() const {
  Mat4 sum = Mat4::Zero();
  for (const Mat4& k : ops) sum += k * k.adjoint();
  return sum;
}

double KrausSet::completeness_defect() const {
  return (completeness() - Mat4::Identity()).cwiseAbs().maxCoeff();
}

KrausSet global_kraus(double t, double gamma) {
  const GlobalKrausParameters p = global_kraus_parameters(t, gamma);
  return KrausSet{NoiseModel::Global,
                  t,
                  {diagonal(p.gamma, 1.0, 1.0, p.gamma), diagonal(p.omega1, 0.0, 0.0, p.omega2),
                   diagonal(0.0, 0.0, 0.0, p.omega3)}};
}

KrausSet local_kraus(double t, double gamma_a, double gamma_b) {
  const LocalKrausParameters p = local_kraus_parameters(t, gamma_a, gamma_b);
  const double ga = p.gamma_a, gb = p.gamma_b, wa = p.omega_a, wb = p.omega_b;
  return KrausSet{NoiseModel::Local,
                  t,
                  {diagonal(1.0, gb, ga, ga * gb), diagonal(0.0, wb, 0.0, ga * wb),
                   diagonal(0.0, 0.0, wa, wa * gb), diagonal(0.0, 0.0, 0.0, wa * wb)}};
}

KrausSet kraus_set(const DephasingRates& rates, double t) {
  if (rates.model() == NoiseModel::Global) return global_kraus(t, rates.gamma());
  return local_kraus(t, rates.gamma_a(), rates.gamma_b());
}

std::array<Mat4, 2> qubit_a_factors(double t, double gamma_a) {
  const LocalKrausParameters p = local_kraus_parameters(t, gamma_a, 0.0);
  Mat2 e1 = Mat2::Zero(), e2 = Mat2::Zero();
  e1(0, 0) = 1.0;
  e1(1, 1) = p.gamma_a;
  e2(1, 1) = p.omega_a;
  return {tensor_product(e1, pauli::identity()), tensor_product(e2, pauli::identity())};
}

std::array<Mat4, 2> qubit_b_factors(double t, double gamma_b) {
  const LocalKrausParameters p = local_kraus_parameters(t, 0.0, gamma_b);
  Mat2 f1 = Mat2::Zero(), f2 = Mat2::Zero();
  f1(0, 0) = 1.0;
  f1(1, 1) = p.gamma_b;
  f2(1, 1) = p.omega_b;
  return {tensor_product(pauli::identity(), f1), tensor_product(pauli::identity(), f2)};
}

DensityMatrix apply_channel(const KrausSet& kraus, const DensityMatrix& rho) {
  if (kraus.ops.empty() || kraus.completeness_defect() > 1e-12) {
    throw std::invalid_argument("apply_channel: Kraus set violates completeness");
  }
  Mat4 out = Mat4::Zero();
  for (const Mat4& k : kraus.ops) out += k * rho.matrix() * k.adjoint();
  return DensityMatrix(0.5 * (out + out.adjoint()));
}

XState evolve_global_closed_form(const XState& x, double t, double gamma) {
  require_time(t, "evolve_global_closed_form");
  require_rate(gamma, "evolve_global_closed_form");
  return XState(x.a(), x.b(), x.c(), x.d(), std::exp(-2.0 * gamma * t) * x.w(), x.z());
}

DensityMatrix evolve_local_closed_form(const DensityMatrix& rho, double t, double gamma_a,
                                       double gamma_b) {
  require_time(t, "evolve_local_closed_form");
  require_rate(gamma_a, "evolve_local_closed_form");
  require_rate(gamma_b, "evolve_local_closed_form");
  const double ga = std::exp(-0.5 * gamma_a * t);
  const double gb = std::exp(-0.5 * gamma_b * t);
  // Factor for element (i, j): qubit A flips between rows {0,1} and {2,3},
  // qubit B between even and odd indices.
  Mat4 out = rho.matrix();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      double f = 1.0;
      if ((i >> 1) != (j >> 1)) f *= ga;
      if ((i & 1) != (j & 1)) f *= gb;
      out(i, j) *= f;
    }
  }
  return DensityMatrix(out);
}

XState evolve_local_closed_form(const XState& x, double t, double gamma_a, double gamma_b) {
  require_time(t, "evolve_local_closed_form");
  require_rate(gamma_a, "evolve_local_closed_form");
  require_rate(gamma_b, "evolve_local_closed_form");
  const double f = std::exp(-0.5 * gamma_a * t) * std::exp(-0.5 * gamma_b * t);
  return XState(x.a(), x.b(), x.c(), x.d(), f * x.w(), f * x.z());
}

DensityMatrix evolve_closed_form(const DensityMatrix& rho, const DephasingRates& rates, double t) {
  if (rates.model() == NoiseModel::Local) {
    return evolve_local_closed_form(rho, t, rates.gamma_a(), rates.gamma_b());
  }
  require_time(t, "evolve_closed_form");
  // Global noise on a general state: rho_ij picks up e^{-(Gamma t/2)(m_i - m_j)^2}
  // with m = (1, 0, 0, -1) the collective magnetization / 2.
  constexpr int kMagnetization[4] = {1, 0, 0, -1};
  Mat4 out = rho.matrix();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const int dm = kMagnetization[i] - kMagnetization[j];
      if (dm != 0) out(i, j) *= std::exp(-0.5 * rates.gamma() * t * dm * dm);
    }
  }
  return DensityMatrix(out);
}

XState evolve_closed_form(const XState& x, const DephasingRates& rates, double t) {
  if (rates.model() == NoiseModel::Global) return evolve_global_closed_form(x, t, rates.gamma());
  return evolve_local_closed_form(x, t, rates.gamma_a(), rates.gamma_b());
}

}  // namespace esdlab
