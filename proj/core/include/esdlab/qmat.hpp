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

#pragma once

#include <array>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

/**
 * @file qmat.hpp
 * Small dense complex matrices for two qubits, density-matrix validation
 * and the canonical state factories.
 *
 * Every 4x4 object in the library is expressed in the product basis
 *
 *     |1> = |++>,  |2> = |+->,  |3> = |-+>,  |4> = |-->
 *
 * where |+>, |-> are the sigma_z eigenstates of each qubit (qubit A is the
 * left tensor factor). There is no runtime option to change this ordering.
 */

namespace esdlab {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;

inline constexpr double kHermiticityTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdFloor = -1e-10;

/// Raised when a matrix or parameter set does not describe a physical state.
class NonPhysicalError : public std::domain_error {
 public:
  enum class Kind { NonFinite, Hermiticity, Normalization, Positivity };

  NonPhysicalError(Kind kind, const std::string& what)
      : std::domain_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Raised when an eigensolver fails to converge or returns inconsistent data.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace pauli {
Mat2 identity();
Mat2 sigma_x();
Mat2 sigma_y();
Mat2 sigma_z();
}  // namespace pauli

/// Kronecker product p (x) q; p acts on qubit A, q on qubit B.
Mat4 tensor_product(const Mat2& p, const Mat2& q);

bool all_finite(const Mat4& m);

/// All eigenvalues of a general complex 4x4 matrix (unordered).
/// Throws ConvergenceError on non-finite input or solver failure.
std::array<Complex, 4> eigenvalues(const Mat4& m);

/// Eigenvalues of the Hermitian part (m + m^dagger)/2, ascending.
std::array<double, 4> hermitian_eigenvalues(const Mat4& m);

struct ValidityReport {
  bool finite = false;
  double hermiticity_defect = 0.0;  // max |m_ij - conj(m_ji)|
  double trace_defect = 0.0;        // |tr m - 1|
  double min_eigenvalue = 0.0;
  bool valid = false;

  /// Human-readable description of the first failing check ("ok" if valid).
  std::string describe() const;
};

/// Report-style physicality check; never throws.
ValidityReport validate_density(const Mat4& m);

/// A Hermitian, unit-trace, positive-semidefinite 4x4 matrix.
class DensityMatrix {
 public:
  /// Throws NonPhysicalError naming the failed invariant.
  explicit DensityMatrix(const Mat4& m);

  static DensityMatrix maximally_mixed();

  const Mat4& matrix() const noexcept { return m_; }
  Complex operator()(int row, int col) const { return m_(row, col); }

 private:
  Mat4 m_;
};

/// Two-qubit state whose only non-zero entries lie on the diagonal
/// (a, b, c, d) and the anti-diagonal (w = rho_14, z = rho_23).
class XState {
 public:
  /// Throws NonPhysicalError (Normalization or Positivity).
  XState(double a, double b, double c, double d, Complex w, Complex z);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double c() const noexcept { return c_; }
  double d() const noexcept { return d_; }
  Complex w() const noexcept { return w_; }
  Complex z() const noexcept { return z_; }

  bool operator==(const XState&) const = default;

 private:
  double a_, b_, c_, d_;
  Complex w_, z_;
};

XState x_state(double a, double b, double c, double d, Complex w, Complex z);

DensityMatrix embed(const XState& x);

/// Recovers the X-state parameters when every entry off the diagonal and
/// anti-diagonal is exactly zero.
std::optional<XState> as_x_state(const DensityMatrix& rho);

enum class BellState { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

XState bell_state(BellState kind);

/// p |Psi-><Psi-| + (1 - p) I/4. Throws std::domain_error for p outside [0, 1].
XState werner_state(double p);

}  // namespace esdlab
