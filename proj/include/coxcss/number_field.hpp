#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace coxcss {

using Coeff = std::int64_t;
using CoeffVector = Eigen::Matrix<Coeff, Eigen::Dynamic, 1>;
using CoeffMatrix = Eigen::Matrix<Coeff, Eigen::Dynamic, Eigen::Dynamic>;

/// Integer polynomial with ascending coefficients.
using IntPoly = std::vector<Coeff>;

/// n-th cyclotomic polynomial.
IntPoly cyclotomic_polynomial(int n);

/// Minimal polynomial of 2cos(pi/N) over Q, monic with integer coefficients.
IntPoly minimal_polynomial_two_cos(int conductor);

/// Z[theta] with theta = 2cos(pi/N). Elements are coefficient vectors in the
/// power basis 1, theta, ..., theta^(d-1).
class RealCyclotomicRing {
 public:
  explicit RealCyclotomicRing(int conductor = 2);

  int conductor() const { return conductor_; }
  int degree() const { return degree_; }
  const IntPoly& minimal_polynomial() const { return minpoly_; }
  long double theta() const { return powers_.size() > 1 ? powers_[1] : 0.0L; }

  CoeffVector zero() const { return CoeffVector::Zero(degree_); }
  CoeffVector constant(Coeff c) const;

  /// 2cos(pi/m) for m dividing the conductor. m == 0 encodes infinity (value 2).
  CoeffVector two_cos_pi_over(int m) const;

  /// Reduce an arbitrary-degree polynomial in theta modulo the minimal polynomial.
  CoeffVector reduce(const IntPoly& poly) const;

  CoeffVector multiply(const CoeffVector& a, const CoeffVector& b) const;

  /// Matrix of x -> c*x on coefficient vectors.
  CoeffMatrix multiplication_matrix(const CoeffVector& c) const;

  /// Certified sign (-1, 0, +1). Throws Error(Overflow) if the float bound
  /// cannot decide a nonzero element.
  int sign(const CoeffVector& v) const;

  template <typename Derived>
  long double evaluate(const Eigen::MatrixBase<Derived>& v) const {
    long double acc = 0.0L;
    for (Eigen::Index k = 0; k < v.size(); ++k) acc += static_cast<long double>(v(k)) * powers_[k];
    return acc;
  }

  /// Float value and a rigorous bound on its rounding error.
  template <typename Derived>
  std::pair<long double, long double> evaluate_with_error(const Eigen::MatrixBase<Derived>& v) const {
    long double acc = 0.0L;
    long double mag = 0.0L;
    for (Eigen::Index k = 0; k < v.size(); ++k) {
      const long double term = static_cast<long double>(v(k)) * powers_[k];
      acc += term;
      mag += (term < 0 ? -term : term) * static_cast<long double>(2 * k + 4);
    }
    return {acc, mag * error_unit_ + error_unit_};
  }

 private:
  int conductor_;
  int degree_;
  IntPoly minpoly_;
  std::vector<long double> powers_;
  long double error_unit_;
};

}  // namespace coxcss
