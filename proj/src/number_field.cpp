#include "coxcss/number_field.hpp"

#include "coxcss/checked.hpp"
#include "coxcss/error.hpp"

#include <cfloat>
#include <cmath>
#include <numbers>

namespace coxcss {

using detail::checked_add;
using detail::checked_mul;

namespace {

void trim(IntPoly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

// Exact division by a monic polynomial; the remainder must vanish.
IntPoly divide_exact(IntPoly num, const IntPoly& den) {
  trim(num);
  const std::size_t dd = den.size() - 1;
  if (num.size() - 1 < dd) throw Error(ErrorKind::Structural, "polynomial division: degree too small");
  IntPoly q(num.size() - dd, 0);
  for (std::size_t i = num.size(); i-- > dd;) {
    const Coeff c = num[i];
    q[i - dd] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dd; ++j)
      num[i - dd + j] = checked_add(num[i - dd + j], -checked_mul(c, den[j]));
  }
  for (std::size_t i = 0; i < dd; ++i)
    if (num[i] != 0) throw Error(ErrorKind::Structural, "polynomial division: nonzero remainder");
  return q;
}

}  // namespace

IntPoly cyclotomic_polynomial(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "cyclotomic polynomial needs n >= 1");
  IntPoly p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) p = divide_exact(p, cyclotomic_polynomial(d));
  return p;
}

IntPoly minimal_polynomial_two_cos(int conductor) {
  if (conductor < 1) throw Error(ErrorKind::InvalidInput, "conductor must be >= 1");
  if (conductor == 1) return {2, 1};  // 2cos(pi) = -2
  // Phi_{2N} is palindromic of degree 2d; Phi(x) = x^d psi(x + 1/x).
  const IntPoly phi = cyclotomic_polynomial(2 * conductor);
  const std::size_t d = (phi.size() - 1) / 2;
  // D_j(y) = x^j + x^-j as polynomial in y, D_0 = 2.
  std::vector<IntPoly> dk(d + 1);
  dk[0] = {2};
  if (d >= 1) dk[1] = {0, 1};
  for (std::size_t j = 2; j <= d; ++j) {
    IntPoly next(j + 1, 0);
    for (std::size_t i = 0; i < dk[j - 1].size(); ++i) next[i + 1] = checked_add(next[i + 1], dk[j - 1][i]);
    for (std::size_t i = 0; i < dk[j - 2].size(); ++i) next[i] = checked_add(next[i], -dk[j - 2][i]);
    dk[j] = std::move(next);
  }
  IntPoly psi(d + 1, 0);
  psi[0] = phi[d];
  for (std::size_t j = 1; j <= d; ++j) {
    const Coeff b = phi[d + j];
    for (std::size_t i = 0; i < dk[j].size(); ++i) psi[i] = checked_add(psi[i], checked_mul(b, dk[j][i]));
  }
  return psi;
}

RealCyclotomicRing::RealCyclotomicRing(int conductor)
    : conductor_(conductor), minpoly_(minimal_polynomial_two_cos(conductor)) {
  degree_ = static_cast<int>(minpoly_.size()) - 1;
  const long double theta = 2.0L * std::cos(std::numbers::pi_v<long double> / static_cast<long double>(conductor));
  powers_.resize(static_cast<std::size_t>(2 * degree_ + 1));
  powers_[0] = 1.0L;
  for (std::size_t k = 1; k < powers_.size(); ++k) powers_[k] = powers_[k - 1] * theta;
  error_unit_ = 4.0L * LDBL_EPSILON;
}

CoeffVector RealCyclotomicRing::constant(Coeff c) const {
  CoeffVector v = zero();
  v(0) = c;
  return v;
}

CoeffVector RealCyclotomicRing::reduce(const IntPoly& poly) const {
  IntPoly p = poly;
  const std::size_t d = static_cast<std::size_t>(degree_);
  for (std::size_t i = p.size(); i-- > d;) {
    const Coeff c = p[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= d; ++j)
      p[i - d + j] = checked_add(p[i - d + j], -checked_mul(c, minpoly_[j]));
  }
  CoeffVector v = zero();
  for (std::size_t i = 0; i < d && i < p.size(); ++i) v(static_cast<Eigen::Index>(i)) = p[i];
  return v;
}

CoeffVector RealCyclotomicRing::two_cos_pi_over(int m) const {
  if (m == 0) return constant(2);
  if (m == 1) return constant(-2);
  if (m < 0 || conductor_ % m != 0)
    throw Error(ErrorKind::InvalidInput, "2cos(pi/" + std::to_string(m) + ") not in Z[2cos(pi/" +
                                             std::to_string(conductor_) + ")]");
  const int j = conductor_ / m;
  // Chebyshev-type recursion D_j(theta) = 2cos(j pi / N).
  IntPoly prev = {2};
  IntPoly cur = {0, 1};
  if (j == 0) return reduce(prev);
  for (int step = 1; step < j; ++step) {
    IntPoly next(cur.size() + 1, 0);
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] = checked_add(next[i + 1], cur[i]);
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] = checked_add(next[i], -prev[i]);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return reduce(cur);
}

CoeffVector RealCyclotomicRing::multiply(const CoeffVector& a, const CoeffVector& b) const {
  IntPoly prod(static_cast<std::size_t>(2 * degree_), 0);
  for (int i = 0; i < degree_; ++i) {
    if (a(i) == 0) continue;
    for (int j = 0; j < degree_; ++j) prod[i + j] = checked_add(prod[i + j], checked_mul(a(i), b(j)));
  }
  return reduce(prod);
}

CoeffMatrix RealCyclotomicRing::multiplication_matrix(const CoeffVector& c) const {
  CoeffMatrix m(degree_, degree_);
  CoeffVector basis = zero();
  for (int k = 0; k < degree_; ++k) {
    basis.setZero();
    basis(k) = 1;
    m.col(k) = multiply(c, basis);
  }
  return m;
}

int RealCyclotomicRing::sign(const CoeffVector& v) const {
  if (v.isZero()) return 0;
  const auto [value, err] = evaluate_with_error(v);
  if (value > err) return 1;
  if (value < -err) return -1;
  throw Error(ErrorKind::Overflow, "sign of algebraic number undecidable in long double");
}

}  // namespace coxcss
