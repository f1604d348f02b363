#pragma once

#include <Eigen/Core>

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "geo/qs3.hpp"

namespace geo::alg {

/// Exponents of x, y, w.
struct Monomial {
  int x = 0;
  int y = 0;
  int w = 0;

  int degree() const { return x + y + w; }
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Sparse trivariate polynomial over Q(sqrt 3). Zero coefficients are never
/// stored.
class Poly {
 public:
  using Terms = std::map<Monomial, QS3>;

  Poly() = default;
  static Poly constant(const QS3& c);
  /// The coordinate function x (0), y (1) or w (2).
  static Poly variable(int index);
  /// a x + b y + c w.
  static Poly linear(const QS3& a, const QS3& b, const QS3& c);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Highest total degree, -1 for the zero polynomial.
  int degree() const;
  bool is_homogeneous() const;
  QS3 coeff(const Monomial& m) const;
  void add_term(const Monomial& m, const QS3& c);
  /// Coefficient of the largest monomial.
  const QS3& leading_coefficient() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const QS3& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const QS3& c) { return a *= c; }
  friend Poly operator*(const QS3& c, Poly a) { return a *= c; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator-() const { return *this * QS3(-1); }
  friend bool operator==(const Poly&, const Poly&) = default;

  Poly pow(int e) const;
  /// this(f0, f1, f2).
  Poly compose(const std::array<Poly, 3>& f) const;
  QS3 eval(const std::array<QS3, 3>& p) const;
  double eval(const Eigen::Vector3d& p) const;
  /// Partial derivative with respect to variable `index`.
  Poly derivative(int index) const;

  /// Quotient by a linear form when the division is exact.
  std::optional<Poly> divide_exact_linear(const Poly& linear) const;
  /// Scaled so the leading coefficient is 1.
  Poly monic() const;
  /// True when `other` = c * this for a nonzero constant c.
  bool proportional_to(const Poly& other) const;

  /// One "(i,j,k): coeff" line per term, largest monomial first.
  std::string to_text() const;
  static Poly from_text(std::string_view text);

 private:
  Terms terms_;
};

}  // namespace geo::alg
