#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

namespace geo::alg {

/// Arbitrary-precision rational.
using Rat = mpq_class;

/// Exact element a + b*sqrt(3) of Q(sqrt 3).
class QS3 {
 public:
  QS3() = default;
  QS3(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  QS3(Rat a) : a_(std::move(a)) { a_.canonicalize(); }  // NOLINT(google-explicit-constructor)
  QS3(Rat a, Rat b) : a_(std::move(a)), b_(std::move(b)) {
    a_.canonicalize();
    b_.canonicalize();
  }

  static QS3 sqrt3() { return QS3(Rat(0), Rat(1)); }
  /// n/d as an exact rational.
  static QS3 ratio(long n, long d) { return QS3(Rat(n, d)); }

  const Rat& rational() const { return a_; }
  const Rat& surd() const { return b_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  /// Exact sign of a + b*sqrt(3).
  int sign() const;
  double to_double() const;
  QS3 conjugate() const { return QS3(a_, -b_); }
  /// a^2 - 3 b^2.
  Rat norm() const { return a_ * a_ - 3 * b_ * b_; }
  QS3 inverse() const;

  QS3& operator+=(const QS3& o);
  QS3& operator-=(const QS3& o);
  QS3& operator*=(const QS3& o);
  QS3& operator/=(const QS3& o) { return *this *= o.inverse(); }

  friend QS3 operator+(QS3 x, const QS3& y) { return x += y; }
  friend QS3 operator-(QS3 x, const QS3& y) { return x -= y; }
  friend QS3 operator*(QS3 x, const QS3& y) { return x *= y; }
  friend QS3 operator/(QS3 x, const QS3& y) { return x /= y; }
  QS3 operator-() const { return QS3(-a_, -b_); }

  friend bool operator==(const QS3& x, const QS3& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
  friend std::strong_ordering operator<=>(const QS3& x, const QS3& y) {
    const int s = (x - y).sign();
    return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  /// "p/q" or "p/q+r/s*s3".
  std::string to_string() const;
  static QS3 parse(std::string_view text);

 private:
  Rat a_{0};
  Rat b_{0};
};

}  // namespace geo::alg
