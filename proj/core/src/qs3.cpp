#include "geo/qs3.hpp"

#include <cmath>
#include <stdexcept>

#include "geo/errors.hpp"

namespace geo::alg {

int QS3::sign() const {
  const int sa = sgn(a_), sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: compare a^2 with 3 b^2.
  const int c = cmp(Rat(a_ * a_), Rat(3 * b_ * b_));
  return c > 0 ? sa : (c < 0 ? sb : 0);
}

double QS3::to_double() const { return a_.get_d() + b_.get_d() * std::sqrt(3.0); }

QS3 QS3::inverse() const {
  const Rat n = norm();
  if (sgn(n) == 0) throw GeoError(ErrorCode::DegenerateInput, "division by zero in Q(sqrt 3)");
  return QS3(Rat(a_ / n), Rat(-b_ / n));
}

QS3& QS3::operator+=(const QS3& o) {
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

QS3& QS3::operator-=(const QS3& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

QS3& QS3::operator*=(const QS3& o) {
  if (sgn(b_) == 0 && sgn(o.b_) == 0) {
    a_ *= o.a_;
    return *this;
  }
  Rat a = a_ * o.a_ + 3 * b_ * o.b_;
  Rat b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

std::string QS3::to_string() const {
  std::string out = a_.get_str();
  if (sgn(b_) != 0) {
    out += sgn(b_) > 0 ? "+" : "-";
    out += Rat(abs(b_)).get_str();
    out += "*s3";
  }
  return out;
}

QS3 QS3::parse(std::string_view text) {
  auto rat = [&](std::string_view s) {
    if (s.empty()) throw GeoError(ErrorCode::InexactInput, "empty rational");
    Rat r;
    if (r.set_str(std::string(s), 10) != 0) throw GeoError(ErrorCode::InexactInput, "bad rational '" + std::string(s) + "'");
    r.canonicalize();
    return r;
  };
  std::string_view t = text;
  while (!t.empty() && t.front() == ' ') t.remove_prefix(1);
  while (!t.empty() && t.back() == ' ') t.remove_suffix(1);
  if (t.size() >= 3 && t.substr(t.size() - 3) == "*s3") {
    // Split at the sign that starts the surd part (not the leading sign).
    const std::string_view body = t.substr(0, t.size() - 3);
    size_t split = std::string_view::npos;
    for (size_t i = body.size(); i-- > 1;)
      if (body[i] == '+' || body[i] == '-') {
        split = i;
        break;
      }
    if (split == std::string_view::npos) {
      std::string_view b = body;
      if (!b.empty() && b.front() == '+') b.remove_prefix(1);
      return QS3(Rat(0), rat(b));
    }
    std::string_view b = body.substr(split);
    if (b.front() == '+') b.remove_prefix(1);
    return QS3(rat(body.substr(0, split)), rat(b));
  }
  return QS3(rat(t));
}

}  // namespace geo::alg
