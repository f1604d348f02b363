#include "geo/poly.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "geo/errors.hpp"

namespace geo::alg {

Poly Poly::constant(const QS3& c) {
  Poly p;
  p.add_term({}, c);
  return p;
}

Poly Poly::variable(int index) {
  Monomial m;
  if (index == 0) m.x = 1;
  else if (index == 1) m.y = 1;
  else m.w = 1;
  Poly p;
  p.add_term(m, QS3(1));
  return p;
}

Poly Poly::linear(const QS3& a, const QS3& b, const QS3& c) {
  Poly p;
  p.add_term({1, 0, 0}, a);
  p.add_term({0, 1, 0}, b);
  p.add_term({0, 0, 1}, c);
  return p;
}

int Poly::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

bool Poly::is_homogeneous() const {
  if (terms_.empty()) return true;
  const int d = terms_.begin()->first.degree();
  for (const auto& [m, c] : terms_)
    if (m.degree() != d) return false;
  return true;
}

QS3 Poly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? QS3() : it->second;
}

void Poly::add_term(const Monomial& m, const QS3& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

const QS3& Poly::leading_coefficient() const {
  if (terms_.empty()) throw GeoError(ErrorCode::DegenerateInput, "zero polynomial has no leading coefficient");
  return terms_.rbegin()->second;
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly& Poly::operator*=(const QS3& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term({ma.x + mb.x, ma.y + mb.y, ma.w + mb.w}, ca * cb);
  return out;
}

Poly Poly::pow(int e) const {
  Poly out = constant(QS3(1));
  for (int i = 0; i < e; ++i) out = out * *this;
  return out;
}

Poly Poly::compose(const std::array<Poly, 3>& f) const {
  const int n = std::max(degree(), 0);
  std::array<std::vector<Poly>, 3> powers;
  for (int v = 0; v < 3; ++v) {
    powers[v].push_back(constant(QS3(1)));
    for (int e = 1; e <= n; ++e) powers[v].push_back(powers[v].back() * f[v]);
  }
  Poly out;
  for (const auto& [m, c] : terms_) out += (powers[0][m.x] * powers[1][m.y] * powers[2][m.w]) * c;
  return out;
}

QS3 Poly::eval(const std::array<QS3, 3>& p) const {
  QS3 sum;
  for (const auto& [m, c] : terms_) {
    QS3 t = c;
    for (int i = 0; i < m.x; ++i) t *= p[0];
    for (int i = 0; i < m.y; ++i) t *= p[1];
    for (int i = 0; i < m.w; ++i) t *= p[2];
    sum += t;
  }
  return sum;
}

double Poly::eval(const Eigen::Vector3d& p) const {
  double sum = 0.0;
  for (const auto& [m, c] : terms_)
    sum += c.to_double() * std::pow(p.x(), m.x) * std::pow(p.y(), m.y) * std::pow(p.z(), m.w);
  return sum;
}

Poly Poly::derivative(int index) const {
  Poly out;
  for (const auto& [m, c] : terms_) {
    Monomial d = m;
    int* e = index == 0 ? &d.x : index == 1 ? &d.y : &d.w;
    if (*e == 0) continue;
    const long k = *e;
    --*e;
    out.add_term(d, c * QS3(k));
  }
  return out;
}

std::optional<Poly> Poly::divide_exact_linear(const Poly& linear) const {
  if (linear.degree() != 1 || !linear.is_homogeneous())
    throw GeoError(ErrorCode::DegenerateInput, "divisor is not a linear form");
  int v = 0;
  const std::array<QS3, 3> l = {linear.coeff({1, 0, 0}), linear.coeff({0, 1, 0}), linear.coeff({0, 0, 1})};
  while (l[v].is_zero()) ++v;
  const QS3 inv = l[v].inverse();
  auto exp = [v](const Monomial& m) { return v == 0 ? m.x : v == 1 ? m.y : m.w; };

  Poly rest = *this;
  Poly quotient;
  while (true) {
    // Highest power of the pivot variable first.
    const Monomial* best = nullptr;
    for (const auto& [m, c] : rest.terms_)
      if (exp(m) > 0 && (!best || exp(m) > exp(*best))) best = &m;
    if (!best) break;
    Monomial q = *best;
    (v == 0 ? q.x : v == 1 ? q.y : q.w) -= 1;
    Poly term;
    term.add_term(q, rest.coeff(*best) * inv);
    quotient += term;
    rest -= term * linear;
  }
  if (!rest.is_zero()) return std::nullopt;
  return quotient;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return *this * leading_coefficient().inverse();
}

bool Poly::proportional_to(const Poly& other) const {
  if (is_zero() || other.is_zero()) return is_zero() && other.is_zero();
  return monic() == other.monic();
}

std::string Poly::to_text() const {
  std::ostringstream os;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it)
    os << '(' << it->first.x << ',' << it->first.y << ',' << it->first.w << "): " << it->second.to_string() << '\n';
  return os.str();
}

Poly Poly::from_text(std::string_view text) {
  Poly out;
  std::istringstream is{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    Monomial m;
    char tail = 0;
    int consumed = 0;
    if (std::sscanf(line.c_str() + first, "(%d,%d,%d)%c%n", &m.x, &m.y, &m.w, &tail, &consumed) != 4 || tail != ':' ||
        m.x < 0 || m.y < 0 || m.w < 0)
      throw GeoError(ErrorCode::InexactInput, "bad monomial on line " + std::to_string(lineno));
    std::string coeff = line.substr(first + consumed);
    while (!coeff.empty() && (coeff.back() == '\r' || coeff.back() == ' ')) coeff.pop_back();
    out.add_term(m, QS3::parse(coeff));
  }
  return out;
}

}  // namespace geo::alg
