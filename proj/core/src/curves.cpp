#include "geo/curves.hpp"

#include <cmath>

#include "geo/errors.hpp"

namespace geo::alg {

ExactPoint exact_point(const QS3& x, const QS3& y) { return {x, y, QS3(1)}; }

Eigen::Vector3d to_vector(const ExactPoint& p) {
  return Eigen::Vector3d(p[0].to_double(), p[1].to_double(), p[2].to_double());
}

ExactPoint cross(const ExactPoint& a, const ExactPoint& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

PlaneCurve::PlaneCurve(const Poly& p) {
  if (p.is_zero()) throw GeoError(ErrorCode::DegenerateInput, "zero polynomial is not a curve");
  if (!p.is_homogeneous()) throw GeoError(ErrorCode::DegenerateInput, "curve polynomial must be homogeneous");
  poly_ = p.monic();
}

PlaneCurve exact_line(const QS3& a, const QS3& b, const QS3& c) { return PlaneCurve(Poly::linear(a, b, c)); }

Poly exact_circle_poly(const QS3& cx, const QS3& cy, const QS3& r2) {
  const Poly x = Poly::variable(0), y = Poly::variable(1), w = Poly::variable(2);
  const Poly dx = x - w * cx, dy = y - w * cy;
  return dx * dx + dy * dy - (w * w) * r2;
}

ExactBHConfig canonical_exact_config() {
  const QS3 one(1), zero(0);
  const QS3 inv_sqrt3(Rat(0), Rat(1, 3));  // 1/sqrt(3) = sqrt(3)/3
  ExactBHConfig cfg;
  cfg.gamma = {{{one, zero, -one}, {zero, one, -inv_sqrt3}, {-one, -inv_sqrt3, one}}};
  cfg.pole = exact_point(zero, zero);
  cfg.base_b = exact_point(one, zero);
  cfg.base_c = exact_point(QS3::ratio(1, 2), QS3(Rat(0), Rat(1, 2)));
  return cfg;
}

ExactPoint exact_polar(const ExactMatrix& g, const ExactPoint& p) {
  ExactPoint out;
  for (int i = 0; i < 3; ++i) out[i] = g[i][0] * p[0] + g[i][1] * p[1] + g[i][2] * p[2];
  return out;
}

namespace {

QS3 bilinear(const ExactMatrix& g, const ExactPoint& p, const ExactPoint& q) {
  const ExactPoint gq = exact_polar(g, q);
  return p[0] * gq[0] + p[1] * gq[1] + p[2] * gq[2];
}

Poly linear_form(const ExactPoint& l) { return Poly::linear(l[0], l[1], l[2]); }

bool is_zero_point(const ExactPoint& p) { return p[0].is_zero() && p[1].is_zero() && p[2].is_zero(); }

// Polynomial in local coordinates (s, t) stored in the x and y slots.
Poly local_expansion(const Poly& f, const ExactPoint& p) {
  int k = 2;
  if (p[2].is_zero()) k = p[0].is_zero() ? 1 : 0;
  if (p[k].is_zero()) throw GeoError(ErrorCode::DegenerateInput, "zero homogeneous point");
  const QS3 inv = p[k].inverse();
  std::array<Poly, 3> sub;
  int slot = 0;
  for (int i = 0; i < 3; ++i) {
    if (i == k) {
      sub[i] = Poly::constant(QS3(1));
    } else {
      sub[i] = Poly::constant(p[i] * inv) + Poly::variable(slot++);
    }
  }
  return f.compose(sub);
}

int lowest_degree(const Poly& p) {
  int d = -1;
  for (const auto& [m, c] : p.terms())
    if (d < 0 || m.degree() < d) d = m.degree();
  return d;
}

Poly homogeneous_part(const Poly& p, int degree) {
  Poly out;
  for (const auto& [m, c] : p.terms())
    if (m.degree() == degree) out.add_term(m, c);
  return out;
}

}  // namespace

QuadraticMap bh_map_polys(const ExactBHConfig& cfg) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (cfg.gamma[i][j] != cfg.gamma[j][i]) throw GeoError(ErrorCode::InexactInput, "fundamental conic is not symmetric");
  const ExactPoint& a = cfg.pole;
  if (bilinear(cfg.gamma, a, a).is_zero()) throw GeoError(ErrorCode::InexactInput, "pole lies on the fundamental conic");
  for (const ExactPoint* base : {&cfg.base_b, &cfg.base_c}) {
    if (!bilinear(cfg.gamma, *base, *base).is_zero() || !bilinear(cfg.gamma, a, *base).is_zero())
      throw GeoError(ErrorCode::InexactInput, "base point is not on the conic and the polar of the pole");
  }

  const std::array<Poly, 3> xyz = {Poly::variable(0), Poly::variable(1), Poly::variable(2)};
  const ExactPoint ga = exact_polar(cfg.gamma, a);
  const Poly lin = linear_form(ga);
  Poly quad;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) quad += (xyz[i] * xyz[j]) * cfg.gamma[i][j];

  QuadraticMap q;
  for (int i = 0; i < 3; ++i) q.f[i] = lin * xyz[i] - quad * a[i];
  q.fundamental = {cfg.pole, cfg.base_b, cfg.base_c};
  q.lines = {FundamentalLine{linear_form(ga), 'A', "BC"},
             FundamentalLine{linear_form(cross(cfg.pole, cfg.base_b)), 'B', "AB"},
             FundamentalLine{linear_form(cross(cfg.pole, cfg.base_c)), 'C', "AC"}};

  for (const auto& p : q.fundamental)
    for (const auto& fi : q.f)
      if (!fi.eval(p).is_zero()) throw GeoError(ErrorCode::InexactInput, "map does not vanish at a fundamental point");

  // f(f(X)) = E * X: cross-multiplied components agree.
  std::array<Poly, 3> ff;
  for (int i = 0; i < 3; ++i) ff[i] = q.f[i].compose(q.f);
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (!(ff[i] * xyz[j] - ff[j] * xyz[i]).is_zero())
        throw GeoError(ErrorCode::InexactInput, "map is not an involution");
  return q;
}

int multiplicity_at(const PlaneCurve& c, const ExactPoint& p) {
  if (is_zero_point(p)) throw GeoError(ErrorCode::DegenerateInput, "zero homogeneous point");
  return lowest_degree(local_expansion(c.poly(), p));
}

PlaneCurve total_transform(const PlaneCurve& c, const QuadraticMap& q) {
  const Poly t = c.poly().compose(q.f);
  if (t.is_zero()) throw GeoError(ErrorCode::ZeroPullback, "curve vanishes on the image of the map");
  return PlaneCurve(t);
}

StrictTransform strict_transform(const PlaneCurve& c, const QuadraticMap& q) {
  for (const auto& l : q.lines)
    if (c.poly().divide_exact_linear(l.form))
      throw GeoError(ErrorCode::FundamentalComponent, "curve contains the fundamental line " + l.name);
  Poly rest = total_transform(c, q).poly();
  std::vector<ExceptionalFactor> factors;
  for (const auto& l : q.lines) {
    int e = 0;
    while (auto quotient = rest.divide_exact_linear(l.form)) {
      rest = std::move(*quotient);
      ++e;
    }
    factors.push_back({l, e});
  }
  return {PlaneCurve(rest), std::move(factors)};
}

std::string_view to_string(Singularity s) {
  switch (s) {
    case Singularity::Node: return "NODE";
    case Singularity::Cusp: return "CUSP";
    case Singularity::TacnodeOrWorse: return "TACNODE-or-worse";
  }
  return "?";
}

Singularity classify_singularity(const PlaneCurve& c, const ExactPoint& p) {
  const Poly local = local_expansion(c.poly(), p);
  if (lowest_degree(local) != 2) throw GeoError(ErrorCode::WrongMultiplicity, "point is not a double point");
  const Poly q2 = homogeneous_part(local, 2);
  const QS3 a = q2.coeff({2, 0, 0}), b = q2.coeff({1, 1, 0}), g = q2.coeff({0, 2, 0});
  if (!(b * b - QS3(4) * a * g).is_zero()) return Singularity::Node;
  // Double tangent direction (s, t).
  ExactPoint dir = a.is_zero() ? ExactPoint{QS3(2) * g, -b, QS3(0)} : ExactPoint{-b, QS3(2) * a, QS3(0)};
  const Poly q3 = homogeneous_part(local, 3);
  return q3.eval(dir).is_zero() ? Singularity::TacnodeOrWorse : Singularity::Cusp;
}

QS3 tangent_discriminant(const PlaneCurve& c, const ExactPoint& p) {
  const Poly local = local_expansion(c.poly(), p);
  if (lowest_degree(local) != 2) throw GeoError(ErrorCode::WrongMultiplicity, "point is not a double point");
  const Poly q2 = homogeneous_part(local, 2);
  const QS3 a = q2.coeff({2, 0, 0}), b = q2.coeff({1, 1, 0}), g = q2.coeff({0, 2, 0});
  return b * b - QS3(4) * a * g;
}

double curve_eval_residual(const PlaneCurve& c, std::span<const HPoint> samples) {
  double norm = 0.0;
  for (const auto& [m, coef] : c.poly().terms()) norm += coef.to_double() * coef.to_double();
  norm = std::sqrt(norm);
  const int n = c.degree();
  double worst = 0.0;
  for (const auto& s : samples) {
    const Eigen::Vector3d& v = s.vec();
    const double scale = std::pow(v.cwiseAbs().maxCoeff(), n);
    worst = std::max(worst, std::abs(c.poly().eval(v)) / (norm * scale));
  }
  return worst;
}

namespace {

std::vector<Monomial> monomials_of_degree(int n) {
  std::vector<Monomial> out;
  for (int i = n; i >= 0; --i)
    for (int j = n - i; j >= 0; --j) out.push_back({i, j, n - i - j});
  return out;
}

// Basis of the right nullspace of `rows` (each row has `cols` entries).
std::vector<std::vector<QS3>> nullspace(std::vector<std::vector<QS3>> rows, size_t cols) {
  std::vector<int> pivot_col;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows.size(); ++c) {
    size_t p = r;
    while (p < rows.size() && rows[p][c].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    const QS3 inv = rows[r][c].inverse();
    for (auto& v : rows[r]) v *= inv;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      const QS3 factor = rows[i][c];
      for (size_t k = 0; k < cols; ++k) rows[i][k] -= factor * rows[r][k];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<QS3>> basis;
  for (size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<QS3> v(cols);
    v[free] = QS3(1);
    for (size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -rows[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

std::optional<PlaneCurve> curve_with_multiplicities(int n, std::span<const ExactPoint> points,
                                                    std::span<const int> t, std::span<const Poly> forbidden,
                                                    std::mt19937_64& rng, int attempts) {
  if (points.size() != t.size()) throw GeoError(ErrorCode::DegenerateInput, "one multiplicity per point");
  const auto monos = monomials_of_degree(n);
  std::vector<std::vector<QS3>> rows;
  for (size_t k = 0; k < points.size(); ++k) {
    if (t[k] == 0) continue;
    std::vector<Poly> local;
    for (const auto& m : monos) {
      Poly single;
      single.add_term(m, QS3(1));
      local.push_back(local_expansion(single, points[k]));
    }
    for (int a = 0; a < t[k]; ++a)
      for (int b = 0; a + b < t[k]; ++b) {
        std::vector<QS3> row;
        for (const auto& l : local) row.push_back(l.coeff({a, b, 0}));
        rows.push_back(std::move(row));
      }
  }
  const auto basis = nullspace(rows, monos.size());
  if (basis.empty()) return std::nullopt;

  std::uniform_int_distribution<int> coef(-5, 5);
  for (int attempt = 0; attempt < attempts; ++attempt) {
    Poly p;
    for (const auto& v : basis) {
      const QS3 c(coef(rng));
      if (c.is_zero()) continue;
      for (size_t i = 0; i < monos.size(); ++i) p.add_term(monos[i], v[i] * c);
    }
    if (p.is_zero()) continue;
    const PlaneCurve curve(p);
    bool ok = true;
    for (size_t k = 0; k < points.size() && ok; ++k) ok = multiplicity_at(curve, points[k]) == t[k];
    for (const auto& f : forbidden)
      if (ok && curve.poly().divide_exact_linear(f)) ok = false;
    if (ok) return curve;
  }
  return std::nullopt;
}

}  // namespace geo::alg
