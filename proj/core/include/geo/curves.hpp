#pragma once

#include <array>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "geo/poly.hpp"
#include "geo/primitives.hpp"

namespace geo::alg {

/// Homogeneous point with exact coordinates.
using ExactPoint = std::array<QS3, 3>;
using ExactMatrix = std::array<std::array<QS3, 3>, 3>;

ExactPoint exact_point(const QS3& x, const QS3& y);
Eigen::Vector3d to_vector(const ExactPoint& p);
ExactPoint cross(const ExactPoint& a, const ExactPoint& b);

/// Homogeneous, nonzero polynomial scaled to leading coefficient 1.
/// Reducible and non-squarefree curves are allowed.
class PlaneCurve {
 public:
  explicit PlaneCurve(const Poly& p);

  const Poly& poly() const { return poly_; }
  int degree() const { return poly_.degree(); }
  friend bool operator==(const PlaneCurve&, const PlaneCurve&) = default;

  std::string to_text() const { return poly_.to_text(); }
  static PlaneCurve from_text(std::string_view text) { return PlaneCurve(Poly::from_text(text)); }

 private:
  Poly poly_;
};

/// Line a x + b y + c w.
PlaneCurve exact_line(const QS3& a, const QS3& b, const QS3& c);
/// (x - cx w)^2 + (y - cy w)^2 - r2 w^2.
Poly exact_circle_poly(const QS3& cx, const QS3& cy, const QS3& r2);

/// Exact quadratic-inversion data: symmetric fundamental conic, pole and
/// the two base points on the polar of the pole.
struct ExactBHConfig {
  ExactMatrix gamma;
  ExactPoint pole;
  ExactPoint base_b;
  ExactPoint base_c;
};

/// A = (0,0), B = (1,0), C = (1/2, sqrt(3)/2) and the circle
/// 1 - 2x + x^2 - (2/sqrt 3) y + y^2 = 0.
ExactBHConfig canonical_exact_config();

/// Polar line (a, b, c) of a point with respect to an exact conic.
ExactPoint exact_polar(const ExactMatrix& gamma, const ExactPoint& p);

/// The lines of the fundamental triangle and the point each contracts to.
struct FundamentalLine {
  Poly form;
  char contracted_to;  // 'A', 'B' or 'C'
  std::string name;    // "BC", "AB", "AC"
};

struct QuadraticMap {
  std::array<Poly, 3> f;
  std::array<ExactPoint, 3> fundamental;  // A, B, C
  std::array<FundamentalLine, 3> lines;   // BC -> A, AB -> B, AC -> C
};

/// f(P) = (A^T G P) P - (P^T G P) A, checked to vanish at A, B, C and to
/// be an involution up to a common factor.
QuadraticMap bh_map_polys(const ExactBHConfig& cfg);

/// Smallest total degree of the Taylor expansion of c at p (0 if p is off c).
int multiplicity_at(const PlaneCurve& c, const ExactPoint& p);

/// c(f0, f1, f2), degree 2n.
PlaneCurve total_transform(const PlaneCurve& c, const QuadraticMap& q);

struct ExceptionalFactor {
  FundamentalLine line;
  int exponent = 0;
};

struct StrictTransform {
  PlaneCurve curve;
  std::vector<ExceptionalFactor> exceptional;
};

/// Total transform with the fundamental-line factors divided out.
StrictTransform strict_transform(const PlaneCurve& c, const QuadraticMap& q);

enum class Singularity { Node, Cusp, TacnodeOrWorse };
std::string_view to_string(Singularity s);

/// Classifies a double point from its quadratic and cubic Taylor forms.
Singularity classify_singularity(const PlaneCurve& c, const ExactPoint& p);

/// b^2 - 4ac of the quadratic Taylor form at a double point: positive for
/// two real tangents, negative for a conjugate pair (isolated real point).
QS3 tangent_discriminant(const PlaneCurve& c, const ExactPoint& p);

/// max |c(p)| / (||coefficients||_2 * max|p_i|^n) over the samples.
double curve_eval_residual(const PlaneCurve& c, std::span<const HPoint> samples);

/// Random curve of degree n with multiplicity exactly t[i] at points[i]
/// and no factor among `forbidden`; coefficients are small integers over
/// the nullspace of the vanishing conditions. nullopt if no such curve was
/// found within the retry budget.
std::optional<PlaneCurve> curve_with_multiplicities(int n, std::span<const ExactPoint> points,
                                                    std::span<const int> t, std::span<const Poly> forbidden,
                                                    std::mt19937_64& rng, int attempts = 40);

}  // namespace geo::alg
