#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "geo/core.hpp"

namespace geo {

// ---------------------------------------------------------------------------
// Circular inversion and stereographic projection
// ---------------------------------------------------------------------------

/// Image of P on the ray center->P with |OP| * |OP'| = r^2. Points at
/// infinity map to the center; the center itself throws CenterInversion.
HPoint invert_point(const Circle& c, const HPoint& p);

/// Image of a line or circle: lines/circles through the center become
/// lines, the others circles.
GenCircle invert_gencircle(const Circle& c, const GenCircle& g);

enum class StereoPole { North, South };

/// Point of the unit sphere centered at the origin.
class SpherePoint {
 public:
  SpherePoint(double x, double y, double z);
  const Eigen::Vector3d& vec() const { return v_; }

 private:
  Eigen::Vector3d v_;
};

/// Projection from the pole onto the plane z = 0.
HPoint stereo_project(StereoPole pole, const SpherePoint& s);
/// Inverse of stereo_project for a finite plane point.
SpherePoint stereo_lift(StereoPole pole, const HPoint& p);
/// Lift from the north pole, project from the south pole.
HPoint ns_composition(const HPoint& p);

/// Plane n . X = offset in space.
struct Plane {
  Eigen::Vector3d normal;
  double offset;
};

/// Central projection of a point of `src` onto `dst` from `center`.
/// Returns homogeneous space coordinates (x, y, z, w); w = 0 when the ray is
/// parallel to `dst`.
Eigen::Vector4d central_project(const Eigen::Vector3d& center, const Plane& src, const Plane& dst,
                                const Eigen::Vector3d& p);

// ---------------------------------------------------------------------------
// Pole, polar and harmonic conjugates
// ---------------------------------------------------------------------------

HLine polar(const Conic& c, const HPoint& p);
HPoint pole(const Conic& c, const HLine& l);

/// D with (A,B;C,D) = -1, built as the inverse of C in the circle on
/// diameter AB.
HPoint harmonic_conjugate(const HPoint& a, const HPoint& b, const HPoint& c);

// ---------------------------------------------------------------------------
// Conjugate conics and ideal chords
// ---------------------------------------------------------------------------

/// Conic sharing center and the diameter pair (dir, conjugate of dir) with
/// the sign of the squared ordinate along `dir` flipped.
Conic conjugate_conic(const Conic& c, const Vec2& dir);

/// Endpoints of the ideal chord cut on c by a line that misses it.
std::pair<HPoint, HPoint> ideal_chord(const Conic& c, const HLine& l);

/// Radical axis of two non-concentric circles.
HLine ideal_common_secant(const Circle& c1, const Circle& c2);

// ---------------------------------------------------------------------------
// Organic generation
// ---------------------------------------------------------------------------

/// Two lines spanning the pencil through p, chosen deterministically.
std::pair<HLine, HLine> pencil_basis(const HPoint& p);

/// Projectivity between the pencils through `source` and `target`:
/// the line (l * basis(source)) maps to (matrix * l) * basis(target).
struct Projectivity {
  HPoint source;
  HPoint target;
  Eigen::Matrix2d matrix;

  HLine line_at(const Vec2& param, bool at_target) const;
  HLine image(const Vec2& param) const { return line_at(matrix * param, true); }
  /// Pencil parameter of a line through the source point.
  Vec2 source_param(const HLine& l) const;
};

struct OrganicConic {
  Conic conic;
  /// Locus splits into two lines (perspectivity).
  bool degenerate = false;
};

/// Meet point of a source line and its image.
std::optional<HPoint> organic_point(const Projectivity& sigma, const Vec2& param);
OrganicConic organic_conic(const Projectivity& sigma);

// ---------------------------------------------------------------------------
// Bellavitis-Hirst quadratic inversion
// ---------------------------------------------------------------------------

enum class Fundamental { A, B, C };

/// Fundamental conic, pole A and the real base points B, C of the polar
/// of A on the conic (absent when that polar misses the conic).
struct BHConfig {
  Conic gamma;
  HPoint pole;
  std::optional<HPoint> base_b;
  std::optional<HPoint> base_c;

  bool has_real_base() const { return base_b.has_value() && base_c.has_value(); }
  HPoint fundamental(Fundamental f) const;
};

/// Builds the configuration; B, C are ordered so that A, B, C run
/// counterclockwise.
BHConfig make_bh_config(const Conic& gamma, const HPoint& pole);

/// A = (0,0), B = (1,0), C = (1/2, sqrt(3)/2), gamma tangent to AB at B
/// and AC at C.
BHConfig canonical_bh_config();

/// P' = polar(P) meet line(A, P).
HPoint bh_invert(const BHConfig& cfg, const HPoint& p);

/// Exact image conic of a line: the quadratic form L(f(P)).
Conic bh_line_image(const BHConfig& cfg, const HLine& l);

/// First-order limit of bh_invert(P) as P approaches a fundamental point
/// along `approach`.
HPoint bh_blowup_limit(const BHConfig& cfg, Fundamental base, const HLine& approach);

/// Circle inscribed in the canonical fundamental triangle.
Circle canonical_incircle();

}  // namespace geo
