#pragma once

// Spherical convexity on CP^1 (unit-sphere model) and the Gauss-Lucas
// certificate: critical points of a binary form whose zeros lie in an open
// hemisphere are located in the hull P of the zeros or its antipodal image.

#include <optional>
#include <vector>

#include "fscrit/critical.hpp"

namespace fscrit {

/// Angular tolerance separating interior, boundary and outside verdicts.
inline constexpr double kAngularTol = 1e-8;

enum class PolygonKind { Point, GeodesicSegment, Polygon };

struct SphericalPolygon {
  PolygonKind kind;
  std::vector<SpherePoint> vertices;  ///< counterclockwise seen from the pole
  SpherePoint pole;                   ///< pole . v > 0 for every vertex
};

enum class ConeVerdict { FullPlane, HalfPlane, Line, Ray, ProperCone, Empty };

struct ConeClass {
  ConeVerdict verdict;
  double max_gap;  ///< largest angle between consecutive tangent directions
};

enum class Location { InteriorP, InteriorPinf, BoundaryP, BoundaryPinf, Outside };

enum class CriticalVerdict { InteriorP, InteriorPinf, BoundaryP, BoundaryPinf, Violation };

const char* to_string(PolygonKind k);
const char* to_string(ConeVerdict v);
const char* to_string(Location l);
const char* to_string(CriticalVerdict v);

/// Unit u maximizing min_i u . v_i; empty unless that minimum exceeds 1e-9.
/// The optimum is the direction of the minimum-norm point of the convex hull
/// of the points, which lies on a face spanned by at most three of them.
std::optional<SpherePoint> hemisphere_witness(const std::vector<SpherePoint>& points);

/// Convex hull through the gnomonic projection at `pole`. Throws
/// HemisphereViolation if some point is not strictly in the pole's hemisphere.
SphericalPolygon spherical_hull(const std::vector<SpherePoint>& points, const SpherePoint& pole);

/// Antipodal image; the vertex order is reversed so it stays counterclockwise
/// around the negated pole.
SphericalPolygon opposite_polygon(const SphericalPolygon& p);

/// Cone spanned at q by the initial directions of minimizing geodesics to the
/// vertices. Vertices antipodal to q are dropped; throws
/// std::invalid_argument if q coincides with a vertex.
ConeClass cone_classify(const SpherePoint& q, const std::vector<SpherePoint>& vertices);

Location locate(const SpherePoint& q, const SphericalPolygon& p, const SphericalPolygon& p_inf);

struct LocatedCritical {
  CriticalPoint critical;
  CriticalVerdict verdict;
};

struct GaussLucasCertificate {
  std::vector<ZeroCluster> zeros;
  SphericalPolygon P;
  SphericalPolygon P_inf;
  std::vector<LocatedCritical> criticals;
  bool theorem_holds = false;       ///< no Violation
  bool has_index2_in_Pinf = false;
  bool all_nondegenerate = false;
  /// Evaluated only when all critical points are non-degenerate.
  std::optional<bool> has_critical_in_P;
  bool p_criticals_interior = true;     ///< every critical in P is interior
  bool pinf_criticals_interior = true;  ///< every critical in P_inf is interior
  bool authoritative = false;           ///< solver completeness not refuted
  SolveReport solve;
};

/// Requires n = 1 and m >= 2. Throws HemisphereViolation when the zeros do not
/// lie in an open hemisphere.
GaussLucasCertificate gauss_lucas_certify(const Section& s, const SolveOptions& opts = {});

}  // namespace fscrit
