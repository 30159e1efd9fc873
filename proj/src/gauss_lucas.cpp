#include "fscrit/gauss_lucas.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fscrit {

namespace {

using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;

constexpr double kWitnessFloor = 1e-9;
constexpr double kPi = std::numbers::pi;

// Orthonormal e1, e2 with (e1, e2, u) right-handed.
std::pair<Vec3, Vec3> tangent_basis(const Vec3& u) {
  Vec3 axis = Vec3::UnitX();
  if (std::abs(u.x()) > 0.6) axis = Vec3::UnitY();
  const Vec3 e1 = axis.cross(u).normalized();
  const Vec3 e2 = u.cross(e1);
  return {e1, e2};
}

double cross2(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

// Minimum-norm point of the affine hull of the given points, if it lies in
// their convex hull.
std::optional<Vec3> simplex_min_norm(const std::vector<Vec3>& pts) {
  const int k = static_cast<int>(pts.size());
  Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(k + 1, k + 1);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) kkt(i, j) = pts[i].dot(pts[j]);
    kkt(i, k) = 1.0;
    kkt(k, i) = 1.0;
  }
  rhs(k) = 1.0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(kkt);
  if (!lu.isInvertible()) return std::nullopt;
  const Eigen::VectorXd sol = lu.solve(rhs);
  Vec3 x = Vec3::Zero();
  for (int i = 0; i < k; ++i) {
    if (sol(i) < -1e-12) return std::nullopt;
    x += sol(i) * pts[i];
  }
  return x;
}

double wrap_angle(double a) {
  a = std::fmod(a + kPi, 2.0 * kPi);
  if (a < 0) a += 2.0 * kPi;
  return a - kPi;
}

}  // namespace

const char* to_string(PolygonKind k) {
  switch (k) {
    case PolygonKind::Point: return "point";
    case PolygonKind::GeodesicSegment: return "geodesic_segment";
    case PolygonKind::Polygon: return "polygon";
  }
  return "unknown";
}

const char* to_string(ConeVerdict v) {
  switch (v) {
    case ConeVerdict::FullPlane: return "full_plane";
    case ConeVerdict::HalfPlane: return "half_plane";
    case ConeVerdict::Line: return "line";
    case ConeVerdict::Ray: return "ray";
    case ConeVerdict::ProperCone: return "proper_cone";
    case ConeVerdict::Empty: return "empty";
  }
  return "unknown";
}

const char* to_string(Location l) {
  switch (l) {
    case Location::InteriorP: return "interior_P";
    case Location::InteriorPinf: return "interior_P_inf";
    case Location::BoundaryP: return "boundary_P";
    case Location::BoundaryPinf: return "boundary_P_inf";
    case Location::Outside: return "outside";
  }
  return "unknown";
}

const char* to_string(CriticalVerdict v) {
  switch (v) {
    case CriticalVerdict::InteriorP: return "interior_P";
    case CriticalVerdict::InteriorPinf: return "interior_P_inf";
    case CriticalVerdict::BoundaryP: return "boundary_P";
    case CriticalVerdict::BoundaryPinf: return "boundary_P_inf";
    case CriticalVerdict::Violation: return "violation";
  }
  return "unknown";
}

std::optional<SpherePoint> hemisphere_witness(const std::vector<SpherePoint>& points) {
  if (points.empty()) return std::nullopt;
  std::vector<Vec3> v;
  for (const auto& p : points) {
    const bool dup = std::any_of(v.begin(), v.end(), [&](const Vec3& w) { return (w - p.xyz()).norm() < 1e-15; });
    if (!dup) v.push_back(p.xyz());
  }
  const int count = static_cast<int>(v.size());
  // The minimum-norm point x* of conv(v) is characterized by x* . v_i >= |x*|^2
  // for all i; max_u min_i u . v_i = |x*| with u = x*/|x*|.
  auto optimal = [&](const Vec3& x) {
    const double xx = x.squaredNorm();
    return std::all_of(v.begin(), v.end(), [&](const Vec3& w) { return x.dot(w) >= xx - 1e-12; });
  };
  std::optional<Vec3> best;
  auto consider = [&](const std::vector<Vec3>& face) {
    if (auto x = simplex_min_norm(face); x && optimal(*x)) {
      if (!best || x->norm() < best->norm()) best = x;
    }
  };
  for (int i = 0; i < count; ++i) {
    consider({v[i]});
    for (int j = i + 1; j < count; ++j) {
      consider({v[i], v[j]});
      for (int k = j + 1; k < count; ++k) consider({v[i], v[j], v[k]});
    }
  }
  if (!best || best->norm() <= kWitnessFloor) return std::nullopt;
  const Vec3 u = best->normalized();
  double margin = 1.0;
  for (const auto& w : v) margin = std::min(margin, u.dot(w));
  if (margin <= kWitnessFloor) return std::nullopt;
  return SpherePoint(u);
}

SphericalPolygon spherical_hull(const std::vector<SpherePoint>& points, const SpherePoint& pole) {
  if (points.empty()) throw std::invalid_argument("spherical_hull needs at least one point");
  const Vec3& u = pole.xyz();
  const auto [e1, e2] = tangent_basis(u);
  std::vector<Vec2> planar;
  std::vector<int> origin;  // index into points
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double h = points[i].xyz().dot(u);
    if (!(h > 0.0)) throw HemisphereViolation("point outside the open hemisphere of the pole");
    const Vec3 g = points[i].xyz() / h;
    const Vec2 q(g.dot(e1), g.dot(e2));
    const bool dup = std::any_of(planar.begin(), planar.end(), [&](const Vec2& w) { return (w - q).norm() < 1e-14 * (1.0 + q.norm()); });
    if (dup) continue;
    planar.push_back(q);
    origin.push_back(static_cast<int>(i));
  }

  SphericalPolygon out{PolygonKind::Point, {}, pole};
  if (planar.size() == 1) {
    out.vertices.push_back(points[origin[0]]);
    return out;
  }

  double diameter = 0.0;
  std::size_t ia = 0, ib = 1;
  for (std::size_t i = 0; i < planar.size(); ++i)
    for (std::size_t j = i + 1; j < planar.size(); ++j)
      if (double d = (planar[i] - planar[j]).norm(); d > diameter) {
        diameter = d;
        ia = i;
        ib = j;
      }
  const double area_tol = 1e-12 * diameter * diameter;
  const bool collinear = std::all_of(planar.begin(), planar.end(), [&](const Vec2& w) {
    return std::abs(cross2(planar[ia], planar[ib], w)) <= area_tol;
  });
  if (collinear) {
    out.kind = PolygonKind::GeodesicSegment;
    out.vertices = {points[origin[ia]], points[origin[ib]]};
    return out;
  }

  // Andrew's monotone chain, dropping collinear points.
  std::vector<std::size_t> order(planar.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return planar[a].x() < planar[b].x() || (planar[a].x() == planar[b].x() && planar[a].y() < planar[b].y());
  });
  std::vector<std::size_t> hull(2 * order.size());
  std::size_t k = 0;
  for (std::size_t i : order) {
    while (k >= 2 && cross2(planar[hull[k - 2]], planar[hull[k - 1]], planar[i]) <= area_tol) --k;
    hull[k++] = i;
  }
  for (std::size_t t = order.size() - 1, lower = k + 1; t-- > 0;) {
    const std::size_t i = order[t];
    while (k >= lower && cross2(planar[hull[k - 2]], planar[hull[k - 1]], planar[i]) <= area_tol) --k;
    hull[k++] = i;
  }
  hull.resize(k - 1);
  out.kind = PolygonKind::Polygon;
  for (std::size_t i : hull) out.vertices.push_back(points[origin[i]]);
  return out;
}

SphericalPolygon opposite_polygon(const SphericalPolygon& p) {
  SphericalPolygon out{p.kind, {}, -p.pole};
  for (auto it = p.vertices.rbegin(); it != p.vertices.rend(); ++it) out.vertices.push_back(-*it);
  return out;
}

ConeClass cone_classify(const SpherePoint& q, const std::vector<SpherePoint>& vertices) {
  const Vec3& x = q.xyz();
  const auto [e1, e2] = tangent_basis(x);
  std::vector<double> angles;
  for (const auto& v : vertices) {
    const double ang = spherical_angle(q, v);
    if (ang <= kAngularTol) throw std::invalid_argument("cone_classify: q coincides with a vertex");
    if (ang >= kPi - kAngularTol) continue;  // antipodal vertex: no minimizing direction
    const Vec3 t = v.xyz() - v.xyz().dot(x) * x;
    angles.push_back(std::atan2(t.dot(e2), t.dot(e1)));
  }
  if (angles.empty()) return ConeClass{ConeVerdict::Empty, 2.0 * kPi};
  std::sort(angles.begin(), angles.end());
  double max_gap = angles.front() + 2.0 * kPi - angles.back();
  for (std::size_t i = 1; i < angles.size(); ++i) max_gap = std::max(max_gap, angles[i] - angles[i - 1]);

  ConeVerdict verdict;
  if (max_gap >= 2.0 * kPi - kAngularTol) {
    verdict = ConeVerdict::Ray;
  } else if (max_gap > kPi + kAngularTol) {
    verdict = ConeVerdict::ProperCone;
  } else if (max_gap >= kPi - kAngularTol) {
    const double base = angles.front();
    const bool two_rays = std::all_of(angles.begin(), angles.end(), [&](double a) {
      return std::abs(wrap_angle(a - base)) <= kAngularTol || std::abs(wrap_angle(a - base - kPi)) <= kAngularTol;
    });
    verdict = two_rays ? ConeVerdict::Line : ConeVerdict::HalfPlane;
  } else {
    verdict = ConeVerdict::FullPlane;
  }
  return ConeClass{verdict, max_gap};
}

Location locate(const SpherePoint& q, const SphericalPolygon& p, const SphericalPolygon& p_inf) {
  const bool is_point = p.kind == PolygonKind::Point;
  for (const auto& v : p.vertices)
    if (spherical_angle(q, v) <= kAngularTol) return is_point ? Location::InteriorP : Location::BoundaryP;
  for (const auto& v : p_inf.vertices)
    if (spherical_angle(q, v) <= kAngularTol) return is_point ? Location::InteriorPinf : Location::BoundaryPinf;
  if (is_point) return Location::Outside;

  const bool p_side = q.xyz().dot(p.pole.xyz()) > 0.0;
  const ConeClass cone = cone_classify(q, p.vertices);
  if (p.kind == PolygonKind::GeodesicSegment) {
    if (cone.verdict == ConeVerdict::Line) return p_side ? Location::InteriorP : Location::InteriorPinf;
    return Location::Outside;
  }
  switch (cone.verdict) {
    case ConeVerdict::FullPlane: return p_side ? Location::InteriorP : Location::InteriorPinf;
    case ConeVerdict::HalfPlane:
    case ConeVerdict::Line: return p_side ? Location::BoundaryP : Location::BoundaryPinf;
    default: return Location::Outside;
  }
}

GaussLucasCertificate gauss_lucas_certify(const Section& s, const SolveOptions& opts) {
  if (s.n() != 1 || s.m() < 2) throw std::invalid_argument("Gauss-Lucas certificate needs n = 1 and m >= 2");
  const auto zeros = binary_zeros(s);
  std::vector<SpherePoint> zero_pts;
  for (const auto& z : zeros) zero_pts.push_back(cp1_to_sphere(z.point));
  const auto pole = hemisphere_witness(zero_pts);
  if (!pole) throw HemisphereViolation("zeros are not contained in an open hemisphere");

  SphericalPolygon hull = spherical_hull(zero_pts, *pole);
  SphericalPolygon opposite = opposite_polygon(hull);
  GaussLucasCertificate cert{zeros, std::move(hull), std::move(opposite), {}, false, false, false, std::nullopt, true, true, false, {}};
  cert.solve = find_critical_points(s, opts);
  cert.authoritative = cert.solve.certified.status != CertificationStatus::Failed && !cert.solve.max_starts_exceeded;

  bool any_in_p = false;
  bool violation = false;
  cert.all_nondegenerate = true;
  for (const auto& cp : cert.solve.criticals) {
    const Location loc = locate(cp1_to_sphere(cp.point), cert.P, cert.P_inf);
    CriticalVerdict verdict = CriticalVerdict::Violation;
    switch (loc) {
      case Location::InteriorP: verdict = CriticalVerdict::InteriorP; break;
      case Location::InteriorPinf: verdict = CriticalVerdict::InteriorPinf; break;
      case Location::BoundaryP: verdict = CriticalVerdict::BoundaryP; break;
      case Location::BoundaryPinf: verdict = CriticalVerdict::BoundaryPinf; break;
      case Location::Outside: verdict = CriticalVerdict::Violation; break;
    }
    const bool in_p = verdict == CriticalVerdict::InteriorP || verdict == CriticalVerdict::BoundaryP;
    const bool in_pinf = verdict == CriticalVerdict::InteriorPinf || verdict == CriticalVerdict::BoundaryPinf;
    violation = violation || verdict == CriticalVerdict::Violation;
    any_in_p = any_in_p || in_p;
    if (in_pinf && cp.index == 2) cert.has_index2_in_Pinf = true;
    if (verdict == CriticalVerdict::BoundaryP) cert.p_criticals_interior = false;
    if (verdict == CriticalVerdict::BoundaryPinf) cert.pinf_criticals_interior = false;
    if (!cp.index) cert.all_nondegenerate = false;
    cert.criticals.push_back(LocatedCritical{cp, verdict});
  }
  cert.theorem_holds = !violation;
  if (cert.all_nondegenerate) cert.has_critical_in_P = any_in_p;
  return cert;
}

}  // namespace fscrit
