#include "fscrit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace fscrit {

namespace {

// Coordinates below this modulus do not fix the canonical phase.
constexpr double kPhaseFloor = 1e-13;

}  // namespace

ProjectivePoint::ProjectivePoint(CVector coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2) throw std::invalid_argument("projective point needs at least two coordinates");
  const double norm = coords_.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw std::invalid_argument("homogeneous coordinates must be finite and nonzero");
  coords_ /= norm;
  for (Eigen::Index i = 0; i < coords_.size(); ++i) {
    const double r = std::abs(coords_(i));
    if (r > kPhaseFloor) {
      coords_ *= std::conj(coords_(i)) / r;
      coords_(i) = Complex(r, 0.0);
      break;
    }
  }
}

bool ProjectivePoint::approx_equal(const ProjectivePoint& other, double tol) const {
  if (dim() != other.dim()) return false;
  return std::abs(coords_.dot(other.coords_)) >= 1.0 - tol;
}

ProjectivePoint basis_point(int n, int i) {
  if (i < 0 || i > n) throw std::invalid_argument("basis index out of range");
  CVector c = CVector::Zero(n + 1);
  c(i) = 1.0;
  return ProjectivePoint(c);
}

Complex inner(const ProjectivePoint& p, const ProjectivePoint& q) {
  // Eigen's dot conjugates the first argument.
  return p.coords().dot(q.coords());
}

double fs_distance(const ProjectivePoint& p, const ProjectivePoint& q) {
  if (p.dim() != q.dim()) throw std::invalid_argument("fs_distance: dimension mismatch");
  const Complex c = inner(p, q);
  const double cosd = std::clamp(std::abs(c), 0.0, 1.0);
  // sin of the distance is the length of the component of q orthogonal to p;
  // atan2 keeps full precision near 0 where arccos would not.
  const double sind = (q.coords() - c * p.coords()).norm();
  return std::atan2(std::min(sind, 1.0), cosd);
}

ProjectivePoint antipode(const ProjectivePoint& p) {
  if (p.dim() != 1) throw std::invalid_argument("antipode is defined on CP^1 only");
  CVector q(2);
  q << -std::conj(p[1]), std::conj(p[0]);
  return ProjectivePoint(q);
}

ChartIndex chart_of(const ProjectivePoint& p) {
  int best = 0;
  double best_mod = std::abs(p[0]);
  for (int i = 1; i <= p.dim(); ++i) {
    const double r = std::abs(p[i]);
    if (r > best_mod) {
      best = i;
      best_mod = r;
    }
  }
  return ChartIndex(best);
}

CVector to_chart(const ProjectivePoint& p, ChartIndex chart) {
  const int i = chart.value();
  if (i > p.dim()) throw std::invalid_argument("chart index out of range");
  const Complex zi = p[i];
  if (std::abs(zi) <= 1e-12) throw ChartUndefined("point lies on the hyperplane Z_" + std::to_string(i) + " = 0");
  CVector z(p.dim());
  for (int j = 0, k = 0; j <= p.dim(); ++j) {
    if (j == i) continue;
    z(k++) = p[j] / zi;
  }
  return z;
}

ProjectivePoint from_chart(const CVector& z, ChartIndex chart) {
  const int i = chart.value();
  const int n = static_cast<int>(z.size());
  if (i > n) throw std::invalid_argument("chart index out of range");
  CVector c(n + 1);
  for (int j = 0, k = 0; j <= n; ++j) c(j) = (j == i) ? Complex(1.0) : z(k++);
  return ProjectivePoint(c);
}

UnitaryMap::UnitaryMap(CMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) throw std::invalid_argument("unitary map must be square");
  const CMatrix defect = matrix_ * matrix_.adjoint() - CMatrix::Identity(matrix_.rows(), matrix_.cols());
  if (defect.norm() > 1e-12 * std::max<double>(1.0, static_cast<double>(matrix_.rows())))
    throw std::invalid_argument("matrix is not unitary");
}

UnitaryMap UnitaryMap::identity(int n) { return UnitaryMap(CMatrix::Identity(n + 1, n + 1)); }

ProjectivePoint UnitaryMap::apply(const ProjectivePoint& p) const {
  if (p.coords().size() != matrix_.cols()) throw std::invalid_argument("unitary map: dimension mismatch");
  return ProjectivePoint(matrix_ * p.coords());
}

UnitaryMap UnitaryMap::inverse() const { return UnitaryMap(matrix_.adjoint()); }

UnitaryMap UnitaryMap::compose(const UnitaryMap& inner) const { return UnitaryMap(matrix_ * inner.matrix_); }

UnitaryMap random_unitary(int n, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int dim = n + 1;
  CMatrix g(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) g(r, c) = Complex(normal(rng), normal(rng));
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(dim, dim);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < dim; ++c) {
    const double mod = std::abs(r(c, c));
    if (mod > 0.0) q.col(c) *= r(c, c) / mod;
  }
  return UnitaryMap(q);
}

UnitaryMap move_to_origin(const ProjectivePoint& p) {
  const int dim = p.dim() + 1;
  const double mod0 = std::abs(p[0]);
  const Complex phase = mod0 > 0.0 ? p[0] / mod0 : Complex(1.0);
  CVector v = p.coords();
  v(0) -= phase;
  const double vv = v.squaredNorm();
  if (vv < 1e-30) return UnitaryMap::identity(p.dim());
  CMatrix h = CMatrix::Identity(dim, dim) - (2.0 / vv) * v * v.adjoint();
  return UnitaryMap(std::move(h));
}

SpherePoint::SpherePoint(const Eigen::Vector3d& xyz) : xyz_(xyz) {
  const double norm = xyz_.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw std::invalid_argument("sphere point must be a nonzero finite vector");
  xyz_ /= norm;
}

double spherical_angle(const SpherePoint& a, const SpherePoint& b) {
  return std::atan2(a.xyz().cross(b.xyz()).norm(), a.xyz().dot(b.xyz()));
}

SpherePoint cp1_to_sphere(const ProjectivePoint& p) {
  if (p.dim() != 1) throw std::invalid_argument("sphere model is defined on CP^1 only");
  const Complex w = std::conj(p[0]) * p[1];
  return SpherePoint(Eigen::Vector3d(2.0 * w.real(), 2.0 * w.imag(), std::norm(p[0]) - std::norm(p[1])));
}

ProjectivePoint sphere_to_cp1(const SpherePoint& x) {
  const Eigen::Vector3d& v = x.xyz();
  CVector c(2);
  if (v.z() >= 0.0) {
    const double a = std::sqrt(0.5 * (1.0 + v.z()));
    c << a, Complex(v.x(), v.y()) / (2.0 * a);
  } else {
    // Near the south pole parametrize by the second coordinate instead.
    const double b = std::sqrt(0.5 * (1.0 - v.z()));
    c << Complex(v.x(), -v.y()) / (2.0 * b), b;
  }
  return ProjectivePoint(c);
}

}  // namespace fscrit
