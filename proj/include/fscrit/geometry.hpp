#pragma once

// Points of CP^n, affine charts, unitary actions and the Fubini-Study distance.
// CP^1 is modelled on the unit 2-sphere with angles doubled (FS diameter pi/2
// maps to sphere diameter pi).

#include <vector>

#include "fscrit/types.hpp"

namespace fscrit {

/// A point of CP^n, stored as a unit vector of homogeneous coordinates whose
/// first nonzero coordinate is real and positive.
class ProjectivePoint {
 public:
  /// Normalizes `coords`; throws std::invalid_argument for the zero vector.
  explicit ProjectivePoint(CVector coords);

  /// Homogeneous coordinates (n+1 entries).
  const CVector& coords() const { return coords_; }
  Complex operator[](int i) const { return coords_(i); }
  /// Complex dimension n.
  int dim() const { return static_cast<int>(coords_.size()) - 1; }

  /// True when |<p,q>| >= 1 - tol.
  bool approx_equal(const ProjectivePoint& other, double tol = 1e-12) const;

 private:
  CVector coords_;
};

/// The point whose only nonvanishing coordinate is Z_i.
ProjectivePoint basis_point(int n, int i);

/// Hermitian inner product <p,q> = sum conj(p_i) q_i.
Complex inner(const ProjectivePoint& p, const ProjectivePoint& q);

/// Fubini-Study distance in [0, pi/2].
double fs_distance(const ProjectivePoint& p, const ProjectivePoint& q);

/// The unique point at distance pi/2 on CP^1. Throws std::invalid_argument for n != 1.
ProjectivePoint antipode(const ProjectivePoint& p);

class ChartIndex {
 public:
  explicit ChartIndex(int i) : i_(i) {
    if (i < 0) throw std::invalid_argument("chart index must be non-negative");
  }
  int value() const { return i_; }
  friend bool operator==(ChartIndex a, ChartIndex b) { return a.i_ == b.i_; }

 private:
  int i_;
};

/// Chart of a largest-modulus coordinate (smallest index on ties); chart
/// coordinates there have modulus <= 1.
ChartIndex chart_of(const ProjectivePoint& p);

/// Affine coordinates Z_j / Z_i (j != i, ascending). Throws ChartUndefined
/// when |Z_i| <= 1e-12.
CVector to_chart(const ProjectivePoint& p, ChartIndex chart);

ProjectivePoint from_chart(const CVector& z, ChartIndex chart);

class UnitaryMap {
 public:
  /// Throws std::invalid_argument unless U U* = I within 1e-12.
  explicit UnitaryMap(CMatrix matrix);

  static UnitaryMap identity(int n);

  const CMatrix& matrix() const { return matrix_; }
  ProjectivePoint apply(const ProjectivePoint& p) const;
  UnitaryMap inverse() const;
  UnitaryMap compose(const UnitaryMap& inner) const;

 private:
  CMatrix matrix_;
};

/// Random unitary drawn from the Haar measure (QR of a complex Ginibre matrix).
UnitaryMap random_unitary(int n, unsigned long long seed);

/// A unitary U with U p = [1,0,...,0] up to phase: the Hermitian reflection
/// exchanging p and [1,0,...,0]. For p = [1,x,0,...]/sqrt(1+x^2) with x > 0
/// this is the involution (Z0 + x Z1, x Z0 - Z1)/sqrt(1+x^2).
UnitaryMap move_to_origin(const ProjectivePoint& p);

/// Unit vector in R^3.
class SpherePoint {
 public:
  explicit SpherePoint(const Eigen::Vector3d& xyz);
  const Eigen::Vector3d& xyz() const { return xyz_; }
  SpherePoint operator-() const { return SpherePoint(-xyz_); }

 private:
  Eigen::Vector3d xyz_;
};

/// Great-circle angle in [0, pi].
double spherical_angle(const SpherePoint& a, const SpherePoint& b);

/// [a,b] -> (2 Re(conj(a) b), 2 Im(conj(a) b), |a|^2 - |b|^2). Requires n = 1.
SpherePoint cp1_to_sphere(const ProjectivePoint& p);
ProjectivePoint sphere_to_cp1(const SpherePoint& x);

}  // namespace fscrit
