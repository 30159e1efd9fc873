#pragma once

// Holomorphic sections of O(m) over CP^n as homogeneous polynomials, their
// chart representatives, and the Fubini-Study derivatives used downstream.

#include <iosfwd>
#include <memory>
#include <vector>

#include "fscrit/geometry.hpp"

namespace fscrit {

using MultiIndex = std::vector<int>;

/// All exponent vectors of length `num_vars` with entries summing to `degree`,
/// in descending lexicographic order (Z_0^degree first).
std::vector<MultiIndex> monomial_basis(int num_vars, int degree);

/// Number of monomials of the given degree in `num_vars` variables.
std::size_t monomial_count(int num_vars, int degree);

/// alpha! / |alpha|!  (inverse multinomial coefficient).
double inverse_multinomial(const MultiIndex& alpha);

/// A section of O(m) on CP^n: sum over |alpha| = m of c_alpha Z^alpha.
///
/// Coefficients are stored densely, aligned with monomial_basis(n+1, m). The
/// zero section (max |c| <= 1e-300) is rejected.
class Section {
 public:
  Section(int n, int m, CVector coeffs);

  /// Builds from sparse terms; repeated multi-indices accumulate.
  static Section from_terms(int n, int m, const std::vector<std::pair<MultiIndex, Complex>>& terms);

  int n() const { return n_; }
  int m() const { return m_; }
  const std::vector<MultiIndex>& basis() const { return *basis_; }
  const CVector& coeffs() const { return coeffs_; }
  Complex coefficient(const MultiIndex& alpha) const;

  /// Unitarily invariant (Bombieri) norm: sum |c_alpha|^2 alpha!/m!.
  /// Satisfies |s(Z)| <= norm() for unit Z.
  double norm() const;
  Section scaled(Complex factor) const;

  /// Value of the polynomial at homogeneous coordinates Z (not normalized).
  Complex eval(const CVector& z) const;
  /// Holomorphic gradient dS/dZ_i.
  CVector gradient(const CVector& z) const;
  /// Holomorphic Hessian d^2 S / dZ_i dZ_k.
  CMatrix hessian(const CVector& z) const;

  /// The section Z -> s(M Z).
  Section compose(const CMatrix& m) const;
  /// The pushed-forward section s o U^{-1}, whose critical points are U applied
  /// to those of s.
  Section transformed(const UnitaryMap& u) const;

 private:
  int n_;
  int m_;
  std::shared_ptr<const std::vector<MultiIndex>> basis_;
  CVector coeffs_;
};

/// Polynomial in affine coordinates of one chart, f(z) = s(Z) with Z_i = 1.
class ChartPolynomial {
 public:
  struct Jet {
    Complex value;
    CVector d1;  ///< df/dz_j
    CMatrix d2;  ///< d^2 f / dz_j dz_k
  };

  ChartPolynomial(ChartIndex chart, int n, int m, std::vector<MultiIndex> exponents, std::vector<Complex> coeffs);

  ChartIndex chart() const { return chart_; }
  int n() const { return n_; }
  int m() const { return m_; }
  const std::vector<MultiIndex>& exponents() const { return exponents_; }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  Complex coefficient(const MultiIndex& beta) const;

  Complex value(const CVector& z) const;
  /// Value plus derivatives up to `order` (1 or 2).
  Jet jet(const CVector& z, int order = 2) const;

 private:
  ChartIndex chart_;
  int n_;
  int m_;
  std::vector<MultiIndex> exponents_;
  std::vector<Complex> coeffs_;
};

ChartPolynomial dehomogenize(const Section& s, ChartIndex chart);

/// Derivatives of the Fubini-Study potential phi = m log(1 + |z|^2).
struct FSPotentialJet {
  double value;
  CVector d1;        ///< d phi / d z_j = m conj(z_j) / (1+|z|^2)
  CMatrix d2_holo;   ///< d^2 phi / d z_j d z_k = -m conj(z_j z_k) / (1+|z|^2)^2
  CMatrix d2_mixed;  ///< d^2 phi / d z_j d conj(z_k)
};

FSPotentialJet fs_jet(const CVector& z, int m);

/// Inverse of the FS metric g_{jk} = d^2 log(1+|z|^2) / dz_j dconj(z_k):
/// (1+|z|^2)(I + conj(z) z^T).
CMatrix fs_metric_inverse(const CVector& z);

/// The (1,0) covariant derivative df - f dphi in the chart of a point.
struct Covector {
  ChartIndex chart;
  CVector components;
  /// Pointwise FS norm of nabla' s divided by ||s||; chart independent.
  double residual;
};

Covector nabla_prime(const Section& s, const ProjectivePoint& p);
Covector nabla_prime(const Section& s, const ProjectivePoint& p, ChartIndex chart);

/// |s|^2 = |f(z)|^2 (1+|z|^2)^(-m).
double norm_sq(const Section& s, const ProjectivePoint& p);
double norm_sq(const Section& s, const ProjectivePoint& p, ChartIndex chart);

/// Riemannian (FS) gradient of log|s|^2 in chart coordinates, components
/// ordered (x_1..x_n, y_1..y_n) with z_j = x_j + i y_j.
struct TangentVector {
  ChartIndex chart;
  RVector components;
};

/// Throws ZeroLocus when |s(p)|^2 / ||s||^2 < 1e-20.
TangentVector grad_log_norm_sq(const Section& s, const ProjectivePoint& p);
TangentVector grad_log_norm_sq(const Section& s, const ProjectivePoint& p, ChartIndex chart);

/// w0 Z_0 + w1 Z_1 with |w0|^2 + |w1|^2 = 1 and canonical phase.
class LinearFactor {
 public:
  LinearFactor(Complex w0, Complex w1);
  /// The linear form vanishing at `zero`.
  static LinearFactor vanishing_at(const ProjectivePoint& zero);

  Complex w0() const { return w0_; }
  Complex w1() const { return w1_; }
  ProjectivePoint zero() const;
  Section as_section() const;

 private:
  Complex w0_;
  Complex w1_;
};

/// Factors a binary form (n = 1) into m linear factors, with multiplicity.
std::vector<LinearFactor> factor_binary_form(const Section& s);

/// Product of linear forms as a section of O(factors.size()) on CP^1.
Section expand_product(const std::vector<LinearFactor>& factors);

struct ZeroCluster {
  ProjectivePoint point;
  int multiplicity;
};

/// Zeros of a binary form grouped at FS distance `merge_tol`.
std::vector<ZeroCluster> binary_zeros(const Section& s, double merge_tol = 1e-6);

/// Gaussian ensemble: c_alpha sqrt(m!/alpha!) with c_alpha standard complex
/// normal (E|c|^2 = 1). Invariant under U(n+1).
Section random_section(int n, int m, unsigned long long seed);

/// Monomials spanning the sections with nabla' s = 0 at [1,0,...,0]:
/// all alpha with alpha_0 != m-1.
std::vector<MultiIndex> kernel_basis_A0(int n, int m);

/// Text format: first line "n m", then one line per nonzero coefficient
/// "a_0 ... a_n re im". Doubles are written in shortest round-trip form.
void write_section(std::ostream& os, const Section& s);
/// Reads the text format; '#' starts a comment. Throws InvalidSection.
Section read_section(std::istream& is);
/// Several sections back to back, each starting at its "n m" header.
std::vector<Section> read_sections(std::istream& is);

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double x);

}  // namespace fscrit
