#include "fscrit/quadric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace fscrit {

CMatrix quadric_matrix(const Section& s) {
  if (s.m() != 2) throw std::invalid_argument("quadric_matrix requires a section of O(2)");
  const int dim = s.n() + 1;
  CMatrix c = CMatrix::Zero(dim, dim);
  for (std::size_t t = 0; t < s.basis().size(); ++t) {
    const MultiIndex& alpha = s.basis()[t];
    std::vector<int> vars;
    for (int v = 0; v < dim; ++v)
      for (int k = 0; k < alpha[v]; ++k) vars.push_back(v);
    if (vars[0] == vars[1]) {
      c(vars[0], vars[0]) = s.coeffs()(t);
    } else {
      c(vars[0], vars[1]) = 0.5 * s.coeffs()(t);
      c(vars[1], vars[0]) = 0.5 * s.coeffs()(t);
    }
  }
  return c;
}

Section quadric_section(const CMatrix& c) {
  const int dim = static_cast<int>(c.rows());
  if (c.cols() != dim || dim < 2) throw std::invalid_argument("quadric_section needs a square matrix of size >= 2");
  std::vector<std::pair<MultiIndex, Complex>> terms;
  for (int i = 0; i < dim; ++i) {
    for (int j = i; j < dim; ++j) {
      MultiIndex alpha(dim, 0);
      ++alpha[i];
      ++alpha[j];
      terms.emplace_back(alpha, i == j ? c(i, i) : c(i, j) + c(j, i));
    }
  }
  return Section::from_terms(dim - 1, 2, terms);
}

QuadricCanonicalForm takagi(const CMatrix& c) {
  const Eigen::Index dim = c.rows();
  if (c.cols() != dim) throw std::invalid_argument("takagi needs a square matrix");
  const double scale = std::max(c.norm(), 1e-300);
  if ((c - c.transpose()).norm() > 1e-12 * scale) throw std::invalid_argument("takagi needs a symmetric matrix");

  // With C = A + iB and u = x + iy, C conj(u) = sigma u is the real symmetric
  // eigenproblem [[A, B], [B, -A]] (x; y) = sigma (x; y). The spectrum is
  // {+sigma_i} u {-sigma_i}; the +sigma eigenvectors are complex orthonormal.
  RMatrix big(2 * dim, 2 * dim);
  big.topLeftCorner(dim, dim) = c.real();
  big.topRightCorner(dim, dim) = c.imag();
  big.bottomLeftCorner(dim, dim) = c.imag();
  big.bottomRightCorner(dim, dim) = -c.real();
  Eigen::SelfAdjointEigenSolver<RMatrix> solver(big);

  // Walk eigenpairs from the top and keep the ones that are complex-linearly
  // independent of those already taken. Only the sigma = 0 block can
  // produce dependent candidates (u and i u both appear there).
  std::vector<CVector> vecs;
  std::vector<double> sigmas;
  for (Eigen::Index k = 2 * dim - 1; k >= 0 && static_cast<Eigen::Index>(vecs.size()) < dim; --k) {
    CVector u(dim);
    for (Eigen::Index r = 0; r < dim; ++r) u(r) = Complex(solver.eigenvectors()(r, k), solver.eigenvectors()(dim + r, k));
    for (const auto& prev : vecs) u -= prev.dot(u) * prev;
    const double len = u.norm();
    if (len < 0.5) continue;
    vecs.push_back(u / len);
    sigmas.push_back(std::max(solver.eigenvalues()(k), 0.0));
  }
  if (static_cast<Eigen::Index>(vecs.size()) != dim) throw std::runtime_error("takagi: failed to build a unitary basis");

  // Ascending order.
  std::reverse(vecs.begin(), vecs.end());
  std::reverse(sigmas.begin(), sigmas.end());
  CMatrix v(dim, dim);
  RVector a(dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    v.col(k) = vecs[k];
    a(k) = sigmas[k];
  }
  // Re-orthonormalize to absorb rounding before the unitary check.
  Eigen::HouseholderQR<CMatrix> qr(v);
  CMatrix q = qr.householderQ() * CMatrix::Identity(dim, dim);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < dim; ++k) q.col(k) *= r(k, k) / std::abs(r(k, k));

  const double amax = a.maxCoeff();
  bool strict = a(0) > kQuadricGapTol * amax;
  for (Eigen::Index k = 1; k < dim; ++k) strict = strict && (a(k) - a(k - 1) > kQuadricGapTol * amax);
  return QuadricCanonicalForm{a, UnitaryMap(q.conjugate()), strict};
}

std::vector<QuadricCritical> quadric_critical_set(const QuadricCanonicalForm& q) {
  if (!q.strict) throw NotGeneric("quadric coefficients are not strictly increasing and positive");
  const int dim = static_cast<int>(q.a.size());
  const int n = dim - 1;
  std::vector<QuadricCritical> out;
  for (int i = 0; i < dim; ++i) out.push_back(QuadricCritical{ProjectivePoint(q.U.matrix().col(i)), n + i});
  return out;
}

bool is_smooth_quadric(const QuadricCanonicalForm& q) { return q.a(0) > kQuadricGapTol * q.a.maxCoeff(); }

}  // namespace fscrit
