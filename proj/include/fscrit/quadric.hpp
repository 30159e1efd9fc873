#pragma once

// Closed-form treatment of sections of O(2): Takagi diagonalization to
// sum a_i W_i^2 and the resulting critical points p_i of index n+i.

#include <vector>

#include "fscrit/sections.hpp"

namespace fscrit {

struct QuadricCanonicalForm {
  RVector a;      ///< Takagi values, ascending, non-negative
  UnitaryMap U;   ///< s(U Z) = sum a_i Z_i^2, i.e. C = conj(U) diag(a) U*
  bool strict;    ///< a_0 > 0 and a strictly increasing
};

/// Symmetric coefficient matrix C with s(Z) = Z^T C Z. Requires m = 2.
CMatrix quadric_matrix(const Section& s);
/// The section Z^T C Z for symmetric C.
Section quadric_section(const CMatrix& c);

/// Takagi factorization of a complex symmetric matrix. Throws
/// std::invalid_argument if C is not symmetric within 1e-12 relative.
QuadricCanonicalForm takagi(const CMatrix& c);

/// Relative tolerance used for strictness and smoothness decisions.
inline constexpr double kQuadricGapTol = 1e-9;

struct QuadricCritical {
  ProjectivePoint point;
  int index;
};

/// The n+1 points U e_i with indices n+i. Throws NotGeneric unless q.strict.
std::vector<QuadricCritical> quadric_critical_set(const QuadricCanonicalForm& q);

/// Full rank, i.e. a_0 > 0 (relative to a_max).
bool is_smooth_quadric(const QuadricCanonicalForm& q);

}  // namespace fscrit
