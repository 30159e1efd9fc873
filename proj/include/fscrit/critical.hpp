#pragma once

// Critical points of sections (zeros of nabla' s away from the zero locus):
// multistart Newton location, the conjugated Hessian at a critical point, Morse
// indices, non-degeneracy margins and the Poincare-Hopf completeness check on
// CP^1.

#include <optional>
#include <string>
#include <vector>

#include "fscrit/sections.hpp"

namespace fscrit {

/// Second-order data at a critical point p after moving p to [1,0,...,0] and
/// normalizing f(0) = 1, with quadratic part sum a_jk z_j z_k.
struct HessianData {
  CMatrix J;      ///< 2n x 2n Hermitian: [[-2m I, 2A], [2 conj(A), -2m I]]
  CMatrix A;      ///< n x n symmetric, A = 2i a
  CMatrix schur;  ///< n x n Hermitian, -m I + (1/m) A conj(A)
  int m = 0;
};

/// Throws NotCritical when the nabla' residual at p exceeds 1e-8 and
/// ZeroLocus when |s(p)|^2/||s||^2 < 1e-20.
HessianData hessian_at(const Section& s, const ProjectivePoint& p);

/// n + number of negative eigenvalues of the Schur block.
int index_of(const HessianData& h);
/// Number of negative eigenvalues of the full J (independent path).
int index_from_full(const HessianData& h);
/// Smallest absolute eigenvalue of the Schur block.
double schur_margin(const HessianData& h);
/// schur_margin(hessian_at(s, p)).
double degeneracy_margin(const Section& s, const ProjectivePoint& p);

struct CriticalPoint {
  ProjectivePoint point;
  double residual;
  std::optional<int> index;  ///< empty when the margin is below the degeneracy threshold
  double nondeg_margin;
  HessianData hessian;
  int multiplicity_hint = 1;  ///< Newton runs merged into this point
};

struct SolveOptions {
  double residual_tol = 1e-10;
  double dedup_tol = 1e-7;     ///< FS distance
  double degen_tol = 1e-6;     ///< relative; margins below degen_tol * m are degenerate
  double zero_tol = 1e-20;     ///< |s|^2 / ||s||^2 below this is a zero of s
  int starts_per_chart = 0;    ///< 0 selects 50 * m^n
  double start_radius = 1.5;   ///< starts lie in the polydisc |z_j| <= start_radius
  int max_iterations = 60;
  int max_escalations = 2;     ///< reruns with 4x starts while the signed index count is off
  long max_starts = 0;         ///< total budget across escalations; 0 = unlimited
};

enum class CertificationStatus { Certified, Failed, Skipped, NotApplicable };

struct Certification {
  CertificationStatus status = CertificationStatus::NotApplicable;
  std::string reason;
  bool complete() const { return status == CertificationStatus::Certified; }
};

const char* to_string(CertificationStatus s);

struct SolveReport {
  std::vector<CriticalPoint> criticals;
  std::vector<ZeroCluster> zeros;  ///< CP^1 only
  long starts_used = 0;
  int zero_hits = 0;               ///< converged runs discarded as zeros of s
  bool max_starts_exceeded = false;
  Certification certified;
};

SolveReport find_critical_points(const Section& s, const SolveOptions& opts = {});

/// On CP^1: zeros + sum over criticals of (-1)^index must equal 2. Skipped
/// unless all m zeros are simple and every critical point is non-degenerate.
Certification poincare_hopf_check(const SolveReport& report, int m);

/// W* H W with W = (1/sqrt 2)[[I, iI], [iI, I]], for H the real Hessian in
/// (x_1..x_n, y_1..y_n) order. Applied to log|s|^2 in coordinates centred at
/// a critical point this reproduces HessianData::J.
CMatrix conjugate_real_hessian(const RMatrix& real_hessian);

}  // namespace fscrit
