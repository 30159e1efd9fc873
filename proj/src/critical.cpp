#include "fscrit/critical.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace fscrit {

namespace {

constexpr int kMaxDim = 8;  // Newton works on 2n <= 16 real unknowns
using NVec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 2 * kMaxDim, 1>;
using NMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 2 * kMaxDim, 2 * kMaxDim>;

constexpr double kCriticalPrecondition = 1e-8;
constexpr double kZeroLocusRatio = 1e-20;

// Chart polynomial and its first and second derivatives flattened into term
// lists for repeated evaluation of the critical system
// xi_j = f_j - f m conj(z_j) / (1+|z|^2).
class CriticalSystem {
 public:
  CriticalSystem(const ChartPolynomial& poly) : n_(poly.n()), m_(poly.m()) {
    for (std::size_t t = 0; t < poly.exponents().size(); ++t) {
      const MultiIndex& e = poly.exponents()[t];
      const Complex c = poly.coeffs()[t];
      add_term(value_terms_, 0, c, e);
      for (int j = 0; j < n_; ++j) {
        if (e[j] == 0) continue;
        MultiIndex ej = e;
        --ej[j];
        add_term(d1_terms_, j, c * static_cast<double>(e[j]), ej);
        for (int k = j; k < n_; ++k) {
          if (ej[k] == 0) continue;
          MultiIndex ejk = ej;
          --ejk[k];
          add_term(d2_terms_, j * n_ + k, c * static_cast<double>(e[j] * ej[k]), ejk);
        }
      }
    }
    pw_.resize(static_cast<std::size_t>(n_) * (m_ + 1));
  }

  int dim() const { return 2 * n_; }

  // Residual (Re xi, Im xi) and optionally its real Jacobian.
  void evaluate(const NVec& x, NVec& out, NMat* jac) {
    std::array<Complex, kMaxDim> z{};
    for (int j = 0; j < n_; ++j) z[j] = Complex(x(j), x(n_ + j));
    const int stride = m_ + 1;
    for (int v = 0; v < n_; ++v) {
      Complex* row = &pw_[static_cast<std::size_t>(v) * stride];
      row[0] = 1.0;
      for (int k = 1; k <= m_; ++k) row[k] = row[k - 1] * z[v];
    }
    std::array<Complex, 1> f{};
    std::array<Complex, kMaxDim> d1{};
    std::array<Complex, kMaxDim * kMaxDim> d2{};
    accumulate(value_terms_, f.data());
    accumulate(d1_terms_, d1.data());
    if (jac) {
      accumulate(d2_terms_, d2.data());
      for (int j = 0; j < n_; ++j)
        for (int k = 0; k < j; ++k) d2[j * n_ + k] = d2[k * n_ + j];
    }

    double r = 0.0;
    for (int j = 0; j < n_; ++j) r += std::norm(z[j]);
    const double w = 1.0 + r;
    const double mw = m_ / w;
    out.resize(2 * n_);
    for (int j = 0; j < n_; ++j) {
      const Complex xi = d1[j] - f[0] * mw * std::conj(z[j]);
      out(j) = xi.real();
      out(n_ + j) = xi.imag();
    }
    if (!jac) return;
    jac->resize(2 * n_, 2 * n_);
    const double mw2 = m_ / (w * w);
    for (int j = 0; j < n_; ++j) {
      for (int k = 0; k < n_; ++k) {
        const Complex zj = std::conj(z[j]);
        const Complex zk = std::conj(z[k]);
        // P = d xi_j / d z_k, Q = d xi_j / d conj(z_k).
        const Complex p = d2[j * n_ + k] - d1[k] * mw * zj + f[0] * mw2 * zj * zk;
        const Complex q = -f[0] * mw2 * ((j == k ? w : 0.0) - zj * z[k]);
        const Complex sum = p + q;
        const Complex diff = p - q;
        (*jac)(j, k) = sum.real();
        (*jac)(j, n_ + k) = -diff.imag();
        (*jac)(n_ + j, k) = sum.imag();
        (*jac)(n_ + j, n_ + k) = diff.real();
      }
    }
  }

 private:
  struct Terms {
    std::vector<int> slot;
    std::vector<Complex> coeff;
    std::vector<int> offsets;  // n entries per term: v * (m+1) + exponent
  };

  void add_term(Terms& terms, int slot, Complex c, const MultiIndex& e) {
    terms.slot.push_back(slot);
    terms.coeff.push_back(c);
    for (int v = 0; v < n_; ++v) terms.offsets.push_back(v * (m_ + 1) + e[v]);
  }

  void accumulate(const Terms& terms, Complex* out) const {
    const int* off = terms.offsets.data();
    for (std::size_t t = 0; t < terms.coeff.size(); ++t, off += n_) {
      Complex v = terms.coeff[t];
      for (int k = 0; k < n_; ++k) v *= pw_[off[k]];
      out[terms.slot[t]] += v;
    }
  }

  int n_;
  int m_;
  Terms value_terms_;
  Terms d1_terms_;
  Terms d2_terms_;
  std::vector<Complex> pw_;
};

enum class RunOutcome { Converged, Diverged, Stalled };

// Damped Newton with backtracking on ||F||.
RunOutcome newton(CriticalSystem& sys, NVec& x, int max_iterations, double escape_radius) {
  const int d = sys.dim();
  const int n = d / 2;
  NVec f(d), trial_f(d), step(d), trial(d);
  NMat jac(d, d), trial_jac(d, d);
  sys.evaluate(x, f, &jac);
  double fnorm = f.norm();
  for (int it = 0; it < max_iterations; ++it) {
    if (fnorm == 0.0) return RunOutcome::Converged;
    step = jac.colPivHouseholderQr().solve(-f);
    if (!step.allFinite()) return RunOutcome::Stalled;
    double t = 1.0;
    bool accepted = false;
    int accepted_at = -1;
    for (int ls = 0; ls < 12; ++ls, t *= 0.5) {
      trial = x + t * step;
      // The full step is usually taken, so its Jacobian is formed eagerly.
      sys.evaluate(trial, trial_f, ls == 0 ? &trial_jac : nullptr);
      const double tn = trial_f.norm();
      if (tn < (1.0 - 1e-4 * t) * fnorm) {
        accepted = true;
        accepted_at = ls;
        break;
      }
    }
    const double step_len = t * step.norm();
    if (!accepted) {
      // No decrease: either at machine precision on a root or stuck.
      return step.norm() <= 1e-10 * (1.0 + x.norm()) ? RunOutcome::Converged : RunOutcome::Stalled;
    }
    x = trial;
    for (int j = 0; j < n; ++j)
      if (std::hypot(x(j), x(n + j)) > escape_radius) return RunOutcome::Diverged;
    if (accepted_at == 0) {
      f = trial_f;
      jac = trial_jac;
    } else {
      sys.evaluate(x, f, &jac);
    }
    fnorm = f.norm();
    if (step_len <= 1e-14 * (1.0 + x.norm())) return RunOutcome::Converged;
  }
  return RunOutcome::Stalled;
}

double radical_inverse(long index, int base) {
  double result = 0.0;
  double f = 1.0 / base;
  while (index > 0) {
    result += f * static_cast<double>(index % base);
    index /= base;
    f /= base;
  }
  return result;
}

constexpr std::array<int, 2 * kMaxDim> kPrimes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

// Halton point `index` mapped to the polydisc of the given radius (area-uniform per factor).
NVec halton_start(long index, int n, double radius) {
  NVec x(2 * n);
  for (int j = 0; j < n; ++j) {
    const double u = radical_inverse(index, kPrimes[2 * j]);
    const double v = radical_inverse(index, kPrimes[2 * j + 1]);
    const double r = radius * std::sqrt(u);
    const double theta = 2.0 * std::numbers::pi * v;
    x(j) = r * std::cos(theta);
    x(n + j) = r * std::sin(theta);
  }
  return x;
}

CVector to_complex(const NVec& x, int n) {
  CVector z(n);
  for (int j = 0; j < n; ++j) z(j) = Complex(x(j), x(n + j));
  return z;
}

NVec to_real(const CVector& z) {
  const int n = static_cast<int>(z.size());
  NVec x(2 * n);
  for (int j = 0; j < n; ++j) {
    x(j) = z(j).real();
    x(n + j) = z(j).imag();
  }
  return x;
}

Eigen::VectorXd hermitian_eigenvalues(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

struct Candidate {
  ProjectivePoint point;
  double residual;
};

// Re-solves in the best chart of p, keeping whichever iterate has the smaller
// invariant residual.
Candidate polish(const Section& s, const ProjectivePoint& p, int n) {
  Candidate best{p, nabla_prime(s, p).residual};
  const ChartIndex chart = chart_of(p);
  CriticalSystem sys(dehomogenize(s, chart));
  NVec x = to_real(to_chart(p, chart));
  NVec f(2 * n);
  NMat jac(2 * n, 2 * n);
  for (int it = 0; it < 3; ++it) {
    sys.evaluate(x, f, &jac);
    const NVec step = jac.colPivHouseholderQr().solve(-f);
    if (!step.allFinite()) break;
    x += step;
    const ProjectivePoint q = from_chart(to_complex(x, n), chart);
    const double res = nabla_prime(s, q).residual;
    if (res < best.residual) best = Candidate{q, res};
    else break;
  }
  return best;
}

bool critical_less(const CriticalPoint& a, const CriticalPoint& b) {
  const int ia = a.index.value_or(1 << 20);
  const int ib = b.index.value_or(1 << 20);
  if (ia != ib) return ia < ib;
  for (Eigen::Index k = 0; k < a.point.coords().size(); ++k) {
    const Complex ca = a.point[static_cast<int>(k)];
    const Complex cb = b.point[static_cast<int>(k)];
    if (ca.real() != cb.real()) return ca.real() > cb.real();
    if (ca.imag() != cb.imag()) return ca.imag() > cb.imag();
  }
  return false;
}

}  // namespace

const char* to_string(CertificationStatus s) {
  switch (s) {
    case CertificationStatus::Certified: return "certified";
    case CertificationStatus::Failed: return "failed";
    case CertificationStatus::Skipped: return "skipped";
    case CertificationStatus::NotApplicable: return "not_applicable";
  }
  return "unknown";
}

HessianData hessian_at(const Section& s, const ProjectivePoint& p) {
  if (p.dim() != s.n()) throw std::invalid_argument("hessian_at: dimension mismatch");
  const double sn = s.norm();
  if (norm_sq(s, p) < kZeroLocusRatio * sn * sn) throw ZeroLocus("point lies on the zero locus of s");
  const double residual = nabla_prime(s, p).residual;
  if (residual > kCriticalPrecondition)
    throw NotCritical("nabla' residual " + format_double(residual) + " exceeds 1e-8");

  const int n = s.n();
  const int m = s.m();
  // f'(z) = s(U* (1, z)); U* e_0 is p up to phase and the remaining columns
  // of U* span the chart directions.
  const CMatrix uh = move_to_origin(p).matrix().adjoint();
  const CVector q = uh.col(0);
  const CMatrix b = uh.rightCols(n);
  const Complex f0 = s.eval(q);
  const CMatrix d2 = b.transpose() * s.hessian(q) * b;
  const CMatrix a = d2 / (2.0 * f0);

  HessianData h;
  h.m = m;
  h.A = Complex(0.0, 2.0) * a;
  h.A = 0.5 * (h.A + h.A.transpose()).eval();
  const CMatrix id = CMatrix::Identity(n, n);
  h.J.resize(2 * n, 2 * n);
  h.J.topLeftCorner(n, n) = -2.0 * m * id;
  h.J.topRightCorner(n, n) = 2.0 * h.A;
  h.J.bottomLeftCorner(n, n) = 2.0 * h.A.conjugate();
  h.J.bottomRightCorner(n, n) = -2.0 * m * id;
  h.schur = -static_cast<double>(m) * id + (h.A * h.A.conjugate()) / static_cast<double>(m);
  h.schur = 0.5 * (h.schur + h.schur.adjoint()).eval();
  return h;
}

int index_of(const HessianData& h) {
  const Eigen::VectorXd ev = hermitian_eigenvalues(h.schur);
  return static_cast<int>(h.schur.rows()) + static_cast<int>((ev.array() < 0.0).count());
}

int index_from_full(const HessianData& h) {
  const Eigen::VectorXd ev = hermitian_eigenvalues(h.J);
  return static_cast<int>((ev.array() < 0.0).count());
}

double schur_margin(const HessianData& h) { return hermitian_eigenvalues(h.schur).cwiseAbs().minCoeff(); }

double degeneracy_margin(const Section& s, const ProjectivePoint& p) { return schur_margin(hessian_at(s, p)); }

CMatrix conjugate_real_hessian(const RMatrix& real_hessian) {
  const Eigen::Index d = real_hessian.rows();
  const Eigen::Index n = d / 2;
  if (real_hessian.cols() != d || d % 2 != 0) throw std::invalid_argument("real Hessian must be 2n x 2n");
  CMatrix w(d, d);
  const CMatrix id = CMatrix::Identity(n, n);
  w.topLeftCorner(n, n) = id;
  w.topRightCorner(n, n) = Complex(0.0, 1.0) * id;
  w.bottomLeftCorner(n, n) = Complex(0.0, 1.0) * id;
  w.bottomRightCorner(n, n) = id;
  w /= std::sqrt(2.0);
  return w.adjoint() * real_hessian.cast<Complex>() * w;
}

Certification poincare_hopf_check(const SolveReport& report, int m) {
  Certification c;
  if (report.criticals.empty() && report.zeros.empty()) {
    c.status = CertificationStatus::Skipped;
    c.reason = "empty report";
    return c;
  }
  if (!report.criticals.empty() && report.criticals.front().point.dim() != 1) {
    c.status = CertificationStatus::NotApplicable;
    c.reason = "Poincare-Hopf certificate is implemented for CP^1 only";
    return c;
  }
  const bool simple = static_cast<int>(report.zeros.size()) == m &&
                      std::all_of(report.zeros.begin(), report.zeros.end(), [](const ZeroCluster& z) { return z.multiplicity == 1; });
  if (!simple) {
    c.status = CertificationStatus::Skipped;
    c.reason = "zeros are not all simple";
    return c;
  }
  int sum = static_cast<int>(report.zeros.size());
  for (const auto& cp : report.criticals) {
    if (!cp.index) {
      c.status = CertificationStatus::Skipped;
      c.reason = "degenerate critical point present";
      return c;
    }
    sum += (*cp.index % 2 == 0) ? 1 : -1;
  }
  c.status = sum == 2 ? CertificationStatus::Certified : CertificationStatus::Failed;
  c.reason = "zeros - saddles + extrema = " + std::to_string(sum);
  return c;
}

namespace {

// Sum of (-1)^index over the critical points equals the Euler characteristic
// of CP^n minus a smooth degree-m hypersurface, (1 - (1-m)^(n+1)) / m.
// Returns true (nothing to act on) when some point is degenerate.
bool signed_count_matches(const SolveReport& report, int n, int m) {
  long sum = 0;
  for (const auto& cp : report.criticals) {
    if (!cp.index) return true;
    sum += (*cp.index % 2 == 0) ? 1 : -1;
  }
  long power = 1;
  for (int k = 0; k <= n; ++k) power *= 1 - m;
  return sum == (1 - power) / m;
}

}  // namespace

SolveReport find_critical_points(const Section& input, const SolveOptions& opts) {
  const int n = input.n();
  const int m = input.m();
  if (n > kMaxDim) throw std::invalid_argument("find_critical_points supports n <= 8");
  // Work on the unit-norm representative; criticals are scale invariant.
  const Section s = input.scaled(1.0 / input.norm());

  long per_chart = opts.starts_per_chart;
  if (per_chart <= 0) {
    per_chart = 50;
    for (int k = 0; k < n; ++k) per_chart *= m;
  }
  const double escape_radius = 2.0 * opts.start_radius;
  std::vector<CriticalSystem> systems;
  for (int c = 0; c <= n; ++c) systems.emplace_back(dehomogenize(s, ChartIndex(c)));

  SolveReport report;
  if (n == 1) report.zeros = binary_zeros(s);

  std::vector<Candidate> found;
  std::vector<int> hits;
  long next_index = 1;  // Halton index; index 0 is the origin
  long budget = per_chart;
  for (int round = 0; round <= opts.max_escalations; ++round) {
    if (opts.max_starts > 0) {
      const long remaining = (opts.max_starts - report.starts_used) / (n + 1);
      if (remaining < budget) {
        report.max_starts_exceeded = true;
        budget = remaining;
      }
      if (budget <= 0) break;
    }
    for (long k = 0; k < budget; ++k, ++next_index) {
      for (int c = 0; c <= n; ++c) {
        NVec x = halton_start(next_index, n, opts.start_radius);
        ++report.starts_used;
        if (newton(systems[c], x, opts.max_iterations, escape_radius) != RunOutcome::Converged) continue;
        const ProjectivePoint p = from_chart(to_complex(x, n), ChartIndex(c));
        if (norm_sq(s, p) < opts.zero_tol) {
          ++report.zero_hits;
          continue;
        }
        auto near = [&](const ProjectivePoint& q) {
          return std::find_if(found.begin(), found.end(),
                              [&](const Candidate& f) { return fs_distance(f.point, q) < opts.dedup_tol; });
        };
        // Runs landing on a known point are counted without re-polishing.
        if (auto known = near(p); known != found.end()) {
          ++hits[known - found.begin()];
          continue;
        }
        const Candidate cand = polish(s, p, n);
        if (!(cand.residual <= opts.residual_tol)) continue;
        auto it = near(cand.point);
        if (it != found.end()) {
          ++hits[it - found.begin()];
          if (cand.residual < it->residual) *it = cand;
        } else {
          found.push_back(cand);
          hits.push_back(1);
        }
      }
    }

    report.criticals.clear();
    for (std::size_t i = 0; i < found.size(); ++i) {
      CriticalPoint cp{found[i].point, found[i].residual, std::nullopt, 0.0, hessian_at(s, found[i].point), hits[i]};
      cp.nondeg_margin = schur_margin(cp.hessian);
      if (cp.nondeg_margin > opts.degen_tol * m) cp.index = index_of(cp.hessian);
      report.criticals.push_back(std::move(cp));
    }
    std::sort(report.criticals.begin(), report.criticals.end(), critical_less);

    if (n != 1) {
      report.certified = Certification{CertificationStatus::NotApplicable, "no completeness certificate for n >= 2"};
      // Not a certificate (smoothness of the zero locus is not checked), but a
      // signed-count mismatch means a point was missed when the locus is smooth.
      if (signed_count_matches(report, n, m)) break;
    } else {
      report.certified = poincare_hopf_check(report, m);
      if (report.certified.status != CertificationStatus::Failed) break;
    }
    budget *= 4;
  }
  return report;
}

}  // namespace fscrit
