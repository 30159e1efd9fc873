#pragma once

// Independent reference computations for the tests: brute-force evaluation
// from homogeneous coefficients and central finite differences.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "fscrit/sections.hpp"

namespace oracle {

using fscrit::Complex;
using fscrit::CVector;
using fscrit::RMatrix;
using fscrit::RVector;

/// Homogeneous coordinates with Z_chart = 1 and the remaining entries z.
inline CVector lift(const CVector& z, int chart) {
  CVector big(z.size() + 1);
  for (Eigen::Index i = 0, k = 0; i < big.size(); ++i) big(i) = (i == chart) ? Complex(1.0) : z(k++);
  return big;
}

/// Direct sum over monomials.
inline Complex eval_poly(const fscrit::Section& s, const CVector& big) {
  Complex v = 0.0;
  for (std::size_t t = 0; t < s.basis().size(); ++t) {
    Complex mono = s.coeffs()(t);
    for (Eigen::Index i = 0; i < big.size(); ++i) mono *= std::pow(big(i), s.basis()[t][i]);
    v += mono;
  }
  return v;
}

/// log(|f(z)|^2 (1+|z|^2)^(-m)) in the given chart.
inline double log_norm_sq(const fscrit::Section& s, const CVector& z, int chart) {
  return std::log(std::norm(eval_poly(s, lift(z, chart)))) - s.m() * std::log1p(z.squaredNorm());
}

inline CVector to_complex(const RVector& x) {
  const Eigen::Index n = x.size() / 2;
  CVector z(n);
  for (Eigen::Index j = 0; j < n; ++j) z(j) = Complex(x(j), x(n + j));
  return z;
}

inline RVector to_real(const CVector& z) {
  const Eigen::Index n = z.size();
  RVector x(2 * n);
  x.head(n) = z.real();
  x.tail(n) = z.imag();
  return x;
}

using RealFn = std::function<double(const RVector&)>;

inline RVector fd_gradient(const RealFn& f, const RVector& x, double h) {
  RVector g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    RVector a = x, b = x;
    a(i) += h;
    b(i) -= h;
    g(i) = (f(a) - f(b)) / (2 * h);
  }
  return g;
}

/// Second-order central differences.
inline RMatrix fd_hessian(const RealFn& f, const RVector& x, double h) {
  const Eigen::Index d = x.size();
  RMatrix hess(d, d);
  const double f0 = f(x);
  for (Eigen::Index i = 0; i < d; ++i) {
    RVector a = x, b = x;
    a(i) += h;
    b(i) -= h;
    hess(i, i) = (f(a) - 2 * f0 + f(b)) / (h * h);
    for (Eigen::Index j = i + 1; j < d; ++j) {
      RVector pp = x, pm = x, mp = x, mm = x;
      pp(i) += h, pp(j) += h;
      pm(i) += h, pm(j) -= h;
      mp(i) -= h, mp(j) += h;
      mm(i) -= h, mm(j) -= h;
      hess(i, j) = hess(j, i) = (f(pp) - f(pm) - f(mp) + f(mm)) / (4 * h * h);
    }
  }
  return hess;
}

/// Wirtinger derivative d/dz_j from a real gradient in (x, y) order.
inline CVector dz_from_real(const RVector& g) {
  const Eigen::Index n = g.size() / 2;
  CVector d(n);
  for (Eigen::Index j = 0; j < n; ++j) d(j) = Complex(g(j), -g(n + j)) / 2.0;
  return d;
}

inline CVector random_cvector(int n, double scale, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CVector z(n);
  for (int j = 0; j < n; ++j) z(j) = scale * Complex(g(rng), g(rng));
  return z;
}

/// Brute-force search for critical points on CP^1: local minima of the
/// nabla_prime residual on a (g+1)^2 grid over |z| <= 1.05 in both charts,
/// each refined by pattern search. Returns the minima whose residual reaches
/// tol; positive minima are shallow valleys, not critical points.
inline std::vector<fscrit::ProjectivePoint> vanishing_residual_minima(const fscrit::Section& s, int g, double tol = 1e-6) {
  using fscrit::ChartIndex;
  std::vector<fscrit::ProjectivePoint> found;
  const double step = 2.1 / g;
  for (int chart = 0; chart <= 1; ++chart) {
    auto residual = [&](Complex w) {
      CVector z(1);
      z << w;
      return fscrit::nabla_prime(s, fscrit::from_chart(z, ChartIndex(chart)), ChartIndex(chart)).residual;
    };
    std::vector<double> grid((g + 1) * (g + 1), 1e300);
    auto at = [&](int a, int b) -> double& { return grid[a * (g + 1) + b]; };
    auto node = [&](int a, int b) { return Complex(-1.05 + a * step, -1.05 + b * step); };
    for (int a = 0; a <= g; ++a)
      for (int b = 0; b <= g; ++b)
        if (std::abs(node(a, b)) <= 1.05) at(a, b) = residual(node(a, b));
    for (int a = 1; a < g; ++a)
      for (int b = 1; b < g; ++b) {
        // Nodes next to the disc edge are skipped; the other chart covers them.
        const double r = at(a, b);
        bool is_min = r < 1e299;
        for (int da = -1; da <= 1 && is_min; ++da)
          for (int db = -1; db <= 1; ++db)
            if ((da || db) && (at(a + da, b + db) < r || at(a + da, b + db) >= 1e299)) is_min = false;
        if (!is_min) continue;
        Complex w = node(a, b);
        double rw = r;
        for (double h = step; h > 1e-13;) {
          Complex best = w;
          for (int da = -1; da <= 1; ++da)
            for (int db = -1; db <= 1; ++db)
              if (const double rc = residual(w + Complex(da * h, db * h)); rc < rw) rw = rc, best = w + Complex(da * h, db * h);
          if (best == w) h /= 2;
          w = best;
        }
        if (rw > tol) continue;
        CVector z(1);
        z << w;
        found.push_back(fscrit::from_chart(z, ChartIndex(chart)));
      }
  }
  return found;
}

}  // namespace oracle
