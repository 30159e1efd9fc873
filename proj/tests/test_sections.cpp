#include <doctest.h>

#include <algorithm>
#include <numbers>
#include <sstream>

#include "fscrit/sections.hpp"
#include "oracles.hpp"

using namespace fscrit;

namespace {

Section quadric_z0_2z1() { return Section::from_terms(1, 2, {{{2, 0}, 1.0}, {{0, 2}, 2.0}}); }

Section fermat_cubic() { return Section::from_terms(1, 3, {{{0, 3}, 1.0}, {{3, 0}, -1.0}}); }

ProjectivePoint pt(std::initializer_list<Complex> c) {
  CVector v(c.size());
  int i = 0;
  for (Complex z : c) v(i++) = z;
  return ProjectivePoint(v);
}

ProjectivePoint random_point(int n, std::mt19937_64& rng) { return ProjectivePoint(oracle::random_cvector(n + 1, 1.0, rng)); }

// Complex-valued central differences of g along real coordinate i.
template <class G>
Complex partial(const G& g, const CVector& z, Eigen::Index j, bool imaginary, double h) {
  CVector a = z, b = z;
  const Complex step = imaginary ? Complex(0, h) : Complex(h, 0);
  a(j) += step;
  b(j) -= step;
  return (g(a) - g(b)) / (2 * h);
}

// Wirtinger d/dz_j and d/dconj(z_j) of a complex function.
template <class G>
std::pair<Complex, Complex> wirtinger(const G& g, const CVector& z, Eigen::Index j, double h) {
  const Complex dx = partial(g, z, j, false, h);
  const Complex dy = partial(g, z, j, true, h);
  return {(dx - Complex(0, 1) * dy) / 2.0, (dx + Complex(0, 1) * dy) / 2.0};
}

}  // namespace

TEST_CASE("monomial basis") {
  const auto b = monomial_basis(3, 2);
  REQUIRE(b.size() == 6);
  CHECK(b.front() == MultiIndex{2, 0, 0});
  CHECK(b.back() == MultiIndex{0, 0, 2});
  CHECK(std::is_sorted(b.begin(), b.end(), std::greater<>()));
  CHECK(monomial_count(4, 5) == 56);
  CHECK(inverse_multinomial({1, 1}) == doctest::Approx(0.5));
  CHECK(inverse_multinomial({3, 0}) == doctest::Approx(1.0));
}

TEST_CASE("section construction") {
  CHECK_THROWS_AS(Section(1, 2, CVector::Zero(3)), std::invalid_argument);
  CHECK_THROWS_AS(Section(1, 2, CVector::Ones(4)), std::invalid_argument);
  const Section s = Section::from_terms(1, 2, {{{1, 1}, 1.0}, {{1, 1}, 2.0}});
  CHECK(s.coefficient({1, 1}) == Complex(3.0));
  CHECK(s.coefficient({2, 0}) == Complex(0.0));
  CHECK_THROWS(Section::from_terms(1, 2, {{{1, 0}, 1.0}}));
}

TEST_CASE("Bombieri norm is unitarily invariant and bounds |s| on the unit sphere") {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 20; ++k) {
    const int n = 1 + k % 3, m = 1 + k % 4;
    const Section s = random_section(n, m, 500 + k);
    const UnitaryMap u = random_unitary(n, 900 + k);
    CHECK(s.transformed(u).norm() == doctest::Approx(s.norm()).epsilon(1e-12));
    for (int t = 0; t < 20; ++t) {
      const auto p = random_point(n, rng);
      CHECK(std::abs(s.eval(p.coords())) <= s.norm() * (1 + 1e-12));
    }
  }
  CHECK(Section::from_terms(1, 2, {{{1, 1}, 1.0}}).norm() == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("dehomogenize examples") {
  const auto f = dehomogenize(quadric_z0_2z1(), ChartIndex(0));
  CHECK(f.coefficient({0}) == Complex(1.0));
  CHECK(f.coefficient({2}) == Complex(2.0));
  CHECK(f.coefficient({1}) == Complex(0.0));

  const auto g = dehomogenize(Section::from_terms(2, 3, {{{3, 0, 0}, 1.0}}), ChartIndex(0));
  CHECK(g.exponents().size() == 1);
  CHECK(g.coefficient({0, 0}) == Complex(1.0));

  const auto h = dehomogenize(Section::from_terms(1, 2, {{{1, 1}, 1.0}}), ChartIndex(1));
  CHECK(h.coefficient({1}) == Complex(1.0));
  CHECK(h.exponents().size() == 1);
}

TEST_CASE("chart polynomial derivatives match finite differences") {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 40; ++k) {
    const int n = 1 + k % 3, m = 2 + k % 3, chart = k % (n + 1);
    const Section s = random_section(n, m, 77 + k);
    const auto f = dehomogenize(s, ChartIndex(chart));
    const CVector z = oracle::random_cvector(n, 0.6, rng);
    auto value = [&](const CVector& w) { return oracle::eval_poly(s, oracle::lift(w, chart)); };
    const auto jet = f.jet(z, 2);
    CHECK(std::abs(jet.value - value(z)) < 1e-12 * (1 + std::abs(jet.value)));
    for (int j = 0; j < n; ++j) {
      const auto [dz, dzbar] = wirtinger(value, z, j, 1e-5);
      CHECK(std::abs(jet.d1(j) - dz) <= 1e-7 * std::max(1.0, std::abs(dz)));
      CHECK(std::abs(dzbar) < 1e-7);
      auto d1j = [&](const CVector& w) { return f.jet(w, 1).d1(j); };
      for (int l = 0; l < n; ++l) {
        const auto [d2, unused] = wirtinger(d1j, z, l, 1e-5);
        CHECK(std::abs(jet.d2(j, l) - d2) <= 1e-7 * std::max(1.0, std::abs(d2)));
      }
    }
  }
}

TEST_CASE("fs_jet examples") {
  const auto origin = fs_jet(CVector::Zero(2), 3);
  CHECK(origin.value == 0.0);
  CHECK(origin.d1.norm() == 0.0);
  CHECK(origin.d2_holo.norm() == 0.0);
  CHECK((origin.d2_mixed - 3.0 * CMatrix::Identity(2, 2)).norm() < 1e-15);

  CVector one(1);
  one << 1.0;
  const auto j = fs_jet(one, 2);
  CHECK(j.value == doctest::Approx(2 * std::log(2.0)));
  CHECK(std::abs(j.d1(0) - 1.0) < 1e-15);
  CHECK(std::abs(j.d2_mixed(0, 0) - 0.5) < 1e-15);
  CHECK(std::abs(j.d2_holo(0, 0) + 0.5) < 1e-15);
}

TEST_CASE("fs_jet is symmetric / Hermitian positive definite and its inverse metric is exact") {
  std::mt19937_64 rng(41);
  for (int k = 0; k < 50; ++k) {
    const int n = 1 + k % 4, m = 1 + k % 5;
    const CVector z = oracle::random_cvector(n, 1.0, rng);
    const auto jet = fs_jet(z, m);
    CHECK((jet.d2_holo - jet.d2_holo.transpose()).norm() < 1e-14);
    CHECK((jet.d2_mixed - jet.d2_mixed.adjoint()).norm() < 1e-14);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(jet.d2_mixed);
    CHECK(es.eigenvalues().minCoeff() > 0.0);
    // g_{jk} = d2_mixed / m, with G^{-1} from the closed form.
    const CMatrix g = jet.d2_mixed / static_cast<double>(m);
    CHECK((g * fs_metric_inverse(z) - CMatrix::Identity(n, n)).norm() < 1e-12);
  }
}

TEST_CASE("nabla_prime examples") {
  for (int m = 1; m <= 4; ++m) {
    const Section s = Section::from_terms(2, m, {{{m, 0, 0}, 1.0}});
    CHECK(nabla_prime(s, pt({1, 0, 0})).residual < 1e-15);
  }
  CHECK(nabla_prime(quadric_z0_2z1(), pt({0, 1})).residual < 1e-15);
  CHECK(nabla_prime(quadric_z0_2z1(), pt({1, 0})).residual < 1e-15);

  // s = Z0 + Z1: xi(z) = 1 - (1+z) conj(z)/(1+|z|^2) = (1 - conj z)/(1+|z|^2)
  // vanishes only at z = 1, the antipode of the zero z = -1.
  const Section lin = Section::from_terms(1, 1, {{{1, 0}, 1.0}, {{0, 1}, 1.0}});
  CHECK(nabla_prime(lin, pt({1, 1})).residual < 1e-15);
  CVector z(1);
  z << 0.5;
  const auto cov = nabla_prime(lin, from_chart(z, ChartIndex(0)), ChartIndex(0));
  CHECK(std::abs(cov.components(0) - 0.5 / 1.25) < 1e-15);
  // Grid oracle: the residual has a single minimum on a chart-0 grid, at z = 1.
  double best = 1e9;
  Complex arg;
  for (int a = -40; a <= 40; ++a)
    for (int b = -40; b <= 40; ++b) {
      CVector w(1);
      w << Complex(a * 0.05, b * 0.05);
      const double r = nabla_prime(lin, from_chart(w, ChartIndex(0)), ChartIndex(0)).residual;
      if (r < best) best = r, arg = w(0);
    }
  CHECK(std::abs(arg - 1.0) < 1e-12);
}

TEST_CASE("nabla_prime is the holomorphic derivative of s e^{-phi} and the residual is chart free") {
  std::mt19937_64 rng(43);
  for (int k = 0; k < 40; ++k) {
    const int n = 1 + k % 3, m = 1 + k % 4;
    const Section s = random_section(n, m, 300 + k);
    const CVector z = oracle::random_cvector(n, 0.7, rng);
    const auto p = from_chart(z, ChartIndex(0));
    const auto cov = nabla_prime(s, p, ChartIndex(0));
    // xi_j = e^{phi} d/dz_j (f e^{-phi}).
    auto weighted = [&](const CVector& w) {
      return oracle::eval_poly(s, oracle::lift(w, 0)) * std::pow(1.0 + w.squaredNorm(), -m);
    };
    const double e_phi = std::pow(1.0 + z.squaredNorm(), m);
    for (int j = 0; j < n; ++j) {
      const auto [dz, unused] = wirtinger(weighted, z, j, 1e-6);
      CHECK(std::abs(cov.components(j) - e_phi * dz) <= 1e-6 * std::max(1.0, std::abs(e_phi * dz)));
    }
    for (int c = 1; c <= n; ++c) {
      if (std::abs(p[c]) < 0.2) continue;
      CHECK(std::abs(nabla_prime(s, p, ChartIndex(c)).residual - cov.residual) < 1e-10);
    }
    CHECK(nabla_prime(s.scaled(Complex(3, -4)), p).residual == doctest::Approx(cov.residual).epsilon(1e-12));
  }
}

TEST_CASE("norm_sq") {
  for (int m = 1; m <= 3; ++m) {
    const Section s = Section::from_terms(2, m, {{{m, 0, 0}, 1.0}});
    CHECK(norm_sq(s, pt({1, 0, 0})) == doctest::Approx(1.0));
    CHECK(norm_sq(s, pt({0, 0, 1})) == 0.0);
  }
  std::mt19937_64 rng(47);
  for (int k = 0; k < 40; ++k) {
    const int n = 1 + k % 3, m = 1 + k % 4;
    const Section s = random_section(n, m, 600 + k);
    const auto p = random_point(n, rng);
    const double direct = std::norm(s.eval(p.coords()));
    for (int c = 0; c <= n; ++c)
      if (std::abs(p[c]) > 0.2) CHECK(norm_sq(s, p, ChartIndex(c)) == doctest::Approx(direct).epsilon(1e-12));
    const UnitaryMap u = random_unitary(n, 40 + k);
    CHECK(std::abs(norm_sq(s.transformed(u), u.apply(p)) - norm_sq(s, p)) < 1e-11);
  }
}

TEST_CASE("grad_log_norm_sq is the Fubini-Study gradient") {
  std::mt19937_64 rng(53);
  for (int k = 0; k < 30; ++k) {
    const int n = 1 + k % 3, m = 1 + k % 4;
    const Section s = random_section(n, m, 700 + k);
    const CVector z = oracle::random_cvector(n, 0.6, rng);
    const auto p = from_chart(z, ChartIndex(0));
    const RVector v = grad_log_norm_sq(s, p, ChartIndex(0)).components;
    const RVector du = oracle::fd_gradient([&](const RVector& x) { return oracle::log_norm_sq(s, oracle::to_complex(x), 0); },
                                           oracle::to_real(z), 1e-6);
    // h_{jk} = d^2 log(1+|z|^2) / dz_j dconj(z_k); the real metric is Re h.
    const double w = 1.0 + z.squaredNorm();
    const CMatrix h = (w * CMatrix::Identity(n, n) - z.conjugate() * z.transpose()) / (w * w);
    const CVector vc = oracle::to_complex(v);
    for (int i = 0; i < 2 * n; ++i) {
      CVector e = CVector::Zero(n);
      e(i % n) = i < n ? Complex(1, 0) : Complex(0, 1);
      const double metric = (vc.transpose() * h * e.conjugate()).value().real();
      CHECK(metric == doctest::Approx(du(i)).epsilon(1e-6).scale(1.0));
    }
  }
  CHECK(grad_log_norm_sq(quadric_z0_2z1(), pt({1, 0})).components.norm() < 1e-15);
  CHECK_THROWS_AS(grad_log_norm_sq(Section::from_terms(1, 2, {{{2, 0}, 1.0}}), pt({0, 1})), ZeroLocus);
}

TEST_CASE("gradient of a factored binary form is the sum over its factors") {
  std::mt19937_64 rng(59);
  for (int k = 0; k < 20; ++k) {
    const Section s = random_section(1, 2 + k % 5, 800 + k);
    const auto factors = factor_binary_form(s);
    const auto q = random_point(1, rng);
    const ChartIndex c = chart_of(q);
    RVector sum = RVector::Zero(2);
    for (const auto& l : factors) sum += grad_log_norm_sq(l.as_section(), q, c).components;
    const RVector g = grad_log_norm_sq(s, q, c).components;
    CHECK((g - sum).norm() <= 1e-10 * std::max(1.0, g.norm()));
  }
}

TEST_CASE("gradient of a linear form points toward the antipode of its zero") {
  std::mt19937_64 rng(61);
  for (int k = 0; k < 30; ++k) {
    const auto zero = random_point(1, rng);
    const Section l = LinearFactor::vanishing_at(zero).as_section();
    const auto q = random_point(1, rng);
    const ChartIndex c = chart_of(q);
    const CVector z = to_chart(q, c);
    const CVector v = oracle::to_complex(grad_log_norm_sq(l, q, c).components);
    const double eps = 1e-7;
    const Eigen::Vector3d x0 = cp1_to_sphere(q).xyz();
    const Eigen::Vector3d moved = cp1_to_sphere(from_chart(z + eps * v / v.norm(), c)).xyz();
    const Eigen::Vector3d target = -cp1_to_sphere(zero).xyz();
    const Eigen::Vector3d along = (moved - x0).normalized();
    const Eigen::Vector3d toward = (target - target.dot(x0) * x0).normalized();
    CHECK(along.dot(toward) > 1 - 1e-6);
  }
}

TEST_CASE("binary form factorization") {
  const auto zeros = binary_zeros(fermat_cubic());
  REQUIRE(zeros.size() == 3);
  for (const auto& z : zeros) {
    const Complex w = z.point[1] / z.point[0];
    CHECK(std::abs(w * w * w - 1.0) < 1e-12);
    CHECK(z.multiplicity == 1);
  }
  for (int m = 1; m <= 5; ++m) {
    const auto zm = binary_zeros(Section::from_terms(1, m, {{{0, m}, 1.0}}));
    REQUIRE(zm.size() == 1);
    CHECK(zm[0].multiplicity == m);
    CHECK(zm[0].point.approx_equal(pt({1, 0})));
  }
  for (int k = 0; k < 30; ++k) {
    const Section s = random_section(1, 5, 1000 + k);
    const auto factors = factor_binary_form(s);
    REQUIRE(factors.size() == 5);
    const Section e = expand_product(factors);
    const Complex lambda = e.coeffs().dot(s.coeffs()) / e.coeffs().squaredNorm();
    CHECK((lambda * e.coeffs() - s.coeffs()).norm() <= 1e-10 * s.coeffs().norm());
    for (const auto& f : factors) CHECK(std::abs(s.eval(f.zero().coords())) < 1e-10 * s.norm());
  }
  // Z0^3 + 2 Z0^2 Z1 has affine degree 1, so two zeros sit at [0,1].
  const auto partial = factor_binary_form(Section::from_terms(1, 3, {{{3, 0}, 1.0}, {{2, 1}, 2.0}}));
  const auto at_inf = std::count_if(partial.begin(), partial.end(), [](const LinearFactor& f) { return f.zero().approx_equal(pt({0, 1}), 1e-10); });
  CHECK(at_inf == 2);
}

TEST_CASE("random sections: determinism and ensemble invariance") {
  CHECK((random_section(2, 3, 5).coeffs() - random_section(2, 3, 5).coeffs()).norm() == 0.0);
  CHECK((random_section(2, 3, 5).coeffs() - random_section(2, 3, 6).coeffs()).norm() > 0.0);

  constexpr int kSamples = 10000;
  auto mean_se = [](const std::vector<double>& v) {
    double mean = 0;
    for (double x : v) mean += x;
    mean /= v.size();
    double var = 0;
    for (double x : v) var += (x - mean) * (x - mean);
    return std::pair<double, double>{mean, std::sqrt(var / (v.size() - 1) / v.size())};
  };

  SUBCASE("n=1, m=1: constant expected norm_sq") {
    const auto p = pt({1, 0}), q = pt({Complex(0.3, 0.2), Complex(-1, 0.5)});
    std::vector<double> a, b;
    for (int k = 0; k < kSamples; ++k) {
      const Section s = random_section(1, 1, 20000 + k);
      a.push_back(norm_sq(s, p));
      b.push_back(norm_sq(s, q));
    }
    const auto [ma, sa] = mean_se(a);
    const auto [mb, sb] = mean_se(b);
    CHECK(std::abs(ma - 1.0) < 3 * sa);
    CHECK(std::abs(mb - 1.0) < 3 * sb);
  }
  SUBCASE("n=2, m=3: mean at U p equals mean at p") {
    const auto p = pt({1, Complex(0.4, -0.2), 0.3});
    const UnitaryMap u = random_unitary(2, 4242);
    std::vector<double> diff;
    for (int k = 0; k < kSamples; ++k) {
      const Section s = random_section(2, 3, 50000 + k);
      diff.push_back(norm_sq(s, u.apply(p)) - norm_sq(s, p));
    }
    const auto [md, sd] = mean_se(diff);
    CHECK(std::abs(md) < 3 * sd);
  }
}

TEST_CASE("kernel basis of A_0") {
  CHECK(kernel_basis_A0(1, 2) == std::vector<MultiIndex>{{2, 0}, {0, 2}});
  CHECK(kernel_basis_A0(2, 1) == std::vector<MultiIndex>{{1, 0, 0}});
  for (int n = 1; n <= 4; ++n)
    for (int m = 1; m <= 5; ++m) CHECK(kernel_basis_A0(n, m).size() == monomial_count(n + 1, m) - n);
  // Every kernel monomial is critical at the origin; the complement is not.
  for (const auto& alpha : kernel_basis_A0(2, 3)) {
    const Section s = Section::from_terms(2, 3, {{alpha, 1.0}, {{3, 0, 0}, 1.0}});
    CHECK(nabla_prime(s, pt({1, 0, 0})).residual < 1e-15);
  }
  CHECK(nabla_prime(Section::from_terms(2, 3, {{{2, 1, 0}, 1.0}, {{3, 0, 0}, 1.0}}), pt({1, 0, 0})).residual > 0.1);
}

TEST_CASE("section text format round trips exactly") {
  for (int k = 0; k < 10; ++k) {
    const Section s = random_section(1 + k % 3, 1 + k % 4, 99 + k);
    std::stringstream ss;
    write_section(ss, s);
    const Section back = read_section(ss);
    CHECK(back.n() == s.n());
    CHECK(back.m() == s.m());
    CHECK((back.coeffs() - s.coeffs()).norm() == 0.0);
  }
  std::istringstream commented("# quadric\n1 2\n2 0 1 0 # Z0^2\n0 2 2 0\n");
  const Section q = read_section(commented);
  CHECK((q.coeffs() - quadric_z0_2z1().coeffs()).norm() == 0.0);

  std::istringstream bad_degree("1 2\n1 0 1 0\n");
  CHECK_THROWS_AS(read_section(bad_degree), InvalidSection);
  std::istringstream bad_number("1 2\n2 0 x 0\n");
  CHECK_THROWS_AS(read_section(bad_number), InvalidSection);
  std::istringstream empty("");
  CHECK_THROWS_AS(read_section(empty), InvalidSection);

  std::stringstream several;
  for (int k = 0; k < 3; ++k) write_section(several, random_section(1 + k, 2 + k, 7 + k));
  const auto all = read_sections(several);
  REQUIRE(all.size() == 3);
  for (int k = 0; k < 3; ++k) CHECK((all[k].coeffs() - random_section(1 + k, 2 + k, 7 + k).coeffs()).norm() == 0.0);
  several.clear();
  several.seekg(0);
  CHECK_THROWS_AS(read_section(several), InvalidSection);
  std::istringstream headless("2 0 1 0\n");
  CHECK_THROWS_AS(read_sections(headless), InvalidSection);

  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) CHECK(std::stod(format_double(x)) == x);
}
