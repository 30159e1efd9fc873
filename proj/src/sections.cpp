#include "fscrit/sections.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace fscrit {

namespace {

constexpr double kZeroSectionFloor = 1e-300;
constexpr double kZeroLocusRatio = 1e-20;

void append_monomials(int num_vars, int degree, MultiIndex& prefix, std::vector<MultiIndex>& out) {
  if (static_cast<int>(prefix.size()) == num_vars - 1) {
    prefix.push_back(degree);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int k = degree; k >= 0; --k) {
    prefix.push_back(k);
    append_monomials(num_vars, degree - k, prefix, out);
    prefix.pop_back();
  }
}

std::shared_ptr<const std::vector<MultiIndex>> cached_basis(int num_vars, int degree) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const std::vector<MultiIndex>>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{num_vars, degree}];
  if (!slot) slot = std::make_shared<const std::vector<MultiIndex>>(monomial_basis(num_vars, degree));
  return slot;
}

// Position of alpha in a descending-lex basis, or -1.
long basis_position(const std::vector<MultiIndex>& basis, const MultiIndex& alpha) {
  auto it = std::lower_bound(basis.begin(), basis.end(), alpha, std::greater<MultiIndex>());
  if (it == basis.end() || *it != alpha) return -1;
  return static_cast<long>(it - basis.begin());
}

double factorial(int k) { return std::tgamma(static_cast<double>(k) + 1.0); }

// Power table pw[v][k] = z_v^k for k = 0..max_power.
std::vector<std::vector<Complex>> power_table(const CVector& z, int max_power) {
  std::vector<std::vector<Complex>> pw(z.size(), std::vector<Complex>(max_power + 1));
  for (Eigen::Index v = 0; v < z.size(); ++v) {
    pw[v][0] = 1.0;
    for (int k = 1; k <= max_power; ++k) pw[v][k] = pw[v][k - 1] * z(v);
  }
  return pw;
}

// Value, gradient and Hessian of sum_t c_t z^{e_t} by direct expansion.
void polynomial_jet(const std::vector<MultiIndex>& exps, const std::vector<Complex>& coeffs, const CVector& z, int degree,
                    int order, Complex& value, CVector* d1, CMatrix* d2) {
  const int nv = static_cast<int>(z.size());
  const auto pw = power_table(z, degree);
  auto pow_at = [&](int v, int k) -> Complex { return k < 0 ? Complex(0.0) : pw[v][k]; };
  value = 0.0;
  if (d1) d1->setZero(nv);
  if (d2) d2->setZero(nv, nv);
  for (std::size_t t = 0; t < exps.size(); ++t) {
    const MultiIndex& e = exps[t];
    const Complex c = coeffs[t];
    if (c == Complex(0.0)) continue;
    Complex mono = c;
    for (int v = 0; v < nv; ++v) mono *= pw[v][e[v]];
    value += mono;
    if (order < 1 || !d1) continue;
    for (int j = 0; j < nv; ++j) {
      if (e[j] == 0) continue;
      Complex term = c * static_cast<double>(e[j]) * pow_at(j, e[j] - 1);
      for (int v = 0; v < nv; ++v)
        if (v != j) term *= pw[v][e[v]];
      (*d1)(j) += term;
    }
    if (order < 2 || !d2) continue;
    for (int j = 0; j < nv; ++j) {
      if (e[j] == 0) continue;
      for (int k = j; k < nv; ++k) {
        Complex term;
        if (k == j) {
          if (e[j] < 2) continue;
          term = c * static_cast<double>(e[j] * (e[j] - 1)) * pow_at(j, e[j] - 2);
        } else {
          if (e[k] == 0) continue;
          term = c * static_cast<double>(e[j] * e[k]) * pow_at(j, e[j] - 1) * pow_at(k, e[k] - 1);
        }
        for (int v = 0; v < nv; ++v)
          if (v != j && v != k) term *= pw[v][e[v]];
        (*d2)(j, k) += term;
        if (k != j) (*d2)(k, j) += term;
      }
    }
  }
}

// Dense polynomial of fixed degree over cached_basis(num_vars, degree).
struct DensePoly {
  int degree;
  CVector c;
};

DensePoly multiply(const DensePoly& a, const DensePoly& b, int num_vars) {
  const auto& ba = *cached_basis(num_vars, a.degree);
  const auto& bb = *cached_basis(num_vars, b.degree);
  const auto& bc = *cached_basis(num_vars, a.degree + b.degree);
  DensePoly out{a.degree + b.degree, CVector::Zero(static_cast<Eigen::Index>(bc.size()))};
  MultiIndex sum(num_vars);
  for (std::size_t i = 0; i < ba.size(); ++i) {
    if (a.c(i) == Complex(0.0)) continue;
    for (std::size_t j = 0; j < bb.size(); ++j) {
      if (b.c(j) == Complex(0.0)) continue;
      for (int v = 0; v < num_vars; ++v) sum[v] = ba[i][v] + bb[j][v];
      out.c(basis_position(bc, sum)) += a.c(i) * b.c(j);
    }
  }
  return out;
}

void check_chart(ChartIndex chart, int n) {
  if (chart.value() > n) throw std::invalid_argument("chart index out of range");
}

}  // namespace

std::vector<MultiIndex> monomial_basis(int num_vars, int degree) {
  if (num_vars < 1 || degree < 0) throw std::invalid_argument("monomial_basis: invalid arguments");
  std::vector<MultiIndex> out;
  MultiIndex prefix;
  append_monomials(num_vars, degree, prefix, out);
  return out;
}

std::size_t monomial_count(int num_vars, int degree) {
  // C(degree + num_vars - 1, num_vars - 1)
  std::size_t r = 1;
  for (int k = 1; k < num_vars; ++k) r = r * static_cast<std::size_t>(degree + k) / static_cast<std::size_t>(k);
  return r;
}

double inverse_multinomial(const MultiIndex& alpha) {
  const int total = std::accumulate(alpha.begin(), alpha.end(), 0);
  double r = 1.0 / factorial(total);
  for (int a : alpha) r *= factorial(a);
  return r;
}

// ---------------------------------------------------------------- Section

Section::Section(int n, int m, CVector coeffs) : n_(n), m_(m), coeffs_(std::move(coeffs)) {
  if (n < 1) throw InvalidSection("section requires n >= 1");
  if (m < 1) throw InvalidSection("section requires m >= 1");
  basis_ = cached_basis(n + 1, m);
  if (static_cast<std::size_t>(coeffs_.size()) != basis_->size())
    throw InvalidSection("coefficient vector does not match the monomial basis");
  if (!coeffs_.allFinite()) throw InvalidSection("coefficients must be finite");
  if (coeffs_.cwiseAbs().maxCoeff() <= kZeroSectionFloor) throw InvalidSection("zero section");
}

Section Section::from_terms(int n, int m, const std::vector<std::pair<MultiIndex, Complex>>& terms) {
  if (n < 1 || m < 1) throw InvalidSection("section requires n >= 1 and m >= 1");
  const auto basis = cached_basis(n + 1, m);
  CVector c = CVector::Zero(static_cast<Eigen::Index>(basis->size()));
  for (const auto& [alpha, value] : terms) {
    const long pos = basis_position(*basis, alpha);
    if (pos < 0) throw InvalidSection("multi-index does not have n+1 entries of total degree m");
    c(pos) += value;
  }
  return Section(n, m, std::move(c));
}

Complex Section::coefficient(const MultiIndex& alpha) const {
  const long pos = basis_position(*basis_, alpha);
  if (pos < 0) throw std::invalid_argument("multi-index not in the basis of this section");
  return coeffs_(pos);
}

double Section::norm() const {
  double acc = 0.0;
  for (std::size_t i = 0; i < basis_->size(); ++i) acc += std::norm(coeffs_(i)) * inverse_multinomial((*basis_)[i]);
  return std::sqrt(acc);
}

Section Section::scaled(Complex factor) const { return Section(n_, m_, coeffs_ * factor); }

Complex Section::eval(const CVector& z) const {
  Complex v;
  polynomial_jet(*basis_, {coeffs_.data(), coeffs_.data() + coeffs_.size()}, z, m_, 0, v, nullptr, nullptr);
  return v;
}

CVector Section::gradient(const CVector& z) const {
  Complex v;
  CVector d1;
  polynomial_jet(*basis_, {coeffs_.data(), coeffs_.data() + coeffs_.size()}, z, m_, 1, v, &d1, nullptr);
  return d1;
}

CMatrix Section::hessian(const CVector& z) const {
  Complex v;
  CVector d1;
  CMatrix d2;
  polynomial_jet(*basis_, {coeffs_.data(), coeffs_.data() + coeffs_.size()}, z, m_, 2, v, &d1, &d2);
  return d2;
}

Section Section::compose(const CMatrix& mat) const {
  const int nv = n_ + 1;
  if (mat.rows() != nv || mat.cols() != nv) throw std::invalid_argument("compose: matrix size mismatch");
  // powers[i][k] = (row_i(M) . Z)^k as dense polynomials of degree k.
  std::vector<std::vector<DensePoly>> powers(nv);
  for (int i = 0; i < nv; ++i) {
    DensePoly linear{1, CVector(nv)};
    // Degree-1 basis is e_0, e_1, ... in descending lex order.
    for (int j = 0; j < nv; ++j) linear.c(j) = mat(i, j);
    powers[i].push_back(DensePoly{0, CVector::Ones(1)});
    for (int k = 1; k <= m_; ++k) powers[i].push_back(multiply(powers[i][k - 1], linear, nv));
  }
  CVector out = CVector::Zero(coeffs_.size());
  for (std::size_t t = 0; t < basis_->size(); ++t) {
    if (coeffs_(t) == Complex(0.0)) continue;
    const MultiIndex& alpha = (*basis_)[t];
    DensePoly prod{0, CVector::Ones(1)};
    for (int i = 0; i < nv; ++i)
      if (alpha[i] > 0) prod = multiply(prod, powers[i][alpha[i]], nv);
    out += coeffs_(t) * prod.c;
  }
  return Section(n_, m_, std::move(out));
}

Section Section::transformed(const UnitaryMap& u) const { return compose(u.matrix().adjoint()); }

// -------------------------------------------------------- ChartPolynomial

ChartPolynomial::ChartPolynomial(ChartIndex chart, int n, int m, std::vector<MultiIndex> exponents,
                                 std::vector<Complex> coeffs)
    : chart_(chart), n_(n), m_(m), exponents_(std::move(exponents)), coeffs_(std::move(coeffs)) {
  if (exponents_.size() != coeffs_.size()) throw std::invalid_argument("chart polynomial: size mismatch");
  for (const auto& e : exponents_) {
    if (static_cast<int>(e.size()) != n_ || std::accumulate(e.begin(), e.end(), 0) > m_)
      throw std::invalid_argument("chart polynomial: exponent out of range");
  }
}

Complex ChartPolynomial::coefficient(const MultiIndex& beta) const {
  Complex c = 0.0;
  for (std::size_t t = 0; t < exponents_.size(); ++t)
    if (exponents_[t] == beta) c += coeffs_[t];
  return c;
}

Complex ChartPolynomial::value(const CVector& z) const {
  Complex v;
  polynomial_jet(exponents_, coeffs_, z, m_, 0, v, nullptr, nullptr);
  return v;
}

ChartPolynomial::Jet ChartPolynomial::jet(const CVector& z, int order) const {
  Jet j;
  polynomial_jet(exponents_, coeffs_, z, m_, order, j.value, &j.d1, order >= 2 ? &j.d2 : nullptr);
  if (order < 2) j.d2 = CMatrix::Zero(n_, n_);
  return j;
}

ChartPolynomial dehomogenize(const Section& s, ChartIndex chart) {
  check_chart(chart, s.n());
  const int i = chart.value();
  std::vector<MultiIndex> exps;
  std::vector<Complex> coeffs;
  for (std::size_t t = 0; t < s.basis().size(); ++t) {
    const Complex c = s.coeffs()(t);
    if (c == Complex(0.0)) continue;
    MultiIndex beta;
    beta.reserve(s.n());
    for (int v = 0; v <= s.n(); ++v)
      if (v != i) beta.push_back(s.basis()[t][v]);
    exps.push_back(std::move(beta));
    coeffs.push_back(c);
  }
  return ChartPolynomial(chart, s.n(), s.m(), std::move(exps), std::move(coeffs));
}

// ------------------------------------------------------- FS derivatives

FSPotentialJet fs_jet(const CVector& z, int m) {
  const Eigen::Index n = z.size();
  const double r = z.squaredNorm();
  const double w = 1.0 + r;
  FSPotentialJet jet;
  jet.value = m * std::log1p(r);
  jet.d1 = (static_cast<double>(m) / w) * z.conjugate();
  jet.d2_holo = (-static_cast<double>(m) / (w * w)) * (z.conjugate() * z.conjugate().transpose());
  jet.d2_mixed = (static_cast<double>(m) / (w * w)) * (w * CMatrix::Identity(n, n) - z.conjugate() * z.transpose());
  return jet;
}

CMatrix fs_metric_inverse(const CVector& z) {
  const Eigen::Index n = z.size();
  return (1.0 + z.squaredNorm()) * (CMatrix::Identity(n, n) + z.conjugate() * z.transpose());
}

Covector nabla_prime(const Section& s, const ProjectivePoint& p) { return nabla_prime(s, p, chart_of(p)); }

Covector nabla_prime(const Section& s, const ProjectivePoint& p, ChartIndex chart) {
  check_chart(chart, s.n());
  const CVector z = to_chart(p, chart);
  const auto f = dehomogenize(s, chart).jet(z, 1);
  const double w = 1.0 + z.squaredNorm();
  CVector xi = f.d1 - f.value * (static_cast<double>(s.m()) / w) * z.conjugate();
  // |xi|^2 in the FS dual metric is w (|xi|^2 + |xi . z|^2); the frame has
  // |e_L|^2 = w^-m.
  const Complex contraction = xi.transpose() * z;
  const double fs_norm_sq = w * (xi.squaredNorm() + std::norm(contraction)) * std::pow(w, -s.m());
  return Covector{chart, std::move(xi), std::sqrt(fs_norm_sq) / s.norm()};
}

double norm_sq(const Section& s, const ProjectivePoint& p) { return norm_sq(s, p, chart_of(p)); }

double norm_sq(const Section& s, const ProjectivePoint& p, ChartIndex chart) {
  check_chart(chart, s.n());
  const CVector z = to_chart(p, chart);
  const Complex f = dehomogenize(s, chart).value(z);
  return std::norm(f) * std::pow(1.0 + z.squaredNorm(), -s.m());
}

TangentVector grad_log_norm_sq(const Section& s, const ProjectivePoint& p) {
  return grad_log_norm_sq(s, p, chart_of(p));
}

TangentVector grad_log_norm_sq(const Section& s, const ProjectivePoint& p, ChartIndex chart) {
  check_chart(chart, s.n());
  const double sn = s.norm();
  if (norm_sq(s, p, chart) < kZeroLocusRatio * sn * sn) throw ZeroLocus("gradient of log|s|^2 undefined on the zero locus");
  const CVector z = to_chart(p, chart);
  const auto f = dehomogenize(s, chart).jet(z, 1);
  const double w = 1.0 + z.squaredNorm();
  // du/dz_k for u = log|f|^2 - phi.
  const CVector du = f.d1 / f.value - (static_cast<double>(s.m()) / w) * z.conjugate();
  // Riemannian gradient in complex components: v = 2 (G^T)^{-1} conj(du).
  const Eigen::Index n = z.size();
  const CMatrix ginv_t = w * (CMatrix::Identity(n, n) + z * z.adjoint());
  const CVector v = 2.0 * ginv_t * du.conjugate();
  RVector out(2 * n);
  out.head(n) = v.real();
  out.tail(n) = v.imag();
  return TangentVector{chart, std::move(out)};
}

// ------------------------------------------------------- binary forms

LinearFactor::LinearFactor(Complex w0, Complex w1) {
  CVector c(2);
  c << w0, w1;
  const ProjectivePoint canonical(c);  // normalizes and fixes the phase
  w0_ = canonical[0];
  w1_ = canonical[1];
}

LinearFactor LinearFactor::vanishing_at(const ProjectivePoint& zero) {
  if (zero.dim() != 1) throw std::invalid_argument("linear factors live on CP^1");
  return LinearFactor(zero[1], -zero[0]);
}

ProjectivePoint LinearFactor::zero() const {
  CVector c(2);
  c << -w1_, w0_;
  return ProjectivePoint(c);
}

Section LinearFactor::as_section() const {
  CVector c(2);
  c << w0_, w1_;
  return Section(1, 1, c);
}

Section expand_product(const std::vector<LinearFactor>& factors) {
  if (factors.empty()) throw std::invalid_argument("expand_product needs at least one factor");
  // c[k] is the coefficient of Z_0^{deg-k} Z_1^k, matching the basis order.
  std::vector<Complex> c{1.0};
  for (const auto& f : factors) {
    std::vector<Complex> next(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k] += c[k] * f.w0();
      next[k + 1] += c[k] * f.w1();
    }
    c = std::move(next);
  }
  CVector v(static_cast<Eigen::Index>(c.size()));
  for (std::size_t k = 0; k < c.size(); ++k) v(k) = c[k];
  return Section(1, static_cast<int>(factors.size()), v);
}

namespace {

Complex horner(const std::vector<Complex>& ascending, Complex z, Complex* derivative) {
  Complex v = 0.0, d = 0.0;
  for (auto it = ascending.rbegin(); it != ascending.rend(); ++it) {
    d = d * z + v;
    v = v * z + *it;
  }
  if (derivative) *derivative = d;
  return v;
}

// A few guarded Newton steps; keeps the iterate only while |p| decreases.
Complex polish_root(const std::vector<Complex>& ascending, Complex z) {
  Complex d;
  Complex v = horner(ascending, z, &d);
  for (int it = 0; it < 4; ++it) {
    if (std::abs(d) == 0.0) break;
    const Complex cand = z - v / d;
    Complex dc;
    const Complex vc = horner(ascending, cand, &dc);
    if (!(std::abs(vc) < std::abs(v))) break;
    z = cand;
    v = vc;
    d = dc;
  }
  return z;
}

}  // namespace

std::vector<LinearFactor> factor_binary_form(const Section& s) {
  if (s.n() != 1) throw std::invalid_argument("factor_binary_form requires n = 1");
  const int m = s.m();
  const double scale = s.coeffs().cwiseAbs().maxCoeff();
  // Chart 0: f(z) = sum_k c_k z^k with c_k the coefficient of Z_0^{m-k} Z_1^k.
  std::vector<Complex> asc(m + 1);
  for (int k = 0; k <= m; ++k) asc[k] = s.coeffs()(k) / scale;
  int degree = m;
  while (degree > 0 && std::abs(asc[degree]) <= 1e-15) --degree;
  std::vector<Complex> reversed(asc.rbegin(), asc.rend());  // chart 1: g(w) = w^m f(1/w)

  std::vector<LinearFactor> factors;
  factors.reserve(m);
  if (degree > 0) {
    CMatrix companion = CMatrix::Zero(degree, degree);
    for (int k = 0; k < degree; ++k) companion(k, degree - 1) = -asc[k] / asc[degree];
    for (int k = 1; k < degree; ++k) companion(k, k - 1) = 1.0;
    Eigen::ComplexEigenSolver<CMatrix> solver(companion, /*computeEigenvectors=*/false);
    for (Eigen::Index k = 0; k < degree; ++k) {
      Complex z = solver.eigenvalues()(k);
      CVector zero(2);
      if (std::abs(z) <= 1.0) {
        z = polish_root(asc, z);
        zero << 1.0, z;
      } else {
        const Complex w = polish_root(reversed, 1.0 / z);
        zero << w, 1.0;
      }
      factors.push_back(LinearFactor::vanishing_at(ProjectivePoint(zero)));
    }
  }
  // Missing top-degree terms are zeros at [0,1].
  for (int k = degree; k < m; ++k) factors.push_back(LinearFactor::vanishing_at(basis_point(1, 1)));
  return factors;
}

std::vector<ZeroCluster> binary_zeros(const Section& s, double merge_tol) {
  std::vector<ZeroCluster> clusters;
  for (const auto& f : factor_binary_form(s)) {
    const ProjectivePoint z = f.zero();
    auto it = std::find_if(clusters.begin(), clusters.end(),
                           [&](const ZeroCluster& c) { return fs_distance(c.point, z) <= merge_tol; });
    if (it != clusters.end())
      ++it->multiplicity;
    else
      clusters.push_back(ZeroCluster{z, 1});
  }
  return clusters;
}

Section random_section(int n, int m, unsigned long long seed) {
  const auto basis = cached_basis(n + 1, m);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  CVector c(static_cast<Eigen::Index>(basis->size()));
  for (std::size_t t = 0; t < basis->size(); ++t) {
    const double re = normal(rng);
    const double im = normal(rng);
    c(t) = Complex(re, im) / std::sqrt(inverse_multinomial((*basis)[t]));
  }
  return Section(n, m, std::move(c));
}

std::vector<MultiIndex> kernel_basis_A0(int n, int m) {
  std::vector<MultiIndex> out;
  for (const auto& alpha : monomial_basis(n + 1, m))
    if (alpha[0] != m - 1) out.push_back(alpha);
  return out;
}

// ------------------------------------------------------- serialization

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

void write_section(std::ostream& os, const Section& s) {
  os << s.n() << ' ' << s.m() << '\n';
  for (std::size_t t = 0; t < s.basis().size(); ++t) {
    const Complex c = s.coeffs()(t);
    if (c == Complex(0.0)) continue;
    for (int a : s.basis()[t]) os << a << ' ';
    os << format_double(c.real()) << ' ' << format_double(c.imag()) << '\n';
  }
}

namespace {

template <typename T>
T parse_token(const std::string& token, int line_no) {
  T value{};
  const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size())
    throw InvalidSection("line " + std::to_string(line_no) + ": cannot parse '" + token + "'");
  return value;
}

}  // namespace

std::vector<Section> read_sections(std::istream& is) {
  std::vector<Section> sections;
  std::string line;
  int line_no = 0;
  int n = -1, m = -1;
  std::vector<std::pair<MultiIndex, Complex>> terms;
  auto flush = [&] {
    if (n > 0) sections.push_back(Section::from_terms(n, m, terms));
    terms.clear();
  };
  while (std::getline(is, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    for (std::string tok; ls >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;
    // Coefficient lines have at least four tokens, so a pair always starts a new section.
    if (tokens.size() == 2) {
      flush();
      n = parse_token<int>(tokens[0], line_no);
      m = parse_token<int>(tokens[1], line_no);
      if (n < 1 || m < 1) throw InvalidSection("line " + std::to_string(line_no) + ": header requires n >= 1 and m >= 1");
      continue;
    }
    if (n < 0) throw InvalidSection("line " + std::to_string(line_no) + ": expected header 'n m'");
    if (tokens.size() != static_cast<std::size_t>(n + 3))
      throw InvalidSection("line " + std::to_string(line_no) + ": expected n+1 exponents and re im");
    MultiIndex alpha(n + 1);
    for (int v = 0; v <= n; ++v) {
      alpha[v] = parse_token<int>(tokens[v], line_no);
      if (alpha[v] < 0) throw InvalidSection("line " + std::to_string(line_no) + ": negative exponent");
    }
    if (std::accumulate(alpha.begin(), alpha.end(), 0) != m)
      throw InvalidSection("line " + std::to_string(line_no) + ": exponents do not sum to m");
    terms.emplace_back(std::move(alpha),
                       Complex(parse_token<double>(tokens[n + 1], line_no), parse_token<double>(tokens[n + 2], line_no)));
  }
  flush();
  if (sections.empty()) throw InvalidSection("empty section file");
  return sections;
}

Section read_section(std::istream& is) {
  auto sections = read_sections(is);
  if (sections.size() != 1) throw InvalidSection("expected one section, found " + std::to_string(sections.size()));
  return std::move(sections.front());
}

}  // namespace fscrit
