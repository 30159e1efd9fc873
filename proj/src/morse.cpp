#include "fscrit/morse.hpp"

#include <algorithm>
#include <stdexcept>

namespace fscrit {

IntPolynomial::IntPolynomial(std::vector<std::int64_t> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPolynomial IntPolynomial::monomial(int degree, std::int64_t coeff) {
  if (degree < 0) throw std::invalid_argument("monomial degree must be non-negative");
  std::vector<std::int64_t> c(degree + 1, 0);
  c[degree] = coeff;
  return IntPolynomial(std::move(c));
}

void IntPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

bool IntPolynomial::non_negative() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](std::int64_t c) { return c >= 0; });
}

std::int64_t IntPolynomial::eval(std::int64_t t) const {
  std::int64_t v = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * t + *it;
  return v;
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<std::int64_t> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[k] + b[k];
  return IntPolynomial(std::move(c));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<std::int64_t> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[k] - b[k];
  return IntPolynomial(std::move(c));
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return IntPolynomial();
  std::vector<std::int64_t> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return IntPolynomial(std::move(c));
}

MorseSeries::MorseSeries(std::vector<std::int64_t> coeffs) : MorseSeries(IntPolynomial(std::move(coeffs))) {}

MorseSeries::MorseSeries(IntPolynomial p) : poly_(std::move(p)) {
  if (!poly_.non_negative()) throw std::invalid_argument("Morse series coefficients must be non-negative");
}

MorseSeries counting_series(const std::vector<int>& indices, const std::vector<std::pair<int, MorseSeries>>& manifold_terms) {
  IntPolynomial total;
  for (int idx : indices) total = total + IntPolynomial::monomial(idx);
  for (const auto& [lambda, poincare] : manifold_terms) total = total + IntPolynomial::monomial(lambda) * poincare.poly();
  return MorseSeries(std::move(total));
}

MorseSeries counting_series(const std::vector<CriticalPoint>& criticals,
                            const std::vector<std::pair<int, MorseSeries>>& manifold_terms) {
  std::vector<int> indices;
  indices.reserve(criticals.size());
  for (const auto& cp : criticals) {
    if (!cp.index) throw std::invalid_argument("counting series needs non-degenerate critical points");
    indices.push_back(*cp.index);
  }
  return counting_series(indices, manifold_terms);
}

MorseSeries poincare_cpn(int n) {
  if (n < 0) throw std::invalid_argument("poincare_cpn: n must be non-negative");
  std::vector<std::int64_t> c(2 * n + 1, 0);
  for (int k = 0; k <= n; ++k) c[2 * k] = 1;
  return MorseSeries(std::move(c));
}

MorseSeries quadric_zero_locus_poincare(int n) {
  switch (n) {
    case 1: return MorseSeries({2});
    case 2: return MorseSeries({1, 0, 1});
    case 3: return MorseSeries({1, 0, 2, 0, 1});
    default: throw std::out_of_range("zero-locus Poincare polynomial is tabulated for n = 1, 2, 3 only");
  }
}

MorseCheck morse_inequality_check(const MorseSeries& m, const MorseSeries& p) {
  const IntPolynomial d = m.poly() - p.poly();
  // d_k = r_k + r_{k-1}, so r_k = d_k - r_{k-1}; the remainder is what is
  // left at the top degree.
  std::vector<std::int64_t> r;
  std::int64_t remainder = 0;
  if (!d.is_zero()) {
    const int deg = d.degree();
    r.assign(std::max(deg, 0), 0);
    std::int64_t prev = 0;
    for (int k = 0; k < deg; ++k) {
      r[k] = d[k] - prev;
      prev = r[k];
    }
    remainder = d[deg] - prev;
  }
  MorseCheck out{false, std::nullopt, IntPolynomial(r), remainder};
  out.holds = remainder == 0 && out.raw_quotient.non_negative();
  if (out.holds) out.quotient = MorseSeries(out.raw_quotient);
  return out;
}

std::int64_t quadric_middle_betti(int n) {
  if (n < 1 || n % 2 == 0) throw std::invalid_argument("quadric_middle_betti requires odd n >= 1");
  const int k = (n - 1) / 2;
  // P_t(D) = sum_{j != k} t^{2j} + h t^{2k} (j = 0..n-1) by Lefschetz and
  // Poincare duality; the p_i contribute t^{n+i}, i = 0..n.
  IntPolynomial known;
  for (int j = 0; j < n; ++j)
    if (j != k) known = known + IntPolynomial::monomial(2 * j);
  for (int i = 0; i <= n; ++i) known = known + IntPolynomial::monomial(n + i);
  known = known - poincare_cpn(n).poly();
  // At t = -1 the right side (1+t) R(t) vanishes: h (-1)^{2k} + known(-1) = 0.
  return -known.eval(-1);
}

}  // namespace fscrit
