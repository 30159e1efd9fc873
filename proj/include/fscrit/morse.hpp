#pragma once

// Morse counting series and the (generalized) Morse inequality
// M_t - P_t = (1 + t) R(t), R >= 0, in exact integer arithmetic.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "fscrit/critical.hpp"

namespace fscrit {

/// Integer polynomial in t, coefficient of t^k at position k, trailing zeros trimmed.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<std::int64_t> coeffs);
  static IntPolynomial monomial(int degree, std::int64_t coeff = 1);

  const std::vector<std::int64_t>& coeffs() const { return coeffs_; }
  std::int64_t operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : 0; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  ///< -1 for zero
  bool is_zero() const { return coeffs_.empty(); }
  bool non_negative() const;
  std::int64_t eval(std::int64_t t) const;

  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) = default;

 private:
  void trim();
  std::vector<std::int64_t> coeffs_;
};

/// A polynomial with non-negative coefficients (throws std::invalid_argument otherwise).
class MorseSeries {
 public:
  MorseSeries() = default;
  explicit MorseSeries(std::vector<std::int64_t> coeffs);
  explicit MorseSeries(IntPolynomial p);

  const IntPolynomial& poly() const { return poly_; }
  const std::vector<std::int64_t>& coeffs() const { return poly_.coeffs(); }
  friend bool operator==(const MorseSeries& a, const MorseSeries& b) = default;

 private:
  IntPolynomial poly_;
};

/// sum t^index over non-degenerate points plus sum t^lambda_N P_t(N) over
/// critical manifolds. Throws std::invalid_argument for a degenerate point.
MorseSeries counting_series(const std::vector<int>& indices,
                            const std::vector<std::pair<int, MorseSeries>>& manifold_terms = {});
MorseSeries counting_series(const std::vector<CriticalPoint>& criticals,
                            const std::vector<std::pair<int, MorseSeries>>& manifold_terms = {});

/// 1 + t^2 + ... + t^{2n}.
MorseSeries poincare_cpn(int n);

/// Poincare polynomial of a smooth quadric in CP^n for n = 1, 2, 3
/// (two points, P^1, P^1 x P^1). Throws std::out_of_range otherwise.
MorseSeries quadric_zero_locus_poincare(int n);

struct MorseCheck {
  bool holds;
  std::optional<MorseSeries> quotient;  ///< R when holds
  IntPolynomial raw_quotient;           ///< (M - P) / (1 + t), possibly negative
  std::int64_t remainder;
};

/// Exact division of M - P by (1 + t); holds iff the remainder is zero and
/// the quotient is non-negative.
MorseCheck morse_inequality_check(const MorseSeries& m, const MorseSeries& p);

/// h^{n-1} of a smooth quadric hypersurface in CP^n, n odd, by evaluating the
/// Morse identity at t = -1 with the middle Betti number as the unknown.
std::int64_t quadric_middle_betti(int n);

}  // namespace fscrit
