#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "garsia/interval.hpp"

namespace garsia {

/// Dense integer polynomial, coefficient of x^i at index i. The leading
/// coefficient of a normalized ZPoly is nonzero; the zero polynomial is {}.
using ZPoly = std::vector<mpz_class>;
using QPoly = std::vector<mpq_class>;

namespace poly {

ZPoly normalized(ZPoly p);
int degree(const ZPoly& p);  // -1 for the zero polynomial
ZPoly derivative(const ZPoly& p);
mpz_class eval_z(const ZPoly& p, const mpz_class& x);
mpq_class eval_q(const ZPoly& p, const mpq_class& x);
/// Sign of p(x) for rational x, computed exactly.
int sign_at(const ZPoly& p, const mpq_class& x);
/// Interval evaluation over a complex box (Horner).
Box eval_box(const ZPoly& p, const Box& x, mpfr_prec_t prec);
Interval eval_interval(const ZPoly& p, const Interval& x);
/// Exact division check: if d (monic) divides p, returns true and sets q.
bool divides_monic(const ZPoly& p, const ZPoly& d, ZPoly* q = nullptr);
/// Remainder of p mod d for monic d, exact.
ZPoly mod_monic(ZPoly p, const ZPoly& d);
std::string to_string(const ZPoly& p, const std::string& var = "x");

/// Sturm chain of a squarefree polynomial; counts real roots exactly.
class SturmChain {
  public:
    explicit SturmChain(const ZPoly& p);
    /// Number of real roots in (a, b]; a and b must not be roots.
    int count_roots(const mpq_class& a, const mpq_class& b) const;
    /// Number of real roots on the whole line.
    int count_all() const;
    int variations_at(const mpq_class& x) const;
    int variations_at_neg_inf() const;
    int variations_at_pos_inf() const;

  private:
    std::vector<QPoly> seq_;
};

/// Cauchy bound: all complex roots have modulus < bound.
mpq_class root_bound(const ZPoly& p);

/// Isolating intervals (lo, hi) for every real root of a squarefree
/// polynomial; each interval contains exactly one root and the endpoints are
/// not roots. Rational roots are returned as degenerate [r, r] intervals.
struct RealRootInterval {
    mpq_class lo, hi;
    bool exact = false;  // lo == hi == the root
};
std::vector<RealRootInterval> isolate_real_roots(const ZPoly& p);

/// Bisect an isolating interval (sign change required) until hi-lo < width.
RealRootInterval refine_real_root(const ZPoly& p, RealRootInterval iv, const mpq_class& width);

/// True iff the monic integer polynomial has no monic integer factor of
/// degree in [1, deg/2]. Exhaustive search over the Landau-Mignotte
/// coefficient box with divisor pruning at x = 0 and value filters at x = +-1.
bool is_irreducible(const ZPoly& p);

/// p(x) == x^d p(1/x), the necessary condition for roots on the unit circle.
bool is_self_reciprocal(const ZPoly& p);

/// For a self-reciprocal polynomial of even degree 2m, the unique Q with
/// p(x)/x^m = Q(x + 1/x). Roots of p on the unit circle correspond to real
/// roots of Q in (-2, 2).
ZPoly circle_transform(const ZPoly& p);

/// Exact count of roots of p on the unit circle (0 if not self-reciprocal).
int count_roots_on_unit_circle(const ZPoly& p);

}  // namespace poly

/// Monic integer polynomial with degree >= 2, irreducible over Q, and with
/// exactly one real root in the open interval (1, 2). This is the minimal
/// polynomial of the base beta.
class IntPolynomial {
  public:
    /// Accepts "x^4 - x^3 - x^2 + x - 1" style text or a comma-separated
    /// coefficient list ordered constant-first ("-1,1,-1,-1,1").
    static IntPolynomial parse(const std::string& text);
    /// Coefficients ordered constant-first, leading coefficient last.
    static IntPolynomial from_coeffs(ZPoly coeffs);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const ZPoly& coeffs() const { return coeffs_; }
    std::string to_string() const { return poly::to_string(coeffs_); }
    bool operator==(const IntPolynomial& o) const { return coeffs_ == o.coeffs_; }

  private:
    explicit IntPolynomial(ZPoly c) : coeffs_(std::move(c)) {}
    ZPoly coeffs_;
};

}  // namespace garsia
