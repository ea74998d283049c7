#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "garsia/interval.hpp"
#include "garsia/polynomial.hpp"
#include "garsia/roots.hpp"

namespace garsia {

enum class ModulusClass { GT_ONE, EQ_ONE, LT_ONE };
enum class NumberType { PISOT, SALEM, OTHER };
enum class Membership { IN, OUT };

const char* to_string(NumberType t);

/// Element of Z[beta] stored as the exact integer coefficient vector of
/// c0 + c1*beta + ... + c_{d-1}*beta^{d-1}. Equality is coefficient-wise.
class FieldElement {
  public:
    FieldElement() = default;
    static FieldElement zero(int d) { return FieldElement(std::vector<mpz_class>(d, 0)); }
    static FieldElement constant(int d, long v) {
        std::vector<mpz_class> c(d, 0);
        c[0] = v;
        return FieldElement(std::move(c));
    }
    explicit FieldElement(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) {}

    int dim() const { return static_cast<int>(c_.size()); }
    const std::vector<mpz_class>& coeffs() const { return c_; }
    bool is_zero() const;
    bool operator==(const FieldElement& o) const { return c_ == o.c_; }
    bool operator!=(const FieldElement& o) const { return c_ != o.c_; }
    bool operator<(const FieldElement& o) const;  // lexicographic, for map keys
    std::string to_string() const;

  private:
    std::vector<mpz_class> c_;
};

FieldElement add(const FieldElement& a, const FieldElement& b);
FieldElement sub(const FieldElement& a, const FieldElement& b);
FieldElement neg(const FieldElement& a);
FieldElement add_int(const FieldElement& a, long k);

struct ConjugateEnclosure {
    int index = 0;  // 1-based; index 1 is beta itself
    bool is_real = false;
    Box box;                 // certified enclosure at the base precision
    ModulusClass cls = ModulusClass::LT_ONE;
    int conj_partner = -1;   // context index of the complex conjugate, or -1
};

/// Certified data for the algebraic integer beta in (1,2): disjoint conjugate
/// enclosures, the exact counts r (modulus > 1, beta included) and l
/// (modulus = 1), and interval values of the separation constants.
///
/// Logically immutable after construction; refined root enclosures at higher
/// precisions are cached lazily behind a mutex, so sharing a context across
/// threads is safe.
class NumberFieldContext {
  public:
    explicit NumberFieldContext(IntPolynomial p, mpfr_prec_t precision_bits = 128,
                                long precision_cap = 4096, bool exact_ties = true);

    const IntPolynomial& min_poly() const { return poly_; }
    int degree() const { return poly_.degree(); }
    int r() const { return r_; }
    int l() const { return l_; }
    bool is_hyperbolic() const { return l_ == 0; }
    NumberType classify() const;
    const std::vector<ConjugateEnclosure>& conjugates() const { return conj_; }
    /// Real interval containing beta, at the base precision.
    Interval beta() const { return conj_[0].box.re; }
    Interval c_beta() const { return c_beta_; }
    Interval mahler() const { return mahler_; }
    /// C0(n) from the separation lemma.
    Interval c0(long n) const;
    /// Cardinality bound C(beta)(n+1)^l + 1 for V_{beta,n}.
    Interval v_bound(long n) const;
    mpfr_prec_t precision_bits() const { return precision_bits_; }
    long precision_cap() const { return precision_cap_; }
    bool exact_ties() const { return exact_ties_; }

    /// Certified enclosure of the j-th conjugate value of x (j is 1-based,
    /// j = 1 evaluates at beta itself).
    Box eval_conjugate(const FieldElement& x, int j) const;

    /// Membership in V_beta: |x^(j)| <= 1/(|beta_j)|-1) for every j in 1..r,
    /// decided by certified intervals with escalating precision and, on
    /// exact boundary ties, by exact algebra.
    Membership in_v_beta(const FieldElement& x) const;

    /// Root enclosures and conjugate power tables at one ladder precision.
    struct Level {
        mpfr_prec_t prec;
        std::vector<RootEnclosure> roots;               // context order
        std::vector<poly::RealRootInterval> real_ivs;   // rational isolators, reals only
        std::vector<std::vector<Box>> powers;           // powers[j][k] = beta_j^k
    };
    /// Smallest cached ladder level with precision >= prec (built lazily).
    const Level& level(mpfr_prec_t prec) const;

  private:
    Box eval_at(const FieldElement& x, int j0, const Level& lv) const;
    Interval abs_at(const FieldElement& x, int j0, const Level& lv) const;
    /// Certified comparison |x^(j)| <= 1/(|beta_j|-1) for one 0-based index.
    bool embedding_within_bound(const FieldElement& x, int j0) const;
    bool real_tie_break(const FieldElement& x, int j0, bool* is_tie) const;
    bool complex_tie_break(const FieldElement& x, int j0, bool* is_tie) const;
    int certified_sign(const FieldElement& x, int j0) const;
    const Level& build_level(mpfr_prec_t prec) const;

    IntPolynomial poly_;
    mpfr_prec_t precision_bits_;
    long precision_cap_;
    bool exact_ties_;
    int r_ = 0, l_ = 0;
    std::vector<ConjugateEnclosure> conj_;
    Interval c_beta_, mahler_;
    Interval gt_minus_one_prod_;   // prod over j=2..r of (|beta_j| - 1)
    Interval lt_one_minus_prod_;   // prod over |beta_j| < 1 of (1 - |beta_j|)
    mutable std::mutex mu_;
    mutable std::map<mpfr_prec_t, Level> levels_;
};

/// Spec-level convenience wrappers.
inline std::shared_ptr<NumberFieldContext> build_context(const IntPolynomial& p,
                                                         mpfr_prec_t precision_bits = 128) {
    return std::make_shared<NumberFieldContext>(p, precision_bits);
}

inline bool is_hyperbolic(const NumberFieldContext& ctx) { return ctx.is_hyperbolic(); }
inline NumberType classify_number(const NumberFieldContext& ctx) { return ctx.classify(); }

FieldElement mul_by_beta(const FieldElement& x, const NumberFieldContext& ctx);

struct SeparationConstants {
    Interval c_beta;
    Interval c0_n;
    Interval v_bound;
};
SeparationConstants separation_constants(const NumberFieldContext& ctx, long n);

inline Membership in_v_beta(const FieldElement& x, const NumberFieldContext& ctx) {
    return ctx.in_v_beta(x);
}

}  // namespace garsia
