#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <optional>
#include <string>

namespace garsia {

/// A real interval [lo, hi] with endpoints stored as MPFR floats and all
/// operations rounded outward, so that the exact result of an expression is
/// always contained in the computed interval.
///
/// The working precision is attached to the value; binary operations produce
/// results at the larger of the two operand precisions.
class Interval {
  public:
    Interval();
    explicit Interval(mpfr_prec_t prec);
    Interval(const Interval& o);
    Interval(Interval&& o) noexcept;
    Interval& operator=(const Interval& o);
    Interval& operator=(Interval&& o) noexcept;
    ~Interval();

    static Interval of_long(long v, mpfr_prec_t prec);
    static Interval of_mpz(const mpz_class& v, mpfr_prec_t prec);
    static Interval of_mpq(const mpq_class& v, mpfr_prec_t prec);
    static Interval of_double(double v, mpfr_prec_t prec);
    /// [lo, hi] from doubles, lo <= hi required.
    static Interval span(double lo, double hi, mpfr_prec_t prec);
    /// Certified enclosure of log(2).
    static Interval log2(mpfr_prec_t prec);

    mpfr_prec_t prec() const { return mpfr_get_prec(lo_); }
    /// Same value re-rounded (outward) at a new precision.
    Interval at_prec(mpfr_prec_t prec) const;

    bool contains_zero() const;
    bool is_positive() const;  // lo > 0
    bool is_negative() const;  // hi < 0
    bool contains(const Interval& o) const;           // o subset of this
    bool strictly_contains(const Interval& o) const;  // o subset of interior
    bool disjoint_from(const Interval& o) const;
    bool certainly_lt(const Interval& o) const;  // hi <  o.lo
    bool certainly_le(const Interval& o) const;  // hi <= o.lo
    bool is_exact_zero() const;

    double lo_d() const;  // rounded down
    double hi_d() const;  // rounded up
    double mid_d() const;
    double width_d() const;
    const mpfr_t& lo_raw() const { return lo_; }
    const mpfr_t& hi_raw() const { return hi_; }
    /// Midpoint as an exact rational (dyadic) number.
    mpq_class mid_q() const;

    friend Interval operator+(const Interval& a, const Interval& b);
    friend Interval operator-(const Interval& a, const Interval& b);
    friend Interval operator*(const Interval& a, const Interval& b);
    /// Throws Error if b contains zero.
    friend Interval operator/(const Interval& a, const Interval& b);
    Interval operator-() const;

    Interval abs() const;
    Interval square() const;
    /// Throws Error if the interval is entirely negative; a lower endpoint
    /// below zero in a zero-containing interval is clamped to 0.
    Interval sqrt() const;
    /// Natural log; requires lo > 0.
    Interval log() const;
    Interval pow_ui(unsigned long e) const;
    /// 1/x; requires 0 not contained.
    Interval recip() const;

    static Interval hull(const Interval& a, const Interval& b);
    static std::optional<Interval> intersect(const Interval& a, const Interval& b);
    /// Enclosure of max(a, b): [max(a.lo, b.lo), max(a.hi, b.hi)].
    static Interval max_of(const Interval& a, const Interval& b);
    /// Enclosure of min(a, b).
    static Interval min_of(const Interval& a, const Interval& b);

    std::string str(int digits = 8) const;

  private:
    mpfr_t lo_, hi_;
    void init(mpfr_prec_t prec);
};

/// Rectangular complex interval: re + i*im with both parts real intervals.
class Box {
  public:
    Interval re, im;

    Box() = default;
    Box(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}
    static Box point(const Interval& r, const Interval& i) { return Box(r, i); }
    static Box real_point_mpq(const mpq_class& v, mpfr_prec_t prec);

    friend Box operator+(const Box& a, const Box& b);
    friend Box operator-(const Box& a, const Box& b);
    friend Box operator*(const Box& a, const Box& b);
    /// Enclosure of a/b via multiplication by the conjugate; requires
    /// 0 outside |b|^2.
    friend Box operator/(const Box& a, const Box& b);
    Box operator-() const;

    Interval modulus_sq() const;
    Interval modulus() const;
    bool contains_zero() const;
    bool strictly_contains(const Box& o) const;
    bool disjoint_from(const Box& o) const;
    Box mid() const;
    static std::optional<Box> intersect(const Box& a, const Box& b);

    std::string str(int digits = 8) const;
};

}  // namespace garsia
