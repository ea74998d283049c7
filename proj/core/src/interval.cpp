#include "garsia/interval.hpp"

#include <algorithm>
#include <sstream>

#include "garsia/errors.hpp"

namespace garsia {

namespace {
constexpr mpfr_prec_t kMinPrec = 53;
}

void Interval::init(mpfr_prec_t prec) {
    if (prec < kMinPrec) prec = kMinPrec;
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
}

Interval::Interval() {
    init(kMinPrec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

Interval::Interval(mpfr_prec_t prec) {
    init(prec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Interval& o) {
    init(o.prec());
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& o) noexcept {
    mpfr_init2(lo_, o.prec());
    mpfr_init2(hi_, o.prec());
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
}

Interval& Interval::operator=(const Interval& o) {
    if (this != &o) {
        mpfr_set_prec(lo_, o.prec());
        mpfr_set_prec(hi_, o.prec());
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    return *this;
}

Interval& Interval::operator=(Interval&& o) noexcept {
    if (this != &o) {
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
    }
    return *this;
}

Interval::~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

Interval Interval::of_long(long v, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_si(r.lo_, v, MPFR_RNDD);
    mpfr_set_si(r.hi_, v, MPFR_RNDU);
    return r;
}

Interval Interval::of_mpz(const mpz_class& v, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_z(r.lo_, v.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_, v.get_mpz_t(), MPFR_RNDU);
    return r;
}

Interval Interval::of_mpq(const mpq_class& v, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_q(r.lo_, v.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, v.get_mpq_t(), MPFR_RNDU);
    return r;
}

Interval Interval::of_double(double v, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_d(r.lo_, v, MPFR_RNDD);
    mpfr_set_d(r.hi_, v, MPFR_RNDU);
    return r;
}

Interval Interval::span(double lo, double hi, mpfr_prec_t prec) {
    if (lo > hi) throw Error("Interval::span: lo > hi");
    Interval r(prec);
    mpfr_set_d(r.lo_, lo, MPFR_RNDD);
    mpfr_set_d(r.hi_, hi, MPFR_RNDU);
    return r;
}

Interval Interval::log2(mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_const_log2(r.lo_, MPFR_RNDD);
    mpfr_const_log2(r.hi_, MPFR_RNDU);
    return r;
}

Interval Interval::at_prec(mpfr_prec_t prec) const {
    Interval r(prec);
    mpfr_set(r.lo_, lo_, MPFR_RNDD);
    mpfr_set(r.hi_, hi_, MPFR_RNDU);
    return r;
}

bool Interval::contains_zero() const {
    return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

bool Interval::is_positive() const { return mpfr_sgn(lo_) > 0; }
bool Interval::is_negative() const { return mpfr_sgn(hi_) < 0; }

bool Interval::contains(const Interval& o) const {
    return mpfr_cmp(lo_, o.lo_) <= 0 && mpfr_cmp(hi_, o.hi_) >= 0;
}

bool Interval::strictly_contains(const Interval& o) const {
    return mpfr_cmp(lo_, o.lo_) < 0 && mpfr_cmp(hi_, o.hi_) > 0;
}

bool Interval::disjoint_from(const Interval& o) const {
    return mpfr_cmp(hi_, o.lo_) < 0 || mpfr_cmp(o.hi_, lo_) < 0;
}

bool Interval::certainly_lt(const Interval& o) const { return mpfr_cmp(hi_, o.lo_) < 0; }
bool Interval::certainly_le(const Interval& o) const { return mpfr_cmp(hi_, o.lo_) <= 0; }

bool Interval::is_exact_zero() const {
    return mpfr_zero_p(lo_) && mpfr_zero_p(hi_);
}

double Interval::lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double Interval::mid_d() const {
    mpfr_t m;
    mpfr_init2(m, prec());
    mpfr_add(m, lo_, hi_, MPFR_RNDN);
    mpfr_div_ui(m, m, 2, MPFR_RNDN);
    double d = mpfr_get_d(m, MPFR_RNDN);
    mpfr_clear(m);
    return d;
}

double Interval::width_d() const {
    mpfr_t w;
    mpfr_init2(w, prec());
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    double d = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return d;
}

mpq_class Interval::mid_q() const {
    mpfr_t m;
    mpfr_init2(m, prec());
    mpfr_add(m, lo_, hi_, MPFR_RNDN);
    mpfr_div_ui(m, m, 2, MPFR_RNDN);
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), m);
    mpfr_clear(m);
    return q;
}

Interval operator+(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec(), b.prec()));
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

Interval operator-(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec(), b.prec()));
    mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return r;
}

Interval operator*(const Interval& a, const Interval& b) {
    mpfr_prec_t p = std::max(a.prec(), b.prec());
    Interval r(p);
    mpfr_t t;
    mpfr_init2(t, p);
    // lower endpoint: min of the four products rounded down
    mpfr_mul(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_mul(t, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_mul(t, a.hi_, b.lo_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_mul(t, a.hi_, b.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    // upper endpoint: max of the four products rounded up
    mpfr_mul(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
    mpfr_mul(t, a.lo_, b.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_mul(t, a.hi_, b.lo_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_mul(t, a.hi_, b.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_clear(t);
    return r;
}

Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) throw Error("interval division by an interval containing zero");
    mpfr_prec_t p = std::max(a.prec(), b.prec());
    Interval r(p);
    mpfr_t t;
    mpfr_init2(t, p);
    mpfr_div(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_div(t, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_div(t, a.hi_, b.lo_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_div(t, a.hi_, b.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_div(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
    mpfr_div(t, a.lo_, b.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_div(t, a.hi_, b.lo_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_div(t, a.hi_, b.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_clear(t);
    return r;
}

Interval Interval::operator-() const {
    Interval r(prec());
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

Interval Interval::abs() const {
    Interval r(prec());
    if (mpfr_sgn(lo_) >= 0) return *this;
    if (mpfr_sgn(hi_) <= 0) return -*this;
    // straddles zero
    mpfr_set_zero(r.lo_, 1);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, hi_, MPFR_RNDU);
    return r;
}

Interval Interval::square() const {
    Interval a = abs();
    Interval r(prec());
    mpfr_sqr(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_sqr(r.hi_, a.hi_, MPFR_RNDU);
    return r;
}

Interval Interval::sqrt() const {
    if (mpfr_sgn(hi_) < 0) throw Error("interval sqrt of a negative interval");
    Interval r(prec());
    if (mpfr_sgn(lo_) <= 0) {
        mpfr_set_zero(r.lo_, 1);
    } else {
        mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
    }
    mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Interval Interval::log() const {
    if (mpfr_sgn(lo_) <= 0) throw Error("interval log requires a strictly positive interval");
    Interval r(prec());
    mpfr_log(r.lo_, lo_, MPFR_RNDD);
    mpfr_log(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Interval Interval::pow_ui(unsigned long e) const {
    Interval acc = Interval::of_long(1, prec());
    Interval base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

Interval Interval::recip() const {
    return Interval::of_long(1, prec()) / *this;
}

Interval Interval::hull(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec(), b.prec()));
    mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

std::optional<Interval> Interval::intersect(const Interval& a, const Interval& b) {
    if (a.disjoint_from(b)) return std::nullopt;
    Interval r(std::max(a.prec(), b.prec()));
    mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_min(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

Interval Interval::max_of(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec(), b.prec()));
    mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

Interval Interval::min_of(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec(), b.prec()));
    mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_min(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

std::string Interval::str(int digits) const {
    std::ostringstream os;
    char* s1 = nullptr;
    char* s2 = nullptr;
    mpfr_asprintf(&s1, "%.*Rg", digits, lo_);
    mpfr_asprintf(&s2, "%.*Rg", digits, hi_);
    os << "[" << s1 << ", " << s2 << "]";
    mpfr_free_str(s1);
    mpfr_free_str(s2);
    return os.str();
}

// ---------------------------------------------------------------------------
// Box

Box Box::real_point_mpq(const mpq_class& v, mpfr_prec_t prec) {
    return Box(Interval::of_mpq(v, prec), Interval(prec));
}

Box operator+(const Box& a, const Box& b) { return Box(a.re + b.re, a.im + b.im); }
Box operator-(const Box& a, const Box& b) { return Box(a.re - b.re, a.im - b.im); }

Box operator*(const Box& a, const Box& b) {
    return Box(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
}

Box operator/(const Box& a, const Box& b) {
    Interval d = b.modulus_sq();
    if (d.contains_zero()) throw Error("box division by a box containing zero");
    Box num = a * Box(b.re, -b.im);
    return Box(num.re / d, num.im / d);
}

Box Box::operator-() const { return Box(-re, -im); }

Interval Box::modulus_sq() const { return re.square() + im.square(); }
Interval Box::modulus() const { return modulus_sq().sqrt(); }

bool Box::contains_zero() const { return re.contains_zero() && im.contains_zero(); }

bool Box::strictly_contains(const Box& o) const {
    return re.strictly_contains(o.re) && im.strictly_contains(o.im);
}

bool Box::disjoint_from(const Box& o) const {
    return re.disjoint_from(o.re) || im.disjoint_from(o.im);
}

Box Box::mid() const {
    mpfr_prec_t p = std::max(re.prec(), im.prec());
    return Box(Interval::of_mpq(re.mid_q(), p), Interval::of_mpq(im.mid_q(), p));
}

std::optional<Box> Box::intersect(const Box& a, const Box& b) {
    auto r = Interval::intersect(a.re, b.re);
    auto i = Interval::intersect(a.im, b.im);
    if (!r || !i) return std::nullopt;
    return Box(*r, *i);
}

std::string Box::str(int digits) const {
    return re.str(digits) + " + i*" + im.str(digits);
}

}  // namespace garsia
