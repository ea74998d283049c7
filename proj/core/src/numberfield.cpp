#include "garsia/numberfield.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "garsia/errors.hpp"

namespace garsia {

const char* to_string(NumberType t) {
    switch (t) {
        case NumberType::PISOT: return "PISOT";
        case NumberType::SALEM: return "SALEM";
        case NumberType::OTHER: return "OTHER";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// FieldElement

bool FieldElement::is_zero() const {
    for (const auto& c : c_)
        if (c != 0) return false;
    return true;
}

bool FieldElement::operator<(const FieldElement& o) const {
    if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
    for (std::size_t i = 0; i < c_.size(); ++i) {
        int c = cmp(c_[i], o.c_[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

std::string FieldElement::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ",";
        os << c_[i].get_str();
    }
    os << "]";
    return os.str();
}

FieldElement add(const FieldElement& a, const FieldElement& b) {
    if (a.dim() != b.dim()) throw Error("FieldElement dimension mismatch");
    std::vector<mpz_class> c(a.coeffs());
    for (int i = 0; i < b.dim(); ++i) c[i] += b.coeffs()[i];
    return FieldElement(std::move(c));
}

FieldElement sub(const FieldElement& a, const FieldElement& b) {
    if (a.dim() != b.dim()) throw Error("FieldElement dimension mismatch");
    std::vector<mpz_class> c(a.coeffs());
    for (int i = 0; i < b.dim(); ++i) c[i] -= b.coeffs()[i];
    return FieldElement(std::move(c));
}

FieldElement neg(const FieldElement& a) {
    std::vector<mpz_class> c(a.coeffs());
    for (auto& x : c) x = -x;
    return FieldElement(std::move(c));
}

FieldElement add_int(const FieldElement& a, long k) {
    if (a.dim() == 0) throw Error("add_int on an empty element");
    std::vector<mpz_class> c(a.coeffs());
    c[0] += k;
    return FieldElement(std::move(c));
}

FieldElement mul_by_beta(const FieldElement& x, const NumberFieldContext& ctx) {
    const ZPoly& p = ctx.min_poly().coeffs();
    const int d = ctx.degree();
    if (x.dim() != d) throw Error("FieldElement dimension mismatch with context");
    std::vector<mpz_class> c(d, 0);
    const mpz_class& top = x.coeffs()[d - 1];
    // shift by one power, then reduce beta^d = -(p_0 + p_1 beta + ...)
    for (int i = d - 1; i >= 1; --i) c[i] = x.coeffs()[i - 1];
    c[0] = 0;
    if (top != 0)
        for (int i = 0; i < d; ++i) c[i] -= top * p[i];
    return FieldElement(std::move(c));
}

// ---------------------------------------------------------------------------
// Context construction

namespace {

struct Classified {
    std::vector<RootEnclosure> roots;
    std::vector<ModulusClass> cls;
    std::vector<poly::RealRootInterval> real_ivs;  // aligned with roots, reals only
    int beta_index = -1;
};

// Isolate and classify all conjugates at the given precision. Returns
// nullopt when the enclosures are not yet tight enough to decide.
std::optional<Classified> try_classify(const ZPoly& p, int l_exact, mpfr_prec_t prec) {
    Classified out;
    const int d = poly::degree(p);

    auto real_ivs = poly::isolate_real_roots(p);
    mpq_class width;
    {
        mpz_class den = 1;
        mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(prec));
        width = mpq_class(1) / mpq_class(den);
    }
    for (auto& iv : real_ivs) {
        auto r = poly::refine_real_root(p, iv, width);
        RootEnclosure e;
        e.is_real = true;
        e.box = Box(Interval::hull(Interval::of_mpq(r.lo, prec), Interval::of_mpq(r.hi, prec)),
                    Interval(prec));
        out.roots.push_back(std::move(e));
        out.real_ivs.push_back(r);
    }
    const int n_real = static_cast<int>(out.roots.size());
    const int n_pairs = (d - n_real) / 2;

    for (auto& cert : isolate_complex_pairs(p, n_pairs, prec)) {
        RootEnclosure e;
        e.is_real = false;
        e.box = cert;
        out.roots.push_back(e);
        out.real_ivs.emplace_back();
        RootEnclosure conj;
        conj.is_real = false;
        conj.box = Box(cert.re, -cert.im);
        out.roots.push_back(conj);
        out.real_ivs.emplace_back();
        out.roots[out.roots.size() - 2].conj_partner = static_cast<int>(out.roots.size()) - 1;
        out.roots[out.roots.size() - 1].conj_partner = static_cast<int>(out.roots.size()) - 2;
    }

    for (std::size_t i = 0; i < out.roots.size(); ++i)
        for (std::size_t j = i + 1; j < out.roots.size(); ++j)
            if (!out.roots[i].box.disjoint_from(out.roots[j].box)) return std::nullopt;

    Interval one = Interval::of_long(1, prec);
    int straddle = 0;
    out.cls.resize(d);
    for (int i = 0; i < d; ++i) {
        Interval m = out.roots[i].modulus();
        if (one.certainly_lt(m)) {
            out.cls[i] = ModulusClass::GT_ONE;
        } else if (m.certainly_lt(one)) {
            out.cls[i] = ModulusClass::LT_ONE;
        } else {
            out.cls[i] = ModulusClass::EQ_ONE;
            ++straddle;
        }
    }
    // The straddlers must be exactly the l_exact circle roots; anything else
    // means the enclosures are still too coarse.
    if (straddle != l_exact) return std::nullopt;

    Interval two = Interval::of_long(2, prec);
    for (int i = 0; i < d; ++i) {
        if (!out.roots[i].is_real) continue;
        const Interval& re = out.roots[i].box.re;
        if (one.certainly_lt(re) && re.certainly_lt(two)) {
            if (out.beta_index >= 0) return std::nullopt;
            out.beta_index = i;
        }
    }
    if (out.beta_index < 0) return std::nullopt;
    return out;
}

}  // namespace

NumberFieldContext::NumberFieldContext(IntPolynomial p, mpfr_prec_t precision_bits,
                                       long precision_cap, bool exact_ties)
    : poly_(std::move(p)),
      precision_bits_(std::max<mpfr_prec_t>(precision_bits, 64)),
      precision_cap_(std::max<long>(precision_cap, precision_bits_)),
      exact_ties_(exact_ties) {
    const ZPoly& P = poly_.coeffs();
    const int d = poly_.degree();
    l_ = poly::count_roots_on_unit_circle(P);

    std::optional<Classified> cl;
    mpfr_prec_t pr = precision_bits_;
    while (true) {
        try {
            cl = try_classify(P, l_, pr);
        } catch (const PrecisionError&) {
            cl = std::nullopt;
        }
        if (cl) break;
        pr *= 2;
        if (pr > precision_cap_)
            throw PrecisionError("build_context: conjugate enclosures undecidable at precision cap " +
                                 std::to_string(precision_cap_));
    }

    // Context order: beta first, then decreasing modulus; equal-modulus
    // conjugate pairs put the upper half plane first.
    std::vector<int> order;
    order.push_back(cl->beta_index);
    std::vector<int> rest;
    for (int i = 0; i < d; ++i)
        if (i != cl->beta_index) rest.push_back(i);
    std::sort(rest.begin(), rest.end(), [&](int a, int b) {
        double ma = cl->roots[a].modulus().mid_d();
        double mb = cl->roots[b].modulus().mid_d();
        if (ma != mb) return ma > mb;
        double ra = cl->roots[a].box.re.mid_d(), rb = cl->roots[b].box.re.mid_d();
        if (ra != rb) return ra > rb;
        return cl->roots[a].box.im.mid_d() > cl->roots[b].box.im.mid_d();
    });
    for (int i : rest) order.push_back(i);
    std::vector<int> pos(d);
    for (int i = 0; i < d; ++i) pos[order[i]] = i;

    Level base;
    base.prec = pr;
    base.real_ivs.resize(d);
    for (int i = 0; i < d; ++i) {
        int src = order[i];
        RootEnclosure e = cl->roots[src];
        if (e.conj_partner >= 0) e.conj_partner = pos[e.conj_partner];
        base.roots.push_back(e);
        base.real_ivs[i] = cl->real_ivs[src];

        ConjugateEnclosure ce;
        ce.index = i + 1;
        ce.is_real = e.is_real;
        ce.box = e.box;
        ce.cls = cl->cls[src];
        ce.conj_partner = e.conj_partner;
        conj_.push_back(std::move(ce));
    }

    r_ = 0;
    for (const auto& c : conj_)
        if (c.cls == ModulusClass::GT_ONE) ++r_;
    if (conj_[0].cls != ModulusClass::GT_ONE)
        throw Error("build_context: beta not classified as modulus > 1");
    for (int i = 0; i < r_; ++i)
        if (conj_[i].cls != ModulusClass::GT_ONE)
            throw Error("build_context: modulus ordering violated");

    // Separation constants at the classification precision.
    Interval one = Interval::of_long(1, pr);
    Interval cb = Interval::of_long(1, pr);
    for (int k = 0; k < d; ++k) cb = cb + cb;  // 2^d
    Interval mah = Interval::of_long(1, pr);
    Interval gt_prod = Interval::of_long(1, pr);
    Interval lt_prod = Interval::of_long(1, pr);
    for (int i = 0; i < d; ++i) {
        Interval m = conj_[i].box.modulus();
        switch (conj_[i].cls) {
            case ModulusClass::GT_ONE: {
                Interval f = m - one;
                if (!f.is_positive()) throw Error("build_context: |beta_j|-1 not positive");
                cb = cb / f;
                mah = mah * m;
                if (i > 0) gt_prod = gt_prod * f;
                break;
            }
            case ModulusClass::LT_ONE: {
                Interval f = one - m;
                if (!f.is_positive()) throw Error("build_context: 1-|beta_j| not positive");
                cb = cb / f;
                lt_prod = lt_prod * f;
                break;
            }
            case ModulusClass::EQ_ONE:
                break;
        }
    }
    c_beta_ = cb;
    mahler_ = mah;
    gt_minus_one_prod_ = gt_prod;
    lt_one_minus_prod_ = lt_prod;

    base.powers.resize(d);
    for (int j = 0; j < d; ++j) {
        base.powers[j].resize(d);
        base.powers[j][0] = Box(Interval::of_long(1, pr), Interval(pr));
        for (int k = 1; k < d; ++k) base.powers[j][k] = base.powers[j][k - 1] * base.roots[j].box;
    }
    levels_.emplace(pr, std::move(base));
}

NumberType NumberFieldContext::classify() const {
    if (r_ == 1 && l_ == 0) return NumberType::PISOT;
    if (r_ == 1 && l_ >= 1 && l_ == degree() - 2) return NumberType::SALEM;
    return NumberType::OTHER;
}

Interval NumberFieldContext::c0(long n) const {
    mpfr_prec_t pr = c_beta_.prec();
    const int d = degree();
    mpz_class half_den = 1;
    mpz_mul_2exp(half_den.get_mpz_t(), half_den.get_mpz_t(), d - 1);
    Interval c = Interval::of_mpq(mpq_class(1, half_den), pr);
    c = c * gt_minus_one_prod_ * lt_one_minus_prod_;
    if (l_ > 0) {
        Interval np1 = Interval::of_long(n + 1, pr);
        c = c / np1.pow_ui(static_cast<unsigned long>(l_));
    }
    return c;
}

Interval NumberFieldContext::v_bound(long n) const {
    mpfr_prec_t pr = c_beta_.prec();
    Interval b = c_beta_;
    if (l_ > 0) {
        Interval np1 = Interval::of_long(n + 1, pr);
        b = b * np1.pow_ui(static_cast<unsigned long>(l_));
    }
    return b + Interval::of_long(1, pr);
}

SeparationConstants separation_constants(const NumberFieldContext& ctx, long n) {
    if (n < 0) throw Error("separation_constants: n must be >= 0");
    return {ctx.c_beta(), ctx.c0(n), ctx.v_bound(n)};
}

// ---------------------------------------------------------------------------
// Precision ladder

const NumberFieldContext::Level& NumberFieldContext::build_level(mpfr_prec_t prec) const {
    // mu_ held by caller
    const Level& prev = std::prev(levels_.upper_bound(prec))->second;
    Level next;
    next.prec = prec;
    next.real_ivs.resize(degree());
    const ZPoly& P = poly_.coeffs();
    ZPoly dP = poly::derivative(P);
    mpq_class width;
    {
        mpz_class den = 1;
        mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(prec));
        width = mpq_class(1) / mpq_class(den);
    }
    const int d = degree();
    next.roots.resize(d);
    for (int j = 0; j < d; ++j) {
        RootEnclosure e = prev.roots[j];
        if (e.is_real) {
            auto r = poly::refine_real_root(P, prev.real_ivs[j], width);
            next.real_ivs[j] = r;
            e.box = Box(Interval::hull(Interval::of_mpq(r.lo, prec), Interval::of_mpq(r.hi, prec)),
                        Interval(prec));
            next.roots[j] = e;
        } else if (e.box.im.is_positive()) {
            Box x(e.box.re.at_prec(prec), e.box.im.at_prec(prec));
            for (int it = 0; it < 64; ++it) {
                double w = std::max(x.re.width_d(), x.im.width_d());
                Box k = newton_contract(P, dP, x, prec);
                double w2 = std::max(k.re.width_d(), k.im.width_d());
                x = k;
                if (w2 <= 0 || w2 >= w * 0.5) break;
            }
            e.box = x;
            next.roots[j] = e;
        }
    }
    // mirror lower-half boxes from their refined partners
    for (int j = 0; j < d; ++j) {
        RootEnclosure e = prev.roots[j];
        if (!e.is_real && !e.box.im.is_positive()) {
            const RootEnclosure& up = next.roots[e.conj_partner];
            e.box = Box(up.box.re, -up.box.im);
            next.roots[j] = e;
        }
    }
    next.powers.resize(d);
    for (int j = 0; j < d; ++j) {
        next.powers[j].resize(d);
        next.powers[j][0] = Box(Interval::of_long(1, prec), Interval(prec));
        for (int k = 1; k < d; ++k) next.powers[j][k] = next.powers[j][k - 1] * next.roots[j].box;
    }
    return levels_.emplace(prec, std::move(next)).first->second;
}

const NumberFieldContext::Level& NumberFieldContext::level(mpfr_prec_t prec) const {
    std::lock_guard<std::mutex> lock(mu_);
    mpfr_prec_t ladder = levels_.begin()->first;
    while (ladder < prec) ladder *= 2;
    auto it = levels_.find(ladder);
    if (it != levels_.end()) return it->second;
    return build_level(ladder);
}

// ---------------------------------------------------------------------------
// Conjugate evaluation

Box NumberFieldContext::eval_at(const FieldElement& x, int j0, const Level& lv) const {
    const int d = degree();
    Box acc{Interval(lv.prec), Interval(lv.prec)};
    for (int k = 0; k < d; ++k) {
        const mpz_class& c = x.coeffs()[k];
        if (c == 0) continue;
        Box t{Interval::of_mpz(c, lv.prec), Interval(lv.prec)};
        acc = acc + t * lv.powers[j0][k];
    }
    return acc;
}

Interval NumberFieldContext::abs_at(const FieldElement& x, int j0, const Level& lv) const {
    if (lv.roots[j0].is_real) return eval_at(x, j0, lv).re.abs();
    return eval_at(x, j0, lv).modulus();
}

Box NumberFieldContext::eval_conjugate(const FieldElement& x, int j) const {
    if (j < 1 || j > degree()) throw Error("eval_conjugate: conjugate index out of range");
    if (x.dim() != degree()) throw Error("eval_conjugate: dimension mismatch");
    return eval_at(x, j - 1, level(precision_bits_));
}

// ---------------------------------------------------------------------------
// Membership in V_beta

int NumberFieldContext::certified_sign(const FieldElement& x, int j0) const {
    if (x.is_zero()) return 0;
    for (mpfr_prec_t pr = levels_.begin()->first; pr <= static_cast<mpfr_prec_t>(precision_cap_);
         pr *= 2) {
        const Level& lv = level(pr);
        const Interval& v = eval_at(x, j0, lv).re;
        if (v.is_positive()) return 1;
        if (v.is_negative()) return -1;
    }
    throw PrecisionError("certified_sign: undecidable at precision cap (nonzero element)");
}

// Exact decision of |x^(j)| <= 1/(|beta_j|-1) on a real embedding when the
// interval test keeps straddling: the boundary tie holds iff the element
// s1*x*(s2*beta - 1) - 1 is exactly zero in Z[beta]; otherwise its j-th
// embedding is a nonzero number whose sign settles the comparison, and the
// integrality of the norm guarantees refinement terminates.
bool NumberFieldContext::real_tie_break(const FieldElement& x, int j0, bool* is_tie) const {
    *is_tie = false;
    int s1 = certified_sign(x, j0);
    if (s1 == 0) return true;  // x = 0 is inside every bound
    const Level& base = level(levels_.begin()->first);
    int s2 = base.roots[j0].box.re.is_positive() ? 1 : -1;
    FieldElement y = mul_by_beta(x, *this);
    FieldElement t = s2 > 0 ? sub(y, x) : neg(add(y, x));
    if (s1 < 0) t = neg(t);
    FieldElement e = add_int(t, -1);  // |x^(j)|(|beta_j|-1) - 1 at embedding j
    if (e.is_zero()) {
        *is_tie = true;
        return true;
    }
    int s = certified_sign(e, j0);
    return s < 0;
}

// Complex embeddings compare through F1 = q(sqrt(v)-1)^2 - 1 with
// q = |x^(j)|^2 and v = |beta_j|^2; F1 = 0 exactly on boundary ties. The
// integer R' = prod over ordered root pairs (z,w), z != w, of
// B(z,w) = (Q(M+1)-1)^2 - 4 Q^2 M  (Q = X(z)X(w), M = zw)
// is computed to width < 1; R' != 0 rules out a tie for every pair at once.
bool NumberFieldContext::complex_tie_break(const FieldElement& x, int j0, bool* is_tie) const {
    *is_tie = false;
    const int d = degree();
    const int j1 = conj_[j0].conj_partner;
    ZPoly X(x.coeffs().begin(), x.coeffs().end());
    X = poly::normalized(std::move(X));

    auto pair_B = [&](const Level& lv, int a, int b) {
        Box za = lv.roots[a].box;
        Box zb = lv.roots[b].box;
        Box Q = poly::eval_box(X, za, lv.prec) * poly::eval_box(X, zb, lv.prec);
        Box M = za * zb;
        Box one{Interval::of_long(1, lv.prec), Interval(lv.prec)};
        Box t = Q * (M + one) - one;
        Box four{Interval::of_long(4, lv.prec), Interval(lv.prec)};
        return t * t - four * Q * Q * M;
    };

    // R' at adaptive precision, independent of the comparison cap.
    long r_integer = 0;
    bool r_known = false;
    for (mpfr_prec_t rp = levels_.begin()->first; rp <= (1L << 22); rp *= 2) {
        const Level& lv = level(rp);
        Box prod{Interval::of_long(1, rp), Interval(rp)};
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b)
                if (a != b) prod = prod * pair_B(lv, a, b);
        if (!prod.im.contains_zero()) throw Error("complex_tie_break: pair product not real");
        if (prod.re.width_d() < 0.5) {
            double lo = std::ceil(prod.re.lo_d());
            double hi = std::floor(prod.re.hi_d());
            if (lo > hi) throw Error("complex_tie_break: pair product missed every integer");
            r_integer = static_cast<long>(lo);
            r_known = true;
            break;
        }
    }
    if (!r_known)
        throw PrecisionError("complex_tie_break: could not evaluate the pair product to an integer");

    for (mpfr_prec_t pr = levels_.begin()->first; pr <= static_cast<mpfr_prec_t>(precision_cap_);
         pr *= 2) {
        const Level& lv = level(pr);
        Interval q = eval_at(x, j0, lv).modulus_sq();
        Interval v = lv.roots[j0].box.modulus_sq();
        Interval one = Interval::of_long(1, pr);
        Interval sv = v.sqrt();
        Interval f1 = q * (sv - one).square() - one;
        if (f1.is_negative()) return true;
        if (f1.is_positive()) return false;
        if (r_integer != 0) continue;  // F1 nonzero for every pair; keep refining

        // Some ordered pair of conjugates satisfies B = 0 exactly. Identify
        // the straddling pairs; if ours is the only one, our F1 vanishes
        // provided the second factor stays away from zero.
        bool ours_straddles = false;
        int other_straddlers = 0;
        for (int a = 0; a < d; ++a) {
            for (int b = a + 1; b < d; ++b) {
                Box bb = pair_B(lv, a, b);
                bool straddle = bb.re.contains_zero() && bb.im.contains_zero();
                if (!straddle) continue;
                if ((a == j0 && b == j1) || (a == j1 && b == j0)) {
                    ours_straddles = true;
                } else {
                    ++other_straddlers;
                }
            }
        }
        if (!ours_straddles) continue;  // B(our) != 0; refinement will decide F1
        if (other_straddlers == 0) {
            Interval f2 = q * (sv + one).square() - one;
            if (!f2.contains_zero()) {
                *is_tie = true;
                return true;
            }
        }
    }
    throw PrecisionError("complex_tie_break: undecidable at precision cap");
}

bool NumberFieldContext::embedding_within_bound(const FieldElement& x, int j0) const {
    Interval one = Interval::of_long(1, 64);
    int escalations = 0;
    for (mpfr_prec_t pr = levels_.begin()->first; pr <= static_cast<mpfr_prec_t>(precision_cap_);
         pr *= 2, ++escalations) {
        const Level& lv = level(pr);
        Interval m1 = lv.roots[j0].modulus() - one;
        if (m1.is_positive()) {
            Interval bound = m1.recip();
            Interval a = abs_at(x, j0, lv);
            if (a.certainly_le(bound)) return true;
            if (bound.certainly_lt(a)) return false;
        }
        if (escalations >= 2 && exact_ties_) {
            bool tie = false;
            return lv.roots[j0].is_real ? real_tie_break(x, j0, &tie)
                                        : complex_tie_break(x, j0, &tie);
        }
    }
    throw PrecisionError("in_v_beta: comparison undecidable at precision cap " +
                         std::to_string(precision_cap_) +
                         " (exact tie-breaking disabled)");
}

Membership NumberFieldContext::in_v_beta(const FieldElement& x) const {
    if (x.dim() != degree()) throw Error("in_v_beta: dimension mismatch");
    if (x.is_zero()) return Membership::IN;
    for (int j0 = 0; j0 < r_; ++j0) {
        int partner = conj_[j0].conj_partner;
        if (partner >= 0 && partner < j0) continue;  // same absolute value
        if (!embedding_within_bound(x, j0)) return Membership::OUT;
    }
    return Membership::IN;
}

}  // namespace garsia
