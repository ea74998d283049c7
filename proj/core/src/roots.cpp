#include "garsia/roots.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "garsia/errors.hpp"

namespace garsia {

namespace {

// Aberth-Ehrlich simultaneous iteration in double precision. Good enough to
// seed the certified refinement for the desk-scale degrees this library
// targets.
std::vector<std::complex<double>> aberth_roots(const ZPoly& p) {
    const int d = poly::degree(p);
    std::vector<double> c(d + 1);
    for (int i = 0; i <= d; ++i) c[i] = p[i].get_d();
    auto eval = [&](std::complex<double> z) {
        std::complex<double> acc = 0;
        for (int i = d; i >= 0; --i) acc = acc * z + c[i];
        return acc;
    };
    auto deval = [&](std::complex<double> z) {
        std::complex<double> acc = 0;
        for (int i = d; i >= 1; --i) acc = acc * z + c[i] * static_cast<double>(i);
        return acc;
    };
    double radius = 0;
    for (int i = 0; i < d; ++i) radius = std::max(radius, std::abs(c[i]));
    radius = 1.0 + radius;
    std::vector<std::complex<double>> z(d);
    for (int i = 0; i < d; ++i) {
        double ang = 2.0 * M_PI * (i + 0.25) / d + 0.43;
        z[i] = std::polar(0.7 * radius, ang);
    }
    for (int iter = 0; iter < 400; ++iter) {
        double worst = 0;
        for (int i = 0; i < d; ++i) {
            std::complex<double> pv = eval(z[i]);
            std::complex<double> dv = deval(z[i]);
            if (dv == 0.0) {
                z[i] += 1e-8;
                continue;
            }
            std::complex<double> ratio = pv / dv;
            std::complex<double> sum = 0;
            for (int j = 0; j < d; ++j)
                if (j != i) sum += 1.0 / (z[i] - z[j]);
            std::complex<double> denom = 1.0 - ratio * sum;
            std::complex<double> step = denom == 0.0 ? ratio : ratio / denom;
            z[i] -= step;
            worst = std::max(worst, std::abs(step));
        }
        if (worst < 1e-14) break;
    }
    return z;
}

// One interval-Newton step K = m - p(m)/p'(X). If K lands strictly inside X
// the box contains exactly one root (and that root is in K).
Box newton_step(const ZPoly& p, const ZPoly& dp, const Box& x, mpfr_prec_t prec) {
    Box m = x.mid();
    Box num = poly::eval_box(p, m, prec);
    Box den = poly::eval_box(dp, x, prec);
    return m - num / den;
}

// Polish a point approximation with plain Newton iterations carried out on
// zero-width boxes at the working precision.
Box polish(const ZPoly& p, const ZPoly& dp, Box z, mpfr_prec_t prec) {
    for (int it = 0; it < 64; ++it) {
        Box pz = poly::eval_box(p, z, prec);
        Box dz = poly::eval_box(dp, z, prec);
        if (dz.modulus_sq().contains_zero()) break;
        Box step = pz / dz;
        Box next = (z - step).mid();
        double s = step.modulus().hi_d();
        z = next;
        if (s < std::ldexp(1.0, -static_cast<int>(prec))) break;
    }
    return z;
}

Box inflate(const Box& z, double w, mpfr_prec_t prec) {
    Interval dw = Interval::span(-w, w, prec);
    return Box(z.re + dw, z.im + dw);
}

// Certify and tighten one complex root near the point approximation.
// Returns a box of width around 2^-(prec/2) certified to contain exactly one
// root, or nullopt if certification failed at this precision.
std::optional<Box> certify_complex(const ZPoly& p, const ZPoly& dp, const Box& approx,
                                   mpfr_prec_t prec) {
    Box z = polish(p, dp, approx, prec);
    double base = std::max(std::ldexp(1.0, -static_cast<int>(prec) + 8),
                           1e-30 * (1.0 + z.modulus().hi_d()));
    for (double scale : {1.0, 0.125, 8.0, 64.0, 1024.0}) {
        Box x = inflate(z, base * scale, prec);
        Box k = newton_step(p, dp, x, prec);
        if (x.strictly_contains(k)) {
            auto cur = Box::intersect(k, x);
            if (!cur) return std::nullopt;
            // contract quadratically to the target width
            for (int it = 0; it < 200; ++it) {
                double w = std::max(cur->re.width_d(), cur->im.width_d());
                if (w < std::ldexp(1.0, -static_cast<int>(prec) / 2)) break;
                Box k2 = newton_step(p, dp, *cur, prec);
                auto nxt = Box::intersect(k2, *cur);
                if (!nxt) break;
                double w2 = std::max(nxt->re.width_d(), nxt->im.width_d());
                if (w2 >= w) break;
                cur = nxt;
            }
            return cur;
        }
    }
    return std::nullopt;
}

}  // namespace

Box newton_contract(const ZPoly& p, const ZPoly& dp, const Box& x, mpfr_prec_t prec) {
    Box k = newton_step(p, dp, x, prec);
    auto r = Box::intersect(k, x);
    if (!r) throw Error("newton_contract: empty intersection (box lost its root)");
    return *r;
}

std::vector<Box> isolate_complex_pairs(const ZPoly& p, int n_pairs, mpfr_prec_t prec) {
    if (n_pairs == 0) return {};
    ZPoly dp = poly::derivative(p);
    auto approx = aberth_roots(p);
    std::vector<std::complex<double>> upper;
    for (auto& z : approx)
        if (z.imag() > 1e-9) upper.push_back(z);
    std::sort(upper.begin(), upper.end(), [](auto a, auto b) {
        return a.real() == b.real() ? a.imag() < b.imag() : a.real() < b.real();
    });
    if (static_cast<int>(upper.size()) != n_pairs)
        throw PrecisionError("isolate_complex_pairs: floating seed lost a conjugate pair");
    std::vector<Box> out;
    for (auto& z : upper) {
        Box seed(Interval::of_double(z.real(), prec), Interval::of_double(z.imag(), prec));
        auto cert = certify_complex(p, dp, seed, prec);
        if (!cert || !cert->im.is_positive())
            throw PrecisionError("isolate_complex_pairs: could not certify a complex root at precision " +
                                 std::to_string(prec));
        out.push_back(*cert);
    }
    return out;
}

std::vector<RootEnclosure> isolate_roots(const ZPoly& p, mpfr_prec_t prec) {
    const int d = poly::degree(p);
    if (d < 1) throw Error("isolate_roots: constant polynomial");

    std::vector<RootEnclosure> out;

    // Real roots: exact Sturm isolation plus bisection refinement.
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
        Interval lo = Interval::of_mpq(r.lo, prec);
        Interval hi = Interval::of_mpq(r.hi, prec);
        e.box = Box(Interval::hull(lo, hi), Interval(prec));
        out.push_back(std::move(e));
    }
    const int n_real = static_cast<int>(out.size());
    const int n_pairs = (d - n_real) / 2;
    if (n_real + 2 * n_pairs != d)
        throw Error("isolate_roots: inconsistent real root count");

    for (auto& cert : isolate_complex_pairs(p, n_pairs, prec)) {
        RootEnclosure e;
        e.is_real = false;
        e.box = cert;
        out.push_back(e);
        RootEnclosure conj;
        conj.is_real = false;
        conj.box = Box(cert.re, -cert.im);
        out.push_back(conj);
        out[out.size() - 2].conj_partner = static_cast<int>(out.size()) - 1;
        out[out.size() - 1].conj_partner = static_cast<int>(out.size()) - 2;
    }

    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t j = i + 1; j < out.size(); ++j)
            if (!out[i].box.disjoint_from(out[j].box))
                throw PrecisionError("isolate_roots: enclosures overlap at precision " +
                                     std::to_string(prec));
    return out;
}

}  // namespace garsia
