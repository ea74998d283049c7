#include "garsia/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "garsia/errors.hpp"

namespace garsia {
namespace poly {

ZPoly normalized(ZPoly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

int degree(const ZPoly& p) { return static_cast<int>(p.size()) - 1; }

ZPoly derivative(const ZPoly& p) {
    ZPoly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
    return normalized(std::move(d));
}

mpz_class eval_z(const ZPoly& p, const mpz_class& x) {
    mpz_class acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

mpq_class eval_q(const ZPoly& p, const mpq_class& x) {
    mpq_class acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

int sign_at(const ZPoly& p, const mpq_class& x) {
    // sign of sum c_i a^i b^(d-i) where x = a/b in lowest terms
    const mpz_class& a = x.get_num();
    const mpz_class& b = x.get_den();
    mpz_class acc = 0;
    mpz_class bpow = 1;
    // Horner from the leading coefficient: acc = acc*a + c_i*b^(d-i)
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        acc = acc * a + (*it) * bpow;
        bpow *= b;
    }
    return sgn(acc);
}

Box eval_box(const ZPoly& p, const Box& x, mpfr_prec_t prec) {
    Box acc{Interval(prec), Interval(prec)};
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        acc = acc * x + Box(Interval::of_mpz(*it, prec), Interval(prec));
    }
    return acc;
}

Interval eval_interval(const ZPoly& p, const Interval& x) {
    Interval acc(x.prec());
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        acc = acc * x + Interval::of_mpz(*it, x.prec());
    }
    return acc;
}

bool divides_monic(const ZPoly& p, const ZPoly& d, ZPoly* q) {
    if (d.empty() || d.back() != 1) throw Error("divides_monic: divisor must be monic");
    ZPoly rem = p;
    int dd = degree(d);
    int dp = degree(rem);
    if (dp < dd) return false;
    ZPoly quot(dp - dd + 1, mpz_class(0));
    for (int k = dp; k >= dd; --k) {
        mpz_class c = rem[k];
        if (c == 0) continue;
        quot[k - dd] = c;
        for (int i = 0; i <= dd; ++i) rem[k - dd + i] -= c * d[i];
    }
    for (const auto& c : rem)
        if (c != 0) return false;
    if (q) *q = normalized(std::move(quot));
    return true;
}

ZPoly mod_monic(ZPoly p, const ZPoly& d) {
    if (d.empty() || d.back() != 1) throw Error("mod_monic: divisor must be monic");
    int dd = degree(d);
    for (int k = degree(p); k >= dd; --k) {
        mpz_class c = p[k];
        if (c == 0) continue;
        for (int i = 0; i <= dd; ++i) p[k - dd + i] -= c * d[i];
    }
    p.resize(dd);
    return p;
}

std::string to_string(const ZPoly& p, const std::string& var) {
    if (p.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(p); i >= 0; --i) {
        const mpz_class& c = p[i];
        if (c == 0) continue;
        mpz_class a = ::abs(c);
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (a != 1 || i == 0) os << a.get_str();
        if (i > 0) {
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    if (first) return "0";
    return os.str();
}

// ---------------------------------------------------------------------------
// Sturm sequences

namespace {

QPoly q_normalized(QPoly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

QPoly q_rem(QPoly a, const QPoly& b) {
    int db = static_cast<int>(b.size()) - 1;
    for (int k = static_cast<int>(a.size()) - 1; k >= db; --k) {
        if (a[k] == 0) continue;
        mpq_class c = a[k] / b[db];
        for (int i = 0; i <= db; ++i) a[k - db + i] -= c * b[i];
        a[k] = 0;
    }
    a.resize(std::max(db, 0));
    return q_normalized(std::move(a));
}

QPoly q_divide_exact(const QPoly& a, const QPoly& b) {
    QPoly rem = a;
    int db = static_cast<int>(b.size()) - 1;
    int da = static_cast<int>(rem.size()) - 1;
    QPoly quot(std::max(da - db + 1, 0), mpq_class(0));
    for (int k = da; k >= db; --k) {
        if (rem[k] == 0) continue;
        mpq_class c = rem[k] / b[db];
        quot[k - db] = c;
        for (int i = 0; i <= db; ++i) rem[k - db + i] -= c * b[i];
    }
    return q_normalized(std::move(quot));
}

mpq_class q_eval(const QPoly& p, const mpq_class& x) {
    mpq_class acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

int count_sign_changes(const std::vector<int>& signs) {
    int n = 0;
    int prev = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++n;
        prev = s;
    }
    return n;
}

}  // namespace

SturmChain::SturmChain(const ZPoly& p) {
    QPoly a(p.begin(), p.end());
    a = q_normalized(std::move(a));
    if (a.size() <= 1) return;
    QPoly b;
    {
        ZPoly d = derivative(p);
        b.assign(d.begin(), d.end());
    }
    std::vector<QPoly> chain;
    chain.push_back(a);
    chain.push_back(b);
    while (chain.back().size() > 1) {
        QPoly r = q_rem(chain[chain.size() - 2], chain.back());
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        chain.push_back(std::move(r));
    }
    if (chain.back().empty() || chain.back().size() > 1) {
        // Nontrivial gcd: the polynomial has multiple roots. Rebuild the
        // chain on the squarefree part so that counts are of distinct roots.
        QPoly g = chain.back().empty() ? chain[chain.size() - 2] : chain.back();
        QPoly sf = q_divide_exact(chain[0], g);
        chain.clear();
        chain.push_back(sf);
        // derivative of sf
        QPoly dsf;
        for (std::size_t i = 1; i < sf.size(); ++i) dsf.push_back(sf[i] * static_cast<long>(i));
        chain.push_back(q_normalized(std::move(dsf)));
        while (chain.back().size() > 1) {
            QPoly r = q_rem(chain[chain.size() - 2], chain.back());
            if (r.empty()) break;
            for (auto& c : r) c = -c;
            chain.push_back(std::move(r));
        }
    }
    seq_ = std::move(chain);
}

int SturmChain::variations_at(const mpq_class& x) const {
    std::vector<int> signs;
    signs.reserve(seq_.size());
    for (const auto& s : seq_) signs.push_back(sgn(q_eval(s, x)));
    return count_sign_changes(signs);
}

int SturmChain::variations_at_neg_inf() const {
    std::vector<int> signs;
    for (const auto& s : seq_) {
        if (s.empty()) {
            signs.push_back(0);
            continue;
        }
        int lead = sgn(s.back());
        signs.push_back((s.size() - 1) % 2 == 0 ? lead : -lead);
    }
    return count_sign_changes(signs);
}

int SturmChain::variations_at_pos_inf() const {
    std::vector<int> signs;
    for (const auto& s : seq_) signs.push_back(s.empty() ? 0 : sgn(s.back()));
    return count_sign_changes(signs);
}

int SturmChain::count_roots(const mpq_class& a, const mpq_class& b) const {
    return variations_at(a) - variations_at(b);
}

int SturmChain::count_all() const {
    return variations_at_neg_inf() - variations_at_pos_inf();
}

// ---------------------------------------------------------------------------

mpq_class root_bound(const ZPoly& p) {
    if (p.size() <= 1) return 1;
    mpz_class m = 0;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) m = std::max(m, mpz_class(::abs(p[i])));
    mpz_class lead = ::abs(p.back());
    // 1 + max|c_i| / |lead|
    mpq_class b(m, lead);
    b.canonicalize();
    return b + 1;
}

namespace {

void isolate_rec(const ZPoly& p, const SturmChain& chain, const mpq_class& a, const mpq_class& b,
                 int count, std::vector<RealRootInterval>& out) {
    if (count <= 0) return;
    if (count == 1) {
        out.push_back({a, b, false});
        return;
    }
    mpq_class m = (a + b) / 2;
    if (sign_at(p, m) == 0) {
        // Rational root at the midpoint: split it off exactly and isolate
        // the quotient (monic input => the root is an integer).
        if (m.get_den() != 1) throw Error("isolate_real_roots: non-integer rational root of a monic polynomial");
        ZPoly q;
        if (!divides_monic(p, ZPoly{mpz_class(-m.get_num()), 1}, &q)) {
            throw Error("isolate_real_roots: midpoint root division failed");
        }
        auto rest = isolate_real_roots(q);
        rest.push_back({m, m, true});
        std::sort(rest.begin(), rest.end(),
                  [](const RealRootInterval& x, const RealRootInterval& y) { return x.lo < y.lo; });
        for (auto& iv : rest)
            if (iv.lo >= a && iv.hi <= b) out.push_back(iv);
        return;
    }
    int left = chain.count_roots(a, m);
    isolate_rec(p, chain, a, m, left, out);
    isolate_rec(p, chain, m, b, count - left, out);
}

}  // namespace

std::vector<RealRootInterval> isolate_real_roots(const ZPoly& p) {
    std::vector<RealRootInterval> out;
    if (p.size() <= 1) return out;
    SturmChain chain(p);
    mpq_class b = root_bound(p);
    mpq_class a = -b;
    int total = chain.count_roots(a, b);
    isolate_rec(p, chain, a, b, total, out);
    return out;
}

RealRootInterval refine_real_root(const ZPoly& p, RealRootInterval iv, const mpq_class& width) {
    if (iv.exact) return iv;
    int slo = sign_at(p, iv.lo);
    int shi = sign_at(p, iv.hi);
    if (slo == 0 || shi == 0 || slo == shi)
        throw Error("refine_real_root: interval endpoints must bracket a sign change");
    while (iv.hi - iv.lo >= width) {
        mpq_class m = (iv.lo + iv.hi) / 2;
        int sm = sign_at(p, m);
        if (sm == 0) return {m, m, true};
        if (sm == slo) {
            iv.lo = m;
        } else {
            iv.hi = m;
        }
    }
    return iv;
}

// ---------------------------------------------------------------------------
// Irreducibility: exhaustive monic-factor search inside the Landau-Mignotte
// coefficient box, pruned by divisor conditions at x = 0 and value filters
// at x = +-1.

namespace {

mpz_class ceil_sqrt(const mpz_class& n) {
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    if (r * r < n) r += 1;
    return r;
}

std::vector<long> signed_divisors(const mpz_class& n) {
    mpz_class a = ::abs(n);
    if (a == 0) throw Error("divisors of zero requested");
    if (!a.fits_slong_p() || a.get_si() > 1000000000L)
        throw Error("irreducibility check: constant term too large for divisor enumeration");
    long v = a.get_si();
    std::vector<long> ds;
    for (long i = 1; static_cast<long long>(i) * i <= v; ++i) {
        if (v % i == 0) {
            ds.push_back(i);
            if (i != v / i) ds.push_back(v / i);
        }
    }
    std::vector<long> out;
    out.reserve(ds.size() * 2);
    for (long d : ds) {
        out.push_back(d);
        out.push_back(-d);
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct FactorSearch {
    const ZPoly& p;
    long p1, pm1;  // p(1), p(-1), both nonzero
    int k;
    std::vector<long> bounds;  // Mignotte bound per coefficient index
    std::vector<long> coeff;   // candidate coefficients b_0..b_k
    bool found = false;

    bool leaf_check() {
        long g1 = 0, gm1 = 0;
        long sign = 1;
        for (int i = 0; i <= k; ++i) {
            g1 += coeff[i];
            gm1 += sign * coeff[i];
            sign = -sign;
        }
        return g1 != 0 && gm1 != 0 && p1 % g1 == 0 && pm1 % gm1 == 0;
    }

    void run(int idx, const std::vector<long>& b0_candidates) {
        if (found) return;
        if (idx == 0) {
            for (long b0 : b0_candidates) {
                coeff[0] = b0;
                run(1, b0_candidates);
                if (found) return;
            }
            return;
        }
        if (idx == k) {
            coeff[k] = 1;
            if (!leaf_check()) return;
            ZPoly g(coeff.size());
            for (std::size_t i = 0; i < coeff.size(); ++i) g[i] = coeff[i];
            if (divides_monic(p, g)) found = true;
            return;
        }
        for (long b = -bounds[idx]; b <= bounds[idx]; ++b) {
            coeff[idx] = b;
            run(idx + 1, b0_candidates);
            if (found) return;
        }
    }
};

}  // namespace

bool is_irreducible(const ZPoly& p) {
    int d = degree(p);
    if (d <= 0) return false;
    if (d == 1) return true;
    if (p.back() != 1) throw Error("is_irreducible expects a monic polynomial");
    if (p[0] == 0) return false;  // x divides
    mpz_class v1 = eval_z(p, 1), vm1 = eval_z(p, -1);
    if (v1 == 0 || vm1 == 0) return false;
    if (!v1.fits_slong_p() || !vm1.fits_slong_p())
        throw Error("irreducibility check: polynomial values too large");

    mpz_class norm2 = 0;
    for (const auto& c : p) norm2 += c * c;
    mpz_class norm_ceil = ceil_sqrt(norm2);

    std::vector<long> b0s = signed_divisors(p[0]);

    for (int k = 1; k <= d / 2; ++k) {
        FactorSearch fs{p, v1.get_si(), vm1.get_si(), k, {}, {}, false};
        fs.bounds.resize(k + 1);
        fs.coeff.assign(k + 1, 0);
        double space = static_cast<double>(b0s.size());
        for (int i = 0; i <= k; ++i) {
            mpz_class binom;
            mpz_bin_uiui(binom.get_mpz_t(), k, i);
            mpz_class bd = binom * norm_ceil;
            if (!bd.fits_slong_p())
                throw Error("irreducibility check: Mignotte bounds too large");
            fs.bounds[i] = bd.get_si();
            if (i > 0 && i < k) space *= static_cast<double>(2 * fs.bounds[i] + 1);
        }
        if (space > 2e9)
            throw Error("irreducibility check: search space too large at degree " +
                        std::to_string(d));
        fs.run(0, b0s);
        if (fs.found) return false;
    }
    return true;
}

bool is_self_reciprocal(const ZPoly& p) {
    int d = degree(p);
    if (d < 0) return false;
    for (int i = 0; i <= d; ++i)
        if (p[i] != p[d - i]) return false;
    return true;
}

ZPoly circle_transform(const ZPoly& p) {
    int d = degree(p);
    if (d % 2 != 0 || !is_self_reciprocal(p))
        throw Error("circle_transform requires a self-reciprocal polynomial of even degree");
    int m = d / 2;
    // T_k(y) with T_k(x + 1/x) = x^k + x^-k:  T_0 = 2, T_1 = y,
    // T_{k+1} = y T_k - T_{k-1}
    std::vector<ZPoly> T(m + 1);
    T[0] = {2};
    if (m >= 1) T[1] = {0, 1};
    for (int kk = 2; kk <= m; ++kk) {
        ZPoly t(kk + 1, mpz_class(0));
        for (std::size_t i = 0; i < T[kk - 1].size(); ++i) t[i + 1] += T[kk - 1][i];
        for (std::size_t i = 0; i < T[kk - 2].size(); ++i) t[i] -= T[kk - 2][i];
        T[kk] = std::move(t);
    }
    ZPoly q(m + 1, mpz_class(0));
    q[0] = p[m];
    for (int kk = 1; kk <= m; ++kk)
        for (std::size_t i = 0; i < T[kk].size(); ++i) q[i] += p[m + kk] * T[kk][i];
    return normalized(std::move(q));
}

int count_roots_on_unit_circle(const ZPoly& p) {
    if (!is_self_reciprocal(p)) return 0;
    if (degree(p) % 2 != 0) return 0;  // cannot occur for irreducible inputs
    ZPoly q = circle_transform(p);
    SturmChain chain(q);
    return 2 * chain.count_roots(mpq_class(-2), mpq_class(2));
}

}  // namespace poly

// ---------------------------------------------------------------------------
// IntPolynomial

namespace {

ZPoly parse_coeff_list(const std::string& text) {
    ZPoly coeffs;
    std::string cur;
    auto flush = [&]() {
        std::string t;
        for (char c : cur)
            if (!std::isspace(static_cast<unsigned char>(c))) t += c;
        if (t.empty()) throw ParseError("empty coefficient in list");
        try {
            coeffs.emplace_back(t);
        } catch (const std::invalid_argument&) {
            throw ParseError("bad integer coefficient: '" + t + "'");
        }
        cur.clear();
    };
    for (char c : text) {
        if (c == ',') {
            flush();
        } else {
            cur += c;
        }
    }
    flush();
    return coeffs;
}

ZPoly parse_poly_text(const std::string& text) {
    struct Term {
        mpz_class coeff;
        int power;
    };
    std::vector<Term> terms;
    std::size_t i = 0;
    const std::size_t n = text.size();
    auto skip_ws = [&]() {
        while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    bool first = true;
    while (i < n) {
        int sign = 1;
        skip_ws();
        if (i < n && (text[i] == '+' || text[i] == '-')) {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
        } else if (!first) {
            throw ParseError("expected '+' or '-' between terms");
        }
        skip_ws();
        std::string digits;
        while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) digits += text[i++];
        skip_ws();
        if (i < n && text[i] == '*') {
            ++i;
            skip_ws();
        }
        mpz_class coeff = digits.empty() ? mpz_class(1) : mpz_class(digits);
        int power = 0;
        if (i < n && (text[i] == 'x' || text[i] == 'X')) {
            ++i;
            power = 1;
            skip_ws();
            if (i < n && text[i] == '^') {
                ++i;
                skip_ws();
                std::string exp;
                while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) exp += text[i++];
                if (exp.empty()) throw ParseError("missing exponent after '^'");
                power = std::stoi(exp);
                if (power > 64) throw ParseError("exponent too large");
            }
        } else if (digits.empty()) {
            throw ParseError("unexpected character in polynomial: '" +
                             std::string(1, i < n ? text[i] : '?') + "'");
        }
        terms.push_back({sign * coeff, power});
        first = false;
        skip_ws();
    }
    if (terms.empty()) throw ParseError("empty polynomial");
    int deg = 0;
    for (const auto& t : terms) deg = std::max(deg, t.power);
    ZPoly coeffs(deg + 1, mpz_class(0));
    for (const auto& t : terms) coeffs[t.power] += t.coeff;
    return coeffs;
}

}  // namespace

IntPolynomial IntPolynomial::parse(const std::string& text) {
    if (text.find(',') != std::string::npos) return from_coeffs(parse_coeff_list(text));
    return from_coeffs(parse_poly_text(text));
}

IntPolynomial IntPolynomial::from_coeffs(ZPoly coeffs) {
    coeffs = poly::normalized(std::move(coeffs));
    if (coeffs.empty()) throw ParseError("zero polynomial");
    if (coeffs.back() != 1)
        throw ParseError("polynomial must be monic (leading coefficient 1), got " +
                         poly::to_string(coeffs));
    if (poly::degree(coeffs) < 2)
        throw ParseError("polynomial degree must be at least 2");
    if (!poly::is_irreducible(coeffs))
        throw ParseError("polynomial is reducible over the rationals: " + poly::to_string(coeffs));
    poly::SturmChain chain(coeffs);
    int roots_12 = chain.count_roots(mpq_class(1), mpq_class(2));
    if (roots_12 == 0) throw ParseError("polynomial has no root in (1,2)");
    if (roots_12 > 1) throw ParseError("polynomial has more than one root in (1,2)");
    return IntPolynomial(std::move(coeffs));
}

}  // namespace garsia
