#include "garsia/entropy.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "garsia/errors.hpp"

namespace garsia {

// ---------------------------------------------------------------------------
// SparseQ

SparseQ SparseQ::identity(std::int32_t dim) {
    SparseQ m;
    m.dim = dim;
    m.rows.resize(dim);
    for (std::int32_t i = 0; i < dim; ++i) m.rows[i].emplace_back(i, mpq_class(1));
    return m;
}

mpq_class SparseQ::at(std::int32_t i, std::int32_t j) const {
    for (const auto& [c, v] : rows[i])
        if (c == j) return v;
    return mpq_class(0);
}

SparseQ right_mul(const SparseQ& a, const MatrixPair& mp, int digit) {
    SparseQ out;
    out.dim = a.dim;
    out.rows.resize(a.dim);
    MatrixPair::RowEntry ent[2];
    std::map<std::int32_t, mpq_class> acc;
    for (std::int32_t i = 0; i < a.dim; ++i) {
        acc.clear();
        for (const auto& [k, v] : a.rows[i]) {
            int cnt = mp.row(digit, k, ent);
            for (int t = 0; t < cnt; ++t) acc[ent[t].col] += v * (*ent[t].weight);
        }
        auto& row = out.rows[i];
        row.reserve(acc.size());
        for (auto& [c, v] : acc)
            if (v != 0) row.emplace_back(c, std::move(v));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Value classes

namespace {

struct DpState {
    mpq_class mass;
    std::uint64_t rep = 0;
    std::optional<SparseQ> product;
};

double mass_to_double(const mpq_class& q) { return q.get_d(); }

}  // namespace

std::vector<ValueClass> enumerate_value_classes(const NumberFieldContext& ctx,
                                                const MatrixPair& mp, int n,
                                                const ClassOptions& opts) {
    if (n < 1) throw Error("enumerate_value_classes: n must be >= 1");
    if (n > 62) throw Error("enumerate_value_classes: n too large for word storage");
    if (!mp.complete && mp.depth < n)
        throw Error("enumerate_value_classes: graph depth " + std::to_string(mp.depth) +
                    " insufficient for n = " + std::to_string(n));
    const int d = ctx.degree();

    std::map<FieldElement, DpState> states;
    {
        DpState s0;
        s0.mass = 1;
        if (opts.with_products) s0.product = SparseQ::identity(static_cast<std::int32_t>(mp.dim));
        states.emplace(FieldElement::zero(d), std::move(s0));
    }

    for (int k = 1; k <= n; ++k) {
        std::map<FieldElement, DpState> next;
        for (const auto& [y, st] : states) {
            FieldElement shifted = mul_by_beta(y, ctx);
            for (int a = 0; a <= 1; ++a) {
                FieldElement y2 = a == 0 ? shifted : add_int(shifted, 1);
                mpq_class w = st.mass * (a == 0 ? mp.p : mp.one_minus_p);
                std::optional<SparseQ> prod;
                if (opts.with_products) prod = right_mul(*st.product, mp, a);
                auto it = next.find(y2);
                if (it == next.end()) {
                    if (next.size() >= opts.max_classes)
                        throw BudgetError("enumerate_value_classes: class budget exceeded at k = " +
                                              std::to_string(k),
                                          k, next.size());
                    DpState ns;
                    ns.mass = std::move(w);
                    ns.rep = st.rep | (static_cast<std::uint64_t>(a) << (k - 1));
                    ns.product = std::move(prod);
                    next.emplace(y2, std::move(ns));
                } else {
                    it->second.mass += w;
                    if (opts.with_products && !(*it->second.product == *prod))
                        throw Error("enumerate_value_classes: merge found unequal products "
                                    "(MatrixLemma violated)");
                }
            }
        }
        states = std::move(next);
    }

    std::vector<ValueClass> out;
    out.reserve(states.size());
    for (auto& [y, st] : states) {
        ValueClass c;
        c.value = y;
        c.mass = std::move(st.mass);
        c.rep_word = st.rep;
        c.product = std::move(st.product);
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<mpq_class> class_row_sums(const ValueClass& cls, int n, const MatrixPair& mp) {
    // w = M_{a_1} ( ... ( M_{a_n} * 1 ) ), evaluated right to left.
    std::vector<mpq_class> v(mp.dim, mpq_class(1));
    std::vector<mpq_class> next(mp.dim);
    MatrixPair::RowEntry ent[2];
    for (int k = n; k >= 1; --k) {
        int a = (cls.rep_word >> (k - 1)) & 1;
        for (std::size_t i = 0; i < mp.dim; ++i) {
            int cnt = mp.row(a, static_cast<int>(i), ent);
            mpq_class acc = 0;
            for (int t = 0; t < cnt; ++t) acc += (*ent[t].weight) * v[ent[t].col];
            next[i] = std::move(acc);
        }
        std::swap(v, next);
    }
    return v;
}

// ---------------------------------------------------------------------------
// Estimators

double compute_Hn(const std::vector<ValueClass>& classes) {
    long double acc = 0;
    for (const auto& c : classes) {
        long double m = mass_to_double(c.mass);
        acc -= m * std::log(static_cast<long double>(m));
    }
    return static_cast<double>(acc);
}

Interval compute_Hn_certified(const std::vector<ValueClass>& classes, mpfr_prec_t prec) {
    Interval acc(prec);
    for (const auto& c : classes) {
        Interval m = Interval::of_mpq(c.mass, prec);
        acc = acc + m * m.log();
    }
    return -acc;
}

double compute_Ln(const std::vector<ValueClass>& classes, int n, const MatrixPair& mp) {
    std::vector<long double> acc(mp.dim, 0.0L);
    std::vector<bool> dead(mp.dim, false);
    for (const auto& c : classes) {
        auto w = class_row_sums(c, n, mp);
        long double m = mass_to_double(c.mass);
        for (std::size_t i = 0; i < mp.dim; ++i) {
            if (dead[i]) continue;
            if (w[i] == 0) {
                dead[i] = true;
                continue;
            }
            acc[i] += m * std::log(static_cast<long double>(mass_to_double(w[i])));
        }
    }
    bool any = false;
    long double best = 0;
    for (std::size_t i = 0; i < mp.dim; ++i) {
        if (dead[i]) continue;
        if (!any || acc[i] > best) best = acc[i];
        any = true;
    }
    if (!any) throw Error("compute_Ln: every row produced a zero row sum");
    return static_cast<double>(-best);
}

std::optional<Interval> compute_Ln_certified(const std::vector<ValueClass>& classes, int n,
                                             const MatrixPair& mp, mpfr_prec_t prec,
                                             std::uint64_t max_work) {
    if (static_cast<std::uint64_t>(classes.size()) * mp.dim > max_work) return std::nullopt;
    std::vector<Interval> acc(mp.dim, Interval(prec));
    std::vector<bool> dead(mp.dim, false);
    for (const auto& c : classes) {
        auto w = class_row_sums(c, n, mp);
        Interval m = Interval::of_mpq(c.mass, prec);
        for (std::size_t i = 0; i < mp.dim; ++i) {
            if (dead[i]) continue;
            if (w[i] == 0) {
                dead[i] = true;
                continue;
            }
            acc[i] = acc[i] + m * Interval::of_mpq(w[i], prec).log();
        }
    }
    std::optional<Interval> best;
    for (std::size_t i = 0; i < mp.dim; ++i) {
        if (dead[i]) continue;
        best = best ? Interval::max_of(*best, acc[i]) : acc[i];
    }
    if (!best) throw Error("compute_Ln_certified: every row produced a zero row sum");
    return -*best;
}

double compute_Ln_prime(const std::vector<ValueClass>& classes, int n, const MatrixPair& mp) {
    long double acc = 0;
    for (const auto& c : classes) {
        auto w = class_row_sums(c, n, mp);
        const mpq_class* norm = &w[0];
        for (std::size_t i = 1; i < w.size(); ++i)
            if (w[i] > *norm) norm = &w[i];
        if (*norm == 0) throw Error("compute_Ln_prime: zero norm");
        acc += mass_to_double(c.mass) * std::log(static_cast<long double>(mass_to_double(*norm)));
    }
    return static_cast<double>(-acc);
}

Interval compute_Ln_prime_certified(const std::vector<ValueClass>& classes, int n,
                                    const MatrixPair& mp, mpfr_prec_t prec) {
    Interval acc(prec);
    for (const auto& c : classes) {
        auto w = class_row_sums(c, n, mp);
        const mpq_class* norm = &w[0];
        for (std::size_t i = 1; i < w.size(); ++i)
            if (w[i] > *norm) norm = &w[i];
        if (*norm == 0) throw Error("compute_Ln_prime_certified: zero norm");
        acc = acc + Interval::of_mpq(c.mass, prec) * Interval::of_mpq(*norm, prec).log();
    }
    return -acc;
}

// ---------------------------------------------------------------------------
// Spectral bound

SpectralBound spectral_lower_bound(const MatrixPair& mp, double tol, long max_iterations) {
    const std::size_t dim = mp.dim;
    const double p = mp.p.get_d();
    const double q = 1.0 - p;
    // A = (1-p) M0 + p M1 per row: beta*x-1 -> (1-p)^2, beta*x -> 2p(1-p),
    // beta*x+1 -> p^2.
    struct Ent {
        std::int32_t col;
        double w;
    };
    std::vector<std::vector<Ent>> A(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        if (mp.edges[i][0] >= 0) A[i].push_back({mp.edges[i][0], q * q});
        if (mp.edges[i][1] >= 0) A[i].push_back({mp.edges[i][1], 2.0 * p * q});
        if (mp.edges[i][2] >= 0) A[i].push_back({mp.edges[i][2], p * p});
    }

    std::vector<double> v(dim, 1.0), av(dim);
    long it = 0;
    bool converged = false;
    for (; it < max_iterations; ++it) {
        double rmin = 0, rmax = 0;
        bool first = true;
        double norm = 0;
        for (std::size_t i = 0; i < dim; ++i) {
            double s = 0;
            for (const auto& e : A[i]) s += e.w * v[e.col];
            av[i] = s;
            double ratio = s / v[i];
            if (first) {
                rmin = rmax = ratio;
                first = false;
            } else {
                rmin = std::min(rmin, ratio);
                rmax = std::max(rmax, ratio);
            }
            norm = std::max(norm, s);
        }
        if (norm <= 0) break;
        for (std::size_t i = 0; i < dim; ++i) v[i] = std::max(av[i] / norm, 1e-290);
        if (rmax - rmin < tol) {
            converged = true;
            ++it;
            break;
        }
    }

    // Exact Collatz-Wielandt bracket on the final (positive dyadic) iterate:
    // min_i (Av)_i / v_i <= lambda <= max_i (Av)_i / v_i.
    mpq_class exact_p = mp.p, exact_q = mp.one_minus_p;
    mpq_class wm = exact_q * exact_q, w0 = 2 * exact_p * exact_q, wp = exact_p * exact_p;
    std::vector<mpq_class> vq(dim);
    for (std::size_t i = 0; i < dim; ++i) vq[i] = mpq_class(v[i]);
    mpq_class lo, hi;
    bool first = true;
    for (std::size_t i = 0; i < dim; ++i) {
        mpq_class s = 0;
        if (mp.edges[i][0] >= 0) s += wm * vq[mp.edges[i][0]];
        if (mp.edges[i][1] >= 0) s += w0 * vq[mp.edges[i][1]];
        if (mp.edges[i][2] >= 0) s += wp * vq[mp.edges[i][2]];
        mpq_class ratio = s / vq[i];
        if (first) {
            lo = hi = ratio;
            first = false;
        } else {
            if (ratio < lo) lo = ratio;
            if (ratio > hi) hi = ratio;
        }
    }
    if (lo < 0) lo = 0;

    SpectralBound out;
    mpfr_prec_t prec = 128;
    Interval l = Interval::of_mpq(lo, prec);
    Interval h = Interval::of_mpq(hi, prec);
    out.lambda = Interval::hull(l, h);
    out.neg_log_lambda = -out.lambda.log();
    out.value = out.neg_log_lambda.mid_d();
    out.iterations = it;
    out.converged = converged;
    return out;
}

// ---------------------------------------------------------------------------
// Theorem-1 enclosure and comparisons

Theorem1Enclosure theorem1_enclosure(const NumberFieldContext& ctx, const Interval& hn, long n) {
    mpfr_prec_t prec = std::max<mpfr_prec_t>(hn.prec(), ctx.c_beta().prec());
    Interval one = Interval::of_long(1, prec);
    Interval nn = Interval::of_long(n, prec);
    Interval c = (ctx.c_beta() + one).log();
    if (ctx.l() > 0) {
        Interval lcorr = Interval::of_long(ctx.l(), prec) * Interval::of_long(n + 1, prec).log();
        c = c + lcorr;
    }
    Theorem1Enclosure out;
    out.upper = hn / nn;
    out.lower = out.upper - c / nn;
    return out;
}

Interval mahler_comparison(const NumberFieldContext& ctx) {
    mpfr_prec_t prec = ctx.mahler().prec();
    Interval log2 = Interval::log2(prec);
    Interval logm = ctx.mahler().log();
    Interval m = Interval::min_of(log2, logm);
    Interval c044 = Interval::of_mpq(mpq_class(11, 25), prec);
    const auto& beta_iv = ctx.beta();
    return c044 * m / beta_iv.log();
}

// ---------------------------------------------------------------------------
// Report JSON

std::string EntropyReport::to_json() const {
    nlohmann::ordered_json j;
    j["polynomial"] = polynomial;
    j["min_poly"] = min_poly;
    j["n"] = n;
    j["p"] = p;
    j["precision_bits"] = precision_bits;
    j["classification"] = to_string(classification);
    j["hyperbolic"] = hyperbolic;
    j["graph"] = {{"complete", graph_complete},
                  {"depth", graph_depth},
                  {"full_size", graph_full_size},
                  {"pruned_size", graph_pruned_size},
                  {"hash", graph_hash}};
    j["num_value_classes"] = num_value_classes;

    auto put = [&](const char* key, const std::optional<ReportValue>& v) {
        if (!v) return;
        nlohmann::ordered_json o;
        o["value"] = v->value;
        o["certified"] = v->certified;
        if (v->certified) {
            o["lo"] = v->lo;
            o["hi"] = v->hi;
        }
        j["estimators"][key] = std::move(o);
    };
    put("Hn_over_n", hn_over_n);
    put("Ln_over_n", ln_over_n);
    put("Lnprime_over_n", lnprime_over_n);
    put("Ltilde_over_n", ltilde_over_n);
    put("spectral_bound", spectral);
    put("theorem1_lower", theorem1_lower);
    put("theorem1_upper", theorem1_upper);
    if (lambda) {
        j["spectral"] = {{"lambda", *lambda},
                         {"iterations", spectral_iterations},
                         {"converged", spectral_converged}};
    }
    j["bv_comparison"] = bv_comparison;
    j["log_beta"] = log_beta;
    j["dimension"] = {{"lower", dim_lower},
                      {"upper", dim_upper},
                      {"lower_source", dim_lower_source}};
    j["conclusion"] = conclusion;
    j["warnings"] = warnings;
    nlohmann::ordered_json t;
    for (const auto& [k, v] : timings_ms) t[k] = v;
    j["timings_ms"] = std::move(t);
    return j.dump(2) + "\n";
}

}  // namespace garsia
