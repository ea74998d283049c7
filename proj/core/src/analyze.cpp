#include "garsia/analyze.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "garsia/errors.hpp"

namespace garsia {

namespace {

const std::set<std::string> kAllEstimators = {"Hn",     "Ln",       "Lnprime",
                                              "Ltilde", "spectral", "theorem1"};

double now_ms() {
    using namespace std::chrono;
    return duration<double, std::milli>(steady_clock::now().time_since_epoch()).count();
}

std::string cache_file_name(const NumberFieldContext& ctx, const std::string& depth_key) {
    std::string key = ctx.min_poly().to_string() + "|" + depth_key;
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : key) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << "garsia-graph-" << std::hex << h << ".json";
    return os.str();
}

ReportValue from_interval(const Interval& iv) {
    return ReportValue{iv.mid_d(), true, iv.lo_d(), iv.hi_d()};
}

}  // namespace

TransitionGraph load_or_build_graph(std::shared_ptr<const NumberFieldContext> ctx,
                                    const AnalyzeOptions& opts) {
    const bool hyper = ctx->is_hyperbolic();
    // Hyperbolic contexts run to the fixed point; otherwise the depth-n
    // truncation is exactly what length-n products reach.
    const long depth = hyper ? opts.max_depth : opts.n;
    const std::string depth_key = hyper ? "full" : "d" + std::to_string(opts.n);

    if (!opts.cache_dir.empty()) {
        namespace fs = std::filesystem;
        fs::path file = fs::path(opts.cache_dir) / cache_file_name(*ctx, depth_key);
        if (fs::exists(file)) {
            std::ifstream in(file);
            std::stringstream ss;
            ss << in.rdbuf();
            try {
                TransitionGraph g = import_graph(ss.str(), ctx);
                if (g.complete || g.depth >= opts.n) return g;
            } catch (const ParseError&) {
                // fall through and rebuild a corrupt cache entry
            }
        }
        TransitionGraph g = build_graph(ctx, depth, opts.max_vertices);
        fs::create_directories(fs::path(opts.cache_dir));
        std::ofstream out(file);
        out << export_graph(g, GraphFormat::JSON);
        return g;
    }
    return build_graph(ctx, depth, opts.max_vertices);
}

EntropyReport analyze(const AnalyzeOptions& opts) {
    if (opts.polynomial.empty()) throw ParseError("analyze: no polynomial given");
    IntPolynomial poly = IntPolynomial::parse(opts.polynomial);
    auto ctx = std::make_shared<NumberFieldContext>(poly, opts.precision_bits,
                                                    opts.precision_cap, opts.exact_ties);
    return analyze(ctx, opts);
}

EntropyReport analyze(std::shared_ptr<const NumberFieldContext> ctx, const AnalyzeOptions& opts) {
    if (opts.n < 1) throw ParseError("analyze: n must be >= 1");
    if (opts.p <= 0 || opts.p >= 1) throw ParseError("analyze: p must lie in (0,1)");
    std::set<std::string> est = opts.estimators.empty() ? kAllEstimators : opts.estimators;
    for (const auto& e : est)
        if (!kAllEstimators.count(e)) throw ParseError("analyze: unknown estimator '" + e + "'");

    EntropyReport rep;
    rep.polynomial = ctx->min_poly().to_string();
    for (const auto& c : ctx->min_poly().coeffs()) rep.min_poly.push_back(c.get_si());
    rep.n = opts.n;
    {
        std::ostringstream os;
        os << opts.p;
        rep.p = os.str();
    }
    rep.precision_bits = ctx->precision_bits();
    rep.classification = ctx->classify();
    rep.hyperbolic = ctx->is_hyperbolic();

    const mpfr_prec_t prec = std::max<mpfr_prec_t>(ctx->precision_bits(), 128);
    Interval log_beta = ctx->beta().log();
    rep.log_beta = log_beta.mid_d();

    double t0 = now_ms();
    TransitionGraph full = load_or_build_graph(ctx, opts);
    double t1 = now_ms();
    TransitionGraph pruned = prune_graph(full);
    double t2 = now_ms();

    rep.graph_complete = full.complete;
    rep.graph_depth = full.depth;
    rep.graph_full_size = full.size();
    rep.graph_pruned_size = pruned.size();
    rep.graph_hash = graph_hash(full);

    if (!full.complete && full.depth < opts.n)
        throw BudgetError("analyze: graph depth " + std::to_string(full.depth) +
                              " below n = " + std::to_string(opts.n),
                          full.depth, full.size());

    if (rep.classification == NumberType::SALEM)
        rep.warnings.push_back(
            "Salem base: H(beta) <= log(beta), so no finite-depth estimator can certify "
            "dimension 1");
    if (!rep.hyperbolic)
        rep.warnings.push_back(
            "non-hyperbolic base: estimators are computed on the depth-" + std::to_string(opts.n) +
            " truncation of V_beta; only the explicit-error lower bound is a certified lower "
            "bound for H");

    MatrixPair mp_full = build_matrices(full, opts.p);
    MatrixPair mp_pruned = build_matrices(pruned, opts.p);

    const bool needs_classes = est.count("Hn") || est.count("Ln") || est.count("Lnprime") ||
                               est.count("Ltilde") || est.count("theorem1");

    std::vector<ValueClass> classes;
    std::optional<Interval> hn_iv;
    double t_classes = t2;
    if (needs_classes) {
        ClassOptions copts;
        copts.max_classes = opts.max_classes;
        classes = enumerate_value_classes(*ctx, mp_full, opts.n, copts);
        rep.num_value_classes = classes.size();
        t_classes = now_ms();
        hn_iv = compute_Hn_certified(classes, prec);
        Interval nn = Interval::of_long(opts.n, prec);
        if (est.count("Hn")) rep.hn_over_n = from_interval(*hn_iv / nn);
    }

    // Lower-bound estimators. On non-hyperbolic (truncated) graphs they are
    // reported but only the Theorem-1 bound enters the certified dimension
    // bracket, since the truncation can overshoot the true row sums' limit.
    struct Candidate {
        const char* name;
        Interval value;  // on the H scale
    };
    std::vector<Candidate> certified_lowers;

    Interval nn = Interval::of_long(opts.n, prec);
    if (est.count("Ln") && needs_classes) {
        double v = compute_Ln(classes, opts.n, mp_full);
        auto iv = compute_Ln_certified(classes, opts.n, mp_full, prec);
        if (iv) {
            rep.ln_over_n = from_interval(*iv / nn);
            if (rep.hyperbolic && full.complete)
                certified_lowers.push_back({"Ln", *iv / nn});
        } else {
            rep.ln_over_n = ReportValue{v / opts.n, false, 0, 0};
            rep.warnings.push_back("Ln certification skipped (graph too large); value is "
                                   "floating-point only");
        }
    }
    if (est.count("Lnprime") && needs_classes) {
        Interval iv = compute_Ln_prime_certified(classes, opts.n, mp_full, prec);
        rep.lnprime_over_n = from_interval(iv / nn);
        if (rep.hyperbolic && full.complete) certified_lowers.push_back({"Lnprime", iv / nn});
    }
    if (est.count("Ltilde") && needs_classes) {
        Interval iv = compute_Ln_prime_certified(classes, opts.n, mp_pruned, prec);
        rep.ltilde_over_n = from_interval(iv / nn);
        if (rep.hyperbolic && full.complete) certified_lowers.push_back({"Ltilde", iv / nn});
    }
    double t_est = now_ms();

    if (est.count("spectral")) {
        SpectralBound sb = spectral_lower_bound(opts.pruned ? mp_pruned : mp_full);
        rep.spectral = from_interval(sb.neg_log_lambda);
        rep.lambda = sb.lambda.mid_d();
        rep.spectral_iterations = sb.iterations;
        rep.spectral_converged = sb.converged;
        if (!sb.converged)
            rep.warnings.push_back("power iteration did not reach the bracket tolerance; "
                                   "the certified bracket is reported as achieved");
        if (rep.hyperbolic && full.complete) {
            // -log(lambda) <= H needs the true (finite) V_beta.
            certified_lowers.push_back({"spectral", sb.neg_log_lambda});
        }
    }
    double t_spec = now_ms();

    if (est.count("theorem1") && hn_iv) {
        Theorem1Enclosure th = theorem1_enclosure(*ctx, *hn_iv, opts.n);
        rep.theorem1_lower = from_interval(th.lower);
        rep.theorem1_upper = from_interval(th.upper);
        certified_lowers.push_back({"theorem1", th.lower});
    }

    rep.bv_comparison = mahler_comparison(*ctx).mid_d();

    // Dimension bounds from the certified enclosures.
    double best_lo = -std::numeric_limits<double>::infinity();
    for (const auto& c : certified_lowers) {
        Interval ratio = c.value / log_beta;
        double lo = ratio.lo_d();
        if (lo > best_lo) {
            best_lo = lo;
            rep.dim_lower_source = c.name;
        }
    }
    if (std::isfinite(best_lo)) {
        rep.dim_lower = std::min(1.0, std::max(0.0, best_lo));
    } else {
        rep.dim_lower = 0;
        rep.dim_lower_source = "none";
    }
    if (hn_iv) {
        Interval up = *hn_iv / (nn * log_beta);
        rep.dim_upper = std::min(1.0, std::max(0.0, up.hi_d()));
    } else {
        rep.dim_upper = 1.0;
        if (!needs_classes)
            rep.warnings.push_back("upper bound unavailable without the Hn estimator");
    }
    if (rep.dim_upper < rep.dim_lower) rep.dim_upper = rep.dim_lower;

    std::ostringstream conc;
    conc.setf(std::ios::fixed);
    conc.precision(5);
    if (rep.classification == NumberType::PISOT) {
        conc << "Pisot: dim < 1, lower bound = " << rep.dim_lower;
        if (rep.dim_upper < 1) conc << ", upper bound = " << rep.dim_upper;
    } else if (rep.hyperbolic && full.complete && rep.dim_lower >= 1.0) {
        conc << "dim = 1 certified";
    } else {
        conc << "inconclusive";
        if (rep.dim_lower > 0) conc << " (dim >= " << rep.dim_lower << ")";
    }
    rep.conclusion = conc.str();

    if (opts.collect_timings) {
        rep.timings_ms["graph"] = t1 - t0;
        rep.timings_ms["prune"] = t2 - t1;
        rep.timings_ms["classes"] = t_classes - t2;
        rep.timings_ms["estimators"] = t_est - t_classes;
        rep.timings_ms["spectral"] = t_spec - t_est;
    }
    return rep;
}

}  // namespace garsia
