// Command-line front end: analyze a single polynomial, sweep a degree to
// reproduce the tables, or export the transition graph.
//
// Exit codes: 0 ok, 2 parse/config, 3 precision, 4 budget, 5 internal.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "garsia/analyze.hpp"
#include "garsia/errors.hpp"
#include "garsia/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitPrecision = 3;
constexpr int kExitBudget = 4;
constexpr int kExitInternal = 5;

mpq_class parse_rational(const std::string& text) {
    try {
        auto slash = text.find('/');
        mpq_class q;
        if (slash == std::string::npos) {
            q = mpq_class(mpz_class(text));
        } else {
            q = mpq_class(mpz_class(text.substr(0, slash)), mpz_class(text.substr(slash + 1)));
        }
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw garsia::ParseError("bad rational: '" + text + "'");
    }
}

std::string default_cache_dir() {
    const char* env = std::getenv("GARSIA_CACHE");
    return env ? env : "";
}

void print_report_table(const garsia::EntropyReport& r, std::ostream& os) {
    os.setf(std::ios::fixed);
    os << "polynomial      : " << r.polynomial << "\n";
    os << "classification  : " << garsia::to_string(r.classification)
       << (r.hyperbolic ? " (hyperbolic)" : " (non-hyperbolic)") << "\n";
    os << "graph           : " << r.graph_full_size << " vertices ("
       << (r.graph_complete ? "complete" : "depth " + std::to_string(r.graph_depth))
       << "), pruned " << r.graph_pruned_size << "\n";
    os << "value classes   : " << r.num_value_classes << " at n = " << r.n << ", p = " << r.p
       << "\n";
    os << std::setprecision(5);
    auto line = [&](const char* name, const std::optional<garsia::ReportValue>& v,
                    double scale) {
        if (!v) return;
        os << std::left << std::setw(16) << name << ": " << std::right << (v->value / scale);
        if (!v->certified) os << "  (uncertified)";
        os << "\n";
    };
    // ratios against log beta, matching the tables
    line("Hn/(n log b)", r.hn_over_n, r.log_beta);
    line("Ln/(n log b)", r.ln_over_n, r.log_beta);
    line("L'n/(n log b)", r.lnprime_over_n, r.log_beta);
    line("Ltilde/(n log b)", r.ltilde_over_n, r.log_beta);
    line("-log(l)/log b", r.spectral, r.log_beta);
    line("thm1 low/log b", r.theorem1_lower, r.log_beta);
    os << std::left << std::setw(16) << "BV comparison" << ": " << std::right << r.bv_comparison
       << "\n";
    os << "dimension       : [" << r.dim_lower << ", " << r.dim_upper << "]  (lower from "
       << r.dim_lower_source << ")\n";
    os << "conclusion      : " << r.conclusion << "\n";
    for (const auto& w : r.warnings) os << "warning         : " << w << "\n";
}

int run_analyze(const garsia::AnalyzeOptions& opts, bool json) {
    garsia::EntropyReport rep = garsia::analyze(opts);
    if (rep.classification == garsia::NumberType::SALEM)
        std::cerr << "warning: Salem base; finite-depth bounds cannot certify dimension 1\n";
    if (json) {
        std::cout << rep.to_json();
    } else {
        print_report_table(rep, std::cout);
    }
    return kExitOk;
}

int run_sweep(const garsia::SweepOptions& opts, bool json) {
    auto rows = garsia::sweep_degree(opts);
    if (json) {
        std::ostringstream os;
        os << "[\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& r = rows[i];
            os << "  {\"polynomial\": \"" << r.polynomial << "\", \"beta\": " << std::fixed
               << std::setprecision(4) << r.beta << ", \"pisot\": " << (r.pisot ? "true" : "false")
               << ", \"bound\": ";
            if (r.bound) {
                os << std::setprecision(5) << *r.bound;
            } else {
                os << "null";
            }
            os << ", \"pruned_size\": ";
            if (r.pruned_size) {
                os << *r.pruned_size;
            } else {
                os << "null";
            }
            if (!r.note.empty()) os << ", \"note\": \"" << r.note << "\"";
            os << "}" << (i + 1 < rows.size() ? "," : "") << "\n";
        }
        os << "]\n";
        std::cout << os.str();
    } else {
        std::cout << std::left << std::setw(34) << "polynomial" << std::setw(9) << "beta"
                  << std::setw(11) << "type" << std::setw(12) << "bound" << "size\n";
        for (const auto& r : rows) {
            std::ostringstream bound, size;
            if (r.bound) {
                bound << std::fixed << std::setprecision(5) << *r.bound;
            } else {
                bound << "?";
            }
            if (r.pruned_size) {
                size << *r.pruned_size;
            } else {
                size << "?";
            }
            std::cout << std::left << std::setw(34) << r.polynomial << std::setw(9)
                      << (std::ostringstream{} << std::fixed << std::setprecision(4) << r.beta)
                             .str()
                      << std::setw(11) << (r.pisot ? "Pisot" : "not Pisot") << std::setw(12)
                      << bound.str() << size.str() << "\n";
        }
    }
    return kExitOk;
}

int run_export(const garsia::AnalyzeOptions& opts, const std::string& format, bool pruned,
               const std::string& out_path) {
    garsia::IntPolynomial poly = garsia::IntPolynomial::parse(opts.polynomial);
    auto ctx = std::make_shared<garsia::NumberFieldContext>(poly, opts.precision_bits,
                                                            opts.precision_cap, opts.exact_ties);
    garsia::TransitionGraph g = garsia::load_or_build_graph(ctx, opts);
    if (pruned) g = garsia::prune_graph(g);
    garsia::GraphFormat fmt;
    if (format == "json") {
        fmt = garsia::GraphFormat::JSON;
    } else if (format == "dot") {
        fmt = garsia::GraphFormat::DOT;
    } else {
        throw garsia::ParseError("export format must be 'dot' or 'json'");
    }
    std::string text = garsia::export_graph(g, fmt);
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw garsia::Error("cannot open output file: " + out_path);
        out << text;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified entropy and dimension bounds for Bernoulli convolutions "
                 "with algebraic parameters"};
    app.require_subcommand(1);

    // shared options
    std::string poly_text, p_text = "1/2", estimators_text, cache_dir = default_cache_dir();
    int n = 9;
    long precision = 128, precision_cap = 4096;
    std::size_t max_vertices = 100000;
    std::uint64_t max_classes = 2000000;
    bool no_prune = false, json_out = false, no_exact_ties = false;

    auto add_common = [&](CLI::App* cmd, bool with_poly) {
        if (with_poly)
            cmd->add_option("--poly", poly_text,
                            "polynomial, e.g. \"x^4 - x^3 - x^2 + x - 1\" or a constant-first "
                            "coefficient list \"-1,1,-1,-1,1\"")
                ->required();
        cmd->add_option("--precision", precision, "working precision in bits (default 128)");
        cmd->add_option("--precision-cap", precision_cap,
                        "escalation ceiling in bits (default 4096)");
        cmd->add_option("--max-vertices", max_vertices, "vertex budget (default 100000)");
        cmd->add_flag("--json", json_out, "machine-readable output");
    };

    CLI::App* analyze = app.add_subcommand("analyze", "full estimator pipeline for one base");
    add_common(analyze, true);
    analyze->add_option("--n", n, "product length n (default 9)");
    analyze->add_option("--p", p_text, "digit-0 mass as a rational, e.g. 1/2");
    analyze->add_option("--estimators", estimators_text,
                        "comma list from Hn,Ln,Lnprime,Ltilde,spectral,theorem1");
    analyze->add_option("--max-classes", max_classes, "value-class budget");
    analyze->add_option("--cache", cache_dir, "graph cache directory (env GARSIA_CACHE)");
    analyze->add_flag("--no-prune", no_prune, "spectral bound on the unpruned graph");
    analyze->add_flag("--no-exact-ties", no_exact_ties,
                      "fail instead of deciding boundary ties exactly");

    CLI::App* sweep = app.add_subcommand("sweep", "all hyperbolic bases of one degree");
    int degree = 4;
    long budget_vertices = 100000;
    int jobs = 0;
    sweep->add_option("--degree", degree, "polynomial degree (2..6)")->required();
    sweep->add_option("--budget-vertices", budget_vertices, "vertex budget per row");
    sweep->add_option("--jobs", jobs, "worker threads (default: hardware)");
    sweep->add_option("--precision", precision, "working precision in bits");
    sweep->add_flag("--json", json_out, "machine-readable output");

    CLI::App* exp = app.add_subcommand("export", "write the transition graph");
    add_common(exp, true);
    std::string format = "json", out_path;
    bool export_pruned = false;
    exp->add_option("--format", format, "dot|json")->required();
    exp->add_option("-o,--out", out_path, "output file (default stdout)");
    exp->add_option("--n", n, "truncation depth for non-hyperbolic bases");
    exp->add_flag("--pruned", export_pruned, "export the pruned graph");
    exp->add_option("--cache", cache_dir, "graph cache directory");

    CLI11_PARSE(app, argc, argv);

    try {
        garsia::AnalyzeOptions opts;
        opts.polynomial = poly_text;
        opts.n = n;
        opts.precision_bits = precision;
        opts.precision_cap = precision_cap;
        opts.exact_ties = !no_exact_ties;
        opts.max_vertices = max_vertices;
        opts.max_classes = max_classes;
        opts.pruned = !no_prune;
        opts.cache_dir = cache_dir;
        if (app.got_subcommand(analyze)) {
            opts.p = parse_rational(p_text);
            if (!estimators_text.empty()) {
                std::stringstream ss(estimators_text);
                std::string item;
                while (std::getline(ss, item, ',')) opts.estimators.insert(item);
                if (opts.estimators.empty())
                    throw garsia::ParseError("estimator list must not be empty");
            }
            return run_analyze(opts, json_out);
        }
        if (app.got_subcommand(sweep)) {
            garsia::SweepOptions sopts;
            sopts.degree = degree;
            sopts.precision_bits = precision;
            sopts.max_vertices = budget_vertices;
            sopts.jobs = jobs;
            return run_sweep(sopts, json_out);
        }
        if (app.got_subcommand(exp)) {
            return run_export(opts, format, export_pruned, out_path);
        }
        return kExitInternal;
    } catch (const garsia::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const garsia::PrecisionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecision;
    } catch (const garsia::BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
