#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "garsia/graph.hpp"

namespace garsia {

/// Sparse rational matrix, row-major with sorted columns. Used for the
/// per-class products M_{a_1}...M_{a_n}.
struct SparseQ {
    std::int32_t dim = 0;
    std::vector<std::vector<std::pair<std::int32_t, mpq_class>>> rows;

    static SparseQ identity(std::int32_t dim);
    bool operator==(const SparseQ& o) const = default;
    /// Entry lookup (zero when absent).
    mpq_class at(std::int32_t i, std::int32_t j) const;
};

/// this * M_digit.
SparseQ right_mul(const SparseQ& a, const MatrixPair& mp, int digit);

/// One value class: all words a_1..a_n sharing the value beta^n sum a_i
/// beta^-i, with its exact mass and a representative word (bit k-1 of
/// rep_word is the digit a_k).
struct ValueClass {
    FieldElement value;
    mpq_class mass;
    std::uint64_t rep_word = 0;
    std::optional<SparseQ> product;
};

struct ClassOptions {
    bool with_products = false;
    std::uint64_t max_classes = 2'000'000;
};

/// Dynamic program over prefixes y_k = beta*y_{k-1} + a_k; states with equal
/// exact value merge, masses add, and (when requested) the product matrices
/// are carried and asserted identical on every merge.
/// Requires the matrices' graph to cover depth n (complete or depth >= n).
std::vector<ValueClass> enumerate_value_classes(const NumberFieldContext& ctx,
                                                const MatrixPair& mp, int n,
                                                const ClassOptions& opts = {});

/// Row-sum vector M_{a_1}...M_{a_n} * 1 for the class representative word,
/// exact. Entry i is the i-th row sum of the class product.
std::vector<mpq_class> class_row_sums(const ValueClass& cls, int n, const MatrixPair& mp);

/// H_n = -sum_classes mass * log(mass), natural log.
double compute_Hn(const std::vector<ValueClass>& classes);
Interval compute_Hn_certified(const std::vector<ValueClass>& classes, mpfr_prec_t prec);

/// L_n = -sup_i sum_classes mass * log(row-sum_i of the class product).
double compute_Ln(const std::vector<ValueClass>& classes, int n, const MatrixPair& mp);
/// Certified variant; returns nullopt when dim*classes exceeds max_work.
std::optional<Interval> compute_Ln_certified(const std::vector<ValueClass>& classes, int n,
                                             const MatrixPair& mp, mpfr_prec_t prec,
                                             std::uint64_t max_work = 2'000'000);

/// L'_n = -sum_classes mass * log(max row sum); on a pruned MatrixPair this
/// is the pruned-graph estimator.
double compute_Ln_prime(const std::vector<ValueClass>& classes, int n, const MatrixPair& mp);
Interval compute_Ln_prime_certified(const std::vector<ValueClass>& classes, int n,
                                    const MatrixPair& mp, mpfr_prec_t prec);

/// Perron root of (1-p) M0 + p M1 by power iteration with an exact
/// Collatz-Wielandt bracket evaluated on the final iterate.
struct SpectralBound {
    Interval lambda;            // certified bracket
    Interval neg_log_lambda;    // certified -log(lambda)
    double value = 0;           // midpoint of -log(lambda)
    long iterations = 0;
    bool converged = false;
};
SpectralBound spectral_lower_bound(const MatrixPair& mp, double tol = 1e-10,
                                   long max_iterations = 200000);

/// Explicit error bounds around H_n/n:
///   H_n/n - (C + l log(n+1))/n <= H <= H_n/n,  C = log(C(beta) + 1).
struct Theorem1Enclosure {
    Interval lower, upper;
};
Theorem1Enclosure theorem1_enclosure(const NumberFieldContext& ctx, const Interval& hn, long n);

/// 0.44 min{log 2, log M_beta} / log beta, for side-by-side reporting.
Interval mahler_comparison(const NumberFieldContext& ctx);

/// A reported estimator value: midpoint plus (when available) a certified
/// enclosure.
struct ReportValue {
    double value = 0;
    bool certified = false;
    double lo = 0, hi = 0;
};

struct EntropyReport {
    std::string polynomial;
    std::vector<long> min_poly;
    int n = 0;
    std::string p;
    mpfr_prec_t precision_bits = 0;
    NumberType classification = NumberType::OTHER;
    bool hyperbolic = false;
    bool graph_complete = false;
    long graph_depth = 0;
    std::size_t graph_full_size = 0;
    std::size_t graph_pruned_size = 0;
    std::string graph_hash;
    std::size_t num_value_classes = 0;

    std::optional<ReportValue> hn_over_n;
    std::optional<ReportValue> ln_over_n;
    std::optional<ReportValue> lnprime_over_n;
    std::optional<ReportValue> ltilde_over_n;
    std::optional<ReportValue> spectral;          // -log lambda
    std::optional<ReportValue> theorem1_lower;    // on the H scale
    std::optional<ReportValue> theorem1_upper;
    std::optional<double> lambda;
    long spectral_iterations = 0;
    bool spectral_converged = false;

    double bv_comparison = 0;
    double log_beta = 0;

    double dim_lower = 0;
    double dim_upper = 1;
    std::string dim_lower_source;
    std::string conclusion;
    std::vector<std::string> warnings;
    std::map<std::string, double> timings_ms;

    std::string to_json() const;
};

}  // namespace garsia
