#pragma once

#include <set>

#include "garsia/entropy.hpp"

namespace garsia {

/// Full configuration of one analysis run.
struct AnalyzeOptions {
    std::string polynomial;
    int n = 9;
    mpq_class p = mpq_class(1, 2);
    mpfr_prec_t precision_bits = 128;
    long precision_cap = 4096;
    bool exact_ties = true;
    std::size_t max_vertices = 100000;
    std::uint64_t max_classes = 2'000'000;
    long max_depth = 1'000'000;
    bool pruned = true;  // pruned graph for the spectral bound
    /// Subset of {Hn, Ln, Lnprime, Ltilde, spectral, theorem1}; empty = all.
    std::set<std::string> estimators;
    std::string cache_dir;
    bool collect_timings = true;
};

/// parse -> context -> graph -> prune -> matrices -> estimators -> report.
EntropyReport analyze(const AnalyzeOptions& opts);
/// Same, reusing an existing context (opts.polynomial is ignored).
EntropyReport analyze(std::shared_ptr<const NumberFieldContext> ctx, const AnalyzeOptions& opts);

/// The graph used by analyze: cached under cache_dir when set, else built.
TransitionGraph load_or_build_graph(std::shared_ptr<const NumberFieldContext> ctx,
                                    const AnalyzeOptions& opts);

}  // namespace garsia
