#pragma once

#include <optional>
#include <string>
#include <vector>

#include "garsia/numberfield.hpp"

namespace garsia {

struct SweepOptions {
    int degree = 4;
    mpfr_prec_t precision_bits = 128;
    long precision_cap = 4096;
    std::size_t max_vertices = 100000;
    long max_depth = 1'000'000;
    int jobs = 0;  // 0 = hardware concurrency
};

struct SweepRow {
    std::string polynomial;
    std::vector<long> coeffs;  // constant-first, monic
    double beta = 0;
    bool pisot = false;
    std::optional<double> bound;            // -log(lambda) / log(beta)
    std::optional<std::size_t> pruned_size;
    std::string note;  // "?" when a budget was exceeded, else an error text
};

/// All monic polynomials of the given degree with coefficients in {-1,0,1}
/// that are irreducible, have a root in (1,2) and are hyperbolic, in
/// lexicographic order of (c_{d-1}, ..., c_0) with -1 < 0 < 1. For each row
/// the pruned-graph size and the Perron bound at p = 1/2.
std::vector<SweepRow> sweep_degree(const SweepOptions& opts);

}  // namespace garsia
