#include "garsia/sweep.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "garsia/entropy.hpp"
#include "garsia/errors.hpp"
#include "garsia/graph.hpp"

namespace garsia {

namespace {

// Candidate lower-coefficient vectors (c_{d-1}, ..., c_0) in the paper's
// table order: lexicographic with -1 < 0 < 1.
std::vector<std::vector<long>> candidates(int degree) {
    std::vector<std::vector<long>> out;
    std::vector<long> cur(degree, -1);
    while (true) {
        out.push_back(cur);
        int i = degree - 1;
        while (i >= 0 && cur[i] == 1) cur[i--] = -1;
        if (i < 0) break;
        ++cur[i];
    }
    return out;
}

}  // namespace

std::vector<SweepRow> sweep_degree(const SweepOptions& opts) {
    if (opts.degree < 2 || opts.degree > 6)
        throw ParseError("sweep: degree must be between 2 and 6");
    const int d = opts.degree;
    auto cands = candidates(d);

    // One slot per candidate; empty slots are dropped at the end so that the
    // output keeps the enumeration order regardless of scheduling.
    std::vector<std::optional<SweepRow>> slots(cands.size());
    std::atomic<std::size_t> cursor{0};

    int jobs = opts.jobs > 0 ? opts.jobs
                             : std::max(1u, std::thread::hardware_concurrency());

    auto run_candidate = [&](std::size_t idx) {
        const auto& hi_first = cands[idx];
        ZPoly coeffs(d + 1);
        coeffs[d] = 1;
        for (int k = 0; k < d; ++k) coeffs[d - 1 - k] = hi_first[k];

        std::optional<IntPolynomial> poly;
        try {
            poly = IntPolynomial::from_coeffs(coeffs);
        } catch (const ParseError&) {
            return;  // reducible, or no/too many roots in (1,2)
        }
        try {
            auto ctx = std::make_shared<NumberFieldContext>(*poly, opts.precision_bits,
                                                            opts.precision_cap);
            if (!ctx->is_hyperbolic()) return;

            SweepRow row;
            row.polynomial = poly->to_string();
            for (const auto& c : poly->coeffs()) row.coeffs.push_back(c.get_si());
            row.beta = ctx->beta().mid_d();
            row.pisot = ctx->classify() == NumberType::PISOT;
            try {
                TransitionGraph g = build_graph(ctx, opts.max_depth, opts.max_vertices);
                TransitionGraph gp = prune_graph(g);
                row.pruned_size = gp.size();
                MatrixPair mp = build_matrices(gp, mpq_class(1, 2));
                SpectralBound sb = spectral_lower_bound(mp);
                row.bound = sb.value / ctx->beta().log().mid_d();
            } catch (const BudgetError&) {
                row.note = "?";
            }
            slots[idx] = std::move(row);
        } catch (const Error& e) {
            SweepRow row;
            row.polynomial = poly->to_string();
            for (const auto& c : poly->coeffs()) row.coeffs.push_back(c.get_si());
            row.note = e.what();
            slots[idx] = std::move(row);
        }
    };

    if (jobs <= 1) {
        for (std::size_t i = 0; i < cands.size(); ++i) run_candidate(i);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t)
            pool.emplace_back([&]() {
                while (true) {
                    std::size_t idx = cursor.fetch_add(1);
                    if (idx >= cands.size()) return;
                    run_candidate(idx);
                }
            });
        for (auto& t : pool) t.join();
    }

    std::vector<SweepRow> rows;
    for (auto& s : slots)
        if (s) rows.push_back(std::move(*s));
    return rows;
}

}  // namespace garsia
