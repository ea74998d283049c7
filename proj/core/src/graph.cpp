#include "garsia/graph.hpp"

#include <map>
#include <sstream>

#include <json.hpp>

#include "garsia/errors.hpp"

namespace garsia {

namespace {

FieldElement successor(const FieldElement& x, int eps, const NumberFieldContext& ctx) {
    return add_int(mul_by_beta(x, ctx), eps);
}

}  // namespace

TransitionGraph build_graph(std::shared_ptr<const NumberFieldContext> ctx, long max_depth,
                            std::size_t max_vertices) {
    if (!ctx) throw Error("build_graph: null context");
    if (max_vertices < 3) throw Error("build_graph: max_vertices must be at least 3");
    if (max_depth < 0) throw Error("build_graph: max_depth must be >= 0");
    const int d = ctx->degree();

    TransitionGraph g;
    g.ctx = ctx;

    std::map<FieldElement, std::int32_t> index_of;
    auto insert = [&](const FieldElement& x, long at_depth) -> std::int32_t {
        auto it = index_of.find(x);
        if (it != index_of.end()) return it->second;
        if (g.vertices.size() >= max_vertices)
            throw BudgetError("build_graph: vertex budget " + std::to_string(max_vertices) +
                                  " exceeded at depth " + std::to_string(at_depth) + " with |V| = " +
                                  std::to_string(g.vertices.size()),
                              at_depth, g.vertices.size());
        std::int32_t idx = static_cast<std::int32_t>(g.vertices.size());
        g.vertices.push_back(x);
        index_of.emplace(x, idx);
        return idx;
    };

    // V_{beta,0}: the zero element is forced to index 0; the seeds 1 and -1
    // join when they satisfy the conjugate bounds (always the case when all
    // large conjugates have modulus below 2).
    std::vector<std::int32_t> frontier;
    frontier.push_back(insert(FieldElement::zero(d), 0));
    for (long s : {1L, -1L}) {
        FieldElement e = FieldElement::constant(d, s);
        if (ctx->in_v_beta(e) == Membership::IN) frontier.push_back(insert(e, 0));
    }
    g.level_sizes.push_back(g.vertices.size());

    long depth = 0;
    bool complete = false;
    while (depth < max_depth) {
        std::vector<std::int32_t> next;
        for (std::int32_t vi : frontier) {
            FieldElement x = g.vertices[vi];
            for (int eps : {-1, 0, 1}) {
                FieldElement y = successor(x, eps, *ctx);
                if (index_of.count(y)) continue;
                if (ctx->in_v_beta(y) == Membership::IN) next.push_back(insert(y, depth + 1));
            }
        }
        if (next.empty()) {
            complete = true;
            break;
        }
        ++depth;
        g.level_sizes.push_back(g.vertices.size());
        frontier = std::move(next);
    }
    g.depth = depth;
    g.complete = complete;

    g.edges.assign(g.vertices.size(), {-1, -1, -1});
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        for (int eps : {-1, 0, 1}) {
            FieldElement y = successor(g.vertices[i], eps, *ctx);
            auto it = index_of.find(y);
            g.edges[i][eps + 1] = it == index_of.end() ? -1 : it->second;
        }
    }
    return g;
}

TransitionGraph prune_graph(const TransitionGraph& g) {
    const std::size_t n = g.size();
    std::vector<std::vector<std::int32_t>> rev(n);
    for (std::size_t i = 0; i < n; ++i)
        for (int e = 0; e < 3; ++e)
            if (g.edges[i][e] >= 0) rev[g.edges[i][e]].push_back(static_cast<std::int32_t>(i));

    std::vector<bool> keep(n, false);
    std::vector<std::int32_t> stack{0};
    keep[0] = true;
    while (!stack.empty()) {
        std::int32_t v = stack.back();
        stack.pop_back();
        for (std::int32_t u : rev[v])
            if (!keep[u]) {
                keep[u] = true;
                stack.push_back(u);
            }
    }

    std::vector<std::int32_t> remap(n, -1);
    TransitionGraph out;
    out.ctx = g.ctx;
    out.depth = g.depth;
    out.complete = g.complete;
    out.pruned = true;
    out.level_sizes = g.level_sizes;
    for (std::size_t i = 0; i < n; ++i) {
        if (!keep[i]) continue;
        remap[i] = static_cast<std::int32_t>(out.vertices.size());
        out.vertices.push_back(g.vertices[i]);
    }
    out.edges.assign(out.vertices.size(), {-1, -1, -1});
    for (std::size_t i = 0; i < n; ++i) {
        if (!keep[i]) continue;
        for (int e = 0; e < 3; ++e) {
            std::int32_t t = g.edges[i][e];
            out.edges[remap[i]][e] = (t >= 0 && keep[t]) ? remap[t] : -1;
        }
    }
    return out;
}

int MatrixPair::row(int digit, int i, RowEntry out[2]) const {
    int n = 0;
    if (digit == 0) {
        std::int32_t t0 = edges[i][1];   // beta x_i      (weight p)
        std::int32_t tm = edges[i][0];   // beta x_i - 1  (weight 1-p)
        if (tm >= 0) out[n++] = {tm, &one_minus_p};
        if (t0 >= 0) out[n++] = {t0, &p};
    } else {
        std::int32_t t0 = edges[i][1];   // beta x_i      (weight 1-p)
        std::int32_t tp = edges[i][2];   // beta x_i + 1  (weight p)
        if (t0 >= 0) out[n++] = {t0, &one_minus_p};
        if (tp >= 0) out[n++] = {tp, &p};
    }
    return n;
}

MatrixPair build_matrices(const TransitionGraph& g, const mpq_class& p) {
    if (p <= 0 || p >= 1) throw Error("build_matrices: p must lie in (0,1)");
    MatrixPair mp;
    mp.dim = g.size();
    mp.p = p;
    mp.one_minus_p = mpq_class(1) - p;
    mp.edges = g.edges;
    mp.complete = g.complete;
    mp.depth = g.depth;
    return mp;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

nlohmann::ordered_json graph_to_json(const TransitionGraph& g) {
    nlohmann::ordered_json j;
    std::vector<long> mp;
    for (const auto& c : g.ctx->min_poly().coeffs()) {
        if (!c.fits_slong_p()) throw Error("export_graph: coefficient exceeds int64");
        mp.push_back(c.get_si());
    }
    j["min_poly"] = mp;
    if (g.complete) {
        j["depth"] = "complete";
    } else {
        j["depth"] = g.depth;
    }
    j["pruned"] = g.pruned;
    auto verts = nlohmann::ordered_json::array();
    for (const auto& v : g.vertices) {
        auto row = nlohmann::ordered_json::array();
        for (const auto& c : v.coeffs()) {
            if (!c.fits_slong_p()) throw Error("export_graph: vertex coefficient exceeds int64");
            row.push_back(c.get_si());
        }
        verts.push_back(std::move(row));
    }
    j["vertices"] = std::move(verts);
    auto edges = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < g.edges.size(); ++i)
        for (int eps = -1; eps <= 1; ++eps) {
            std::int32_t t = g.edges[i][eps + 1];
            if (t >= 0) edges.push_back({i, eps, t});
        }
    j["edges"] = std::move(edges);
    return j;
}

}  // namespace

std::string export_graph(const TransitionGraph& g, GraphFormat format) {
    if (format == GraphFormat::JSON) return graph_to_json(g).dump(2) + "\n";

    std::ostringstream os;
    os << "digraph garsia {\n";
    os << "  rankdir=LR;\n";
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        os << "  v" << i << " [label=\"" << g.vertices[i].to_string() << "\""
           << (i == 0 ? ", shape=doublecircle" : "") << "];\n";
    }
    for (std::size_t i = 0; i < g.edges.size(); ++i)
        for (int eps = -1; eps <= 1; ++eps) {
            std::int32_t t = g.edges[i][eps + 1];
            if (t >= 0) os << "  v" << i << " -> v" << t << " [label=\"" << eps << "\"];\n";
        }
    os << "}\n";
    return os.str();
}

TransitionGraph import_graph(const std::string& json_text,
                             std::shared_ptr<const NumberFieldContext> ctx,
                             mpfr_prec_t precision_bits) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("import_graph: bad JSON: ") + e.what());
    }
    try {
        ZPoly coeffs;
        for (long c : j.at("min_poly").get<std::vector<long>>()) coeffs.emplace_back(c);
        IntPolynomial poly = IntPolynomial::from_coeffs(coeffs);
        if (ctx) {
            if (!(ctx->min_poly() == poly))
                throw ParseError("import_graph: polynomial mismatch with supplied context");
        } else {
            ctx = std::make_shared<NumberFieldContext>(poly, precision_bits);
        }
        const int d = ctx->degree();

        TransitionGraph g;
        g.ctx = ctx;
        if (j.at("depth").is_string()) {
            if (j.at("depth").get<std::string>() != "complete")
                throw ParseError("import_graph: bad depth field");
            g.complete = true;
            g.depth = 0;
        } else {
            g.depth = j.at("depth").get<long>();
        }
        g.pruned = j.at("pruned").get<bool>();

        std::map<FieldElement, std::int32_t> index_of;
        for (const auto& row : j.at("vertices")) {
            std::vector<mpz_class> c;
            for (long v : row.get<std::vector<long>>()) c.emplace_back(v);
            if (static_cast<int>(c.size()) != d)
                throw ParseError("import_graph: vertex dimension mismatch");
            FieldElement e{std::move(c)};
            if (index_of.count(e)) throw ParseError("import_graph: duplicate vertex");
            index_of.emplace(e, static_cast<std::int32_t>(g.vertices.size()));
            g.vertices.push_back(std::move(e));
        }
        if (g.vertices.empty() || !g.vertices[0].is_zero())
            throw ParseError("import_graph: vertex 0 must be the zero element");

        g.edges.assign(g.vertices.size(), {-1, -1, -1});
        for (const auto& e : j.at("edges")) {
            long src = e.at(0).get<long>();
            int eps = e.at(1).get<int>();
            long dst = e.at(2).get<long>();
            if (src < 0 || dst < 0 || src >= static_cast<long>(g.size()) ||
                dst >= static_cast<long>(g.size()) || eps < -1 || eps > 1)
                throw ParseError("import_graph: edge out of range");
            FieldElement y = successor(g.vertices[src], eps, *ctx);
            if (y != g.vertices[dst])
                throw ParseError("import_graph: edge fails the exact relation y = beta*x + eps");
            g.edges[src][eps + 1] = static_cast<std::int32_t>(dst);
        }
        // level sizes are not part of the wire format; record the total
        g.level_sizes = {g.vertices.size()};
        return g;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("import_graph: bad schema: ") + e.what());
    }
}

std::string graph_hash(const TransitionGraph& g) {
    std::string s = graph_to_json(g).dump();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

}  // namespace garsia
