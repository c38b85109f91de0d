#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "girth7/errors.hpp"
#include "girth7/matchings.hpp"

namespace girth7 {

/// Point-line incidence structure with opaque labels.  incidence[j] lists
/// the point ids on line j, sorted.
struct IncidenceStructure {
    std::vector<std::string> points;
    std::vector<std::string> lines;
    std::vector<std::vector<int>> incidence;
    std::optional<std::pair<int, int>> meta;  // claimed order (s,t)
};

enum class VertexType : unsigned char { Point, Line };

/// Bipartite incidence graph; point vertices come first, then lines.  The
/// type tag is retained through surgery even though added edges may join
/// vertices of one type.
struct LeviGraph {
    std::vector<std::vector<int>> adj;
    std::vector<VertexType> type;
    std::vector<std::string> label;
    std::size_t m = 0;

    int n() const { return static_cast<int>(adj.size()); }
};

inline std::vector<std::vector<int>> point_to_lines(
    const IncidenceStructure& s) {
    std::vector<std::vector<int>> through(s.points.size());
    for (std::size_t j = 0; j < s.incidence.size(); ++j)
        for (int p : s.incidence[j]) through[p].push_back(static_cast<int>(j));
    return through;
}

inline LeviGraph levi_graph(const IncidenceStructure& s) {
    const int np = static_cast<int>(s.points.size());
    const int nl = static_cast<int>(s.lines.size());
    if (static_cast<int>(s.incidence.size()) != nl)
        throw InvalidParams("incidence list count differs from line count");
    LeviGraph g;
    g.adj.resize(np + nl);
    g.type.resize(np + nl);
    g.label.resize(np + nl);
    for (int p = 0; p < np; ++p) {
        g.type[p] = VertexType::Point;
        g.label[p] = s.points[p];
    }
    for (int j = 0; j < nl; ++j) {
        g.type[np + j] = VertexType::Line;
        g.label[np + j] = s.lines[j];
        int prev = -1;
        for (int p : s.incidence[j]) {
            if (p < 0 || p >= np)
                throw InvalidParams("line references unknown point id");
            if (p == prev)
                throw InvalidParams("point repeated within a line");
            prev = p;
            g.adj[np + j].push_back(p);
            g.adj[p].push_back(np + j);
            ++g.m;
        }
    }
    for (auto& nb : g.adj) std::sort(nb.begin(), nb.end());
    if (s.meta) {
        const auto [sOrd, tOrd] = *s.meta;
        for (int j = 0; j < nl; ++j)
            if (static_cast<int>(g.adj[np + j].size()) != sOrd + 1)
                throw InvalidParams("line size contradicts claimed order");
        for (int p = 0; p < np; ++p)
            if (static_cast<int>(g.adj[p].size()) != tOrd + 1)
                throw InvalidParams("point degree contradicts claimed order");
    }
    return g;
}

// ---------------------------------------------------------------------------
// generalized quadrangle axioms
// ---------------------------------------------------------------------------

struct AxiomReport {
    bool line_size = false;     // every line has s+1 points
    bool point_degree = false;  // every point on t+1 lines
    bool pair_condition = false;  // two points on at most one common line
    bool transversal = false;   // GQ axiom: unique (Q, m) for (P, l) non-incident
    std::string line_witness, degree_witness, pair_witness,
        transversal_witness;

    bool ok() const {
        return line_size && point_degree && pair_condition && transversal;
    }
};

inline AxiomReport check_gq_axioms(const IncidenceStructure& s, int sOrd,
                                   int tOrd) {
    AxiomReport rep;
    const int np = static_cast<int>(s.points.size());
    const auto through = point_to_lines(s);

    rep.line_size = true;
    for (std::size_t j = 0; j < s.incidence.size(); ++j)
        if (static_cast<int>(s.incidence[j].size()) != sOrd + 1) {
            rep.line_size = false;
            rep.line_witness = s.lines[j] + " has " +
                               std::to_string(s.incidence[j].size()) +
                               " points";
            break;
        }

    rep.point_degree = true;
    for (int p = 0; p < np; ++p)
        if (static_cast<int>(through[p].size()) != tOrd + 1) {
            rep.point_degree = false;
            rep.degree_witness = s.points[p] + " is on " +
                                 std::to_string(through[p].size()) + " lines";
            break;
        }

    rep.pair_condition = true;
    {
        std::map<std::pair<int, int>, int> joined;
        for (std::size_t j = 0; j < s.incidence.size() && rep.pair_condition;
             ++j) {
            const auto& pts = s.incidence[j];
            for (std::size_t a = 0; a < pts.size() && rep.pair_condition; ++a)
                for (std::size_t b = a + 1; b < pts.size(); ++b) {
                    auto [it, fresh] = joined.try_emplace(
                        {pts[a], pts[b]}, static_cast<int>(j));
                    if (!fresh) {
                        rep.pair_condition = false;
                        rep.pair_witness = s.points[pts[a]] + " and " +
                                           s.points[pts[b]] + " lie on " +
                                           s.lines[it->second] + " and " +
                                           s.lines[j];
                        break;
                    }
                }
        }
    }

    // For every non-incident (P, l): exactly one point of l collinear with P.
    rep.transversal = true;
    std::vector<char> collinear(np, 0), on_line(np, 0);
    for (int p = 0; p < np && rep.transversal; ++p) {
        for (int j : through[p])
            for (int r : s.incidence[j]) collinear[r] = 1;
        std::vector<char> is_own(s.lines.size(), 0);
        for (int j : through[p]) is_own[j] = 1;
        for (std::size_t j = 0; j < s.incidence.size(); ++j) {
            if (is_own[j]) continue;
            int hits = 0;
            for (int r : s.incidence[j])
                if (collinear[r]) ++hits;
            if (hits != 1) {
                rep.transversal = false;
                rep.transversal_witness =
                    "point " + s.points[p] + " sees " + std::to_string(hits) +
                    " transversals to line " + s.lines[j];
                break;
            }
        }
        for (int j : through[p])
            for (int r : s.incidence[j]) collinear[r] = 0;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// deleteable sets and graph surgery
// ---------------------------------------------------------------------------

struct DeleteableReport {
    bool ok = true;
    std::string witness;
};

/// Definition check on the graph itself: whenever two same-type members of w
/// share a neighbour x, then x must be in w together with all t of its
/// neighbours.  Intersections are computed in g, not in any larger ambient
/// structure, since induced subgraphs may have lost the ambient meet.
inline DeleteableReport is_deleteable(const LeviGraph& g,
                                      const std::vector<int>& w, int t) {
    std::vector<char> in_w(g.adj.size(), 0);
    for (int v : w) {
        if (v < 0 || v >= g.n()) throw UnknownVertex(v);
        in_w[v] = 1;
    }
    std::vector<char> mark(g.adj.size(), 0);
    for (std::size_t a = 0; a < w.size(); ++a) {
        for (int x : g.adj[w[a]]) mark[x] = 1;
        for (std::size_t b = a + 1; b < w.size(); ++b) {
            if (g.type[w[a]] != g.type[w[b]]) continue;
            for (int x : g.adj[w[b]]) {
                if (!mark[x]) continue;
                // common neighbour of two same-type members
                if (!in_w[x])
                    return {false, g.label[x] + " joins " + g.label[w[a]] +
                                       " and " + g.label[w[b]] +
                                       " but is outside the set"};
                if (static_cast<int>(g.adj[x].size()) != t)
                    return {false, g.label[x] + " has degree " +
                                       std::to_string(g.adj[x].size()) +
                                       ", expected " + std::to_string(t)};
                for (int y : g.adj[x])
                    if (!in_w[y])
                        return {false, g.label[y] + " through " + g.label[x] +
                                           " is outside the set"};
            }
        }
        for (int x : g.adj[w[a]]) mark[x] = 0;
    }
    return {true, ""};
}

struct DeletionResult {
    LeviGraph graph;
    std::vector<int> old_to_new;  // -1 for deleted vertices
    std::vector<int> new_to_old;
};

inline DeletionResult delete_vertices(const LeviGraph& g,
                                      const std::vector<int>& w) {
    std::vector<char> dead(g.adj.size(), 0);
    for (int v : w) {
        if (v < 0 || v >= g.n()) throw UnknownVertex(v);
        dead[v] = 1;
    }
    DeletionResult res;
    res.old_to_new.assign(g.adj.size(), -1);
    for (int v = 0; v < g.n(); ++v) {
        if (dead[v]) continue;
        res.old_to_new[v] = static_cast<int>(res.new_to_old.size());
        res.new_to_old.push_back(v);
    }
    LeviGraph& out = res.graph;
    const std::size_t keep = res.new_to_old.size();
    out.adj.resize(keep);
    out.type.resize(keep);
    out.label.resize(keep);
    for (std::size_t i = 0; i < keep; ++i) {
        const int v = res.new_to_old[i];
        out.type[i] = g.type[v];
        out.label[i] = g.label[v];
        for (int u : g.adj[v])
            if (!dead[u]) out.adj[i].push_back(res.old_to_new[u]);
        out.m += out.adj[i].size();
    }
    out.m /= 2;
    return res;
}

inline LeviGraph add_edges(const LeviGraph& g, const MatchingPlan& plan) {
    LeviGraph out = g;
    for (const PlanEdge& e : plan.edges) {
        if (e.u < 0 || e.u >= out.n()) throw UnknownVertex(e.u);
        if (e.v < 0 || e.v >= out.n()) throw UnknownVertex(e.v);
        if (e.u == e.v) throw InvalidParams("plan edge is a loop");
        auto& nu = out.adj[e.u];
        auto it = std::lower_bound(nu.begin(), nu.end(), e.v);
        if (it != nu.end() && *it == e.v)
            throw DuplicateEdge(out.label[e.u] + " -- " + out.label[e.v]);
        nu.insert(it, e.v);
        auto& nv = out.adj[e.v];
        nv.insert(std::lower_bound(nv.begin(), nv.end(), e.u), e.u);
        ++out.m;
    }
    return out;
}

inline std::map<int, int> degree_audit(const LeviGraph& g) {
    std::map<int, int> hist;
    for (const auto& nb : g.adj) ++hist[static_cast<int>(nb.size())];
    return hist;
}

/// Surgery edge expressed by vertex labels; resolved to ids late, so plans
/// can be written in geometric coordinates.
struct LabelEdge {
    std::string a, b;
    std::string provenance;
};

inline std::unordered_map<std::string, int> label_index(const LeviGraph& g) {
    std::unordered_map<std::string, int> idx;
    idx.reserve(g.adj.size());
    for (int v = 0; v < g.n(); ++v)
        if (!idx.emplace(g.label[v], v).second)
            throw InvalidParams("vertex labels are not unique: " + g.label[v]);
    return idx;
}

inline MatchingPlan resolve(const std::vector<LabelEdge>& edges,
                            const LeviGraph& g) {
    const auto idx = label_index(g);
    MatchingPlan plan;
    for (const LabelEdge& e : edges) {
        const auto ia = idx.find(e.a);
        if (ia == idx.end()) throw UnknownVertex(e.a);
        const auto ib = idx.find(e.b);
        if (ib == idx.end()) throw UnknownVertex(e.b);
        plan.edges.push_back({ia->second, ib->second, e.provenance});
    }
    return plan;
}

}  // namespace girth7
