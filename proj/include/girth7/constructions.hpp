#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "girth7/incidence.hpp"
#include "girth7/matchings.hpp"
#include "girth7/projgeom.hpp"

namespace girth7 {

/// Free choices of a builder.  Geometric roles may be overridden by label
/// (as produced by point_label / line_label / plane_label); list-valued
/// roles ("Sigma", "F") take comma-separated labels.
struct ConstructionParams {
    std::optional<std::uint32_t> q;
    std::map<std::string, std::string> named;
    std::uint64_t seed = 0;
};

/// A finished construction: the surgered graph plus everything needed to
/// certify it against the closed formulas.
struct BuiltGraph {
    LeviGraph graph;
    std::string construction;
    std::uint32_t q = 0;
    int k = 0;                      // expected degree
    long long expected_order = 0;   // closed formula, independent of the build
    bool uses_moore8 = false;       // order < M(k,8) is part of the argument
    std::size_t deleted_count = 0;
    std::vector<std::string> provenance;
    std::vector<std::string> witness_labels;  // alternating point/line roles
    std::vector<int> witness_ids;             // same cycle, as vertex ids
    std::map<std::string, long long> references;
};

namespace detail {

inline std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint32_t q) {
    if (q < 2) throw InvalidParams("q must be a prime power >= 2");
    std::uint32_t p = q;
    for (std::uint32_t d = 2; d * d <= q; ++d)
        if (q % d == 0) {
            p = d;
            break;
        }
    std::uint32_t e = 0, v = q;
    while (v % p == 0) {
        v /= p;
        ++e;
    }
    if (v != 1)
        throw InvalidParams("q = " + std::to_string(q) +
                            " is not a prime power");
    return {p, e};
}

inline FieldSpec field_for(std::uint32_t q) {
    const auto [p, e] = prime_power(q);
    return make_field(p, e);
}

/// Incidence structure together with the geometry it came from.  Points and
/// lines are kept sorted so ids can be found by binary search; incidence
/// lists silently drop line members that are not points of the structure
/// (infinite points, points removed by the construction).
struct GeomStructure {
    FieldSpec F;
    std::vector<ProjPoint> pts;
    std::vector<ProjLine> lines;
    IncidenceStructure inc;

    int point_id(const ProjPoint& p) const {
        const auto it = std::lower_bound(pts.begin(), pts.end(), p);
        if (it == pts.end() || !(*it == p))
            throw InvalidParams("point is not part of the structure: " +
                                point_label(p));
        return static_cast<int>(it - pts.begin());
    }

    int line_id(const ProjLine& L) const {
        const auto it = std::lower_bound(lines.begin(), lines.end(), L);
        if (it == lines.end() || !(*it == L))
            throw InvalidParams("line is not part of the structure: " +
                                line_label(L));
        return static_cast<int>(it - lines.begin());
    }

    /// Levi-graph vertex id of a line (points come first).
    int line_vertex(const ProjLine& L) const {
        return static_cast<int>(pts.size()) + line_id(L);
    }
};

inline GeomStructure make_geom(FieldSpec F, std::vector<ProjPoint> pts,
                               std::vector<ProjLine> lines,
                               std::optional<std::pair<int, int>> meta) {
    std::sort(pts.begin(), pts.end());
    std::sort(lines.begin(), lines.end());
    GeomStructure gs{std::move(F), std::move(pts), std::move(lines), {}};
    for (const auto& p : gs.pts) gs.inc.points.push_back(point_label(p));
    for (const auto& L : gs.lines) {
        gs.inc.lines.push_back(line_label(L));
        std::vector<int> ids;
        for (const auto& p : L.pts) {
            const auto it =
                std::lower_bound(gs.pts.begin(), gs.pts.end(), p);
            if (it != gs.pts.end() && *it == p)
                ids.push_back(static_cast<int>(it - gs.pts.begin()));
        }
        gs.inc.incidence.push_back(std::move(ids));
    }
    gs.inc.meta = meta;
    return gs;
}

inline GeomStructure q4_geom(std::uint32_t q) {
    FieldSpec F = field_for(q);
    const QuadraticForm form = parabolic_q4_form();
    auto pts = quadric_points(F, form);
    auto lines = quadric_lines(F, form);
    return make_geom(std::move(F), std::move(pts), std::move(lines),
                     std::pair<int, int>{static_cast<int>(q),
                                         static_cast<int>(q)});
}

inline GeomStructure w_geom(std::uint32_t q) {
    FieldSpec F = field_for(q);
    auto pts = enumerate_points(F, 3);
    auto lines = symplectic_lines(F);
    return make_geom(std::move(F), std::move(pts), std::move(lines),
                     std::pair<int, int>{static_cast<int>(q),
                                         static_cast<int>(q)});
}

inline bool is_affine(const ProjPoint& p) { return p.c[0] != 0; }

/// All affine points of PG(3,q), i.e. canonical vectors with X0 = 1.
inline std::vector<ProjPoint> affine_points(const FieldSpec& F) {
    std::vector<ProjPoint> out;
    for (const auto& p : enumerate_points(F, 3))
        if (is_affine(p)) out.push_back(p);
    return out;
}

struct T2Slice {
    GeomStructure gs;
    ConicSpec conic;
    std::vector<ProjPoint> arc;  // q points, parameter order
};

/// The incidence structure S of affine points and affine lines whose point
/// at infinity lies on a q-arc (conic / hyperoval minus its last points).
inline T2Slice t2_slice(std::uint32_t q) {
    FieldSpec F = field_for(q);
    T2Slice s{{F, {}, {}, {}}, standard_conic(F), {}};
    s.arc.assign(s.conic.points.begin(), s.conic.points.end() - 1);

    auto pts = affine_points(F);
    std::set<ProjLine> lines;
    for (const auto& dir : s.arc)
        for (const auto& p : pts) lines.insert(line_through(F, p, dir));
    s.gs = make_geom(F, std::move(pts),
                     std::vector<ProjLine>(lines.begin(), lines.end()),
                     std::pair<int, int>{static_cast<int>(q) - 1,
                                         static_cast<int>(q) - 1});
    return s;
}

/// All lines of the plane at infinity, in canonical order.
inline std::vector<ProjLine> infinity_lines(const FieldSpec& F,
                                            const Hyperplane& sigma) {
    const auto pts = hyperplane_points(F, sigma);
    std::set<ProjLine> lines;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            lines.insert(line_through(F, pts[i], pts[j]));
    return {lines.begin(), lines.end()};
}

inline ProjPoint resolve_point(const std::vector<ProjPoint>& pool,
                               const std::string& label,
                               const std::string& role) {
    for (const auto& p : pool)
        if (point_label(p) == label) return p;
    throw InvalidParams("named choice '" + role +
                        "' does not denote a valid point: " + label);
}

inline std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

/// Proposition-2 style audit of one surgery step: every vertex must have
/// lost either 0 or `deficit` neighbours, and the matching plan must give
/// back exactly what was lost, vertex by vertex.
inline void audit_surgery(const LeviGraph& base, const DeletionResult& del,
                          const MatchingPlan& plan, int deficit) {
    std::map<int, int> gain;
    for (const auto& e : plan.edges) {
        ++gain[e.u];
        ++gain[e.v];
    }
    for (int nv = 0; nv < del.graph.n(); ++nv) {
        const int old = del.new_to_old[nv];
        const int lost = static_cast<int>(base.adj[old].size()) -
                         static_cast<int>(del.graph.adj[nv].size());
        if (lost != 0 && lost != deficit)
            throw ConstructionError(
                "vertex " + del.graph.label[nv] + " lost " +
                std::to_string(lost) + " neighbours, expected 0 or " +
                std::to_string(deficit));
        const auto it = gain.find(nv);
        const int gained = it == gain.end() ? 0 : it->second;
        if (gained != lost)
            throw ConstructionError("matching does not restore vertex " +
                                    del.graph.label[nv] + ": lost " +
                                    std::to_string(lost) + ", gained " +
                                    std::to_string(gained));
    }
}

/// Reference orders published for the same degree: Lazebnik-Ustimenko-Woldar
/// for k = q and k = q-1, Abreu et al. for k = q+1.
inline std::map<std::string, long long> reference_orders(
    std::uint32_t q, int k, long long formula) {
    std::map<std::string, long long> refs{{"formula", formula}};
    const long long qq = q;
    if (k == static_cast<int>(q)) refs["luw"] = 2 * qq * qq * qq;
    if (k == static_cast<int>(q) - 1)
        refs["luw"] = 2 * qq * qq * qq - 2 * qq * qq;
    if (k == static_cast<int>(q) + 1)
        refs["abreu"] = q % 2 == 0 ? 2 * qq * qq * qq + qq * qq + 2 * qq
                                   : 2 * qq * qq * qq + 2 * qq * qq - qq + 1;
    return refs;
}

/// The hyperbolic-section grid of Q(4,q) in a hyperplane: its 2(q+1) lines,
/// split into rulings, plus the (q+1) x (q+1) cell matrix.
struct SectionGrid {
    Hyperplane sigma;
    std::vector<ProjLine> section;  // all 2(q+1) lines
    std::array<std::vector<ProjLine>, 2> rulings;
    std::vector<std::vector<ProjPoint>> cells;  // rulings[0] x rulings[1]
};

inline SectionGrid section_grid(const GeomStructure& q4,
                                const Hyperplane& sigma) {
    SectionGrid sg;
    sg.sigma = sigma;
    for (const auto& L : q4.lines)
        if (line_in_hyperplane(q4.F, L, sigma)) sg.section.push_back(L);
    const std::size_t expect = 2 * (q4.F.q() + 1);
    if (sg.section.size() != expect)
        throw InvalidParams(
            "hyperplane section is not hyperbolic: found " +
            std::to_string(sg.section.size()) + " lines, expected " +
            std::to_string(expect));
    sg.rulings = two_rulings(q4.F, sg.section);
    sg.cells = grid_cells(q4.F, sg.rulings[0], sg.rulings[1]);
    return sg;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// substrate builders
// ---------------------------------------------------------------------------

/// The parabolic-quadric generalized quadrangle Q(4,q).
inline IncidenceStructure build_Q4(std::uint32_t q) {
    return detail::q4_geom(q).inc;
}

/// The symplectic generalized quadrangle W(q).
inline IncidenceStructure build_W(std::uint32_t q) {
    return detail::w_geom(q).inc;
}

/// The affine slice S used by Theorem "main" (ii): all points of AG(3,q),
/// lines with point at infinity on a q-arc.
inline IncidenceStructure build_T2_slice(std::uint32_t q) {
    if (q < 7) throw InvalidParams("build_T2_slice requires q >= 7");
    return detail::t2_slice(q).gs.inc;
}

namespace detail {

/// Everything chosen while building the k-regular slice of Theorem
/// "2kq^2 - q": the special points/lines of the witness 7-cycle, the
/// deleted parallel class W, the q-k removed planes and q+1-k removed
/// directions.
struct EvenKContext {
    GeomStructure gs;
    std::uint32_t q = 0;
    int k = 0;

    explicit EvenKContext(FieldSpec F) : gs{std::move(F), {}, {}, {}} {}
    ProjPoint C, D, M1, M2;
    ProjLine e;          // external line at infinity
    ProjLine tangent_c;  // tangent to the oval at C
    Hyperplane Pi;       // affine plane with line at infinity tangent_c
    std::vector<ProjLine> W;  // the q lines of direction C inside Pi
    ProjLine ell;             // the W-line carrying U1, U2
    ProjPoint U1, U2, R1, R2;
    ProjLine f1, f2, g;
    std::vector<Hyperplane> sigmas;
    std::vector<ProjPoint> removedF;
};

inline EvenKContext even_k_context(int k, const ConstructionParams& params) {
    if (k < 4 || k % 2 != 0)
        throw InvalidParams("k must be an even integer >= 4");
    std::uint32_t q = 0;
    if (params.q) {
        q = *params.q;
        prime_power(q);  // validates
        if (static_cast<int>(q) == k)
            throw KEqualsQUnsupported(k);
        if (static_cast<int>(q) < k)
            throw InvalidParams("q must satisfy k < q");
    } else {
        for (q = static_cast<std::uint32_t>(k) + 1;; ++q) {
            try {
                prime_power(q);
                break;
            } catch (const InvalidParams&) {
            }
        }
    }

    FieldSpec F = field_for(q);
    EvenKContext ctx(F);
    ctx.q = q;
    ctx.k = k;
    const ConicSpec conic = standard_conic(F);
    const std::vector<ProjPoint>& oval = conic.points;
    const Hyperplane sigma_inf = conic.ambient;

    auto named_point = [&](const char* role, const ProjPoint& dflt) {
        const auto it = params.named.find(role);
        if (it == params.named.end()) return dflt;
        const ProjPoint p = resolve_point(oval, it->second, role);
        return p;
    };
    ctx.C = named_point("C", oval[0]);
    ctx.D = named_point("D", oval[1]);
    ctx.M1 = named_point("M1", oval[2]);
    ctx.M2 = named_point("M2", oval[3]);
    {
        std::set<ProjPoint> distinct{ctx.C, ctx.D, ctx.M1, ctx.M2};
        if (distinct.size() != 4)
            throw InvalidParams(
                "named choices C, D, M1, M2 must be four distinct oval "
                "points");
    }

    // external line at infinity, avoiding the nucleus when q is even
    const auto inf_lines = infinity_lines(F, sigma_inf);
    auto external_ok = [&](const ProjLine& L) {
        for (const auto& p : oval)
            if (L.contains(p)) return false;
        if (conic.nucleus && L.contains(*conic.nucleus)) return false;
        return true;
    };
    if (const auto it = params.named.find("e"); it != params.named.end()) {
        bool found = false;
        for (const auto& L : inf_lines)
            if (line_label(L) == it->second) {
                if (!external_ok(L))
                    throw InvalidParams(
                        "named choice 'e' violates: external to the oval "
                        "(and off the nucleus for even q)");
                ctx.e = L;
                found = true;
                break;
            }
        if (!found)
            throw InvalidParams(
                "named choice 'e' does not denote a line at infinity: " +
                it->second);
    } else {
        bool found = false;
        for (const auto& L : inf_lines)
            if (external_ok(L)) {
                ctx.e = L;
                found = true;
                break;
            }
        if (!found) throw ConstructionError("no external line found");
    }

    ctx.tangent_c = tangent_in_plane(F, sigma_inf, oval, ctx.C);

    // Pi: first affine plane whose line at infinity is the tangent at C
    {
        const auto through = planes_through_line(F, ctx.tangent_c);
        bool found = false;
        const auto it = params.named.find("Pi");
        for (const auto& pl : through) {
            if (pl == sigma_inf) continue;
            if (it != params.named.end()) {
                if (plane_label(pl) == it->second) {
                    ctx.Pi = pl;
                    found = true;
                    break;
                }
            } else {
                ctx.Pi = pl;
                found = true;
                break;
            }
        }
        if (!found)
            throw InvalidParams(
                "named choice 'Pi' violates: affine plane with line at "
                "infinity tangent to the oval at C");
    }

    // W: the parallel class of direction C inside Pi
    for (const auto& L : lines_in_plane_through(F, ctx.Pi, ctx.C))
        if (!(L == ctx.tangent_c)) ctx.W.push_back(L);
    std::sort(ctx.W.begin(), ctx.W.end());
    if (ctx.W.size() != q)
        throw ConstructionError("parallel class W has wrong size");

    if (const auto it = params.named.find("ell"); it != params.named.end()) {
        bool found = false;
        for (const auto& L : ctx.W)
            if (line_label(L) == it->second) {
                ctx.ell = L;
                found = true;
                break;
            }
        if (!found)
            throw InvalidParams(
                "named choice 'ell' violates: member of the parallel class "
                "W");
    } else {
        ctx.ell = ctx.W[0];
    }

    // U1, U2: two affine points on ell
    {
        std::vector<ProjPoint> aff;
        for (const auto& p : ctx.ell.pts)
            if (is_affine(p)) aff.push_back(p);
        auto pick = [&](const char* role, const ProjPoint& dflt) {
            const auto it = params.named.find(role);
            if (it == params.named.end()) return dflt;
            return resolve_point(aff, it->second, role);
        };
        ctx.U1 = pick("U1", aff.at(0));
        ctx.U2 = pick("U2", aff.at(1));
        if (ctx.U1 == ctx.U2)
            throw InvalidParams("named choices U1, U2 must be distinct");
    }

    ctx.f1 = line_through(F, ctx.U1, ctx.M1);
    ctx.f2 = line_through(F, ctx.U2, ctx.M2);
    if (meet_lines(F, ctx.f1, ctx.f2).has_value())
        throw ConstructionError("f1 and f2 are not skew");
    if (ctx.f1.contains(ctx.C) || ctx.f2.contains(ctx.C))
        throw ConstructionError("f_i passes through C");

    const Hyperplane h1 = plane_of_line_and_point(F, ctx.f1, ctx.D);
    const Hyperplane h2 = plane_of_line_and_point(F, ctx.f2, ctx.D);
    ctx.g = plane_meet(F, h1, h2);
    if (!ctx.g.contains(ctx.D))
        throw ConstructionError("g does not pass through D");
    const auto r1 = meet_lines(F, ctx.f1, ctx.g);
    const auto r2 = meet_lines(F, ctx.f2, ctx.g);
    if (!r1 || !r2) throw ConstructionError("f_i and g do not meet");
    ctx.R1 = *r1;
    ctx.R2 = *r2;
    if (!is_affine(ctx.R1) || !is_affine(ctx.R2))
        throw ConstructionError("R_i is not affine");
    {
        std::set<ProjPoint> distinct{ctx.U1, ctx.U2, ctx.R1, ctx.R2};
        if (distinct.size() != 4)
            throw ConstructionError("U1, U2, R1, R2 are not distinct");
    }

    // Sigma_j: q-k affine planes with line at infinity e, avoiding the
    // four special points
    {
        const std::set<ProjPoint> avoid{ctx.U1, ctx.U2, ctx.R1, ctx.R2};
        std::vector<Hyperplane> candidates;
        for (const auto& pl : planes_through_line(F, ctx.e)) {
            if (pl == sigma_inf) continue;
            bool ok = true;
            for (const auto& p : avoid)
                if (on_hyperplane(F, pl, p)) {
                    ok = false;
                    break;
                }
            if (ok) candidates.push_back(pl);
        }
        const std::size_t need = q - static_cast<std::uint32_t>(k);
        if (const auto it = params.named.find("Sigma");
            it != params.named.end()) {
            for (const std::string& lbl : split_list(it->second)) {
                bool found = false;
                for (const auto& pl : candidates)
                    if (plane_label(pl) == lbl) {
                        ctx.sigmas.push_back(pl);
                        found = true;
                        break;
                    }
                if (!found)
                    throw InvalidParams(
                        "named choice 'Sigma' violates: affine plane on e "
                        "avoiding {U1,U2,R1,R2}: " +
                        lbl);
            }
        } else {
            for (const auto& pl : candidates) {
                if (ctx.sigmas.size() == need) break;
                ctx.sigmas.push_back(pl);
            }
        }
        if (ctx.sigmas.size() != need)
            throw InvalidParams("expected " + std::to_string(need) +
                                " planes Sigma_j, have " +
                                std::to_string(ctx.sigmas.size()));
    }

    // F_j: q+1-k removed directions from the oval
    {
        const std::set<ProjPoint> keep{ctx.C, ctx.D, ctx.M1, ctx.M2};
        std::vector<ProjPoint> pool;
        for (const auto& p : oval)
            if (!keep.count(p)) pool.push_back(p);
        const std::size_t need = q + 1 - static_cast<std::uint32_t>(k);
        if (const auto it = params.named.find("F"); it != params.named.end()) {
            for (const std::string& lbl : split_list(it->second))
                ctx.removedF.push_back(resolve_point(pool, lbl, "F"));
            std::set<ProjPoint> distinct(ctx.removedF.begin(),
                                         ctx.removedF.end());
            if (distinct.size() != ctx.removedF.size())
                throw InvalidParams("named choice 'F' repeats a point");
        } else {
            for (const auto& p : pool) {
                if (ctx.removedF.size() == need) break;
                ctx.removedF.push_back(p);
            }
        }
        if (ctx.removedF.size() != need)
            throw InvalidParams("expected " + std::to_string(need) +
                                " removed points F_j, have " +
                                std::to_string(ctx.removedF.size()));
    }

    // the structure S: surviving affine points, lines in kept directions
    std::vector<ProjPoint> survivors;
    for (const auto& p : affine_points(F)) {
        bool hit = false;
        for (const auto& pl : ctx.sigmas)
            if (on_hyperplane(F, pl, p)) {
                hit = true;
                break;
            }
        if (!hit) survivors.push_back(p);
    }
    std::set<ProjPoint> removed_set(ctx.removedF.begin(), ctx.removedF.end());
    std::set<ProjLine> lines;
    for (const auto& dir : oval) {
        if (removed_set.count(dir)) continue;
        for (const auto& p : survivors) lines.insert(line_through(F, p, dir));
    }
    ctx.gs = make_geom(F, std::move(survivors),
                       std::vector<ProjLine>(lines.begin(), lines.end()),
                       std::pair<int, int>{k - 1, k - 1});

    const std::size_t kq2 =
        static_cast<std::size_t>(k) * static_cast<std::size_t>(q) * q;
    if (ctx.gs.pts.size() != kq2 || ctx.gs.lines.size() != kq2)
        throw ConstructionError("slice size mismatch: expected kq^2");
    for (const auto& incid : ctx.gs.inc.incidence)
        if (static_cast<int>(incid.size()) != k)
            throw ConstructionError("a slice line does not have k points");
    return ctx;
}

}  // namespace detail

/// The k-regular slice of Theorem "2kq^2 - q" (points of AG(3,q) off the
/// removed planes; lines toward the surviving oval directions).
inline IncidenceStructure build_S_even_k(int k,
                                         const ConstructionParams& params = {}) {
    return detail::even_k_context(k, params).gs.inc;
}

// ---------------------------------------------------------------------------
// theorem-level constructions
// ---------------------------------------------------------------------------

namespace detail {

/// Shared tail: delete `doomed` vertices from the Levi graph of gs, add the
/// planned edges (given in post-deletion ids by `make_plan`), audit against
/// the expected deficiency, and package the result.
template <typename PlanFn>
BuiltGraph surgery(const GeomStructure& gs, const std::vector<int>& doomed,
                   PlanFn&& make_plan, int deficit, BuiltGraph out) {
    const LeviGraph base = levi_graph(gs.inc);
    const DeletionResult del = delete_vertices(base, doomed);
    const MatchingPlan plan = make_plan(del);
    audit_surgery(base, del, plan, deficit);
    out.graph = add_edges(del.graph, plan);
    out.deleted_count = doomed.size();
    out.provenance.push_back("base Levi graph: " +
                             std::to_string(base.n()) + " vertices");
    out.provenance.push_back("deleted " + std::to_string(doomed.size()) +
                             " vertices");
    out.provenance.push_back("added " + std::to_string(plan.edges.size()) +
                             " matching edges");
    if (out.graph.n() != out.expected_order)
        throw ConstructionError(
            "order mismatch: built " + std::to_string(out.graph.n()) +
            ", formula " + std::to_string(out.expected_order));
    return out;
}

inline std::vector<int> witness_vertices(
    const LeviGraph& g, const std::vector<std::string>& labels) {
    const auto index = label_index(g);
    std::vector<int> ids;
    for (const auto& lbl : labels) {
        const auto it = index.find(lbl);
        if (it == index.end()) throw UnknownVertex(lbl);
        ids.push_back(it->second);
    }
    return ids;
}

}  // namespace detail

/// Theorem "main" (i): delete the hyperbolic-section grid from Levi(Q(4,q))
/// and close each grid row into a cycle.  (q+1)-regular, order 2q^3+2q^2.
inline BuiltGraph construct_thm_main_i(std::uint32_t q,
                                       const ConstructionParams& params = {}) {
    if (q < 7) throw InvalidParams("thm-main-i requires a prime power q >= 7");
    const detail::GeomStructure gs = detail::q4_geom(q);

    Hyperplane sigma = make_hyperplane(gs.F, {1, 0, 0, 0, 0}, 4);
    if (const auto it = params.named.find("Sigma"); it != params.named.end()) {
        bool found = false;
        for (const auto& h : enumerate_hyperplanes(gs.F, 4))
            if (plane_label(h) == it->second) {
                sigma = h;
                found = true;
                break;
            }
        if (!found)
            throw InvalidParams(
                "named choice 'Sigma' does not denote a hyperplane: " +
                it->second);
    }
    const detail::SectionGrid sg = detail::section_grid(gs, sigma);

    std::vector<int> doomed;
    for (const auto& L : sg.section) doomed.push_back(gs.line_vertex(L));

    const long long qq = q;
    BuiltGraph out;
    out.construction = "thm-main-i";
    out.q = q;
    out.k = static_cast<int>(q) + 1;
    out.expected_order = 2 * qq * qq * qq + 2 * qq * qq;
    out.uses_moore8 = true;
    out.references = detail::reference_orders(q, out.k, out.expected_order);
    out.provenance.push_back("hyperbolic section in " + plane_label(sigma));

    return detail::surgery(
        gs, doomed,
        [&](const DeletionResult& del) {
            // rows/cols name the (deleted) ruling lines by base-graph id;
            // the cells carry post-deletion point ids
            GridSpec grid;
            for (const auto& L : sg.rulings[0])
                grid.rows.push_back(gs.line_vertex(L));
            for (const auto& L : sg.rulings[1])
                grid.cols.push_back(gs.line_vertex(L));
            grid.cell.resize(sg.cells.size());
            for (std::size_t i = 0; i < sg.cells.size(); ++i)
                for (const auto& pt : sg.cells[i])
                    grid.cell[i].push_back(
                        del.old_to_new[gs.point_id(pt)]);
            return grid_row_cycles(grid);
        },
        2, std::move(out));
}

/// Theorem "main" (ii): inside the slice S, delete the q x q grid of A- and
/// B-lines of an affine plane Pi and close each row into a cycle.
/// q-regular, order 2q^3 - 2q.  Carries an explicit 7-cycle witness.
inline BuiltGraph construct_thm_main_ii(std::uint32_t q,
                                        const ConstructionParams& params = {}) {
    if (q < 7)
        throw InvalidParams("thm-main-ii requires a prime power q >= 7");
    const detail::T2Slice slice = detail::t2_slice(q);
    const detail::GeomStructure& gs = slice.gs;
    const FieldSpec& F = gs.F;
    const Hyperplane sigma_inf = slice.conic.ambient;

    auto pick_arc = [&](const char* role, const ProjPoint& dflt) {
        const auto it = params.named.find(role);
        if (it == params.named.end()) return dflt;
        return detail::resolve_point(slice.arc, it->second, role);
    };
    const ProjPoint A = pick_arc("A", slice.arc[0]);
    const ProjPoint B = pick_arc("B", slice.arc[1]);
    if (A == B) throw InvalidParams("named choices A, B must be distinct");
    std::vector<ProjPoint> rest;
    for (const auto& p : slice.arc)
        if (!(p == A) && !(p == B)) rest.push_back(p);
    const ProjPoint C = pick_arc("C", rest[0]);
    const ProjPoint D = pick_arc("D", rest[1]);
    const ProjPoint E = pick_arc("E", rest[2]);
    {
        std::set<ProjPoint> distinct{A, B, C, D, E};
        if (distinct.size() != 5)
            throw InvalidParams(
                "named choices A, B, C, D, E must be five distinct arc "
                "points");
    }

    // Pi: an affine plane through the infinity line AB
    const ProjLine ab = line_through(F, A, B);
    Hyperplane Pi;
    {
        bool found = false;
        const auto it = params.named.find("Pi");
        for (const auto& pl : planes_through_line(F, ab)) {
            if (pl == sigma_inf) continue;
            if (it != params.named.end()) {
                if (plane_label(pl) == it->second) {
                    Pi = pl;
                    found = true;
                    break;
                }
            } else {
                Pi = pl;
                found = true;
                break;
            }
        }
        if (!found)
            throw InvalidParams(
                "named choice 'Pi' violates: affine plane through the line "
                "AB");
    }

    std::vector<ProjLine> rows, cols;
    for (const auto& L : gs.lines) {
        if (!line_in_hyperplane(F, L, Pi)) continue;
        if (L.contains(A)) rows.push_back(L);
        if (L.contains(B)) cols.push_back(L);
    }
    if (rows.size() != q || cols.size() != q)
        throw ConstructionError("grid in Pi has wrong shape");
    const auto cells = grid_cells(F, rows, cols);

    std::vector<int> doomed;
    for (const auto& L : rows) doomed.push_back(gs.line_vertex(L));
    for (const auto& L : cols) doomed.push_back(gs.line_vertex(L));

    const long long qq = q;
    BuiltGraph out;
    out.construction = "thm-main-ii";
    out.q = q;
    out.k = static_cast<int>(q);
    out.expected_order = 2 * qq * qq * qq - 2 * qq;
    out.uses_moore8 = false;
    out.references = detail::reference_orders(q, out.k, out.expected_order);
    out.provenance.push_back("grid plane " + plane_label(Pi) +
                             ", directions A=" + point_label(A) +
                             " B=" + point_label(B));

    out = detail::surgery(
        gs, doomed,
        [&](const DeletionResult& del) {
            GridSpec grid;
            for (const auto& L : rows) grid.rows.push_back(gs.line_vertex(L));
            for (const auto& L : cols) grid.cols.push_back(gs.line_vertex(L));
            grid.cell.resize(cells.size());
            for (std::size_t i = 0; i < cells.size(); ++i)
                for (const auto& pt : cells[i])
                    grid.cell[i].push_back(del.old_to_new[gs.point_id(pt)]);
            return grid_row_cycles(grid);
        },
        2, std::move(out));

    // explicit 7-cycle u1 u2 v3 u4 v5 u6 v7: u1u2 is a row-cycle edge, the
    // rest alternates incidences through directions D, E and C
    const ProjPoint& U1 = cells[0][0];
    const ProjPoint& U2 = cells[0][1];
    const ProjLine v3 = line_through(F, U2, D);
    const Hyperplane span = plane_through(F, U1, C, E);
    const auto u4 = meet_line_hyperplane(F, v3, span);
    if (!u4 || !detail::is_affine(*u4))
        throw ConstructionError("witness point u4 is degenerate");
    const ProjLine v5 = line_through(F, *u4, E);
    const ProjLine v7 = line_through(F, U1, C);
    const auto u6 = meet_lines(F, v5, v7);
    if (!u6 || !detail::is_affine(*u6))
        throw ConstructionError("witness point u6 is degenerate");
    {
        std::set<ProjPoint> distinct{U1, U2, *u4, *u6};
        if (distinct.size() != 4)
            throw ConstructionError("witness points are not distinct");
    }
    out.witness_labels = {point_label(U1),  point_label(U2), line_label(v3),
                          point_label(*u4), line_label(v5),  point_label(*u6),
                          line_label(v7)};
    out.witness_ids = detail::witness_vertices(out.graph, out.witness_labels);
    return out;
}

/// Theorem "2q^3+2q^2+q+2": delete all lines but one of a section ruling
/// and repair with a rectangle-free lattice matching.  (q+1)-regular.
inline BuiltGraph construct_thm_rectfree(std::uint32_t q,
                                         const ConstructionParams& params = {}) {
    const auto [p, e] = detail::prime_power(q);
    (void)e;
    if (p == 2 || q < 3)
        throw InvalidParams("thm-rectfree requires an odd prime power q >= 3");
    const detail::GeomStructure gs = detail::q4_geom(q);

    Hyperplane sigma = make_hyperplane(gs.F, {1, 0, 0, 0, 0}, 4);
    if (const auto it = params.named.find("Sigma"); it != params.named.end()) {
        bool found = false;
        for (const auto& h : enumerate_hyperplanes(gs.F, 4))
            if (plane_label(h) == it->second) {
                sigma = h;
                found = true;
                break;
            }
        if (!found)
            throw InvalidParams(
                "named choice 'Sigma' does not denote a hyperplane: " +
                it->second);
    }
    const detail::SectionGrid sg = detail::section_grid(gs, sigma);

    // ell: the one ruling line kept; its ruling is the deleted one
    int del_ruling = 1;
    ProjLine ell = sg.rulings[1][0];
    if (const auto it = params.named.find("ell"); it != params.named.end()) {
        bool found = false;
        for (int r = 0; r < 2 && !found; ++r)
            for (const auto& L : sg.rulings[r])
                if (line_label(L) == it->second) {
                    ell = L;
                    del_ruling = r;
                    found = true;
                    break;
                }
        if (!found)
            throw InvalidParams(
                "named choice 'ell' violates: line of the hyperbolic "
                "section: " +
                it->second);
    }
    const std::vector<ProjLine>& keep_ruling = sg.rulings[1 - del_ruling];
    std::vector<ProjLine> deleted;
    for (const auto& L : sg.rulings[del_ruling])
        if (!(L == ell)) deleted.push_back(L);
    const auto cells = grid_cells(gs.F, keep_ruling, deleted);  // (q+1) x q

    std::vector<int> doomed;
    for (const auto& L : deleted) doomed.push_back(gs.line_vertex(L));

    const long long qq = q;
    BuiltGraph out;
    out.construction = "thm-rectfree";
    out.q = q;
    out.k = static_cast<int>(q) + 1;
    out.expected_order = 2 * qq * qq * qq + 2 * qq * qq + qq + 2;
    out.uses_moore8 = true;
    out.references = detail::reference_orders(q, out.k, out.expected_order);
    out.provenance.push_back("kept ruling line " + line_label(ell));

    return detail::surgery(
        gs, doomed,
        [&](const DeletionResult& del) {
            MatchingPlan plan;
            for (const LatticeEdge& le :
                 rectangle_free_matching(static_cast<int>(q) + 1)) {
                const ProjPoint& a = cells[le.ja - 1][le.col - 1];
                const ProjPoint& b = cells[le.jb - 1][le.col - 1];
                plan.edges.push_back(
                    {del.old_to_new[gs.point_id(a)],
                     del.old_to_new[gs.point_id(b)],
                     "f-line " + line_label(deleted[le.col - 1])});
            }
            return plan;
        },
        1, std::move(out));
}

/// Theorem "2kq^2 - q": delete a parallel class W from the k-regular slice
/// and pair the points of each deleted line.  Carries the witness 7-cycle
/// (U1, U2, f2, R2, g, R1, f1).
inline BuiltGraph construct_thm_even_k(int k,
                                       const ConstructionParams& params = {}) {
    const detail::EvenKContext ctx = detail::even_k_context(k, params);
    const detail::GeomStructure& gs = ctx.gs;

    std::vector<int> doomed;
    for (const auto& L : ctx.W) doomed.push_back(gs.line_vertex(L));
    {
        const LeviGraph base = levi_graph(gs.inc);
        const DeleteableReport rep = is_deleteable(base, doomed, k);
        if (!rep.ok)
            throw ConstructionError("W is not deleteable: " + rep.witness);
    }

    const long long qq = ctx.q;
    BuiltGraph out;
    out.construction = "thm-even-k";
    out.q = ctx.q;
    out.k = k;
    out.expected_order = 2 * k * qq * qq - qq;
    out.uses_moore8 = false;
    out.references =
        detail::reference_orders(ctx.q, k, out.expected_order);
    out.provenance.push_back("oval frame C=" + point_label(ctx.C) +
                             " D=" + point_label(ctx.D) +
                             " M1=" + point_label(ctx.M1) +
                             " M2=" + point_label(ctx.M2));
    out.provenance.push_back("parallel class W in " + plane_label(ctx.Pi) +
                             ", special line " + line_label(ctx.ell));

    out = detail::surgery(
        gs, doomed,
        [&](const DeletionResult& del) {
            std::vector<std::vector<int>> lists;
            std::vector<std::string> tags;
            for (const auto& L : ctx.W) {
                std::vector<int> ids;
                for (int pid : gs.inc.incidence[gs.line_id(L)])
                    ids.push_back(del.old_to_new[pid]);
                if (L == ctx.ell) {
                    const int u1 = del.old_to_new[gs.point_id(ctx.U1)];
                    const int u2 = del.old_to_new[gs.point_id(ctx.U2)];
                    std::vector<int> reordered{u1, u2};
                    for (int id : ids)
                        if (id != u1 && id != u2) reordered.push_back(id);
                    ids = std::move(reordered);
                }
                lists.push_back(std::move(ids));
                tags.push_back("deleted " + line_label(L));
            }
            return per_line_pairing(lists, tags);
        },
        1, std::move(out));

    out.witness_labels = {point_label(ctx.U1), point_label(ctx.U2),
                          line_label(ctx.f2),  point_label(ctx.R2),
                          line_label(ctx.g),   point_label(ctx.R1),
                          line_label(ctx.f1)};
    out.witness_ids = detail::witness_vertices(out.graph, out.witness_labels);
    return out;
}

/// Theorem "2q^3+q^2+2q", q even: delete a deleteable set of size q^2+2
/// from Levi(W(q)) -- a line, its points, and the residual pencils along it
/// -- then repair with pencil pairings at E1, E2 and point pairings on the
/// deleted affine lines.  (q+1)-regular.
inline BuiltGraph construct_thm_wq_even(std::uint32_t q,
                                        const ConstructionParams& params = {}) {
    (void)params;
    const auto [p, e] = detail::prime_power(q);
    (void)e;
    if (p != 2 || q < 4)
        throw InvalidParams(
            "thm-wq-even requires an even prime power q >= 4");
    const detail::GeomStructure gs = detail::w_geom(q);
    const FieldSpec& F = gs.F;

    const ProjPoint E1 = make_point(F, {0, 1, 0, 0});
    const ProjPoint E2 = make_point(F, {0, 0, 1, 0});
    const ProjLine lambda0 = line_through(F, E1, E2);
    const int lambda0_line = gs.line_id(lambda0);

    const auto p2l = point_to_lines(gs.inc);
    const int npts = static_cast<int>(gs.pts.size());

    std::set<int> doomed_set;
    doomed_set.insert(npts + lambda0_line);
    for (const auto& pt : lambda0.pts) doomed_set.insert(gs.point_id(pt));
    for (std::uint32_t t = 1; t < q; ++t) {
        const int pid = gs.point_id(make_point(F, {0, 1, t, 0}));
        for (int lid : p2l[pid])
            if (lid != lambda0_line) doomed_set.insert(npts + lid);
    }
    if (doomed_set.size() != static_cast<std::size_t>(q) * q + 2)
        throw ConstructionError("deleted set W has wrong size");
    const std::vector<int> doomed(doomed_set.begin(), doomed_set.end());
    {
        const LeviGraph base = levi_graph(gs.inc);
        const DeleteableReport rep =
            is_deleteable(base, doomed, static_cast<int>(q) + 1);
        if (!rep.ok)
            throw ConstructionError("W is not deleteable: " + rep.witness);
    }

    const long long qq = q;
    BuiltGraph out;
    out.construction = "thm-wq-even";
    out.q = q;
    out.k = static_cast<int>(q) + 1;
    out.expected_order = 2 * qq * qq * qq + qq * qq + 2 * qq;
    out.uses_moore8 = true;
    out.references = detail::reference_orders(q, out.k, out.expected_order);
    out.provenance.push_back("deleted line " + line_label(lambda0) +
                             ", its points, and the residual pencils");

    return detail::surgery(
        gs, doomed,
        [&](const DeletionResult& del) {
            MatchingPlan plan;
            auto new_line = [&](const ProjLine& L) {
                const int id = del.old_to_new[gs.line_vertex(L)];
                if (id < 0)
                    throw ConstructionError("matching touches a deleted line");
                return id;
            };
            auto new_point = [&](const ProjPoint& pt) {
                const int id = del.old_to_new[gs.point_id(pt)];
                if (id < 0)
                    throw ConstructionError(
                        "matching touches a deleted point");
                return id;
            };
            // pencils at the deleted points E1 and E2: partner t with t+1
            for (std::uint32_t t = 0; t < q; ++t) {
                const std::uint32_t s = F.add(t, 1);
                if (t > s) continue;
                plan.edges.push_back(
                    {new_line(line_through(F, E1, make_point(F, {0, 0, t, 1}))),
                     new_line(line_through(F, E1, make_point(F, {0, 0, s, 1}))),
                     "pencil at E1"});
                plan.edges.push_back(
                    {new_line(line_through(F, E2, make_point(F, {1, t, 0, 0}))),
                     new_line(line_through(F, E2, make_point(F, {1, s, 0, 0}))),
                     "pencil at E2"});
            }
            // points of each deleted affine line, paired along p -> p+1
            for (std::uint32_t t = 1; t < q; ++t) {
                const std::uint32_t z = F.inv(t);
                for (std::uint32_t c = 0; c < q; ++c)
                    for (std::uint32_t x = 0; x < q; ++x) {
                        const std::uint32_t x2 = F.add(x, 1);
                        if (x > x2) continue;
                        const ProjPoint a = make_point(
                            F, {1, x, F.add(F.mul(t, x), c), z});
                        const ProjPoint b = make_point(
                            F, {1, x2, F.add(F.mul(t, x2), c), z});
                        plan.edges.push_back({new_point(a), new_point(b),
                                              "deleted affine line t=" +
                                                  std::to_string(t) +
                                                  " c=" + std::to_string(c)});
                    }
            }
            return plan;
        },
        1, std::move(out));
}

}  // namespace girth7

