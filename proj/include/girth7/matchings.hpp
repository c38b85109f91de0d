#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "girth7/errors.hpp"

namespace girth7 {

/// One-factorization of K_k on labels 1..k: k-1 perfect matchings that
/// together partition the edge set.
struct OneFactorization {
    int k = 0;
    std::vector<std::vector<std::pair<int, int>>> factors;  // pairs (a < b)
};

/// Circle method: hub k stays fixed, the other labels rotate.  Factor r
/// pairs the hub with r and pairs r+i with r-i (mod k-1, on labels 1..k-1).
inline OneFactorization one_factorization(int k) {
    if (k < 2) throw InvalidParams("one_factorization needs k >= 2");
    if (k % 2 != 0) throw OddK(k);
    const auto wrap = [k](int x) {
        int m = (x - 1) % (k - 1);
        if (m < 0) m += k - 1;
        return m + 1;
    };
    OneFactorization of;
    of.k = k;
    for (int r = 1; r <= k - 1; ++r) {
        std::vector<std::pair<int, int>> factor;
        factor.emplace_back(r, k);
        for (int i = 1; i <= k / 2 - 1; ++i) {
            const int a = wrap(r + i);
            const int b = wrap(r - i);
            factor.emplace_back(std::min(a, b), std::max(a, b));
        }
        std::sort(factor.begin(), factor.end());
        of.factors.push_back(std::move(factor));
    }
    // audit: every factor perfect, every pair used exactly once
    std::set<std::pair<int, int>> all;
    for (const auto& factor : of.factors) {
        std::vector<bool> hit(k + 1, false);
        for (auto [a, b] : factor) {
            if (a < 1 || b > k || a >= b || hit[a] || hit[b])
                throw ConstructionError("one-factor is not a perfect matching");
            hit[a] = hit[b] = true;
            if (!all.insert({a, b}).second)
                throw ConstructionError("edge repeated across one-factors");
        }
    }
    if (static_cast<int>(all.size()) != k * (k - 1) / 2)
        throw ConstructionError("one-factorization does not cover K_k");
    return of;
}

/// Vertical edge of the k x (k-1) lattice: joins (col, ja) and (col, jb).
struct LatticeEdge {
    int col = 0;
    int ja = 0;
    int jb = 0;
};

/// Perfect matching of the lattice {(i,j) : 1<=i<=k-1, 1<=j<=k}: in column
/// i, pair j1 with j2 exactly when {j1,j2} is an edge of factor F_i.
inline std::vector<LatticeEdge> rectangle_free_matching(int k) {
    if (k < 4) throw InvalidParams("rectangle_free_matching needs k >= 4");
    const OneFactorization of = one_factorization(k);
    std::vector<LatticeEdge> plan;
    for (int col = 1; col <= k - 1; ++col)
        for (auto [a, b] : of.factors[col - 1])
            plan.push_back({col, a, b});
    return plan;
}

/// False iff two edges in different columns span the same row pair {j1,j2}.
inline bool is_rectangle_free(const std::vector<LatticeEdge>& plan) {
    std::map<std::pair<int, int>, int> col_of;
    for (const LatticeEdge& e : plan) {
        const auto key = std::make_pair(std::min(e.ja, e.jb),
                                        std::max(e.ja, e.jb));
        auto [it, fresh] = col_of.try_emplace(key, e.col);
        if (!fresh && it->second != e.col) return false;
    }
    return true;
}

/// Planned surgery edge on graph vertex ids, tagged with the deleted object
/// (or gadget) that justifies it.
struct PlanEdge {
    int u = -1;
    int v = -1;
    std::string provenance;
};

struct MatchingPlan {
    std::vector<PlanEdge> edges;
};

/// A grid inside an incidence structure, by vertex id: rows[i] and cols[j]
/// are line vertices, cell[i][j] is their unique common point vertex.
struct GridSpec {
    std::vector<int> rows;
    std::vector<int> cols;
    std::vector<std::vector<int>> cell;
};

/// Row cycles on a square k x k grid, k >= 7: inside each row i the plan
/// edges link cell j to cell j+1 cyclically, giving one k-cycle per row.
inline MatchingPlan grid_row_cycles(const GridSpec& grid) {
    const int a = static_cast<int>(grid.rows.size());
    const int b = static_cast<int>(grid.cols.size());
    if (a != b) throw GridNotSquare();
    if (a < 7) throw KTooSmall(a);
    std::set<int> seen;
    if (static_cast<int>(grid.cell.size()) != a)
        throw InvalidParams("grid cell matrix has wrong row count");
    for (const auto& row : grid.cell) {
        if (static_cast<int>(row.size()) != b)
            throw InvalidParams("grid cell matrix has wrong column count");
        for (int p : row)
            if (!seen.insert(p).second)
                throw InvalidParams("grid cells are not distinct");
    }
    MatchingPlan plan;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < a; ++j)
            plan.edges.push_back({grid.cell[i][j], grid.cell[i][(j + 1) % a],
                                  "row-cycle " + std::to_string(i)});
    return plan;
}

/// Pair the points of each deleted line in their stored order: element 2r
/// with element 2r+1.  tags (optional) name the deleted lines for
/// provenance.
inline MatchingPlan per_line_pairing(
    const std::vector<std::vector<int>>& lines,
    const std::vector<std::string>& tags = {}) {
    MatchingPlan plan;
    for (std::size_t r = 0; r < lines.size(); ++r) {
        const auto& pts = lines[r];
        if (pts.size() % 2 != 0) throw OddLineLength();
        const std::string tag =
            r < tags.size() ? tags[r] : "deleted-line " + std::to_string(r);
        for (std::size_t i = 0; i + 1 < pts.size(); i += 2)
            plan.edges.push_back({pts[i], pts[i + 1], tag});
    }
    return plan;
}

}  // namespace girth7
