#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "girth7/matchings.hpp"

using namespace girth7;

namespace {

using PairSet = std::set<std::pair<int, int>>;

PairSet as_set(const std::vector<std::pair<int, int>>& f) {
    return PairSet(f.begin(), f.end());
}

/// Synthetic r x c grid: fake line ids for rows/cols, cells numbered from 100.
GridSpec make_grid(int r, int c) {
    GridSpec g;
    for (int i = 0; i < r; ++i) g.rows.push_back(1000 + i);
    for (int j = 0; j < c; ++j) g.cols.push_back(2000 + j);
    g.cell.assign(r, std::vector<int>(c));
    int id = 100;
    for (auto& row : g.cell)
        for (auto& x : row) x = id++;
    return g;
}

}  // namespace

TEST_CASE("one-factorization of K_4 (frozen)") {
    const OneFactorization of = one_factorization(4);
    REQUIRE(of.factors.size() == 3);
    CHECK(as_set(of.factors[0]) == PairSet{{1, 4}, {2, 3}});
    CHECK(as_set(of.factors[1]) == PairSet{{2, 4}, {1, 3}});
    CHECK(as_set(of.factors[2]) == PairSet{{3, 4}, {1, 2}});
}

TEST_CASE("one-factorization of K_2") {
    const OneFactorization of = one_factorization(2);
    REQUIRE(of.factors.size() == 1);
    CHECK(as_set(of.factors[0]) == PairSet{{1, 2}});
}

TEST_CASE("one-factorization covers every pair exactly once") {
    for (int k = 2; k <= 16; k += 2) {
        CAPTURE(k);
        const OneFactorization of = one_factorization(k);
        REQUIRE(of.factors.size() == static_cast<std::size_t>(k - 1));
        std::map<std::pair<int, int>, int> seen;
        for (const auto& factor : of.factors) {
            REQUIRE(factor.size() == static_cast<std::size_t>(k / 2));
            std::set<int> touched;
            for (auto [a, b] : factor) {
                CHECK(1 <= a);
                CHECK(a < b);
                CHECK(b <= k);
                touched.insert(a);
                touched.insert(b);
                ++seen[{a, b}];
            }
            CHECK(touched.size() == static_cast<std::size_t>(k));  // perfect
        }
        CHECK(seen.size() == static_cast<std::size_t>(k * (k - 1) / 2));
        for (const auto& [pr, c] : seen) CHECK(c == 1);
    }
}

TEST_CASE("one-factorization rejects bad k") {
    CHECK_THROWS_AS(one_factorization(3), OddK);
    CHECK_THROWS_AS(one_factorization(7), OddK);
    CHECK_THROWS_AS(one_factorization(0), InvalidParams);
    CHECK_THROWS_AS(one_factorization(1), InvalidParams);
    CHECK_THROWS_AS(one_factorization(-4), InvalidParams);
}

TEST_CASE("rectangle-free lattice matching") {
    for (int k = 4; k <= 12; k += 2) {
        CAPTURE(k);
        const auto edges = rectangle_free_matching(k);
        CHECK(edges.size() == static_cast<std::size_t>(k * (k - 1) / 2));

        // perfect on every column: each (col,row) endpoint used exactly once
        std::set<std::pair<int, int>> endpoints;
        for (const auto& e : edges) {
            CHECK(1 <= e.col);
            CHECK(e.col <= k - 1);
            CHECK(e.ja < e.jb);
            CHECK(endpoints.insert({e.col, e.ja}).second);
            CHECK(endpoints.insert({e.col, e.jb}).second);
        }
        CHECK(endpoints.size() == static_cast<std::size_t>(k * (k - 1)));

        CHECK(is_rectangle_free(edges));
        // independent quadratic check: no two columns repeat a row pair
        for (std::size_t i = 0; i < edges.size(); ++i)
            for (std::size_t j = i + 1; j < edges.size(); ++j) {
                const bool same_rows = edges[i].ja == edges[j].ja &&
                                       edges[i].jb == edges[j].jb;
                CHECK(!(same_rows && edges[i].col != edges[j].col));
            }
    }
    CHECK_THROWS_AS(rectangle_free_matching(2), InvalidParams);
    CHECK_THROWS_AS(rectangle_free_matching(5), OddK);
}

TEST_CASE("is_rectangle_free detects a rectangle") {
    std::vector<LatticeEdge> bad = {{1, 1, 2}, {2, 1, 2}};
    CHECK(!is_rectangle_free(bad));
    std::vector<LatticeEdge> good = {{1, 1, 2}, {2, 3, 4}};
    CHECK(is_rectangle_free(good));
    std::vector<LatticeEdge> same_col = {{1, 1, 2}, {1, 3, 4}};
    CHECK(is_rectangle_free(same_col));
}

TEST_CASE("row cycles on a 7x7 grid") {
    const GridSpec grid = make_grid(7, 7);
    const auto& cell = grid.cell;
    const MatchingPlan plan = grid_row_cycles(grid);
    REQUIRE(plan.edges.size() == 49);

    std::map<int, int> deg;
    std::map<int, std::vector<std::pair<int, int>>> row_edges;
    auto row_of = [](int v) { return (v - 100) / 7; };
    for (const auto& e : plan.edges) {
        CHECK(row_of(e.u) == row_of(e.v));  // never leaves its row
        ++deg[e.u];
        ++deg[e.v];
        row_edges[row_of(e.u)].push_back({e.u, e.v});
    }
    CHECK(deg.size() == 49);
    for (auto [v, d] : deg) CHECK(d == 2);
    for (int r = 0; r < 7; ++r) {
        REQUIRE(row_edges[r].size() == 7);
        // walk the cycle: must return to start after exactly 7 steps
        std::map<int, std::vector<int>> adj;
        for (auto [u, v] : row_edges[r]) {
            adj[u].push_back(v);
            adj[v].push_back(u);
        }
        int prev = -1, cur = cell[r][0], steps = 0;
        do {
            const auto& nb = adj[cur];
            const int nxt = (nb[0] == prev) ? nb[1] : nb[0];
            prev = cur;
            cur = nxt;
            ++steps;
        } while (cur != cell[r][0]);
        CHECK(steps == 7);
    }
    CHECK(plan.edges[0].provenance == "row-cycle 0");
}

TEST_CASE("row cycles reject bad grids") {
    CHECK_THROWS_AS(grid_row_cycles(make_grid(6, 6)), KTooSmall);
    CHECK_THROWS_AS(grid_row_cycles(make_grid(7, 6)), GridNotSquare);

    GridSpec dup = make_grid(7, 7);
    dup.cell[3][3] = dup.cell[0][0];
    CHECK_THROWS_AS(grid_row_cycles(dup), InvalidParams);
}

TEST_CASE("per-line pairing") {
    const MatchingPlan plan =
        per_line_pairing({{4, 9, 2, 7}, {5, 6}}, {"alpha", "beta"});
    REQUIRE(plan.edges.size() == 3);
    CHECK(plan.edges[0].u == 4);
    CHECK(plan.edges[0].v == 9);
    CHECK(plan.edges[0].provenance == "alpha");
    CHECK(plan.edges[1].u == 2);
    CHECK(plan.edges[1].v == 7);
    CHECK(plan.edges[2].u == 5);
    CHECK(plan.edges[2].v == 6);
    CHECK(plan.edges[2].provenance == "beta");

    const MatchingPlan untagged = per_line_pairing({{1, 2}, {3, 4}});
    CHECK(untagged.edges[1].provenance == "deleted-line 1");

    CHECK_THROWS_AS(per_line_pairing({{1, 2, 3}}), OddLineLength);
}
