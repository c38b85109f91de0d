#pragma once

// Slow, independent reference implementations used only by the test suite.
// Nothing here shares code with the library under test.

#include <algorithm>
#include <deque>
#include <limits>
#include <optional>
#include <random>
#include <set>
#include <vector>

namespace oracles {

/// Girth as the minimum over all edges (u,v) of: shortest u-v path avoiding
/// that one edge, plus one.  Every cycle uses some edge, so taking the
/// minimum over edges is exact.  O(m * (n + m)).
inline std::optional<int> girth(const std::vector<std::vector<int>>& adj) {
    const int n = static_cast<int>(adj.size());
    int best = std::numeric_limits<int>::max();
    for (int u = 0; u < n; ++u) {
        for (int v : adj[u]) {
            if (v < u) continue;  // each edge once
            // BFS u -> v skipping the direct edge (one copy of it)
            std::vector<int> dist(n, -1);
            std::deque<int> q{u};
            dist[u] = 0;
            while (!q.empty()) {
                const int x = q.front();
                q.pop_front();
                for (int y : adj[x]) {
                    if (x == u && y == v) continue;  // forbidden edge
                    if (x == v && y == u) continue;
                    if (dist[y] < 0) {
                        dist[y] = dist[x] + 1;
                        q.push_back(y);
                    }
                }
            }
            if (dist[v] >= 0) best = std::min(best, dist[v] + 1);
        }
    }
    if (best == std::numeric_limits<int>::max()) return std::nullopt;
    return best;
}

/// Random simple graph on n vertices with (up to) m edges, sorted adjacency.
inline std::vector<std::vector<int>> random_graph(int n, int m,
                                                  std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::set<std::pair<int, int>> edges;
    for (int tries = 0; tries < 20 * m && static_cast<int>(edges.size()) < m;
         ++tries) {
        int a = pick(rng), b = pick(rng);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        edges.insert({a, b});
    }
    std::vector<std::vector<int>> adj(n);
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& nb : adj) std::sort(nb.begin(), nb.end());
    return adj;
}

/// The Petersen graph: outer 5-cycle, inner pentagram, spokes.
inline std::vector<std::vector<int>> petersen() {
    std::vector<std::vector<int>> adj(10);
    auto add = [&](int a, int b) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    };
    for (int i = 0; i < 5; ++i) {
        add(i, (i + 1) % 5);
        add(5 + i, 5 + (i + 2) % 5);
        add(i, 5 + i);
    }
    for (auto& nb : adj) std::sort(nb.begin(), nb.end());
    return adj;
}

/// Cycle graph C_n.
inline std::vector<std::vector<int>> cycle_graph(int n) {
    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i) {
        adj[i].push_back((i + 1) % n);
        adj[i].push_back((i + n - 1) % n);
        std::sort(adj[i].begin(), adj[i].end());
        adj[i].erase(std::unique(adj[i].begin(), adj[i].end()), adj[i].end());
    }
    return adj;
}

}  // namespace oracles
