#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "girth7/constructions.hpp"
#include "girth7/errors.hpp"
#include "girth7/incidence.hpp"

namespace girth7 {

/// Moore lower bound on the order of a k-regular graph of girth g.  The
/// branching count is around a vertex for odd g and around an edge for even g.
inline long long moore_bound(int k, int g) {
    if (k < 3 || g < 3) throw InvalidParams("moore_bound needs k,g >= 3");
    long long total = 0, pw = 1;
    if (g % 2 == 1) {
        total = 1;
        for (int i = 0; i <= (g - 3) / 2; ++i) {
            total += k * pw;
            pw *= k - 1;
        }
    } else {
        for (int i = 0; i <= (g - 2) / 2; ++i) {
            total += 2 * pw;
            pw *= k - 1;
        }
    }
    return total;
}

/// Outcome of a girth computation.  value is empty when the graph is acyclic
/// (truncated == false) or when no cycle of length <= cutoff exists
/// (truncated == true, i.e. the girth is at least cutoff+1).
struct GirthResult {
    std::optional<int> value;
    bool truncated = false;
    std::vector<int> witness;  // a shortest cycle, as a vertex sequence
};

namespace detail {

struct GirthScan {
    int best = std::numeric_limits<int>::max();
    int best_root = -1;
    std::vector<int> cycle;
};

/// BFS from one root.  Every improvement reconstructs the genuine simple
/// cycle behind the candidate edge (tree paths to the lowest common ancestor
/// plus the edge itself), so `out.best` only ever holds real cycle lengths.
/// A root lying on a shortest cycle is never pruned before reporting it, so
/// the minimum over all roots is the exact girth.
inline void girth_scan_root(const std::vector<std::vector<int>>& adj, int root,
                            std::vector<int>& dist, std::vector<int>& parent,
                            std::vector<int>& queue, GirthScan& out) {
    std::fill(dist.begin(), dist.end(), -1);
    queue.clear();
    queue.push_back(root);
    dist[root] = 0;
    parent[root] = -1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const int u = queue[head];
        if (2 * dist[u] >= out.best) break;  // no shorter cycle reachable
        for (const int v : adj[u]) {
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                parent[v] = u;
                queue.push_back(v);
                continue;
            }
            if (v == parent[u]) continue;
            const int candidate = dist[u] + dist[v] + 1;
            if (candidate >= out.best) continue;
            // walk both tree paths to their meeting point
            int a = u, b = v;
            while (dist[a] > dist[b]) a = parent[a];
            while (dist[b] > dist[a]) b = parent[b];
            while (a != b) {
                a = parent[a];
                b = parent[b];
            }
            const int len = candidate - 2 * dist[a];
            if (len >= out.best || len < 3) continue;
            std::vector<int> cyc;
            for (int x = u; x != a; x = parent[x]) cyc.push_back(x);
            cyc.push_back(a);
            std::vector<int> back;
            for (int x = v; x != a; x = parent[x]) back.push_back(x);
            std::reverse(back.begin(), back.end());
            cyc.insert(cyc.end(), back.begin(), back.end());
            out.best = len;
            out.best_root = root;
            out.cycle = std::move(cyc);
        }
    }
}

inline int resolve_threads(int threads, int n) {
    if (threads <= 0) {
        if (const char* env = std::getenv("GIRTH7_THREADS")) {
            const int parsed = std::atoi(env);
            if (parsed > 0) threads = parsed;
        }
    }
    if (threads <= 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        threads = hw == 0 ? 1 : static_cast<int>(std::min(hw, 8u));
    }
    if (n < 256) threads = 1;  // not worth spawning for small graphs
    return std::max(1, std::min(threads, std::max(1, n)));
}

}  // namespace detail

/// Exact girth by BFS from every vertex, with pruning at the current best.
/// cutoff > 0 searches only for cycles of length <= cutoff and reports a
/// truncated result when none exists.  Roots are split into contiguous
/// chunks across threads; the reduction picks the lexicographically least
/// (length, root) so the result is deterministic for a fixed thread count.
inline GirthResult girth(const std::vector<std::vector<int>>& adj,
                         int cutoff = 0, int threads = 0) {
    const int n = static_cast<int>(adj.size());
    const int sentinel =
        cutoff > 0 ? cutoff + 1 : std::numeric_limits<int>::max();

    const int nthreads = detail::resolve_threads(threads, n);
    std::vector<detail::GirthScan> results(nthreads);

    auto run_chunk = [&](int lo, int hi, detail::GirthScan& out) {
        out.best = sentinel;
        std::vector<int> dist(n), parent(n), queue;
        queue.reserve(n);
        for (int r = lo; r < hi; ++r)
            detail::girth_scan_root(adj, r, dist, parent, queue, out);
    };

    if (nthreads == 1) {
        run_chunk(0, n, results[0]);
    } else {
        std::vector<std::thread> pool;
        const int chunk = (n + nthreads - 1) / nthreads;
        for (int t = 0; t < nthreads; ++t) {
            const int lo = t * chunk, hi = std::min(n, lo + chunk);
            pool.emplace_back(run_chunk, lo, hi, std::ref(results[t]));
        }
        for (auto& th : pool) th.join();
    }

    const detail::GirthScan* winner = nullptr;
    for (const auto& r : results) {
        if (r.best_root < 0) continue;
        if (!winner || r.best < winner->best ||
            (r.best == winner->best && r.best_root < winner->best_root))
            winner = &r;
    }

    GirthResult res;
    if (winner) {
        res.value = winner->best;
        res.witness = winner->cycle;
    } else {
        res.truncated = cutoff > 0;  // otherwise genuinely acyclic
    }
    return res;
}

inline GirthResult girth(const LeviGraph& g, int cutoff = 0, int threads = 0) {
    return girth(g.adj, cutoff, threads);
}

/// True iff `cycle` is a simple closed walk of the given length in adj.
inline bool validate_cycle(const std::vector<std::vector<int>>& adj,
                           const std::vector<int>& cycle, int expected_len) {
    if (static_cast<int>(cycle.size()) != expected_len || expected_len < 3)
        return false;
    std::vector<int> sorted = cycle;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        return false;
    const int n = static_cast<int>(adj.size());
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        const int u = cycle[i], v = cycle[(i + 1) % cycle.size()];
        if (u < 0 || u >= n || v < 0 || v >= n) return false;
        if (!std::binary_search(adj[u].begin(), adj[u].end(), v)) return false;
    }
    return true;
}

struct RegularityReport {
    bool regular = false;
    int k = 0;
    std::vector<int> deviants;       // vertices whose degree differs from k
    std::map<int, int> histogram;    // degree -> count
};

inline RegularityReport is_regular(const LeviGraph& g, int k) {
    RegularityReport rep;
    rep.k = k;
    for (int v = 0; v < g.n(); ++v) {
        const int d = static_cast<int>(g.adj[v].size());
        ++rep.histogram[d];
        if (d != k) rep.deviants.push_back(v);
    }
    rep.regular = rep.deviants.empty();
    return rep;
}

/// Self-contained statement of what was verified about one built graph.
struct Certificate {
    std::string construction;
    std::uint32_t q = 0;
    int k = 0;
    int n = 0;
    int girth_value = 0;
    std::vector<int> witness;
    long long moore7 = 0;
    long long moore8 = 0;
    std::map<std::string, long long> references;
    double elapsed_ms = 0.0;
    std::string method = "exhaustive";
};

inline void to_json(nlohmann::json& j, const Certificate& c) {
    j = nlohmann::json{{"construction", c.construction},
                       {"q", c.q},
                       {"k", c.k},
                       {"n", c.n},
                       {"girth", c.girth_value},
                       {"witness", c.witness},
                       {"moore7", c.moore7},
                       {"moore8", c.moore8},
                       {"references", c.references},
                       {"elapsed_ms", c.elapsed_ms}};
}

inline void from_json(const nlohmann::json& j, Certificate& c) {
    j.at("construction").get_to(c.construction);
    j.at("q").get_to(c.q);
    j.at("k").get_to(c.k);
    j.at("n").get_to(c.n);
    j.at("girth").get_to(c.girth_value);
    j.at("witness").get_to(c.witness);
    j.at("moore7").get_to(c.moore7);
    j.at("moore8").get_to(c.moore8);
    j.at("references").get_to(c.references);
    j.at("elapsed_ms").get_to(c.elapsed_ms);
}

/// Exhaustively check every claim a construction makes and bundle the
/// evidence.  Throws CertificationFailed naming the first claim that does
/// not hold.
inline Certificate certify(const BuiltGraph& built, int threads = 0) {
    const auto t0 = std::chrono::steady_clock::now();
    Certificate cert;
    cert.construction = built.construction;
    cert.q = built.q;
    cert.k = built.k;
    cert.n = built.graph.n();

    const RegularityReport reg = is_regular(built.graph, built.k);
    if (!reg.regular)
        throw CertificationFailed("graph is " + std::to_string(built.k) +
                                  "-regular");
    if (built.graph.n() != built.expected_order)
        throw CertificationFailed("order equals the closed formula " +
                                  std::to_string(built.expected_order));

    const GirthResult gr = girth(built.graph.adj, 0, threads);
    if (!gr.value.has_value() || *gr.value != 7)
        throw CertificationFailed("girth equals 7");
    cert.girth_value = 7;
    cert.witness = gr.witness;
    if (!validate_cycle(built.graph.adj, cert.witness, 7))
        throw CertificationFailed("girth witness is a 7-cycle of the graph");
    if (!built.witness_ids.empty() &&
        !validate_cycle(built.graph.adj, built.witness_ids, 7))
        throw CertificationFailed(
            "constructed witness is a 7-cycle of the graph");

    cert.moore7 = moore_bound(built.k, 7);
    cert.moore8 = moore_bound(built.k, 8);
    if (cert.moore7 > cert.n)
        throw CertificationFailed("order is at least the Moore bound M(k,7)");
    if (built.uses_moore8 && cert.n >= cert.moore8)
        throw CertificationFailed("order is below the Moore bound M(k,8)");

    cert.references = built.references;
    const auto it = cert.references.find("formula");
    if (it == cert.references.end() || it->second != cert.n)
        throw CertificationFailed("reference formula matches the built order");

    cert.elapsed_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    return cert;
}

/// Human-readable and machine-readable comparison of a certified order
/// against the Moore bound and the published reference orders.
struct CageGapReport {
    std::string text;
    nlohmann::json data;
};

inline CageGapReport cage_gap_report(const Certificate& cert) {
    CageGapReport rep;
    const double ratio =
        static_cast<double>(cert.n) / static_cast<double>(cert.moore7);
    std::ostringstream os;
    os << cert.construction << ": k=" << cert.k << ", q=" << cert.q
       << ", n=" << cert.n << ", girth " << cert.girth_value << "\n";
    os << "  Moore bound M(k,7) = " << cert.moore7 << "  (n/M = " << ratio
       << ")\n";
    os << "  Moore bound M(k,8) = " << cert.moore8 << "\n";
    rep.data = nlohmann::json{{"construction", cert.construction},
                              {"k", cert.k},
                              {"q", cert.q},
                              {"n", cert.n},
                              {"moore7", cert.moore7},
                              {"moore8", cert.moore8},
                              {"ratio", ratio},
                              {"references", nlohmann::json::object()}};
    for (const auto& [name, order] : cert.references) {
        if (name == "formula") continue;
        const long long delta = cert.n - order;
        os << "  reference '" << name << "' order = " << order << "  (ours "
           << (delta < 0 ? "-" : "+") << std::llabs(delta) << ")\n";
        rep.data["references"][name] =
            nlohmann::json{{"order", order}, {"delta", delta}};
    }
    rep.text = os.str();
    return rep;
}

}  // namespace girth7
