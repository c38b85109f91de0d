#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "girth7/errors.hpp"
#include "girth7/incidence.hpp"

namespace girth7 {

enum class GraphFormat { Graph6, EdgeList, Json };

inline GraphFormat parse_format(const std::string& name) {
    if (name == "graph6") return GraphFormat::Graph6;
    if (name == "edgelist") return GraphFormat::EdgeList;
    if (name == "json") return GraphFormat::Json;
    throw InvalidParams("unknown format '" + name +
                        "' (expected graph6, edgelist or json)");
}

inline std::string format_name(GraphFormat f) {
    switch (f) {
        case GraphFormat::Graph6: return "graph6";
        case GraphFormat::EdgeList: return "edgelist";
        case GraphFormat::Json: return "json";
    }
    throw InvalidParams("unknown format");
}

namespace detail {

inline bool has_edge(const LeviGraph& g, int u, int v) {
    return std::binary_search(g.adj[u].begin(), g.adj[u].end(), v);
}

inline void finish_import(LeviGraph& g) {
    std::size_t m = 0;
    for (auto& nbrs : g.adj) {
        std::sort(nbrs.begin(), nbrs.end());
        m += nbrs.size();
    }
    g.m = m / 2;
}

// --- graph6 ---------------------------------------------------------------

constexpr int kG6MaxOrder = 258047;  // we stop at the 3-byte size form

inline std::string graph6_encode(const LeviGraph& g) {
    const int n = g.n();
    if (n == 0) throw InvalidParams("cannot export a graph of order zero");
    if (n > kG6MaxOrder)
        throw InvalidParams("graph too large for graph6 export");
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(n + 63));
    } else {
        out.push_back('~');
        out.push_back(static_cast<char>(((n >> 12) & 63) + 63));
        out.push_back(static_cast<char>(((n >> 6) & 63) + 63));
        out.push_back(static_cast<char>((n & 63) + 63));
    }
    // upper triangle, column by column, packed MSB-first in 6-bit chunks
    std::uint32_t chunk = 0;
    int used = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) {
            chunk = (chunk << 1) | (has_edge(g, i, j) ? 1u : 0u);
            if (++used == 6) {
                out.push_back(static_cast<char>(chunk + 63));
                chunk = 0;
                used = 0;
            }
        }
    if (used > 0)
        out.push_back(static_cast<char>((chunk << (6 - used)) + 63));
    return out;
}

inline LeviGraph graph6_decode(const std::string& data) {
    const std::string header = ">>graph6<<";
    std::size_t off = 0;
    if (data.compare(0, header.size(), header) == 0) off = header.size();

    auto need_byte = [&](std::size_t pos) {
        if (pos >= data.size())
            throw MalformedInput("truncated graph6 input", pos);
        const unsigned char c = static_cast<unsigned char>(data[pos]);
        if (c < 63 || c > 126)
            throw MalformedInput("invalid graph6 byte", pos);
        return static_cast<std::uint32_t>(c - 63);
    };

    if (off >= data.size())
        throw MalformedInput("truncated graph6 input", off);
    long long n = 0;
    if (data[off] == '~') {
        if (off + 1 < data.size() && data[off + 1] == '~')
            throw MalformedInput("graph6 order beyond supported range",
                                 off + 1);
        n = (need_byte(off + 1) << 12) | (need_byte(off + 2) << 6) |
            need_byte(off + 3);
        off += 4;
    } else {
        n = need_byte(off);
        off += 1;
    }
    if (n == 0) throw MalformedInput("graph of order zero", off - 1);

    LeviGraph g;
    g.adj.resize(static_cast<std::size_t>(n));
    g.type.assign(static_cast<std::size_t>(n), VertexType::Point);
    for (long long v = 0; v < n; ++v) g.label.push_back(std::to_string(v));

    std::uint32_t chunk = 0;
    int avail = 0;
    std::size_t chunk_pos = off;
    for (long long j = 1; j < n; ++j)
        for (long long i = 0; i < j; ++i) {
            if (avail == 0) {
                chunk_pos = off;
                chunk = need_byte(off);
                ++off;
                avail = 6;
            }
            const bool bit = (chunk >> (avail - 1)) & 1u;
            --avail;
            if (bit) {
                g.adj[static_cast<std::size_t>(i)].push_back(
                    static_cast<int>(j));
                g.adj[static_cast<std::size_t>(j)].push_back(
                    static_cast<int>(i));
            }
        }
    if (avail > 0 && (chunk & ((1u << avail) - 1u)) != 0)
        throw MalformedInput("nonzero graph6 padding bits", chunk_pos);
    while (off < data.size() && (data[off] == '\n' || data[off] == '\r'))
        ++off;
    if (off != data.size())
        throw MalformedInput("trailing bytes after graph6 data", off);
    finish_import(g);
    return g;
}

// --- edge list ------------------------------------------------------------

inline std::string edgelist_encode(const LeviGraph& g) {
    if (g.n() == 0)
        throw InvalidParams("cannot export a graph of order zero");
    std::string out;
    for (int u = 0; u < g.n(); ++u)
        for (int v : g.adj[u])
            if (u < v)
                out += std::to_string(u) + " " + std::to_string(v) + "\n";
    return out;
}

inline LeviGraph edgelist_decode(const std::string& data) {
    std::size_t pos = 0;
    long long max_v = -1;
    std::vector<std::pair<int, int>> edges;

    auto read_number = [&]() {
        if (pos >= data.size() || !std::isdigit(
                static_cast<unsigned char>(data[pos])))
            throw MalformedInput("expected a vertex number", pos);
        long long v = 0;
        while (pos < data.size() &&
               std::isdigit(static_cast<unsigned char>(data[pos]))) {
            v = v * 10 + (data[pos] - '0');
            if (v > kG6MaxOrder)
                throw MalformedInput("vertex number out of range", pos);
            ++pos;
        }
        return static_cast<int>(v);
    };

    while (pos < data.size()) {
        if (data[pos] == '\n' || data[pos] == '\r') {
            ++pos;
            continue;
        }
        const int u = read_number();
        if (pos >= data.size() || data[pos] != ' ')
            throw MalformedInput("expected ' ' between vertices", pos);
        ++pos;
        const int v = read_number();
        if (pos < data.size() && data[pos] != '\n' && data[pos] != '\r')
            throw MalformedInput("expected end of line after edge", pos);
        if (u == v) throw MalformedInput("self-loop is not allowed", pos);
        edges.emplace_back(std::min(u, v), std::max(u, v));
        max_v = std::max<long long>(max_v, std::max(u, v));
    }
    if (edges.empty())
        throw MalformedInput("no edges in edge-list input", pos);

    LeviGraph g;
    const std::size_t n = static_cast<std::size_t>(max_v + 1);
    g.adj.resize(n);
    g.type.assign(n, VertexType::Point);
    for (std::size_t v = 0; v < n; ++v) g.label.push_back(std::to_string(v));
    std::sort(edges.begin(), edges.end());
    for (std::size_t i = 1; i < edges.size(); ++i)
        if (edges[i] == edges[i - 1])
            throw MalformedInput("duplicate edge in edge-list input", pos);
    for (const auto& [u, v] : edges) {
        g.adj[static_cast<std::size_t>(u)].push_back(v);
        g.adj[static_cast<std::size_t>(v)].push_back(u);
    }
    finish_import(g);
    return g;
}

// --- JSON -----------------------------------------------------------------

inline std::string json_encode(const LeviGraph& g) {
    if (g.n() == 0)
        throw InvalidParams("cannot export a graph of order zero");
    nlohmann::json j;
    j["n"] = g.n();
    auto& types = j["vertex_types"] = nlohmann::json::array();
    for (VertexType t : g.type)
        types.push_back(t == VertexType::Point ? "point" : "line");
    j["labels"] = g.label;
    j["adjacency"] = g.adj;
    return j.dump(2) + "\n";
}

inline LeviGraph json_decode(const std::string& data) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(data);
    } catch (const nlohmann::json::parse_error& ex) {
        throw MalformedInput(std::string("invalid JSON: ") + ex.what(),
                             ex.byte);
    }
    try {
        const long long n = j.at("n").get<long long>();
        if (n <= 0) throw MalformedInput("graph of order zero", 0);
        LeviGraph g;
        const auto& types = j.at("vertex_types");
        const auto& adjacency = j.at("adjacency");
        if (static_cast<long long>(types.size()) != n ||
            static_cast<long long>(adjacency.size()) != n)
            throw MalformedInput("vertex_types/adjacency length mismatch",
                                 0);
        for (const auto& t : types) {
            const std::string s = t.get<std::string>();
            if (s == "point")
                g.type.push_back(VertexType::Point);
            else if (s == "line")
                g.type.push_back(VertexType::Line);
            else
                throw MalformedInput("unknown vertex type '" + s + "'", 0);
        }
        if (j.contains("labels")) {
            j.at("labels").get_to(g.label);
            if (static_cast<long long>(g.label.size()) != n)
                throw MalformedInput("labels length mismatch", 0);
        } else {
            for (long long v = 0; v < n; ++v)
                g.label.push_back(std::to_string(v));
        }
        g.adj.resize(static_cast<std::size_t>(n));
        for (long long u = 0; u < n; ++u) {
            for (const auto& entry : adjacency[static_cast<std::size_t>(u)]) {
                const long long v = entry.get<long long>();
                if (v < 0 || v >= n)
                    throw MalformedInput("adjacency entry out of range", 0);
                if (v == u) throw MalformedInput("self-loop in adjacency", 0);
                g.adj[static_cast<std::size_t>(u)].push_back(
                    static_cast<int>(v));
            }
        }
        for (long long u = 0; u < n; ++u) {
            auto nbrs = g.adj[static_cast<std::size_t>(u)];
            std::sort(nbrs.begin(), nbrs.end());
            if (std::adjacent_find(nbrs.begin(), nbrs.end()) != nbrs.end())
                throw MalformedInput("duplicate adjacency entry", 0);
            for (int v : nbrs) {
                const auto& back = g.adj[static_cast<std::size_t>(v)];
                if (std::find(back.begin(), back.end(),
                              static_cast<int>(u)) == back.end())
                    throw MalformedInput("adjacency is not symmetric", 0);
            }
        }
        finish_import(g);
        return g;
    } catch (const nlohmann::json::exception& ex) {
        throw MalformedInput(std::string("invalid graph JSON: ") + ex.what(),
                             0);
    }
}

}  // namespace detail

/// Serialize a graph.  graph6 and edgelist keep only the adjacency (all
/// vertices come back typed as points, labelled by index); JSON keeps the
/// vertex types and labels too.
inline std::string export_graph(const LeviGraph& g, GraphFormat fmt) {
    switch (fmt) {
        case GraphFormat::Graph6: return detail::graph6_encode(g);
        case GraphFormat::EdgeList: return detail::edgelist_encode(g);
        case GraphFormat::Json: return detail::json_encode(g);
    }
    throw InvalidParams("unknown format");
}

inline LeviGraph import_graph(const std::string& data, GraphFormat fmt) {
    switch (fmt) {
        case GraphFormat::Graph6: return detail::graph6_decode(data);
        case GraphFormat::EdgeList: return detail::edgelist_decode(data);
        case GraphFormat::Json: return detail::json_decode(data);
    }
    throw InvalidParams("unknown format");
}

}  // namespace girth7
