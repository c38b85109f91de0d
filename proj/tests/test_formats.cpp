#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "girth7/constructions.hpp"
#include "girth7/formats.hpp"
#include "oracles.hpp"

using namespace girth7;

namespace {

LeviGraph from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    LeviGraph g;
    g.adj.resize(n);
    g.type.assign(n, VertexType::Point);
    for (int v = 0; v < n; ++v) g.label.push_back(std::to_string(v));
    for (auto [u, v] : edges) {
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
        ++g.m;
    }
    for (auto& nbrs : g.adj) std::sort(nbrs.begin(), nbrs.end());
    return g;
}

LeviGraph from_adj(const std::vector<std::vector<int>>& adj) {
    LeviGraph g;
    g.adj = adj;
    g.type.assign(adj.size(), VertexType::Point);
    for (std::size_t v = 0; v < adj.size(); ++v)
        g.label.push_back(std::to_string(v));
    for (auto& nbrs : g.adj) {
        std::sort(nbrs.begin(), nbrs.end());
        g.m += nbrs.size();
    }
    g.m /= 2;
    return g;
}

/// Straight-line reference encoder: build the whole bit string, then pack.
std::string naive_graph6(int n,
                         const std::set<std::pair<int, int>>& edges) {
    std::string bits;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i)
            bits.push_back(edges.count({i, j}) ? '1' : '0');
    while (bits.size() % 6 != 0) bits.push_back('0');
    std::string out(1, static_cast<char>(n + 63));
    for (std::size_t c = 0; c < bits.size(); c += 6) {
        int v = 0;
        for (int b = 0; b < 6; ++b) v = v * 2 + (bits[c + b] - '0');
        out.push_back(static_cast<char>(v + 63));
    }
    return out;
}

}  // namespace

TEST_CASE("graph6: frozen tiny encodings") {
    const LeviGraph triangle = from_edges(3, {{0, 1}, {0, 2}, {1, 2}});
    CHECK(export_graph(triangle, GraphFormat::Graph6) == "Bw");

    const LeviGraph path4 = from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
    CHECK(export_graph(path4, GraphFormat::Graph6) == "Ch");

    const LeviGraph k4 =
        from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    CHECK(export_graph(k4, GraphFormat::Graph6) == "C~");

    const LeviGraph back = import_graph("Bw", GraphFormat::Graph6);
    CHECK(back.adj == triangle.adj);
    CHECK(back.m == 3);
}

TEST_CASE("graph6 agrees with a reference encoder on random graphs") {
    for (int seed = 1; seed <= 30; ++seed) {
        const int n = 2 + seed;
        const int m = std::min(n * (n - 1) / 2, 3 * n / 2);
        const auto adj = oracles::random_graph(n, m, seed);
        std::set<std::pair<int, int>> edges;
        for (int u = 0; u < n; ++u)
            for (int v : adj[u])
                if (u < v) edges.insert({u, v});
        CHECK(export_graph(from_adj(adj), GraphFormat::Graph6) ==
              naive_graph6(n, edges));
    }
}

TEST_CASE("graph6 round-trips, both size forms") {
    for (int n : {1, 2, 13, 61, 62, 63, 64, 200}) {
        const int m = n < 2 ? 0 : std::min(n * (n - 1) / 2, 2 * n);
        const auto adj = oracles::random_graph(n, m, 77 + n);
        const LeviGraph g = from_adj(adj);
        const std::string bytes = export_graph(g, GraphFormat::Graph6);
        const std::size_t body = (static_cast<std::size_t>(n) * (n - 1) / 2 + 5) / 6;
        CHECK(bytes.size() == (n <= 62 ? 1 : 4) + body);
        const LeviGraph back = import_graph(bytes, GraphFormat::Graph6);
        CHECK(back.adj == g.adj);
    }
}

TEST_CASE("graph6 header and trailing newline are tolerated") {
    const LeviGraph triangle = from_edges(3, {{0, 1}, {0, 2}, {1, 2}});
    CHECK(import_graph(">>graph6<<Bw", GraphFormat::Graph6).adj ==
          triangle.adj);
    CHECK(import_graph("Bw\n", GraphFormat::Graph6).adj == triangle.adj);
}

TEST_CASE("graph6 malformed inputs carry byte offsets") {
    auto offset_of = [](const std::string& data) -> std::size_t {
        try {
            import_graph(data, GraphFormat::Graph6);
        } catch (const MalformedInput& ex) {
            return ex.offset;
        }
        FAIL("expected MalformedInput");
        return static_cast<std::size_t>(-1);
    };
    CHECK(offset_of("") == 0);            // empty input
    CHECK(offset_of("?") == 0);           // order zero
    CHECK(offset_of("B") == 1);           // missing data byte
    CHECK(offset_of("B!") == 1);          // byte below the printable range
    CHECK(offset_of("Bwx") == 2);         // trailing junk
    CHECK(offset_of("Bp") == 1);          // nonzero padding bits
    CHECK(offset_of("~~????") == 1);      // 36-bit order form unsupported
    CHECK(offset_of(">>graph6<<") == 10); // header without a graph
}

TEST_CASE("edgelist: format, ordering, round-trip") {
    const LeviGraph g = from_edges(4, {{2, 3}, {0, 3}, {0, 1}});
    CHECK(export_graph(g, GraphFormat::EdgeList) == "0 1\n0 3\n2 3\n");
    const LeviGraph back =
        import_graph("0 1\n0 3\n2 3\n", GraphFormat::EdgeList);
    CHECK(back.adj == g.adj);

    // vertex order inside a line does not matter on import
    CHECK(import_graph("1 0\n3 0\n3 2\n", GraphFormat::EdgeList).adj ==
          g.adj);
}

TEST_CASE("edgelist malformed inputs carry byte offsets") {
    auto offset_of = [](const std::string& data) -> std::size_t {
        try {
            import_graph(data, GraphFormat::EdgeList);
        } catch (const MalformedInput& ex) {
            return ex.offset;
        }
        FAIL("expected MalformedInput");
        return static_cast<std::size_t>(-1);
    };
    CHECK(offset_of("a b\n") == 0);      // not a number
    CHECK(offset_of("0 1\n2\n") == 5);   // missing partner
    CHECK(offset_of("0-1\n") == 1);      // wrong separator
    CHECK(offset_of("0 1 2\n") == 3);    // extra field
    CHECK_THROWS_AS(import_graph("0 0\n", GraphFormat::EdgeList),
                    MalformedInput);  // self-loop
    CHECK_THROWS_AS(import_graph("0 1\n1 0\n", GraphFormat::EdgeList),
                    MalformedInput);  // duplicate edge
    CHECK_THROWS_AS(import_graph("", GraphFormat::EdgeList),
                    MalformedInput);  // empty
}

TEST_CASE("JSON keeps vertex types and labels exactly") {
    const IncidenceStructure w2 = build_W(2);
    const LeviGraph g = levi_graph(w2);
    const std::string bytes = export_graph(g, GraphFormat::Json);
    const LeviGraph back = import_graph(bytes, GraphFormat::Json);
    CHECK(back.adj == g.adj);
    CHECK(back.type == g.type);
    CHECK(back.label == g.label);
    CHECK(back.m == g.m);
}

TEST_CASE("JSON malformed inputs are rejected") {
    CHECK_THROWS_AS(import_graph("{ not json", GraphFormat::Json),
                    MalformedInput);
    CHECK_THROWS_AS(import_graph("{\"n\": 2}", GraphFormat::Json),
                    MalformedInput);  // missing keys
    CHECK_THROWS_AS(
        import_graph("{\"n\": 0, \"vertex_types\": [], \"adjacency\": []}",
                     GraphFormat::Json),
        MalformedInput);  // order zero
    CHECK_THROWS_AS(
        import_graph("{\"n\": 2, \"vertex_types\": [\"point\", \"point\"], "
                     "\"adjacency\": [[1], []]}",
                     GraphFormat::Json),
        MalformedInput);  // asymmetric
    CHECK_THROWS_AS(
        import_graph("{\"n\": 2, \"vertex_types\": [\"point\", \"tree\"], "
                     "\"adjacency\": [[1], [0]]}",
                     GraphFormat::Json),
        MalformedInput);  // unknown type
    CHECK_THROWS_AS(
        import_graph("{\"n\": 2, \"vertex_types\": [\"point\", \"point\"], "
                     "\"adjacency\": [[1], [0, 5]]}",
                     GraphFormat::Json),
        MalformedInput);  // out of range
}

TEST_CASE("types survive only in JSON") {
    const LeviGraph g = levi_graph(build_W(2));
    for (const GraphFormat fmt : {GraphFormat::Graph6, GraphFormat::EdgeList}) {
        const LeviGraph back = import_graph(export_graph(g, fmt), fmt);
        CHECK(back.adj == g.adj);
        for (VertexType t : back.type) CHECK(t == VertexType::Point);
        CHECK(back.label[5] == "5");
    }
}

TEST_CASE("all three formats round-trip a constructed graph") {
    const BuiltGraph b = construct_thm_rectfree(3);
    for (const GraphFormat fmt :
         {GraphFormat::Graph6, GraphFormat::EdgeList, GraphFormat::Json}) {
        INFO(format_name(fmt));
        const LeviGraph back =
            import_graph(export_graph(b.graph, fmt), fmt);
        CHECK(back.adj == b.graph.adj);
    }
}

TEST_CASE("format names parse both ways") {
    CHECK(parse_format("graph6") == GraphFormat::Graph6);
    CHECK(parse_format("edgelist") == GraphFormat::EdgeList);
    CHECK(parse_format("json") == GraphFormat::Json);
    CHECK(format_name(GraphFormat::Graph6) == "graph6");
    CHECK_THROWS_AS(parse_format("sparse6"), InvalidParams);

    const LeviGraph empty;
    CHECK_THROWS_AS(export_graph(empty, GraphFormat::Graph6), InvalidParams);
}
