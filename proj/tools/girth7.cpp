#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "girth7/acceptance.hpp"
#include "girth7/constructions.hpp"
#include "girth7/formats.hpp"
#include "girth7/verify.hpp"

using namespace girth7;

namespace {

constexpr int kOk = 0;
constexpr int kCertificationFailure = 1;
constexpr int kUsage = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidParams("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidParams("cannot open output file: " + path);
    out << data;
    if (!out) throw InvalidParams("failed writing output file: " + path);
}

ConstructionParams make_params(const std::vector<std::string>& choices,
                               std::optional<std::uint32_t> q,
                               std::uint64_t seed) {
    ConstructionParams p;
    p.q = q;
    p.seed = seed;
    for (const std::string& c : choices) {
        const auto eq = c.find('=');
        if (eq == std::string::npos || eq == 0)
            throw InvalidParams("bad --choose value, expected ROLE=LABEL: " +
                                c);
        p.named[c.substr(0, eq)] = c.substr(eq + 1);
    }
    return p;
}

BuiltGraph build_by_tag(const std::string& tag,
                        std::optional<std::uint32_t> q, std::optional<int> k,
                        const ConstructionParams& params) {
    if (tag == "thm-even-k") {
        if (!k) throw InvalidParams("--k is required for thm-even-k");
        return construct_thm_even_k(*k, params);
    }
    if (!q) throw InvalidParams("--q is required for " + tag);
    if (tag == "thm-main-i") return construct_thm_main_i(*q, params);
    if (tag == "thm-main-ii") return construct_thm_main_ii(*q, params);
    if (tag == "thm-rectfree") return construct_thm_rectfree(*q, params);
    if (tag == "thm-wq-even") return construct_thm_wq_even(*q, params);
    throw InvalidParams(
        "unknown construction '" + tag +
        "' (expected thm-main-i, thm-main-ii, thm-rectfree, thm-even-k or "
        "thm-wq-even)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"girth-7 regular graphs by surgery on quadrangle "
                 "incidence graphs"};
    app.require_subcommand(1);

    std::string construction, out_path, in_path;
    std::string out_format = "graph6", in_format = "graph6";
    std::optional<std::uint32_t> q;
    std::optional<int> k;
    bool do_certify = false, as_json = false;
    int threads = 0;
    std::uint64_t seed = 0;
    std::optional<int> expect_degree, expect_girth;
    std::vector<std::string> choices;

    CLI::App* build =
        app.add_subcommand("build", "construct a graph and write it out");
    build->add_option("--construction", construction, "construction tag")
        ->required();
    build->add_option("--q", q, "prime power parameter");
    build->add_option("--k", k, "degree parameter (thm-even-k)");
    build->add_option("--out", out_path, "output file (stdout if omitted)");
    build->add_option("--format", out_format, "graph6|edgelist|json")
        ->capture_default_str();
    build->add_flag("--certify", do_certify,
                    "verify the result and write a certificate");
    build->add_option("--threads", threads,
                      "verification workers (0 = auto)");
    build->add_option("--seed", seed, "seed recorded for reproducibility");
    build->add_option("--choose", choices,
                      "override a named geometric choice, ROLE=LABEL");

    CLI::App* certify_cmd =
        app.add_subcommand("certify", "verify an existing graph file");
    certify_cmd->add_option("--in", in_path, "input graph file")->required();
    certify_cmd->add_option("--format", in_format, "graph6|edgelist|json")
        ->capture_default_str();
    certify_cmd->add_option("--expect-degree", expect_degree,
                            "require the graph to be regular of this degree");
    certify_cmd->add_option("--expect-girth", expect_girth,
                            "require exactly this girth");
    certify_cmd->add_option("--threads", threads,
                            "verification workers (0 = auto)");

    CLI::App* export_cmd =
        app.add_subcommand("export", "convert a graph between formats");
    export_cmd->add_option("--in", in_path, "input graph file")->required();
    export_cmd->add_option("--in-format", in_format, "graph6|edgelist|json")
        ->capture_default_str();
    export_cmd->add_option("--out", out_path,
                           "output file (stdout if omitted)");
    export_cmd->add_option("--format", out_format, "target format")
        ->required();

    CLI::App* report_cmd = app.add_subcommand(
        "report", "build, certify and print the cage-gap report");
    report_cmd->add_option("--construction", construction, "construction tag")
        ->required();
    report_cmd->add_option("--q", q, "prime power parameter");
    report_cmd->add_option("--k", k, "degree parameter (thm-even-k)");
    report_cmd->add_flag("--json", as_json, "emit the report as JSON");
    report_cmd->add_option("--threads", threads,
                           "verification workers (0 = auto)");
    report_cmd->add_option("--choose", choices,
                           "override a named geometric choice, ROLE=LABEL");

    CLI::App* selftest_cmd = app.add_subcommand(
        "selftest", "run the acceptance suite and print the table");
    selftest_cmd->add_option("--threads", threads,
                             "verification workers (0 = auto)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (app.got_subcommand(build)) {
            const ConstructionParams params = make_params(choices, q, seed);
            const BuiltGraph b = build_by_tag(construction, q, k, params);
            const GraphFormat fmt = parse_format(out_format);
            const std::string bytes = export_graph(b.graph, fmt);
            if (out_path.empty())
                std::cout << bytes;
            else
                write_file(out_path, bytes);
            if (do_certify) {
                const Certificate cert = certify(b, threads);
                const nlohmann::json j = cert;
                const std::string text = j.dump(2) + "\n";
                if (out_path.empty()) {
                    std::cout << text;
                } else {
                    write_file(out_path + ".cert.json", text);
                    std::cout << b.construction << ": n=" << cert.n
                              << ", girth " << cert.girth_value
                              << ", certificate in " << out_path
                              << ".cert.json\n";
                }
            } else if (!out_path.empty()) {
                std::cout << b.construction << ": n=" << b.graph.n()
                          << ", written to " << out_path << "\n";
            }
            return kOk;
        }

        if (app.got_subcommand(certify_cmd)) {
            const LeviGraph g =
                import_graph(read_file(in_path), parse_format(in_format));
            const int degree =
                expect_degree
                    ? *expect_degree
                    : static_cast<int>(g.adj.empty() ? 0 : g.adj[0].size());
            const RegularityReport reg = is_regular(g, degree);
            const GirthResult gr = girth(g.adj, 0, threads);
            nlohmann::json j;
            j["n"] = g.n();
            j["m"] = g.m;
            j["k"] = degree;
            j["regular"] = reg.regular;
            j["girth"] = gr.value ? nlohmann::json(*gr.value)
                                  : nlohmann::json(nullptr);
            std::cout << j.dump(2) << "\n";
            if (expect_degree && !reg.regular) {
                std::cerr << "certification failed: graph is not "
                          << degree << "-regular\n";
                return kCertificationFailure;
            }
            if (expect_girth &&
                (!gr.value.has_value() || *gr.value != *expect_girth)) {
                std::cerr << "certification failed: girth is not "
                          << *expect_girth << "\n";
                return kCertificationFailure;
            }
            return kOk;
        }

        if (app.got_subcommand(export_cmd)) {
            const LeviGraph g =
                import_graph(read_file(in_path), parse_format(in_format));
            const std::string bytes =
                export_graph(g, parse_format(out_format));
            if (out_path.empty())
                std::cout << bytes;
            else
                write_file(out_path, bytes);
            return kOk;
        }

        if (app.got_subcommand(report_cmd)) {
            const ConstructionParams params = make_params(choices, q, seed);
            const BuiltGraph b = build_by_tag(construction, q, k, params);
            const Certificate cert = certify(b, threads);
            const CageGapReport rep = cage_gap_report(cert);
            if (as_json)
                std::cout << rep.data.dump(2) << "\n";
            else
                std::cout << rep.text;
            return kOk;
        }

        if (app.got_subcommand(selftest_cmd)) {
            const auto results = run_acceptance(threads);
            std::cout << acceptance_table(results);
            return all_passed(results) ? kOk : kCertificationFailure;
        }
    } catch (const CertificationFailed& ex) {
        std::cerr << "certification failed: " << ex.what() << "\n";
        return kCertificationFailure;
    } catch (const MalformedInput& ex) {
        std::cerr << "malformed input at byte " << ex.offset << ": "
                  << ex.what() << "\n";
        return kUsage;
    } catch (const Error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kUsage;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
