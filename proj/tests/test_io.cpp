#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "dynrad/cover.hpp"
#include "dynrad/io.hpp"
#include "dynrad/pattern.hpp"
#include "dynrad/radius.hpp"
#include "dynrad/rng.hpp"

using namespace dynrad;

namespace {

std::string graph_to_string(const CommunicationGraph& g) {
    std::ostringstream out;
    write_graph(g, out);
    return out.str();
}

CommunicationGraph graph_from_string(const std::string& text) {
    std::istringstream in(text);
    return parse_graph(in);
}

}  // namespace

TEST_CASE("graph text format") {
    const std::string text =
        "# a three-node example\n"
        "n 3\n"
        "\n"
        "1 2\n"
        "2 2\n"  // redundant self-loop allowed on input
        "3 1\n";
    const auto g = graph_from_string(text);
    CHECK(g.node_count() == 3);
    CHECK(g.has_edge(1, 2));
    CHECK(g.has_edge(3, 1));
    CHECK(g.has_edge(2, 2));

    // output sorted, self-loops omitted
    CHECK(graph_to_string(g) == "n 3\n1 2\n3 1\n");
    // load -> save -> load is a fixed point
    CHECK(graph_to_string(graph_from_string(graph_to_string(g))) == graph_to_string(g));
    CHECK(graph_from_string(graph_to_string(g)) == g);
}

TEST_CASE("graph parse errors carry line numbers") {
    CHECK_THROWS_AS(graph_from_string(""), ParseError);
    CHECK_THROWS_AS(graph_from_string("m 3\n"), ParseError);
    CHECK_THROWS_AS(graph_from_string("n 3\n1\n"), ParseError);
    CHECK_THROWS_AS(graph_from_string("n 3\n1 4\n"), ParseError);
    CHECK_THROWS_AS(graph_from_string("n 3\n1 x\n"), ParseError);
    CHECK_THROWS_AS(graph_from_string("n 0\n"), ParseError);
    try {
        graph_from_string("n 3\n1 2\n1 9\n");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("pattern text format round-trips generated rounds") {
    const auto pattern = gen_random_nonsplit(5, 99, 0.2);
    std::ostringstream out;
    write_pattern(pattern, 4, out);
    std::istringstream in(out.str());
    const auto loaded = parse_pattern(in);
    CHECK(loaded.horizon() == 4);
    for (int t = 1; t <= 4; ++t) CHECK(loaded.graph_at(t) == pattern.graph_at(t));

    // byte-identical second trip
    std::ostringstream again;
    write_pattern(loaded, 4, again);
    CHECK(again.str() == out.str());
}

TEST_CASE("pattern files must have contiguous rounds") {
    CHECK_THROWS_AS(
        []() {
            std::istringstream in("round 2\nn 2\n1 2\n");
            return parse_pattern(in);
        }(),
        ParseError);
    CHECK_THROWS_AS(
        []() {
            std::istringstream in("round 1\nn 2\nround 3\nn 2\n");
            return parse_pattern(in);
        }(),
        ParseError);
    CHECK_THROWS_AS(
        []() {
            std::istringstream in("");
            return parse_pattern(in);
        }(),
        ParseError);
}

TEST_CASE("certificate text format") {
    const auto p = gen_figure1();
    const auto cover = find_cover_m(p, NodeSet::full_set(6), 1, 4, 2);
    std::ostringstream out;
    write_certificate(cover.cert, out);

    std::istringstream in(out.str());
    const auto loaded = parse_certificate(in, 6);
    CHECK(loaded.t1 == cover.cert.t1);
    CHECK(loaded.t2 == cover.cert.t2);
    CHECK(loaded.source == cover.cert.source);
    CHECK(loaded.target == cover.cert.target);
    CHECK(loaded.witness_paths == cover.cert.witness_paths);
    validate_certificate(loaded, p);

    std::ostringstream again;
    write_certificate(loaded, again);
    CHECK(again.str() == out.str());
}

TEST_CASE("certificate format example") {
    const auto p = gen_figure1();
    const auto cover = find_single_cover(p, NodeSet::of(6, {1, 5}), 1, 2);
    std::ostringstream out;
    write_certificate(cover.cert, out);
    CHECK(out.str() ==
          "cover 1 2\n"
          "U: 4\n"
          "W: 1 5\n"
          "path 1: 4 1\n"
          "path 5: 4 5\n");
}

TEST_CASE("certificate parse errors") {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return parse_certificate(in, 6);
    };
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("cover 1\nU: 1\nW: 1\n"), ParseError);
    CHECK_THROWS_AS(parse("cover 1 2\nW: 1\nU: 1\n"), ParseError);
    CHECK_THROWS_AS(parse("cover 1 2\nU: 1\nW: 9\n"), ParseError);
    CHECK_THROWS_AS(parse("cover 1 2\nU: 1\nW: 1\npath 1: 1 1\npath 1: 1 1\n"), ParseError);
    CHECK_THROWS_AS(parse("cover 1 2\nU: 1\nW: 1\nroute 1: 1 1\n"), ParseError);
}

TEST_CASE("radius report CSV") {
    const auto report = dynamic_radius(gen_figure1(), 6);
    std::ostringstream out;
    write_radius_csv(report, out);
    CHECK(out.str() ==
          "node,broadcast_time\n"
          "1,3\n2,3\n3,3\n4,3\n5,3\n6,3\n"
          "# dynamic_radius=3\n"
          "# center=1\n"
          "# horizon=6\n");

    // unresolved entries print as inf
    const auto line_report = dynamic_radius(gen_line(3), 4);
    std::ostringstream line_out;
    write_radius_csv(line_report, line_out);
    CHECK(line_out.str() ==
          "node,broadcast_time\n"
          "1,2\n2,inf\n3,inf\n"
          "# dynamic_radius=2\n"
          "# center=1\n"
          "# horizon=4\n");

    // nothing resolved within the horizon
    const auto stalled = dynamic_radius(
        CommunicationPattern::from_rounds({CommunicationGraph::identity(2)}), 1);
    std::ostringstream stalled_out;
    write_radius_csv(stalled, stalled_out);
    CHECK(stalled_out.str() ==
          "node,broadcast_time\n"
          "1,inf\n2,inf\n"
          "# dynamic_radius=inf\n"
          "# center=none\n"
          "# horizon=1\n");
}

TEST_CASE("file helpers") {
    const auto g = figure1_graph();
    const std::string path = "/tmp/dynrad_test_graph.txt";
    save_graph_file(g, path);
    CHECK(load_graph_file(path) == g);
    CHECK_THROWS_AS(load_graph_file("/nonexistent/nope.txt"), ParseError);

    const auto pattern = gen_random_nonsplit(4, 5, 0.0);
    const std::string ppath = "/tmp/dynrad_test_pattern.txt";
    save_pattern_file(pattern, 3, ppath);
    const auto loaded = load_pattern_file(ppath);
    for (int t = 1; t <= 3; ++t) CHECK(loaded.graph_at(t) == pattern.graph_at(t));

    const auto cover = find_single_cover(gen_figure1(), NodeSet::of(6, {1, 5}), 1, 2);
    const std::string cpath = "/tmp/dynrad_test_cert.txt";
    save_certificate_file(cover.cert, cpath);
    const auto cert = load_certificate_file(cpath, 6);
    CHECK(cert.witness_paths == cover.cert.witness_paths);
}
