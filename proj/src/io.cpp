#include "dynrad/io.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace dynrad {

namespace {

// Content lines with the line number, comments and blanks skipped.
class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    std::optional<std::string> next() {
        if (pushed_) {
            auto line = std::move(*pushed_);
            pushed_.reset();
            return line;
        }
        std::string line;
        while (std::getline(in_, line)) {
            ++line_no_;
            const auto start = line.find_first_not_of(" \t\r");
            if (start == std::string::npos) continue;
            if (line[start] == '#') continue;
            return line;
        }
        return std::nullopt;
    }

    void push_back(std::string line) { pushed_ = std::move(line); }

    int line_no() const { return line_no_; }

private:
    std::istream& in_;
    int line_no_ = 0;
    std::optional<std::string> pushed_;
};

[[noreturn]] void fail(const LineReader& reader, const std::string& what) {
    throw ParseError("line " + std::to_string(reader.line_no()) + ": " + what);
}

int parse_int(LineReader& reader, const std::string& token) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(token, &pos);
        if (pos != token.size()) fail(reader, "trailing characters in number '" + token + "'");
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        fail(reader, "expected a number, got '" + token + "'");
    }
}

std::vector<std::string> split_tokens(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (ss >> tok) tokens.push_back(tok);
    return tokens;
}

CommunicationGraph parse_graph_block(LineReader& reader) {
    auto header = reader.next();
    if (!header) fail(reader, "expected 'n <count>' header");
    auto tokens = split_tokens(*header);
    if (tokens.size() != 2 || tokens[0] != "n")
        fail(reader, "expected 'n <count>' header, got '" + *header + "'");
    const int n = parse_int(reader, tokens[1]);
    if (n < 1) fail(reader, "node count must be positive");
    std::vector<std::pair<int, int>> edges;
    while (auto line = reader.next()) {
        tokens = split_tokens(*line);
        if (tokens[0] == "n" || tokens[0] == "round") {
            // start of the next block
            reader.push_back(std::move(*line));
            break;
        }
        if (tokens.size() != 2) fail(reader, "expected '<u> <v>' edge, got '" + *line + "'");
        const int u = parse_int(reader, tokens[0]);
        const int v = parse_int(reader, tokens[1]);
        if (u < 1 || u > n) fail(reader, "edge endpoint " + std::to_string(u) + " out of range");
        if (v < 1 || v > n) fail(reader, "edge endpoint " + std::to_string(v) + " out of range");
        edges.emplace_back(u, v);
    }
    return CommunicationGraph(n, edges);
}

}  // namespace

CommunicationGraph parse_graph(std::istream& in) {
    LineReader reader(in);
    auto g = parse_graph_block(reader);
    if (auto extra = reader.next()) fail(reader, "unexpected content after the graph: '" + *extra + "'");
    return g;
}

void write_graph(const CommunicationGraph& g, std::ostream& out) {
    out << "n " << g.node_count() << "\n";
    for (auto [u, v] : g.edges())
        if (u != v) out << u << " " << v << "\n";
}

CommunicationPattern parse_pattern(std::istream& in) {
    LineReader reader(in);
    std::vector<CommunicationGraph> rounds;
    while (auto line = reader.next()) {
        auto tokens = split_tokens(*line);
        if (tokens.size() != 2 || tokens[0] != "round")
            fail(reader, "expected 'round <t>' header, got '" + *line + "'");
        const int t = parse_int(reader, tokens[1]);
        if (t != static_cast<int>(rounds.size()) + 1)
            fail(reader, "rounds must be contiguous from 1; expected round " +
                             std::to_string(rounds.size() + 1) + ", got " + std::to_string(t));
        rounds.push_back(parse_graph_block(reader));
    }
    if (rounds.empty()) throw ParseError("pattern file contains no rounds");
    return CommunicationPattern::from_rounds(std::move(rounds));
}

void write_pattern(const CommunicationPattern& pattern, int horizon, std::ostream& out) {
    if (horizon < 1) throw Error("horizon must be at least 1");
    for (int t = 1; t <= horizon; ++t) {
        out << "round " << t << "\n";
        write_graph(pattern.graph_at(t), out);
    }
}

CoverCertificate parse_certificate(std::istream& in, int ambient) {
    if (ambient < 1) throw Error("certificate universe must be positive");
    LineReader reader(in);
    auto header = reader.next();
    if (!header) fail(reader, "expected 'cover <t1> <t2>' header");
    auto tokens = split_tokens(*header);
    if (tokens.size() != 3 || tokens[0] != "cover")
        fail(reader, "expected 'cover <t1> <t2>' header, got '" + *header + "'");
    CoverCertificate cert;
    cert.t1 = parse_int(reader, tokens[1]);
    cert.t2 = parse_int(reader, tokens[2]);
    cert.source = NodeSet(ambient);
    cert.target = NodeSet(ambient);

    auto parse_set_line = [&](const char* tag, NodeSet& dest) {
        auto line = reader.next();
        if (!line) fail(reader, std::string("expected '") + tag + ": <ids>' line");
        auto toks = split_tokens(*line);
        if (toks.empty() || toks[0] != std::string(tag) + ":")
            fail(reader, std::string("expected '") + tag + ": <ids>' line, got '" + *line + "'");
        for (std::size_t i = 1; i < toks.size(); ++i) {
            const int id = parse_int(reader, toks[i]);
            if (id < 1 || id > ambient) fail(reader, "node id " + std::to_string(id) + " out of range");
            dest.insert(id);
        }
    };
    parse_set_line("U", cert.source);
    parse_set_line("W", cert.target);

    while (auto line = reader.next()) {
        auto toks = split_tokens(*line);
        if (toks.size() < 3 || toks[0] != "path" || toks[1].empty() || toks[1].back() != ':')
            fail(reader, "expected 'path <j>: <ids>' line, got '" + *line + "'");
        const int target = parse_int(reader, toks[1].substr(0, toks[1].size() - 1));
        std::vector<int> path;
        for (std::size_t i = 2; i < toks.size(); ++i) {
            const int id = parse_int(reader, toks[i]);
            if (id < 1 || id > ambient) fail(reader, "node id " + std::to_string(id) + " out of range");
            path.push_back(id);
        }
        if (!cert.witness_paths.emplace(target, std::move(path)).second)
            fail(reader, "duplicate path for target " + std::to_string(target));
    }
    return cert;
}

void write_certificate(const CoverCertificate& cert, std::ostream& out) {
    out << "cover " << cert.t1 << " " << cert.t2 << "\n";
    out << "U:";
    cert.source.for_each([&](int id) { out << " " << id; });
    out << "\nW:";
    cert.target.for_each([&](int id) { out << " " << id; });
    out << "\n";
    for (const auto& [target, path] : cert.witness_paths) {
        out << "path " << target << ":";
        for (int id : path) out << " " << id;
        out << "\n";
    }
}

void write_radius_csv(const RadiusReport& report, std::ostream& out) {
    out << "node,broadcast_time\n";
    for (int i = 1; i <= report.n; ++i) {
        const auto& t = report.broadcast_times[static_cast<std::size_t>(i) - 1];
        out << i << ",";
        if (t)
            out << *t;
        else
            out << "inf";
        out << "\n";
    }
    out << "# dynamic_radius=";
    if (report.dynamic_radius)
        out << *report.dynamic_radius;
    else
        out << "inf";
    out << "\n# center=";
    if (report.dynamic_radius)
        out << report.center;
    else
        out << "none";
    out << "\n# horizon=" << report.horizon << "\n";
}

namespace {

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "' for reading");
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path + "' for writing");
    return out;
}

}  // namespace

CommunicationGraph load_graph_file(const std::string& path) {
    auto in = open_in(path);
    return parse_graph(in);
}

void save_graph_file(const CommunicationGraph& g, const std::string& path) {
    auto out = open_out(path);
    write_graph(g, out);
}

CommunicationPattern load_pattern_file(const std::string& path) {
    auto in = open_in(path);
    return parse_pattern(in);
}

void save_pattern_file(const CommunicationPattern& pattern, int horizon, const std::string& path) {
    auto out = open_out(path);
    write_pattern(pattern, horizon, out);
}

CoverCertificate load_certificate_file(const std::string& path, int ambient) {
    auto in = open_in(path);
    return parse_certificate(in, ambient);
}

void save_certificate_file(const CoverCertificate& cert, const std::string& path) {
    auto out = open_out(path);
    write_certificate(cert, out);
}

}  // namespace dynrad
