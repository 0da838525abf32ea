#pragma once

#include <iosfwd>
#include <string>

#include "dynrad/cover.hpp"
#include "dynrad/graph.hpp"
#include "dynrad/pattern.hpp"
#include "dynrad/radius.hpp"

namespace dynrad {

// Graph text format: first content line `n <count>`, then one `<u> <v>` edge
// per line (1-based). Lines starting with `#` and blank lines are ignored.
// Self-loops may be omitted on input; output is sorted by (u, v) with
// self-loops omitted, so load -> save -> load is a fixed point.
CommunicationGraph parse_graph(std::istream& in);
void write_graph(const CommunicationGraph& g, std::ostream& out);

// Pattern text format: blocks `round <t>` each followed by a graph block;
// rounds must be contiguous from 1.
CommunicationPattern parse_pattern(std::istream& in);
// Writes rounds 1..horizon (also usable to snapshot a generated pattern).
void write_pattern(const CommunicationPattern& pattern, int horizon, std::ostream& out);

// Certificate text format: `cover <t1> <t2>`, `U: <ids>`, `W: <ids>`, then one
// `path <j>: <id ...>` line per target, sorted by target. The node universe is
// not part of the format and must be supplied.
CoverCertificate parse_certificate(std::istream& in, int ambient);
void write_certificate(const CoverCertificate& cert, std::ostream& out);

// CSV: header `node,broadcast_time` (inf for unresolved), footer comments
// `# dynamic_radius=`, `# center=` and `# horizon=`.
void write_radius_csv(const RadiusReport& report, std::ostream& out);

// File wrappers; throw ParseError on unreadable paths.
CommunicationGraph load_graph_file(const std::string& path);
void save_graph_file(const CommunicationGraph& g, const std::string& path);
CommunicationPattern load_pattern_file(const std::string& path);
void save_pattern_file(const CommunicationPattern& pattern, int horizon, const std::string& path);
CoverCertificate load_certificate_file(const std::string& path, int ambient);
void save_certificate_file(const CoverCertificate& cert, const std::string& path);

}  // namespace dynrad
