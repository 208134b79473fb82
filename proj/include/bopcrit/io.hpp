#pragma once

#include "bopcrit/graph.hpp"

#include <iosfwd>
#include <string>

namespace bopcrit {

// Edge-list text format: optional header line "n=<count>" (otherwise n is
// max index + 1), then one edge per line "i<TAB>j<TAB>weight" (weight
// optional, defaults to 1). '#' starts a comment; blank lines are ignored.
Graph parse_edge_list(std::istream& in);
Graph read_edge_list(const std::string& path);

// Writes the canonical form: "n=" header plus one line per edge (i < j).
// Node indices are positions, so labels must be the identity 0..n-1.
void format_edge_list(const Graph& g, std::ostream& out);
void write_edge_list(const Graph& g, const std::string& path);

// Shortest-round-trip decimal rendering (used across CSV/config emitters so
// reruns are byte-identical and parseable without loss).
std::string format_double(double v);

}  // namespace bopcrit
