#pragma once

#include <string>
#include <string_view>

#include "graphck/graph.hpp"

namespace graphck {

// Line-oriented graph format:
//
//   vertex <id>
//   edge <id> : <src> -> <dst>
//
// '#' starts a comment. Identifiers use [A-Za-z0-9_.,()] so that blow-up
// graphs, whose ids are built from paths, can be written back out.
DirectedGraph parse_graph(std::string_view text);

// Canonical text: all vertices first, then edges, insertion order.
std::string emit_graph(const DirectedGraph& g);

bool is_identifier_char(char c);

}  // namespace graphck
