#ifndef LAPPERTURB_GRAPH_IO_HPP
#define LAPPERTURB_GRAPH_IO_HPP

#include "lapperturb/graph.hpp"

#include <iosfwd>
#include <string>
#include <string_view>

#include <json.hpp>

namespace lapperturb {

// Edge-list text: a header line `n <count>`, then one `u v [weight]` per line with
// 1-based nodes. `#` starts a comment. Weights accept integers, decimals and p/q.
Graph parse_edge_list(std::istream& in);
Graph parse_edge_list_text(std::string_view text);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g);

// Whitespace separated square matrix, one row per line.
Graph parse_adjacency_text(std::string_view text);

// {n, edges:[[u,v,w]]} with 1-based nodes. Integral weights are JSON integers,
// others are "p/q" strings.
nlohmann::json graph_to_json(const Graph& g);
Graph graph_from_json(const nlohmann::json& j);

// Embedded adjacency matrices of the three worked examples (1, 2 or 3).
Graph example_graph(int index);

}  // namespace lapperturb

#endif
