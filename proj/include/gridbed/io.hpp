#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gridbed/embedding.hpp"
#include "gridbed/graph.hpp"
#include "gridbed/reductions.hpp"

namespace gridbed {

struct ParsedGraph {
    Graph graph;
    std::vector<std::string> labels;  // original labels per dense id
};

// Format: header "gridbed-graph v1", "n <count>", edge lines "<u> <v>",
// '#' comments. Labels may be arbitrary tokens; they are remapped to dense
// 0-based ids in first-seen order unless all are integers in [0, n).
ParsedGraph parse_graph(const std::string& text);
std::string serialize_graph(const Graph& g);

// Format: "gridbed-embedding v1", optional "k <k> r <r>", lines
// "<vertex> <row> <col>" with 1-based coordinates.
GridEmbedding parse_embedding(const std::string& text);
std::string serialize_embedding(const GridEmbedding& f);

// Format: "gridbed-batteries v1", "r <rows> c <cols>", row-major "<x1> <x2>".
BatteriesInstance parse_batteries(const std::string& text);
std::string serialize_batteries(const BatteriesInstance& b);

// Format: "gridbed-3partition v1", "m <m>", then 3m integers.
ThreePartitionInstance parse_3partition(const std::string& text);
std::string serialize_3partition(const ThreePartitionInstance& inst);

// DIMACS CNF ("p cnf <vars> <clauses>", clauses 0-terminated, 'c' comments).
CnfFormula parse_dimacs(const std::string& text);

// Format: "gridbed-rects v1", "k <k> w <w>", lines "<height> <width>".
struct StripPackInput {
    int k = 0, w = 0;
    std::vector<std::pair<int, int>> rects;
};
StripPackInput parse_rects(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace gridbed
