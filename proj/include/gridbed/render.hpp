#pragma once

#include <string>

#include "gridbed/embedding.hpp"
#include "gridbed/graph.hpp"

namespace gridbed {

// '+' vertices and '-'/'|' edges on a (2k-1) x (2r-1) character canvas.
// Throws when the embedding is invalid for g.
std::string render_ascii(const Graph& g, const GridEmbedding& f);

// Deterministic SVG: unit-square lattice, one <circle> per vertex and one
// <line> per edge.
std::string render_svg(const Graph& g, const GridEmbedding& f);

}  // namespace gridbed
