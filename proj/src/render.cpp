#include "gridbed/render.hpp"

#include <sstream>
#include <vector>

namespace gridbed {

std::string render_ascii(const Graph& g, const GridEmbedding& f) {
    auto check = validate(g, f);
    if (!check.ok) throw GridbedError("render: invalid embedding: " + check.reason);
    int rows = 2 * f.k - 1, cols = 2 * f.r - 1;
    std::vector<std::string> canvas(rows, std::string(cols, ' '));
    for (const auto& [v, c] : f.pos) canvas[2 * (c.row - 1)][2 * (c.col - 1)] = '+';
    for (auto [u, v] : g.edges) {
        Cell a = f.at(u), b = f.at(v);
        int row = a.row + b.row - 2, col = a.col + b.col - 2;  // midpoint on the doubled canvas
        canvas[row][col] = (a.row == b.row) ? '-' : '|';
    }
    std::ostringstream out;
    for (const auto& line : canvas) out << line << "\n";
    return out.str();
}

std::string render_svg(const Graph& g, const GridEmbedding& f) {
    auto check = validate(g, f);
    if (!check.ok) throw GridbedError("render: invalid embedding: " + check.reason);
    const int unit = 24, margin = 24, radius = 6;
    int width = 2 * margin + unit * (f.r - 1);
    int height = 2 * margin + unit * (f.k - 1);
    auto x = [&](int col) { return margin + unit * (col - 1); };
    auto y = [&](int row) { return margin + unit * (row - 1); };
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    for (auto [u, v] : g.edges) {
        Cell a = f.at(u), b = f.at(v);
        out << "<line x1=\"" << x(a.col) << "\" y1=\"" << y(a.row) << "\" x2=\"" << x(b.col)
            << "\" y2=\"" << y(b.row) << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
    }
    for (const auto& [v, c] : f.pos) {
        out << "<circle cx=\"" << x(c.col) << "\" cy=\"" << y(c.row) << "\" r=\"" << radius
            << "\" fill=\"white\" stroke=\"black\" stroke-width=\"2\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace gridbed
