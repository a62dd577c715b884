#include "gridbed/io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace gridbed {

namespace {

struct LineReader {
    std::vector<std::pair<int, std::string>> lines;  // (line number, content)

    explicit LineReader(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        int no = 0;
        while (std::getline(in, line)) {
            ++no;
            auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            std::istringstream probe(line);
            std::string token;
            if (probe >> token) lines.push_back({no, line});
        }
    }
};

[[noreturn]] void fail(int line, const std::string& what) {
    throw GridbedError("line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string t;
    while (in >> t) out.push_back(t);
    return out;
}

bool parse_int(const std::string& s, long long* out) {
    if (s.empty()) return false;
    size_t pos = 0;
    try {
        long long v = std::stoll(s, &pos);
        if (pos != s.size()) return false;
        *out = v;
        return true;
    } catch (...) {
        return false;
    }
}

}  // namespace

ParsedGraph parse_graph(const std::string& text) {
    LineReader reader(text);
    if (reader.lines.empty() || tokens(reader.lines[0].second) !=
                                    std::vector<std::string>{"gridbed-graph", "v1"})
        throw GridbedError("graph file: missing header 'gridbed-graph v1'");
    if (reader.lines.size() < 2) throw GridbedError("graph file: missing 'n <count>' line");
    auto nline = tokens(reader.lines[1].second);
    long long n = 0;
    if (nline.size() != 2 || nline[0] != "n" || !parse_int(nline[1], &n) || n < 0)
        fail(reader.lines[1].first, "expected 'n <count>'");

    // First pass: are all endpoints integers in [0, n)?
    bool all_integer = true;
    for (size_t i = 2; i < reader.lines.size(); ++i) {
        auto ts = tokens(reader.lines[i].second);
        if (ts.size() != 2) fail(reader.lines[i].first, "expected '<u> <v>'");
        for (const auto& t : ts) {
            long long v;
            if (!parse_int(t, &v) || v < 0 || v >= n) all_integer = false;
        }
    }
    ParsedGraph out;
    std::map<std::string, int> id_of;
    auto resolve = [&](const std::string& label, int line) {
        if (all_integer) {
            long long v = 0;
            parse_int(label, &v);
            return static_cast<int>(v);
        }
        auto it = id_of.find(label);
        if (it != id_of.end()) return it->second;
        int id = static_cast<int>(out.labels.size());
        if (id >= n) fail(line, "more than n distinct labels");
        id_of[label] = id;
        out.labels.push_back(label);
        return id;
    };
    if (all_integer)
        for (long long v = 0; v < n; ++v) out.labels.push_back(std::to_string(v));

    std::vector<std::pair<int, int>> edges;
    std::set<std::pair<int, int>> seen;
    for (size_t i = 2; i < reader.lines.size(); ++i) {
        auto ts = tokens(reader.lines[i].second);
        int u = resolve(ts[0], reader.lines[i].first);
        int v = resolve(ts[1], reader.lines[i].first);
        if (u == v) fail(reader.lines[i].first, "self-loop");
        auto key = std::minmax(u, v);
        if (!seen.insert({key.first, key.second}).second)
            fail(reader.lines[i].first, "duplicate edge");
        edges.emplace_back(u, v);
    }
    out.graph = Graph::make(static_cast<int>(n), std::move(edges));
    while (static_cast<int>(out.labels.size()) < n)
        out.labels.push_back(std::to_string(out.labels.size()));
    return out;
}

std::string serialize_graph(const Graph& g) {
    std::ostringstream out;
    out << "gridbed-graph v1\n";
    out << "n " << g.n << "\n";
    for (auto [u, v] : g.edges) out << u << " " << v << "\n";
    return out.str();
}

GridEmbedding parse_embedding(const std::string& text) {
    LineReader reader(text);
    if (reader.lines.empty() || tokens(reader.lines[0].second) !=
                                    std::vector<std::string>{"gridbed-embedding", "v1"})
        throw GridbedError("embedding file: missing header 'gridbed-embedding v1'");
    GridEmbedding f;
    size_t first = 1;
    bool has_dims = false;
    if (reader.lines.size() > 1) {
        auto ts = tokens(reader.lines[1].second);
        if (ts.size() == 4 && ts[0] == "k" && ts[2] == "r") {
            long long k, r;
            if (!parse_int(ts[1], &k) || !parse_int(ts[3], &r) || k < 1 || r < 1)
                fail(reader.lines[1].first, "expected 'k <k> r <r>'");
            f.k = static_cast<int>(k);
            f.r = static_cast<int>(r);
            has_dims = true;
            first = 2;
        }
    }
    std::set<Cell> used;
    for (size_t i = first; i < reader.lines.size(); ++i) {
        auto ts = tokens(reader.lines[i].second);
        long long v, row, col;
        if (ts.size() != 3 || !parse_int(ts[0], &v) || !parse_int(ts[1], &row) ||
            !parse_int(ts[2], &col))
            fail(reader.lines[i].first, "expected '<vertex> <row> <col>'");
        if (v < 0) fail(reader.lines[i].first, "negative vertex id");
        if (row < 1 || col < 1) fail(reader.lines[i].first, "coordinates are 1-based");
        if (has_dims && (row > f.k || col > f.r))
            fail(reader.lines[i].first, "coordinate out of range");
        Cell c{static_cast<int>(row), static_cast<int>(col)};
        if (!used.insert(c).second) fail(reader.lines[i].first, "repeated cell");
        if (f.maps(static_cast<int>(v))) fail(reader.lines[i].first, "repeated vertex");
        f.place(static_cast<int>(v), c);
    }
    if (!has_dims) {
        for (const auto& [v, c] : f.pos) {
            f.k = std::max(f.k, c.row);
            f.r = std::max(f.r, c.col);
        }
        f.k = std::max(f.k, 1);
        f.r = std::max(f.r, 1);
    }
    return f;
}

std::string serialize_embedding(const GridEmbedding& f) {
    std::ostringstream out;
    out << "gridbed-embedding v1\n";
    out << "k " << f.k << " r " << f.r << "\n";
    for (const auto& [v, c] : f.pos) out << v << " " << c.row << " " << c.col << "\n";
    return out.str();
}

BatteriesInstance parse_batteries(const std::string& text) {
    LineReader reader(text);
    if (reader.lines.empty() || tokens(reader.lines[0].second) !=
                                    std::vector<std::string>{"gridbed-batteries", "v1"})
        throw GridbedError("batteries file: missing header 'gridbed-batteries v1'");
    if (reader.lines.size() < 2) throw GridbedError("batteries file: missing dimensions");
    auto ts = tokens(reader.lines[1].second);
    long long r, c;
    if (ts.size() != 4 || ts[0] != "r" || ts[2] != "c" || !parse_int(ts[1], &r) ||
        !parse_int(ts[3], &c) || r < 1 || c < 1)
        fail(reader.lines[1].first, "expected 'r <rows> c <cols>'");
    BatteriesInstance b;
    b.rows = static_cast<int>(r);
    b.cols = static_cast<int>(c);
    std::vector<long long> values;
    for (size_t i = 2; i < reader.lines.size(); ++i) {
        for (const auto& t : tokens(reader.lines[i].second)) {
            long long v;
            if (!parse_int(t, &v) || (v != 0 && v != 1))
                fail(reader.lines[i].first, "expected 0/1 voltages");
            values.push_back(v);
        }
    }
    if (static_cast<long long>(values.size()) != 2ll * r * c)
        throw GridbedError("batteries file: expected " + std::to_string(2 * r * c) + " values");
    b.cells.assign(b.rows, std::vector<std::pair<int, int>>(b.cols));
    for (int i = 0; i < b.rows; ++i)
        for (int j = 0; j < b.cols; ++j) {
            b.cells[i][j].first = static_cast<int>(values[2 * (i * b.cols + j)]);
            b.cells[i][j].second = static_cast<int>(values[2 * (i * b.cols + j) + 1]);
        }
    return b;
}

std::string serialize_batteries(const BatteriesInstance& b) {
    std::ostringstream out;
    out << "gridbed-batteries v1\n";
    out << "r " << b.rows << " c " << b.cols << "\n";
    for (int i = 0; i < b.rows; ++i) {
        for (int j = 0; j < b.cols; ++j) {
            if (j) out << "  ";
            out << b.cells[i][j].first << " " << b.cells[i][j].second;
        }
        out << "\n";
    }
    return out.str();
}

ThreePartitionInstance parse_3partition(const std::string& text) {
    LineReader reader(text);
    if (reader.lines.empty() || tokens(reader.lines[0].second) !=
                                    std::vector<std::string>{"gridbed-3partition", "v1"})
        throw GridbedError("3partition file: missing header 'gridbed-3partition v1'");
    if (reader.lines.size() < 2) throw GridbedError("3partition file: missing 'm <m>'");
    auto ts = tokens(reader.lines[1].second);
    long long m;
    if (ts.size() != 2 || ts[0] != "m" || !parse_int(ts[1], &m) || m < 1)
        fail(reader.lines[1].first, "expected 'm <m>'");
    ThreePartitionInstance inst;
    for (size_t i = 2; i < reader.lines.size(); ++i) {
        for (const auto& t : tokens(reader.lines[i].second)) {
            long long v;
            if (!parse_int(t, &v) || v < 1) fail(reader.lines[i].first, "expected positive integers");
            inst.weights.push_back(v);
        }
    }
    if (static_cast<long long>(inst.weights.size()) != 3 * m)
        throw GridbedError("3partition file: expected " + std::to_string(3 * m) + " integers");
    return inst;
}

std::string serialize_3partition(const ThreePartitionInstance& inst) {
    std::ostringstream out;
    out << "gridbed-3partition v1\n";
    out << "m " << inst.weights.size() / 3 << "\n";
    for (size_t i = 0; i < inst.weights.size(); ++i)
        out << inst.weights[i] << (i + 1 == inst.weights.size() ? "\n" : " ");
    return out.str();
}

CnfFormula parse_dimacs(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    CnfFormula out;
    bool header = false;
    std::vector<int> current;
    int lineno = 0;
    long long declared_clauses = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ls(line);
        if (!header) {
            std::string p, cnf;
            long long nv, nc;
            if (!(ls >> p >> cnf >> nv >> nc) || p != "p" || cnf != "cnf" || nv < 0 || nc < 0)
                fail(lineno, "expected 'p cnf <vars> <clauses>'");
            out.num_vars = static_cast<int>(nv);
            declared_clauses = nc;
            header = true;
            continue;
        }
        long long lit;
        while (ls >> lit) {
            if (lit == 0) {
                if (current.empty()) fail(lineno, "empty clause");
                out.clauses.push_back(current);
                current.clear();
            } else {
                if (std::abs(lit) > out.num_vars) fail(lineno, "literal out of range");
                current.push_back(static_cast<int>(lit));
            }
        }
    }
    if (!header) throw GridbedError("dimacs: missing 'p cnf' header");
    if (!current.empty()) out.clauses.push_back(current);
    if (declared_clauses != static_cast<long long>(out.clauses.size()))
        throw GridbedError("dimacs: clause count mismatch");
    out.check();
    return out;
}

StripPackInput parse_rects(const std::string& text) {
    LineReader reader(text);
    if (reader.lines.empty() ||
        tokens(reader.lines[0].second) != std::vector<std::string>{"gridbed-rects", "v1"})
        throw GridbedError("rects file: missing header 'gridbed-rects v1'");
    if (reader.lines.size() < 2) throw GridbedError("rects file: missing 'k <k> w <w>'");
    auto ts = tokens(reader.lines[1].second);
    long long k, w;
    if (ts.size() != 4 || ts[0] != "k" || ts[2] != "w" || !parse_int(ts[1], &k) ||
        !parse_int(ts[3], &w) || k < 1 || w < 1)
        fail(reader.lines[1].first, "expected 'k <k> w <w>'");
    StripPackInput out;
    out.k = static_cast<int>(k);
    out.w = static_cast<int>(w);
    for (size_t i = 2; i < reader.lines.size(); ++i) {
        auto rs = tokens(reader.lines[i].second);
        long long h, ww;
        if (rs.size() != 2 || !parse_int(rs[0], &h) || !parse_int(rs[1], &ww) || h < 1 || ww < 1)
            fail(reader.lines[i].first, "expected '<height> <width>'");
        out.rects.push_back({static_cast<int>(h), static_cast<int>(ww)});
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw GridbedError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw GridbedError("cannot write " + path);
    out << content;
}

}  // namespace gridbed
