#include "gridbed/reductions.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace gridbed {

void CnfFormula::check() const {
    if (num_vars < 0) throw GridbedError("cnf: negative variable count");
    for (const auto& clause : clauses) {
        if (clause.empty()) throw GridbedError("cnf: empty clause");
        for (int lit : clause)
            if (lit == 0 || std::abs(lit) > num_vars)
                throw GridbedError("cnf: literal out of range: " + std::to_string(lit));
    }
}

void BatteriesInstance::check() const {
    if (rows < 1 || cols < 1) throw GridbedError("batteries: dimensions must be positive");
    if (static_cast<int>(cells.size()) != rows) throw GridbedError("batteries: row count mismatch");
    for (const auto& row : cells) {
        if (static_cast<int>(row.size()) != cols)
            throw GridbedError("batteries: column count mismatch");
        for (auto [x1, x2] : row)
            if ((x1 != 0 && x1 != 1) || (x2 != 0 && x2 != 1))
                throw GridbedError("batteries: voltages must be 0/1");
    }
}

BatteriesInstance reduce_sat_to_batteries(const CnfFormula& pi) {
    pi.check();
    if (pi.clauses.empty()) throw GridbedError("reduce_sat_to_batteries: no clauses");
    BatteriesInstance b;
    b.rows = static_cast<int>(pi.clauses.size());
    b.cols = pi.num_vars;
    b.cells.assign(b.rows, std::vector<std::pair<int, int>>(b.cols, {1, 1}));
    for (int i = 0; i < b.rows; ++i) {
        for (int lit : pi.clauses[i]) {
            int j = std::abs(lit) - 1;
            if (lit > 0) b.cells[i][j].first = 0;
            else b.cells[i][j].second = 0;
        }
    }
    return b;
}

PlacementCheck placement_check(const BatteriesInstance& b, const Placement& p) {
    b.check();
    if (static_cast<int>(p.p.size()) != b.rows)
        throw GridbedError("placement_check: dimension mismatch");
    for (const auto& row : p.p)
        if (static_cast<int>(row.size()) != b.cols)
            throw GridbedError("placement_check: dimension mismatch");
    PlacementCheck out;
    out.correct = true;
    for (int j = 0; j < b.cols; ++j)
        for (int i = 0; i + 1 < b.rows; ++i)
            if (p.p[i][j] != p.p[i + 1][j]) out.correct = false;
    out.safe = true;
    for (int i = 0; i < b.rows; ++i) {
        int sum = 0;
        for (int j = 0; j < b.cols; ++j)
            sum += p.p[i][j] ? b.cells[i][j].first : b.cells[i][j].second;
        if (sum > b.cols - 1) out.safe = false;
    }
    return out;
}

BatteriesAnswer batteries_brute_force(const BatteriesInstance& b) {
    b.check();
    BatteriesAnswer out;
    if (b.cols > 20) {
        out.answer = Answer::unknown;
        return out;
    }
    for (std::uint32_t mask = 0; mask < (1u << b.cols); ++mask) {
        bool safe = true;
        for (int i = 0; i < b.rows && safe; ++i) {
            int sum = 0;
            for (int j = 0; j < b.cols; ++j) {
                bool plus = (mask >> j & 1) == 0;
                sum += plus ? b.cells[i][j].first : b.cells[i][j].second;
            }
            if (sum > b.cols - 1) safe = false;
        }
        if (safe) {
            Placement p;
            p.p.assign(b.rows, std::vector<bool>(b.cols));
            for (int i = 0; i < b.rows; ++i)
                for (int j = 0; j < b.cols; ++j) p.p[i][j] = (mask >> j & 1) == 0;
            out.answer = Answer::yes;
            out.witness = std::move(p);
            return out;
        }
    }
    out.answer = Answer::no;
    return out;
}

int LabeledGraph::label_id(const std::string& label) const {
    for (size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return static_cast<int>(i);
    throw GridbedError("label not found: " + label);
}

int NaesatOutput::label_id(const std::string& label) const {
    for (size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return static_cast<int>(i);
    throw GridbedError("label not found: " + label);
}

GridFrame grid_frame(int m, int n) {
    if (m < 1 || n < 1) throw GridbedError("grid_frame: m, n must be positive");
    std::set<Cell> coords;
    int bottom = 12 * m + 4, right = 8 * n + 4;
    for (int row = 0; row <= 2; ++row)
        for (int col = 0; col <= right; ++col) coords.insert({row, col});
    for (int row = 12 * m + 2; row <= bottom; ++row)
        for (int col = 0; col <= right; ++col) coords.insert({row, col});
    for (int row = 0; row <= bottom; ++row)
        for (int col = 0; col <= 2; ++col) coords.insert({row, col});
    for (int row = 0; row <= bottom; ++row)
        for (int col = 8 * n + 2; col <= right; ++col) coords.insert({row, col});
    GridFrame out;
    std::map<Cell, int> id;
    for (const Cell& c : coords) {
        id[c] = static_cast<int>(out.coords.size());
        out.coords.push_back(c);
    }
    std::vector<std::pair<int, int>> edges;
    for (const Cell& c : coords) {
        Cell rightc{c.row, c.col + 1}, down{c.row + 1, c.col};
        if (coords.count(rightc)) edges.emplace_back(id[c], id[rightc]);
        if (coords.count(down)) edges.emplace_back(id[c], id[down]);
    }
    out.graph = Graph::make(static_cast<int>(out.coords.size()), std::move(edges));
    return out;
}

namespace {

// Canonical battery-gadget tables, local cell coordinates (paper 0-based):
// the gadget rectangle spans rows 2..14 and columns 2..10; the midline is
// row 8. The positive side P1..P14 and negative side N1..N9 anchor at the
// midline center (8,6); the tees a..d and e..h anchor at (8,4) and (8,8).
struct GadgetTables {
    std::vector<std::pair<std::string, Cell>> p_top = {
        {"P:1", {7, 6}},  {"P:2", {6, 6}},  {"P:3", {5, 6}},  {"P:4", {4, 6}},
        {"P:5", {4, 5}},  {"P:6", {3, 5}},  {"P:7", {4, 7}},  {"P:8", {3, 7}},
        {"P:9", {5, 5}},  {"P:10", {5, 4}}, {"P:11", {5, 7}}, {"P:12", {5, 8}},
        {"P:13", {6, 5}}, {"P:14", {6, 7}}};
    std::vector<std::pair<std::string, Cell>> n_top = {
        {"N:1", {7, 6}}, {"N:2", {6, 6}}, {"N:3", {5, 6}}, {"N:4", {4, 6}}, {"N:5", {3, 6}},
        {"N:6", {5, 5}}, {"N:7", {4, 5}}, {"N:8", {5, 7}}, {"N:9", {4, 7}}};
    std::vector<std::pair<std::string, Cell>> tees = {
        {"a", {7, 4}}, {"b", {6, 4}}, {"c", {7, 5}}, {"d", {9, 4}},
        {"e", {7, 8}}, {"f", {6, 8}}, {"g", {7, 7}}, {"h", {9, 8}}};
    // Intra-structure edges by role name; anchors attach to skeleton cells.
    std::vector<std::pair<std::string, std::string>> p_edges = {
        {"P:1", "P:2"},  {"P:2", "P:3"},  {"P:3", "P:4"},  {"P:4", "P:5"},  {"P:5", "P:6"},
        {"P:4", "P:7"},  {"P:7", "P:8"},  {"P:3", "P:9"},  {"P:9", "P:10"}, {"P:3", "P:11"},
        {"P:11", "P:12"}, {"P:2", "P:13"}, {"P:2", "P:14"}};
    std::vector<std::pair<std::string, std::string>> n_edges = {
        {"N:1", "N:2"}, {"N:2", "N:3"}, {"N:3", "N:4"}, {"N:4", "N:5"},
        {"N:3", "N:6"}, {"N:6", "N:7"}, {"N:3", "N:8"}, {"N:8", "N:9"}};
    std::pair<std::string, std::string> p_voltage = {"P:9", "P:13"};
    std::pair<std::string, std::string> n_voltage = {"N:4", "N:7"};
    std::vector<std::pair<std::string, std::string>> tee_edges = {
        {"a", "b"}, {"a", "c"}, {"e", "f"}, {"e", "g"}};
    // (role, skeleton cell) anchor edges.
    std::vector<std::pair<std::string, Cell>> anchors = {
        {"P:1", {8, 6}}, {"N:1", {8, 6}}, {"a", {8, 4}}, {"d", {8, 4}},
        {"e", {8, 8}},   {"h", {8, 8}}};
};

Cell mirror(Cell c) { return {16 - c.row, c.col}; }

std::set<Cell> skeleton_coords(int m, int n) {
    std::set<Cell> coords;
    GridFrame frame = grid_frame(m, n);
    for (const Cell& c : frame.coords) coords.insert(c);
    for (int t = 1; t <= 2 * m - 1; ++t)
        for (int col = 2; col <= 8 * n + 2; ++col) coords.insert({6 * t + 2, col});
    for (int s = 1; s <= n - 1; ++s)
        for (int row = 2; row <= 12 * m + 2; ++row) coords.insert({row, 8 * s + 2});
    return coords;
}

}  // namespace

LabeledGraph reduce_batteries_to_grid(const BatteriesInstance& b) {
    b.check();
    int m = b.rows, n = b.cols;
    GadgetTables tables;
    LabeledGraph out;
    std::map<std::string, int> id_of;
    auto vertex = [&](const std::string& label) {
        auto it = id_of.find(label);
        if (it != id_of.end()) return it->second;
        int id = static_cast<int>(out.labels.size());
        id_of[label] = id;
        out.labels.push_back(label);
        return id;
    };
    auto skel_label = [](Cell c) {
        return "frame:(" + std::to_string(c.row) + "," + std::to_string(c.col) + ")";
    };
    std::vector<std::pair<int, int>> edges;

    std::set<Cell> skel = skeleton_coords(m, n);
    for (const Cell& c : skel) vertex(skel_label(c));
    for (const Cell& c : skel) {
        Cell rightc{c.row, c.col + 1}, down{c.row + 1, c.col};
        if (skel.count(rightc)) edges.emplace_back(vertex(skel_label(c)), vertex(skel_label(rightc)));
        if (skel.count(down)) edges.emplace_back(vertex(skel_label(c)), vertex(skel_label(down)));
    }

    for (int i = 1; i <= m; ++i) {
        for (int j = 1; j <= n; ++j) {
            std::string prefix =
                "gadget:(" + std::to_string(i) + "," + std::to_string(j) + "):";
            auto role = [&](const std::string& name) { return vertex(prefix + name); };
            Cell offset{12 * (i - 1), 8 * (j - 1)};
            for (const auto& [name, cell] : tables.p_top) role(name);
            for (const auto& [name, cell] : tables.n_top) role(name);
            for (const auto& [name, cell] : tables.tees) role(name);
            for (const auto& [x, y] : tables.p_edges) edges.emplace_back(role(x), role(y));
            for (const auto& [x, y] : tables.n_edges) edges.emplace_back(role(x), role(y));
            for (const auto& [x, y] : tables.tee_edges) edges.emplace_back(role(x), role(y));
            auto [x1, x2] = b.cells[i - 1][j - 1];
            if (x1 == 1)
                edges.emplace_back(role(tables.p_voltage.first), role(tables.p_voltage.second));
            if (x2 == 1)
                edges.emplace_back(role(tables.n_voltage.first), role(tables.n_voltage.second));
            for (const auto& [name, cell] : tables.anchors) {
                Cell s{cell.row + offset.row, cell.col + offset.col};
                edges.emplace_back(role(name), vertex(skel_label(s)));
            }
        }
    }
    // Shared synchronization vertices between vertical neighbors.
    for (int i = 1; i <= m - 1; ++i) {
        for (int j = 1; j <= n; ++j) {
            for (int l = 1; l <= 3; ++l) {
                std::string label = "sync:(" + std::to_string(i) + "," + std::to_string(j) +
                                    "):" + std::to_string(l);
                Cell base{12 * i + 2, 8 * (j - 1) + 4 + l};
                edges.emplace_back(vertex(label), vertex(skel_label(base)));
            }
        }
    }
    // Shared wire vertices along each row.
    for (int i = 1; i <= m; ++i) {
        for (int j = 0; j <= n; ++j) {
            std::string label = "wire:(" + std::to_string(i) + "," + std::to_string(j) + ")";
            Cell base{12 * (i - 1) + 7, j == 0 ? 2 : 8 * j + 2};
            edges.emplace_back(vertex(label), vertex(skel_label(base)));
        }
    }
    out.graph = Graph::make(static_cast<int>(out.labels.size()), std::move(edges));
    return out;
}

GridEmbedding construct_batteries_witness(const BatteriesInstance& b, const Placement& p) {
    auto check = placement_check(b, p);
    if (!check.correct || !check.safe)
        throw GridbedError("construct_batteries_witness: placement must be correct and safe");
    int m = b.rows, n = b.cols;
    LabeledGraph lg = reduce_batteries_to_grid(b);
    GadgetTables tables;

    // Per-row zero-voltage column k_i (smallest), per the safety condition.
    std::vector<int> zero_col(m, -1);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            int v = p.p[i][j] ? b.cells[i][j].first : b.cells[i][j].second;
            if (v == 0) {
                zero_col[i] = j;
                break;
            }
        }
        if (zero_col[i] < 0)
            throw GridbedError("construct_batteries_witness: no zero-voltage column in row " +
                               std::to_string(i + 1));
    }

    GridEmbedding f;
    f.k = 12 * m + 5;
    f.r = 8 * n + 5;
    auto place = [&](const std::string& label, Cell paper) {
        f.place(lg.label_id(label), {paper.row + 1, paper.col + 1});
    };
    auto skel_label = [](Cell c) {
        return "frame:(" + std::to_string(c.row) + "," + std::to_string(c.col) + ")";
    };
    for (const Cell& c : skeleton_coords(m, n)) place(skel_label(c), c);

    for (int i = 1; i <= m; ++i) {
        for (int j = 1; j <= n; ++j) {
            std::string prefix =
                "gadget:(" + std::to_string(i) + "," + std::to_string(j) + "):";
            Cell offset{12 * (i - 1), 8 * (j - 1)};
            bool plus = p.p[i - 1][j - 1];
            auto put = [&](const std::string& name, Cell local) {
                place(prefix + name, {local.row + offset.row, local.col + offset.col});
            };
            for (const auto& [name, cell] : tables.p_top) put(name, plus ? cell : mirror(cell));
            for (const auto& [name, cell] : tables.n_top) put(name, plus ? mirror(cell) : cell);
            for (const auto& [name, cell] : tables.tees) put(name, cell);
        }
    }
    for (int i = 1; i <= m - 1; ++i) {
        for (int j = 1; j <= n; ++j) {
            bool plus = p.p[0][j - 1];  // correct placement: column-uniform
            int base_col = 8 * (j - 1) + 4;
            // Pattern derived from the side footprints: with + on top the
            // shared sync triple sits (up, down, up), mirrored otherwise.
            int rows_plus[3] = {12 * i + 1, 12 * i + 3, 12 * i + 1};
            int rows_minus[3] = {12 * i + 3, 12 * i + 1, 12 * i + 3};
            for (int l = 1; l <= 3; ++l) {
                std::string label = "sync:(" + std::to_string(i) + "," + std::to_string(j) +
                                    "):" + std::to_string(l);
                place(label, {(plus ? rows_plus : rows_minus)[l - 1], base_col + l});
            }
        }
    }
    for (int i = 1; i <= m; ++i) {
        int row = 12 * (i - 1) + 7;
        for (int j = 0; j <= n; ++j) {
            std::string label = "wire:(" + std::to_string(i) + "," + std::to_string(j) + ")";
            int col;
            if (j == 0)
                col = 3;
            else if (j - 1 < zero_col[i - 1])
                col = 8 * j + 3;  // pushed into the next gadget
            else
                col = 8 * j + 1;  // inside gadget j
            place(label, {row, col});
        }
    }
    auto valid = validate(lg.graph, f);
    if (!valid.ok)
        throw GridbedError("construct_batteries_witness: internal witness invalid: " +
                           valid.reason);
    return f;
}

ThreePartitionOutput reduce_3partition(const ThreePartitionInstance& inst) {
    if (inst.weights.empty() || inst.weights.size() % 3 != 0)
        throw GridbedError("reduce_3partition: weight count must be a positive multiple of 3");
    int m = static_cast<int>(inst.weights.size()) / 3;
    long long total = std::accumulate(inst.weights.begin(), inst.weights.end(), 0ll);
    if (total % m != 0) throw GridbedError("reduce_3partition: sum not divisible by m");
    for (long long w : inst.weights)
        if (w <= 0) throw GridbedError("reduce_3partition: weights must be positive");

    ThreePartitionOutput out;
    out.norm_weights = inst.weights;
    long long target = total / m;
    if (!inst.normalized) {
        for (auto& w : out.norm_weights) w += total;
        target += 3 * total;
    }
    out.target = target;
    long long width = target + 4;
    out.r = m * width;

    std::vector<std::pair<int, int>> edges;
    long long n_container = 2 * width;
    long long base_paths = m * n_container;
    long long total_vertices = base_paths;
    for (long long w : out.norm_weights) total_vertices += w;
    if (total_vertices > 2'000'000)
        throw GridbedError("reduce_3partition: output too large");

    auto c_id = [&](int j, long long i) { return (j - 1) * n_container + (i - 1); };
    auto s_id = [&](int j, long long i) { return (j - 1) * n_container + width + (i - 1); };
    for (int j = 1; j <= m; ++j) {
        for (long long i = 1; i <= width - 1; ++i) edges.emplace_back(c_id(j, i), c_id(j, i + 1));
        for (long long i = 2; i <= width - 1; ++i) edges.emplace_back(c_id(j, i), s_id(j, i));
        for (long long i = 2; i <= width - 2; ++i) edges.emplace_back(s_id(j, i), s_id(j, i + 1));
        edges.emplace_back(c_id(j, 2), s_id(j, 1));
        edges.emplace_back(c_id(j, width - 1), s_id(j, width));
    }
    long long cursor = base_paths;
    for (long long w : out.norm_weights) {
        for (long long i = 0; i + 1 < w; ++i)
            edges.emplace_back(static_cast<int>(cursor + i), static_cast<int>(cursor + i + 1));
        cursor += w;
    }
    out.graph = Graph::make(static_cast<int>(total_vertices), std::move(edges));
    return out;
}

GridEmbedding construct_3partition_witness(const ThreePartitionInstance& inst,
                                           const std::vector<std::array<int, 3>>& partition) {
    ThreePartitionOutput red = reduce_3partition(inst);
    int m = static_cast<int>(inst.weights.size()) / 3;
    if (static_cast<int>(partition.size()) != m)
        throw GridbedError("construct_3partition_witness: wrong number of triples");
    std::vector<int> used(inst.weights.size(), 0);
    for (const auto& triple : partition) {
        long long sum = 0;
        for (int idx : triple) {
            if (idx < 0 || idx >= static_cast<int>(inst.weights.size()) || used[idx])
                throw GridbedError("construct_3partition_witness: invalid partition");
            used[idx] = 1;
            sum += red.norm_weights[idx];
        }
        if (sum != red.target)
            throw GridbedError("construct_3partition_witness: triple does not sum to B");
    }

    long long width = red.target + 4;
    long long n_container = 2 * width;
    auto c_id = [&](int j, long long i) { return (j - 1) * n_container + (i - 1); };
    auto s_id = [&](int j, long long i) { return (j - 1) * n_container + width + (i - 1); };
    std::vector<long long> path_base(inst.weights.size());
    {
        long long cursor = m * n_container;
        for (size_t idx = 0; idx < red.norm_weights.size(); ++idx) {
            path_base[idx] = cursor;
            cursor += red.norm_weights[idx];
        }
    }
    GridEmbedding f;
    f.k = 3;
    f.r = static_cast<int>(red.r);
    for (int j = 1; j <= m; ++j) {
        long long col0 = (j - 1) * width;
        for (long long i = 1; i <= width; ++i)
            f.place(c_id(j, i), {2, static_cast<int>(col0 + i)});
        for (long long i = 2; i <= width - 1; ++i)
            f.place(s_id(j, i), {3, static_cast<int>(col0 + i)});
        f.place(s_id(j, 1), {1, static_cast<int>(col0 + 2)});
        f.place(s_id(j, width), {1, static_cast<int>(col0 + width - 1)});
        long long shift = 0;
        for (int slot = 0; slot < 3; ++slot) {
            int idx = partition[j - 1][slot];
            long long w = red.norm_weights[idx];
            for (long long i = 1; i <= w; ++i)
                f.place(static_cast<int>(path_base[idx] + i - 1),
                        {1, static_cast<int>(col0 + 2 + shift + i)});
            shift += w;
        }
    }
    auto valid = validate(red.graph, f);
    if (!valid.ok)
        throw GridbedError("construct_3partition_witness: internal witness invalid: " +
                           valid.reason);
    return f;
}

namespace {

struct NaesatIds {
    // Helpers to build/label the construction deterministically.
    static std::string b(int i) { return "b:" + std::to_string(i); }
    static std::string bp(int i) { return "bp:" + std::to_string(i); }
    static std::string star(const std::string& which, int leaf) {
        return which + ":" + (leaf == 0 ? "*" : std::to_string(leaf));
    }
    static std::string v(int i, int j, bool neg) {
        return (neg ? "vb:" : "v:") + std::to_string(i) + ":" + std::to_string(j);
    }
    static std::string u(int i, int j, bool neg, bool second) {
        std::string base = neg ? "ub" : "u";
        if (second) base += "2";
        return base + ":" + std::to_string(i) + ":" + std::to_string(j);
    }
};

bool literal_in_clause(const CnfFormula& pi, int clause, int lit) {
    for (int l : pi.clauses[clause])
        if (l == lit) return true;
    return false;
}

}  // namespace

NaesatOutput reduce_naesat(const CnfFormula& pi) {
    pi.check();
    if (pi.clauses.empty()) throw GridbedError("reduce_naesat: no clauses");
    int n = pi.num_vars, m = static_cast<int>(pi.clauses.size());
    NaesatOutput out;
    std::map<std::string, int> id_of;
    auto vertex = [&](const std::string& label) {
        auto it = id_of.find(label);
        if (it != id_of.end()) return it->second;
        int id = static_cast<int>(out.labels.size());
        id_of[label] = id;
        out.labels.push_back(label);
        return id;
    };
    std::vector<std::pair<int, int>> edges;
    // Base path b0 - b0' - b1 - ... - bn - bn' - b(n+1).
    for (int i = 0; i <= n; ++i) {
        edges.emplace_back(vertex(NaesatIds::b(i)), vertex(NaesatIds::bp(i)));
        edges.emplace_back(vertex(NaesatIds::bp(i)), vertex(NaesatIds::b(i + 1)));
    }
    // Stars.
    for (int leaf = 1; leaf <= 4; ++leaf) {
        edges.emplace_back(vertex(NaesatIds::star("s", 0)), vertex(NaesatIds::star("s", leaf)));
        edges.emplace_back(vertex(NaesatIds::star("t", 0)), vertex(NaesatIds::star("t", leaf)));
    }
    edges.emplace_back(vertex(NaesatIds::b(0)), vertex(NaesatIds::star("s", 1)));
    edges.emplace_back(vertex(NaesatIds::b(n + 1)), vertex(NaesatIds::star("t", 1)));
    // Caterpillars.
    for (int i = 0; i <= n + 1; ++i) {
        for (bool neg : {false, true}) {
            for (int j = 1; j <= 2 * m; ++j)
                edges.emplace_back(vertex(NaesatIds::v(i, j, neg)),
                                   vertex(NaesatIds::v(i, j + 1, neg)));
            edges.emplace_back(vertex(NaesatIds::b(i)), vertex(NaesatIds::v(i, 1, neg)));
            if (i == 0 || i == n + 1) {
                for (int j = 1; j <= 2 * m; ++j) {
                    edges.emplace_back(vertex(NaesatIds::u(i, j, neg, false)),
                                       vertex(NaesatIds::v(i, j, neg)));
                    edges.emplace_back(vertex(NaesatIds::u(i, j, neg, true)),
                                       vertex(NaesatIds::v(i, j, neg)));
                }
            } else {
                for (int j = 1; j <= 2 * m - 1; j += 2) {
                    int clause = (j + 1) / 2 - 1;
                    int lit = neg ? -i : i;
                    if (!literal_in_clause(pi, clause, lit))
                        edges.emplace_back(vertex(NaesatIds::u(i, j, neg, false)),
                                           vertex(NaesatIds::v(i, j, neg)));
                }
                if (i <= n - 1)
                    for (int j = 2; j <= 2 * m; j += 2)
                        edges.emplace_back(vertex(NaesatIds::u(i, j, neg, false)),
                                           vertex(NaesatIds::v(i, j, neg)));
            }
        }
    }
    out.graph = Graph::make(static_cast<int>(out.labels.size()), std::move(edges));
    if (!is_tree(out.graph)) throw GridbedError("reduce_naesat: internal: output is not a tree");
    return out;
}

GridEmbedding construct_naesat_witness(const CnfFormula& pi, const std::vector<bool>& alpha) {
    pi.check();
    if (static_cast<int>(alpha.size()) != pi.num_vars)
        throw GridbedError("construct_naesat_witness: assignment size mismatch");
    int n = pi.num_vars, m = static_cast<int>(pi.clauses.size());
    for (int c = 0; c < m; ++c) {
        bool has_true = false, has_false = false;
        for (int lit : pi.clauses[c]) {
            bool val = lit > 0 ? alpha[lit - 1] : !alpha[-lit - 1];
            (val ? has_true : has_false) = true;
        }
        if (!has_true || !has_false)
            throw GridbedError("construct_naesat_witness: assignment is not NAE-satisfying");
    }
    NaesatOutput red = reduce_naesat(pi);
    int R = 2 * m + 2;
    GridEmbedding f;
    f.k = 4 * m + 3;
    f.r = 2 * n + 9;
    auto place = [&](const std::string& label, int row, int col) {
        f.place(red.label_id(label), {row, col});
    };
    auto bcol = [&](int i) { return 4 + 2 * i; };

    place(NaesatIds::star("s", 3), R, 1);
    place(NaesatIds::star("s", 0), R, 2);
    place(NaesatIds::star("s", 1), R, 3);
    place(NaesatIds::star("s", 2), R - 1, 2);
    place(NaesatIds::star("s", 4), R + 1, 2);
    place(NaesatIds::star("t", 1), R, 2 * n + 7);
    place(NaesatIds::star("t", 0), R, 2 * n + 8);
    place(NaesatIds::star("t", 3), R, 2 * n + 9);
    place(NaesatIds::star("t", 2), R - 1, 2 * n + 8);
    place(NaesatIds::star("t", 4), R + 1, 2 * n + 8);
    for (int i = 0; i <= n + 1; ++i) place(NaesatIds::b(i), R, bcol(i));
    for (int i = 0; i <= n; ++i) place(NaesatIds::bp(i), R, bcol(i) + 1);

    // Orientation: which caterpillar of column i goes above the base path.
    auto up_is_neg = [&](int i) {
        if (i == 0 || i == n + 1) return false;
        return !alpha[i - 1];
    };
    for (int i = 0; i <= n + 1; ++i) {
        bool neg_up = up_is_neg(i);
        for (int j = 1; j <= 2 * m + 1; ++j) {
            place(NaesatIds::v(i, j, neg_up), R - j, bcol(i));
            place(NaesatIds::v(i, j, !neg_up), R + j, bcol(i));
        }
    }
    // Boundary twin leaves: one left, one right, every rung.
    for (int i : {0, n + 1}) {
        bool neg_up = false;
        for (int j = 1; j <= 2 * m; ++j) {
            place(NaesatIds::u(i, j, neg_up, false), R - j, bcol(i) - 1);
            place(NaesatIds::u(i, j, neg_up, true), R - j, bcol(i) + 1);
            place(NaesatIds::u(i, j, !neg_up, false), R + j, bcol(i) - 1);
            place(NaesatIds::u(i, j, !neg_up, true), R + j, bcol(i) + 1);
        }
    }
    // Even leaves cascade to the right of their main path.
    for (int i = 1; i <= n - 1; ++i) {
        bool neg_up = up_is_neg(i);
        for (int j = 2; j <= 2 * m; j += 2) {
            place(NaesatIds::u(i, j, neg_up, false), R - j, bcol(i) + 1);
            place(NaesatIds::u(i, j, !neg_up, false), R + j, bcol(i) + 1);
        }
    }
    // Odd (clause) leaves split around the free position of each row.
    for (int j = 1; j <= 2 * m - 1; j += 2) {
        int clause = (j + 1) / 2 - 1;
        for (bool below : {false, true}) {
            // Leaf existence along this row.
            std::vector<bool> has_leaf(n + 1, false);
            int free_pos = -1;
            for (int i = 1; i <= n; ++i) {
                bool neg_side = below ? !up_is_neg(i) : up_is_neg(i);
                int lit = neg_side ? -i : i;
                has_leaf[i] = !literal_in_clause(pi, clause, lit);
                if (!has_leaf[i] && free_pos < 0) free_pos = i;
            }
            if (free_pos < 0)
                throw GridbedError("construct_naesat_witness: internal: no free position");
            for (int i = 1; i <= n; ++i) {
                if (!has_leaf[i]) continue;
                bool neg_side = below ? !up_is_neg(i) : up_is_neg(i);
                int row = below ? R + j : R - j;
                int col = i < free_pos ? bcol(i) + 1 : bcol(i) - 1;
                place(NaesatIds::u(i, j, neg_side, false), row, col);
            }
        }
    }
    auto valid = validate(red.graph, f);
    if (!valid.ok)
        throw GridbedError("construct_naesat_witness: internal witness invalid: " + valid.reason);
    return f;
}

StripPackResult strip_pack(const std::vector<std::pair<int, int>>& rects, int k, int w_strip,
                           std::uint64_t budget) {
    StripPackResult out;
    if (k < 1 || w_strip < 1) throw GridbedError("strip_pack: strip dimensions must be positive");
    for (auto [h, w] : rects)
        if (h < 1 || w < 1) throw GridbedError("strip_pack: rectangle dimensions must be positive");
    bool doubled = false;
    for (auto [h, w] : rects)
        if (h == 1 || w == 1) doubled = true;
    out.doubled = doubled;
    int scale = doubled ? 2 : 1;
    int kk = k * scale, ww = w_strip * scale;

    Graph g = Graph::make(0, {});
    std::vector<std::pair<int, int>> dims;  // scaled, normalized length <= breadth
    std::vector<int> base;
    for (auto [h, w] : rects) {
        int hh = h * scale, www = w * scale;
        int length = std::min(hh, www), breadth = std::max(hh, www);
        dims.push_back({length, breadth});
        base.push_back(g.n);
        std::vector<std::pair<int, int>> es;
        for (int row = 0; row < length; ++row)
            for (int col = 0; col < breadth; ++col) {
                int idx = row * breadth + col;
                if (col + 1 < breadth) es.emplace_back(idx, idx + 1);
                if (row + 1 < length) es.emplace_back(idx, idx + breadth);
            }
        g = disjoint_union(g, Graph::make(length * breadth, std::move(es)));
    }
    auto solved = solve_mcc_k(g, kk, ww, budget);
    out.answer = solved.result.answer;
    if (out.answer != Answer::yes) return out;
    const GridEmbedding& f = *solved.result.witness;
    for (size_t i = 0; i < rects.size(); ++i) {
        int minr = 1 << 28, minc = 1 << 28, maxr = -1, maxc = -1;
        int count = dims[i].first * dims[i].second;
        for (int v = base[i]; v < base[i] + count; ++v) {
            Cell c = f.at(v);
            minr = std::min(minr, c.row);
            maxr = std::max(maxr, c.row);
            minc = std::min(minc, c.col);
            maxc = std::max(maxc, c.col);
        }
        RectPlacement pl;
        pl.index = static_cast<int>(i);
        pl.row = minr;
        pl.col = minc;
        pl.rotated = (maxr - minr + 1) != dims[i].first;
        out.placements.push_back(pl);
    }
    return out;
}

}  // namespace gridbed
