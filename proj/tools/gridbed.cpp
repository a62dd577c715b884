#include <array>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gridbed/distance_solver.hpp"
#include "gridbed/io.hpp"
#include "gridbed/oracle.hpp"
#include "gridbed/reductions.hpp"
#include "gridbed/render.hpp"
#include "gridbed/snapshot.hpp"
#include "gridbed/tree_solver.hpp"

namespace {

using namespace gridbed;

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitInputError = 3;

std::uint64_t default_budget() {
    if (const char* env = std::getenv("GRIDBED_BUDGET")) {
        try {
            return std::stoull(env);
        } catch (...) {
            throw GridbedError("GRIDBED_BUDGET is not a number");
        }
    }
    return kDefaultBudget;
}

int exit_code(Answer a) {
    switch (a) {
        case Answer::yes: return kExitYes;
        case Answer::no: return kExitNo;
        case Answer::unknown: return kExitUnknown;
    }
    return kExitUnknown;
}

struct SolveArgs {
    std::string graph_file;
    int k = 0, r = 0;
    std::string algo = "auto";
    std::uint64_t budget = 0;
    std::string witness_out;
};

int run_solve(const SolveArgs& args) {
    ParsedGraph pg = parse_graph(read_file(args.graph_file));
    const Graph& g = pg.graph;
    std::uint64_t budget = args.budget ? args.budget : default_budget();

    auto filter = grid_necessary_filter(g);
    if (!filter.pass) {
        std::cout << "no (" << filter.reason << ")\n";
        return kExitNo;
    }

    SolveResult res;
    std::string used;
    auto run_one = [&](const std::string& algo) -> SolveResult {
        if (algo == "brute") return brute_force_embed(g, args.k, args.r, budget);
        if (algo == "snapshot") return solve_mcc_k(g, args.k, args.r, budget).result;
        if (algo == "dp") {
            if (!is_connected(g)) throw GridbedError("dp solver requires a connected graph");
            return solve_distance_fpt(g, args.k, args.r, budget);
        }
        if (algo == "tree") {
            if (!is_tree(g)) throw GridbedError("tree solver requires a tree");
            return solve_tree(g, args.k, args.r, budget).result;
        }
        throw GridbedError("unknown algorithm: " + algo);
    };

    if (args.algo != "auto") {
        used = args.algo;
        res = run_one(args.algo);
    } else if (is_tree(g)) {
        used = "tree";
        res = run_one("tree");
        if (res.answer == Answer::unknown) {
            used = "tree+dp";
            res = run_one("dp");
        }
    } else if (!is_connected(g)) {
        used = "snapshot";
        res = run_one("snapshot");
    } else {
        used = "dp";
        res = run_one("dp");
    }
    if (res.answer == Answer::unknown) {
        auto fallback = brute_force_embed(g, args.k, args.r, budget);
        if (fallback.answer != Answer::unknown) {
            used += "+brute";
            res = fallback;
        }
    }

    const char* names[] = {"yes", "no", "unknown"};
    std::cout << names[static_cast<int>(res.answer)] << " algo=" << used
              << " nodes=" << res.stats.nodes;
    if (res.achieved_a >= 0 && res.answer == Answer::yes) std::cout << " a=" << res.achieved_a;
    std::cout << "\n";
    if (res.answer == Answer::yes && !args.witness_out.empty()) {
        write_file(args.witness_out, serialize_embedding(*res.witness));
        std::cout << "witness written to " << args.witness_out << "\n";
    }
    return exit_code(res.answer);
}

std::vector<bool> brute_force_sat(const CnfFormula& pi, bool nae, bool* found) {
    *found = false;
    for (std::uint32_t mask = 0; mask < (1u << pi.num_vars); ++mask) {
        bool ok = true;
        for (const auto& clause : pi.clauses) {
            bool has_true = false, has_false = false;
            for (int lit : clause) {
                bool val = lit > 0 ? (mask >> (lit - 1) & 1) : !(mask >> (-lit - 1) & 1);
                (val ? has_true : has_false) = true;
            }
            if (!has_true || (nae && !has_false)) {
                ok = false;
                break;
            }
        }
        if (ok) {
            *found = true;
            std::vector<bool> alpha(pi.num_vars);
            for (int i = 0; i < pi.num_vars; ++i) alpha[i] = mask >> i & 1;
            return alpha;
        }
    }
    return {};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gridbed: exact k x r grid-graph embedding toolkit"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    auto* solve_cmd = app.add_subcommand("solve", "decide k x r embeddability");
    solve_cmd->add_option("--graph", solve_args.graph_file)->required();
    solve_cmd->add_option("--k", solve_args.k)->required();
    solve_cmd->add_option("--r", solve_args.r)->required();
    solve_cmd->add_option("--algo", solve_args.algo)
        ->check(CLI::IsMember({"auto", "brute", "snapshot", "dp", "tree"}));
    solve_cmd->add_option("--budget", solve_args.budget);
    solve_cmd->add_option("--witness-out", solve_args.witness_out);

    std::string check_graph, check_embedding;
    auto* check_cmd = app.add_subcommand("check", "validate an embedding");
    check_cmd->add_option("--graph", check_graph)->required();
    check_cmd->add_option("--embedding", check_embedding)->required();

    std::string af_graph, af_embedding;
    bool af_min = false;
    int af_k = 0, af_r = 0;
    auto* af_cmd = app.add_subcommand("afparam", "distance approximation of an embedding");
    af_cmd->add_option("--graph", af_graph)->required();
    af_cmd->add_option("--embedding", af_embedding);
    af_cmd->add_flag("--min", af_min, "compute a_G(k,r) by exhaustive search");
    af_cmd->add_option("--k", af_k);
    af_cmd->add_option("--r", af_r);

    auto* gen_cmd = app.add_subcommand("gen", "instance generators");
    gen_cmd->require_subcommand(1);
    std::string gen_in, gen_out, gen_witness;
    auto add_gen = [&](const std::string& name, const std::string& desc) {
        auto* cmd = gen_cmd->add_subcommand(name, desc);
        cmd->add_option("--in", gen_in)->required();
        cmd->add_option("--out", gen_out)->required();
        cmd->add_option("--with-witness", gen_witness);
        return cmd;
    };
    auto* gen_s2b = add_gen("sat2batteries", "SAT -> Batteries");
    auto* gen_b2g = add_gen("batteries2grid", "Batteries -> Grid Embedding");
    auto* gen_3p = add_gen("3partition", "3-Partition -> 3 x r instance");
    auto* gen_nae = add_gen("naesat", "NAE-SAT -> tree instance");

    std::string sp_file, sp_witness;
    auto* sp_cmd = app.add_subcommand("strip-pack", "2-strip packing via grid embedding");
    sp_cmd->add_option("--rects", sp_file)->required();
    sp_cmd->add_option("--witness-out", sp_witness);

    std::string render_graph, render_embedding, render_format = "ascii", render_out;
    auto* render_cmd = app.add_subcommand("render", "draw an embedding");
    render_cmd->add_option("--graph", render_graph)->required();
    render_cmd->add_option("--embedding", render_embedding)->required();
    render_cmd->add_option("--format", render_format)->check(CLI::IsMember({"ascii", "svg"}));
    render_cmd->add_option("--out", render_out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve_cmd->parsed()) return run_solve(solve_args);

        if (check_cmd->parsed()) {
            ParsedGraph pg = parse_graph(read_file(check_graph));
            GridEmbedding f = parse_embedding(read_file(check_embedding));
            auto v = validate(pg.graph, f);
            std::cout << (v.ok ? "valid" : "invalid: " + v.reason) << "\n";
            return v.ok ? kExitYes : kExitNo;
        }

        if (af_cmd->parsed()) {
            ParsedGraph pg = parse_graph(read_file(af_graph));
            if (af_min) {
                if (af_k < 1 || af_r < 1) throw GridbedError("--min requires --k and --r");
                auto res = min_distance_approximation(pg.graph, af_k, af_r, default_budget());
                if (res.status == Answer::unknown) {
                    std::cout << "unknown (budget)\n";
                    return kExitUnknown;
                }
                std::cout << "a_G = " << res.value << "\n";
                return kExitYes;
            }
            if (af_embedding.empty()) throw GridbedError("need --embedding or --min");
            GridEmbedding f = parse_embedding(read_file(af_embedding));
            auto v = validate(pg.graph, f);
            if (!v.ok) throw GridbedError("embedding invalid: " + v.reason);
            auto rep = distance_approximation(pg.graph, f);
            std::cout << "a_f = " << rep.a_f << " witness pair (" << rep.witness_u << ","
                      << rep.witness_v << ")\n";
            return kExitYes;
        }

        if (gen_s2b->parsed()) {
            CnfFormula pi = parse_dimacs(read_file(gen_in));
            BatteriesInstance b = reduce_sat_to_batteries(pi);
            write_file(gen_out, serialize_batteries(b));
            if (!gen_witness.empty()) {
                auto ans = batteries_brute_force(b);
                if (ans.answer != Answer::yes)
                    throw GridbedError("--with-witness: instance is not a yes-instance");
                std::ostringstream w;
                w << "# correct and safe placement, one row per battery row, + or -\n";
                for (const auto& row : ans.witness->p) {
                    for (bool plus : row) w << (plus ? '+' : '-');
                    w << "\n";
                }
                write_file(gen_witness, w.str());
            }
            return kExitYes;
        }
        if (gen_b2g->parsed()) {
            BatteriesInstance b = parse_batteries(read_file(gen_in));
            LabeledGraph lg = reduce_batteries_to_grid(b);
            std::ostringstream g;
            g << "# vertex labels:\n";
            for (size_t i = 0; i < lg.labels.size(); ++i)
                g << "# " << i << " = " << lg.labels[i] << "\n";
            g << serialize_graph(lg.graph);
            write_file(gen_out, g.str());
            if (!gen_witness.empty()) {
                auto ans = batteries_brute_force(b);
                if (ans.answer != Answer::yes)
                    throw GridbedError("--with-witness: instance is not a yes-instance");
                auto f = construct_batteries_witness(b, *ans.witness);
                write_file(gen_witness, serialize_embedding(f));
            }
            return kExitYes;
        }
        if (gen_3p->parsed()) {
            ThreePartitionInstance inst = parse_3partition(read_file(gen_in));
            auto red = reduce_3partition(inst);
            std::ostringstream g;
            g << "# k = 3, r = " << red.r << "\n" << serialize_graph(red.graph);
            write_file(gen_out, g.str());
            if (!gen_witness.empty()) {
                // Brute-force a valid partition into triples.
                int m = static_cast<int>(inst.weights.size()) / 3;
                std::vector<int> idx(inst.weights.size());
                std::vector<std::array<int, 3>> triples;
                std::vector<bool> used(inst.weights.size(), false);
                std::function<bool(int)> pick = [&](int done) -> bool {
                    if (done == m) return true;
                    int first = -1;
                    for (size_t i = 0; i < used.size(); ++i)
                        if (!used[i]) {
                            first = static_cast<int>(i);
                            break;
                        }
                    used[first] = true;
                    for (size_t a = first + 1; a < used.size(); ++a) {
                        if (used[a]) continue;
                        used[a] = true;
                        for (size_t b2 = a + 1; b2 < used.size(); ++b2) {
                            if (used[b2]) continue;
                            if (red.norm_weights[first] + red.norm_weights[a] +
                                    red.norm_weights[b2] !=
                                red.target)
                                continue;
                            used[b2] = true;
                            triples.push_back({first, static_cast<int>(a), static_cast<int>(b2)});
                            if (pick(done + 1)) return true;
                            triples.pop_back();
                            used[b2] = false;
                        }
                        used[a] = false;
                    }
                    used[first] = false;
                    return false;
                };
                if (!pick(0)) throw GridbedError("--with-witness: instance is not a yes-instance");
                auto f = construct_3partition_witness(inst, triples);
                write_file(gen_witness, serialize_embedding(f));
            }
            return kExitYes;
        }
        if (gen_nae->parsed()) {
            CnfFormula pi = parse_dimacs(read_file(gen_in));
            pi.nae = true;
            NaesatOutput red = reduce_naesat(pi);
            std::ostringstream g;
            g << "# vertex labels:\n";
            for (size_t i = 0; i < red.labels.size(); ++i)
                g << "# " << i << " = " << red.labels[i] << "\n";
            g << serialize_graph(red.graph);
            write_file(gen_out, g.str());
            if (!gen_witness.empty()) {
                bool found;
                auto alpha = brute_force_sat(pi, true, &found);
                if (!found) throw GridbedError("--with-witness: instance is not NAE-satisfiable");
                auto f = construct_naesat_witness(pi, alpha);
                write_file(gen_witness, serialize_embedding(f));
            }
            return kExitYes;
        }

        if (sp_cmd->parsed()) {
            StripPackInput input = parse_rects(read_file(sp_file));
            auto res = strip_pack(input.rects, input.k, input.w, default_budget());
            const char* names[] = {"yes", "no", "unknown"};
            std::cout << names[static_cast<int>(res.answer)];
            if (res.doubled) std::cout << " (dimensions doubled)";
            std::cout << "\n";
            for (const auto& pl : res.placements)
                std::cout << "rect " << pl.index << " at (" << pl.row << "," << pl.col << ")"
                          << (pl.rotated ? " rotated" : "") << "\n";
            return exit_code(res.answer);
        }

        if (render_cmd->parsed()) {
            ParsedGraph pg = parse_graph(read_file(render_graph));
            GridEmbedding f = parse_embedding(read_file(render_embedding));
            std::string output = render_format == "svg" ? render_svg(pg.graph, f)
                                                        : render_ascii(pg.graph, f);
            if (render_out.empty())
                std::cout << output;
            else
                write_file(render_out, output);
            return kExitYes;
        }
    } catch (const GridbedError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
