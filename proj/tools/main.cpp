// Command-line workflow: build a design hierarchy, embed it in the Poincare
// disk, optimize against a fitness evaluator, compare optimizers on the
// planted benchmark, and export SVG views.
//
// Exit codes: 0 success, 1 validation error, 2 embedding-check failure,
// 3 evaluator failure.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "herd/clustering.hpp"
#include "herd/compare.hpp"
#include "herd/embedding.hpp"
#include "herd/optimizer.hpp"
#include "herd/subprocess.hpp"
#include "herd/svg.hpp"

namespace fs = std::filesystem;
using namespace herd;

namespace {

struct EmbedCheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

GridShape parse_grid(const std::string& text) {
    const auto x = text.find('x');
    if (x == std::string::npos)
        throw std::invalid_argument("--grid expects ROWSxCOLS, e.g. 5x5");
    GridShape shape;
    shape.rows = std::stoi(text.substr(0, x));
    shape.cols = std::stoi(text.substr(x + 1));
    shape.validate();
    return shape;
}

std::vector<int> parse_levels(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    return out;
}

std::vector<CellType> parse_types(const std::string& text) {
    std::vector<CellType> out;
    for (char c : text) out.push_back(cell_from_code(c));
    return out;
}

std::vector<std::string> parse_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(tok);
    return out;
}

void write_text(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Everything both the parser and the commands touch.
struct Options {
    std::string grid = "5x5";
    std::string levels = "1,2,4,8,16,25";
    int max_nodes = 20000;
    int max_children = 8;
    std::string types = "ERSHV";
    double tau = 1.0;
    int dim = 2;
    double curvature = 1.0;
    int pop = 10;
    int elite = 0;
    int iters = 60;
    double sigma_start = 0.2;
    double sigma_end = 0.01;
    uint64_t seed = 0;
    long budget = 0;
    std::string optimizer = "herd";
    std::string evaluator = "planted_node";
    std::string eval_cmd;
    double eval_timeout = 300.0;
    std::string target_file;
    int target_node = -1;
    double target_fraction = 0.4;
    std::string out = "out";
    std::string tree_file;
    std::string embedding_file;
    std::string log_file;
    std::string methods = "herd,flat_cem,c2f_ea,random";
    int seeds = 5;
    // The compare benchmark has its own desk-scale defaults (mirroring
    // BenchmarkConfig).
    std::string cmp_grid = "3x3";
    std::string cmp_levels = "1,3,9";
    std::string cmp_types = "ERH";
    int cmp_max_children = 4;
    int cmp_pop = 40;
    double cmp_tau = 0.35;
};

fs::path ensure_out(const Options& o) {
    fs::path dir(o.out);
    fs::create_directories(dir);
    return dir;
}

fs::path tree_path(const Options& o) {
    return o.tree_file.empty() ? fs::path(o.out) / "tree.json" : fs::path(o.tree_file);
}

fs::path embedding_path(const Options& o) {
    return o.embedding_file.empty() ? fs::path(o.out) / "embedding.json"
                                    : fs::path(o.embedding_file);
}

int cmd_build(const Options& o) {
    const auto dir = ensure_out(o);

    ClusterConfig ccfg;
    ccfg.levels = parse_levels(o.levels);
    ccfg.seed = o.seed;
    const GridShape shape = parse_grid(o.grid);
    const PartitionStack stack = nested_kmeans(shape, ccfg);

    TreeBuildConfig tcfg;
    tcfg.max_nodes = o.max_nodes;
    tcfg.max_children = o.max_children;
    tcfg.seed = o.seed + 1;
    tcfg.type_set = parse_types(o.types);
    const DesignTree tree = build_tree(stack, tcfg);

    save_tree(tree, (dir / "tree.json").string());

    std::vector<int> per_level(tree.depth() + 1, 0);
    for (const auto& n : tree.nodes()) per_level[n.level]++;
    std::cout << "tree: " << tree.size() << " nodes -> " << (dir / "tree.json").string() << "\n";
    for (size_t l = 0; l < per_level.size(); ++l)
        std::cout << "  level " << l << " (k="
                  << (l == 0 ? 0 : stack.level(static_cast<int>(l) - 1).k) << "): "
                  << per_level[l] << " nodes\n";
    return 0;
}

int cmd_embed(const Options& o) {
    const auto dir = ensure_out(o);
    const DesignTree tree = load_tree(tree_path(o).string());

    EmbedConfig cfg;
    cfg.tau = o.tau;
    cfg.ball.dim = o.dim;
    cfg.ball.curvature = o.curvature;

    const EmbeddingTable table = embed_tree(tree, cfg);
    save_embedding(table, (dir / "embedding.json").string());

    const EmbedReport rep = check_embedding(table, tree, cfg);
    std::cout << "embedding: " << table.size() << " points -> "
              << (dir / "embedding.json").string() << "\n";
    std::cout << "  max parent-child distance error: " << rep.max_parent_child_err << "\n";
    std::cout << "  norm monotone: " << (rep.norm_monotone ? "yes" : "no") << " ("
              << rep.norm_violations << "/" << rep.edges << " edges violate)\n";
    std::cout << "  min sibling separation: " << rep.min_sibling_separation << "\n";

    if (!rep.norm_monotone || rep.min_sibling_separation < 1e-6)
        throw EmbedCheckFailure(
            "embedding check failed: the tree needs a larger --tau (and possibly a smaller "
            "--max-children) for child norms to grow monotonically");
    return 0;
}

std::shared_ptr<Evaluator> evaluator_from_flags(const Options& o, const DesignTree* tree,
                                                const EmbeddingTable* table,
                                                int* planted_target) {
    EvaluatorSpec spec;
    spec.kind = EvaluatorSpec::kind_from_name(o.evaluator);
    spec.target_fraction = o.target_fraction;
    spec.command = o.eval_cmd;
    spec.timeout_secs = o.eval_timeout;

    if (spec.kind == EvaluatorSpec::Kind::pattern_match) {
        if (o.target_file.empty())
            throw std::invalid_argument("pattern_match needs --target-file");
        spec.target = parse_design(read_text(o.target_file));
    }
    if (spec.kind == EvaluatorSpec::Kind::planted_node) {
        if (!tree || !table)
            throw std::invalid_argument("planted_node needs --tree and --embedding");
        spec.target_node = o.target_node;
        if (spec.target_node < 0) {
            // Seeded draw among deepest-level nodes.
            std::vector<int> deep;
            for (const auto& n : tree->nodes())
                if (n.level == tree->depth()) deep.push_back(n.id);
            std::mt19937_64 rng(o.seed + 17);
            std::uniform_int_distribution<size_t> pick(0, deep.size() - 1);
            spec.target_node = deep[pick(rng)];
        }
        if (planted_target) *planted_target = spec.target_node;
    }
    return make_evaluator(spec, tree ? &tree->stack() : nullptr, table);
}

int cmd_optimize(const Options& o) {
    const auto dir = ensure_out(o);

    std::optional<DesignTree> tree;
    std::optional<EmbeddingTable> table;
    if (fs::exists(tree_path(o))) tree = load_tree(tree_path(o).string());
    if (fs::exists(embedding_path(o))) table = load_embedding(embedding_path(o).string());

    int planted_target = -1;
    auto inner = evaluator_from_flags(o, tree ? &*tree : nullptr, table ? &*table : nullptr,
                                      &planted_target);
    // Cache keys are design serializations, which is only sound for
    // design-based fitness (node-based fitness may differ across nodes that
    // render the same grid).
    std::shared_ptr<Evaluator> evaluator = inner;
    if (inner->design_based()) evaluator = std::make_shared<CachedEvaluator>(inner);
    if (planted_target >= 0)
        std::cout << "planted target node: " << planted_target << "\n";

    std::ofstream jsonl(dir / "run.jsonl", std::ios::binary);
    if (!jsonl) throw std::runtime_error("cannot write run.jsonl");
    IterationSink sink = [&jsonl](const IterationRecord& rec) {
        jsonl << iteration_to_jsonl(rec) << '\n';
        jsonl.flush();
    };

    CemConfig cem;
    cem.population = o.pop;
    cem.elite_count = o.elite;
    cem.iterations = o.budget > 0 ? static_cast<int>(o.budget / o.pop) : o.iters;
    cem.sigma_start = o.sigma_start;
    cem.sigma_end = o.sigma_end;
    cem.seed = o.seed;

    RunResult run;
    if (o.optimizer == "herd") {
        if (!tree || !table)
            throw std::invalid_argument("herd needs --tree and --embedding (run build + embed)");
        run = run_herd(*tree, *table, *evaluator, cem, sink);
    } else if (o.optimizer == "flat_cem") {
        const GridShape shape = tree ? tree->stack().shape() : parse_grid(o.grid);
        run = run_flat_cem(shape, parse_types(o.types), *evaluator, cem, sink);
    } else if (o.optimizer == "c2f_ea") {
        if (!tree) throw std::invalid_argument("c2f_ea needs --tree (run build)");
        EaConfig ea;
        ea.generations = o.budget > 0
                             ? std::max(1L, o.budget / ea.population)
                             : o.iters;
        ea.seed = o.seed;
        ea.type_set = parse_types(o.types);
        run = run_c2f_ea(tree->stack(), *evaluator, ea, sink);
    } else if (o.optimizer == "random") {
        const long budget = o.budget > 0 ? o.budget : static_cast<long>(o.pop) * o.iters;
        if (tree)
            run = run_random_tree(*tree, *evaluator, budget, o.seed, sink);
        else
            run = run_random_grid(parse_grid(o.grid), parse_types(o.types), *evaluator, budget,
                                  o.seed, sink);
    } else {
        throw std::invalid_argument("unknown --optimizer '" + o.optimizer + "'");
    }

    jsonl << final_to_jsonl(run) << '\n';
    jsonl.close();

    std::ofstream csv(dir / "run.csv", std::ios::binary);
    write_runlog_csv(run, csv);
    write_text(dir / "best.txt", serialize(run.best_design) + "\n");

    std::cout << "best node: " << run.best_node << "\n";
    std::cout << "best fitness: " << run.best_fitness << "\n";
    std::cout << "evaluations: " << run.evaluations << " (+" << run.final_evaluations
              << " final), cache hits: " << run.cache_hits << "\n";
    std::cout << "log: " << (dir / "run.jsonl").string() << ", summary: "
              << (dir / "run.csv").string() << ", best: " << (dir / "best.txt").string() << "\n";
    return 0;
}

int cmd_compare(const Options& o) {
    const auto dir = ensure_out(o);

    BenchmarkConfig base;
    base.shape = parse_grid(o.cmp_grid);
    base.levels = parse_levels(o.cmp_levels);
    base.type_set = parse_types(o.cmp_types);
    base.max_nodes = o.max_nodes;
    base.max_children = o.cmp_max_children;
    base.tau = o.cmp_tau;
    if (o.budget > 0) base.budget = o.budget;
    base.population = o.cmp_pop;

    const auto methods = parse_list(o.methods);
    std::vector<MethodResult> rows;
    for (const auto& method : methods) {
        for (int s = 0; s < o.seeds; ++s) {
            BenchmarkConfig cfg = base;
            cfg.seed = o.seed + static_cast<uint64_t>(s);
            rows.push_back(run_benchmark_method(method, cfg));
        }
    }

    std::ofstream csv(dir / "compare.csv", std::ios::binary);
    write_compare_csv(rows, csv);
    csv.close();

    for (const auto& method : methods) {
        std::vector<long> etb;
        double best = -std::numeric_limits<double>::infinity();
        int successes = 0, count = 0;
        for (const auto& r : rows)
            if (r.method == method) {
                count++;
                successes += r.success ? 1 : 0;
                etb.push_back(r.evals_to_best);
                best = std::max(best, r.best_fitness);
            }
        std::sort(etb.begin(), etb.end());
        const long median = etb.empty() ? 0 : etb[etb.size() / 2];
        std::cout << method << ": success " << successes << "/" << count
                  << ", median evals-to-best " << median << ", best fitness " << best << "\n";
    }
    std::cout << "csv: " << (dir / "compare.csv").string() << "\n";
    return 0;
}

int cmd_export_svg(const Options& o) {
    const auto dir = ensure_out(o);
    const DesignTree tree = load_tree(tree_path(o).string());
    const EmbeddingTable table = load_embedding(embedding_path(o).string());

    RunTrajectory traj;
    const RunTrajectory* traj_ptr = nullptr;
    if (!o.log_file.empty()) {
        traj = trajectory_from_jsonl(read_text(o.log_file), table.ball);
        traj_ptr = &traj;
    }

    const std::string svg = embedding_svg(tree, table, traj_ptr);
    write_text(dir / "embedding.svg", svg);
    std::cout << "svg: " << (dir / "embedding.svg").string() << "\n";
    return 0;
}

void add_common_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--seed", o.seed, "Base RNG seed");
    cmd->add_option("--out", o.out, "Output directory");
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"herd: coarse-to-fine design optimization in hyperbolic space"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from a key=value file");
    app.fallthrough();

    auto* build = app.add_subcommand("build", "Cluster cells and build the design tree");
    build->add_option("--grid", o.grid, "Grid shape ROWSxCOLS")->capture_default_str();
    build->add_option("--levels", o.levels, "Comma-separated granularity levels")
        ->capture_default_str();
    build->add_option("--max-nodes", o.max_nodes, "Tree node cap")->capture_default_str();
    build->add_option("--max-children", o.max_children, "Children cap per node")
        ->capture_default_str();
    build->add_option("--types", o.types, "Cell type codes available to the sampler")
        ->capture_default_str();
    add_common_flags(build, o);

    auto* embed = app.add_subcommand("embed", "Embed the tree in the Poincare disk");
    embed->add_option("--tree", o.tree_file, "Tree file (default <out>/tree.json)");
    embed->add_option("--tau", o.tau, "Parent-child edge length")->capture_default_str();
    embed->add_option("--dim", o.dim, "Ball dimension")->capture_default_str();
    embed->add_option("--curvature", o.curvature, "Ball curvature magnitude")
        ->capture_default_str();
    add_common_flags(embed, o);

    auto* opt = app.add_subcommand("optimize", "Run an optimizer against an evaluator");
    opt->add_option("--tree", o.tree_file, "Tree file (default <out>/tree.json)");
    opt->add_option("--embedding", o.embedding_file,
                    "Embedding file (default <out>/embedding.json)");
    opt->add_option("--optimizer", o.optimizer, "herd|flat_cem|c2f_ea|random")
        ->capture_default_str();
    opt->add_option("--evaluator", o.evaluator,
                    "pattern_match|actuator_balance|planted_node|external")
        ->capture_default_str();
    opt->add_option("--eval-cmd", o.eval_cmd, "External evaluator command line");
    opt->add_option("--eval-timeout", o.eval_timeout, "Per-request timeout seconds")
        ->capture_default_str();
    opt->add_option("--target-file", o.target_file, "Target design file for pattern_match");
    opt->add_option("--target-node", o.target_node, "Target node id for planted_node");
    opt->add_option("--target-fraction", o.target_fraction,
                    "Actuator fraction for actuator_balance")
        ->capture_default_str();
    opt->add_option("--pop", o.pop, "CEM population")->capture_default_str();
    opt->add_option("--elite", o.elite, "Elite count (0 = population/3)")->capture_default_str();
    opt->add_option("--iters", o.iters, "CEM iterations / EA generations")
        ->capture_default_str();
    opt->add_option("--sigma-start", o.sigma_start, "Initial sigma")->capture_default_str();
    opt->add_option("--sigma-end", o.sigma_end, "Final sigma")->capture_default_str();
    opt->add_option("--budget", o.budget, "Total evaluations (overrides --iters)");
    opt->add_option("--grid", o.grid, "Grid shape when no tree is used")->capture_default_str();
    opt->add_option("--types", o.types, "Cell type codes for grid-space optimizers")
        ->capture_default_str();
    add_common_flags(opt, o);

    auto* cmp = app.add_subcommand("compare", "Run optimizers on the planted benchmark");
    cmp->add_option("--methods", o.methods, "Comma-separated method list")
        ->capture_default_str();
    cmp->add_option("--seeds", o.seeds, "Number of seeds (base --seed + i)")
        ->capture_default_str();
    cmp->add_option("--grid", o.cmp_grid, "Benchmark grid shape")->capture_default_str();
    cmp->add_option("--levels", o.cmp_levels, "Benchmark granularity levels")
        ->capture_default_str();
    cmp->add_option("--types", o.cmp_types, "Benchmark cell types")->capture_default_str();
    cmp->add_option("--max-nodes", o.max_nodes, "Tree node cap")->capture_default_str();
    cmp->add_option("--max-children", o.cmp_max_children, "Children cap per node")
        ->capture_default_str();
    cmp->add_option("--tau", o.cmp_tau, "Embedding edge length")->capture_default_str();
    cmp->add_option("--budget", o.budget, "Evaluations per run (default 2000)");
    cmp->add_option("--pop", o.cmp_pop, "CEM population")->capture_default_str();
    add_common_flags(cmp, o);

    auto* svg = app.add_subcommand("export-svg", "Render the embedding (and a run) as SVG");
    svg->add_option("--tree", o.tree_file, "Tree file (default <out>/tree.json)");
    svg->add_option("--embedding", o.embedding_file,
                    "Embedding file (default <out>/embedding.json)");
    svg->add_option("--log", o.log_file, "Optional run.jsonl for the trajectory overlay");
    add_common_flags(svg, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        // Resolved configuration lands next to the outputs of every command.
        const fs::path dir = ensure_out(o);
        write_text(dir / "config.resolved", app.config_to_str(true, false));

        if (app.got_subcommand(build)) return cmd_build(o);
        if (app.got_subcommand(embed)) return cmd_embed(o);
        if (app.got_subcommand(opt)) return cmd_optimize(o);
        if (app.got_subcommand(cmp)) return cmd_compare(o);
        if (app.got_subcommand(svg)) return cmd_export_svg(o);
        std::cerr << "no subcommand\n";
        return 1;
    } catch (const EmbedCheckFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const EvaluatorError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
