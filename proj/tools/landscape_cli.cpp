// Experiment runner: reproduces the scan tables, descent verification, 1D
// probability curves, and cell-geometry summaries as CSV files with JSON
// sidecars. Every run is fully determined by its flags (seed mandatory).
#include <CLI11.hpp>
#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <numeric>
#include <string>
#include <vector>

#include "landscape/critical.hpp"
#include "landscape/csvio.hpp"
#include "landscape/dataset.hpp"
#include "landscape/descent.hpp"
#include "landscape/gauss1d.hpp"
#include "landscape/genuineness.hpp"
#include "landscape/geometry.hpp"
#include "landscape/lpfeas.hpp"
#include "landscape/network.hpp"
#include "landscape/rng.hpp"

namespace {

using json = nlohmann::json;
using namespace landscape;

constexpr const char* kArtifactVersion = "1.0.0";
// Stream index reserved for dataset generation; trial streams use small
// indices, so the two can never collide under one master seed.
constexpr std::uint64_t kDatasetStream = 0xFFFFFFFFFFFFFFFFull;

struct Options {
    std::uint64_t seed = 0;
    std::string out;
    int threads = 1;

    // dataset
    std::string data_kind = "gaussian";
    int d = 3;
    int n_per_class = 1000;
    std::string mnist_images, mnist_labels;
    int digit_a = 0, digit_b = 1;
    std::vector<std::string> cifar_batches;
    int class_a = 0, class_b = 1;
    int per_class = 100;

    // network / scan
    int k = 10;
    std::vector<double> biases;
    int trials = 20;
    std::string orientation = "default";
    std::vector<int> explicit_signs;
    int max_exhaustive = 12;
    double box_m = 1e6;
    double eps_t = 1e-9;

    // gradient descent
    double stepsize = 1e-6;
    double grad_tol = 1e-3;
    long max_iters = 100000;
    long checkpoint_every = 1000;
    std::string trace_dir;

    // geometry
    int n_weights = 1000;
    long n_samples = 100;
    int dim = 3;

    // gauss1d
    std::string mode = "sweep";
    std::vector<double> positions;
    std::vector<int> normals;
    int moved_index = 0;
    double grid_min = 0.0, grid_max = 6.0;
    int grid_steps = 61;
    double grid2_min = -6.0, grid2_max = 0.0;
    int grid2_steps = 61;
    int n1d = 100;
    int mc_datasets = 2000;
};

Vec linspace(double lo, double hi, int steps) {
    if (steps < 1) throw config_error("grid needs at least one point");
    Vec g(steps);
    for (int i = 0; i < steps; ++i)
        g(i) = steps == 1 ? lo : lo + (hi - lo) * double(i) / double(steps - 1);
    return g;
}

Dataset build_dataset(const Options& opt) {
    if (opt.data_kind == "gaussian")
        return generate_gaussian_dataset(opt.d, opt.n_per_class, stream_seed(opt.seed, kDatasetStream));
    if (opt.data_kind == "mnist") {
        if (opt.mnist_images.empty() || opt.mnist_labels.empty())
            throw config_error("mnist data needs --mnist-images and --mnist-labels");
        return load_mnist_binary_subset(opt.mnist_images, opt.mnist_labels, opt.digit_a,
                                        opt.digit_b, opt.per_class);
    }
    if (opt.data_kind == "cifar10") {
        if (opt.cifar_batches.empty()) throw config_error("cifar10 data needs --cifar-batches");
        return load_cifar10_binary_subset(opt.cifar_batches, opt.class_a, opt.class_b,
                                          opt.per_class);
    }
    throw config_error("unknown --data kind: " + opt.data_kind);
}

json dataset_config(const Options& opt) {
    json j;
    j["kind"] = opt.data_kind;
    if (opt.data_kind == "gaussian") {
        j["d"] = opt.d;
        j["n_per_class"] = opt.n_per_class;
    } else if (opt.data_kind == "mnist") {
        j["images"] = opt.mnist_images;
        j["labels"] = opt.mnist_labels;
        j["digit_a"] = opt.digit_a;
        j["digit_b"] = opt.digit_b;
        j["per_class"] = opt.per_class;
    } else {
        j["batches"] = opt.cifar_batches;
        j["class_a"] = opt.class_a;
        j["class_b"] = opt.class_b;
        j["per_class"] = opt.per_class;
    }
    return j;
}

OrientationPolicy build_policy(const Options& opt) {
    OrientationPolicy p;
    p.max_K = opt.max_exhaustive;
    if (opt.orientation == "default") return OrientationPolicy::defaults();
    if (opt.orientation == "all-positive") p.modes = {OrientationMode::AllPositive};
    else if (opt.orientation == "all-negative") p.modes = {OrientationMode::AllNegative};
    else if (opt.orientation == "from-min-norm") p.modes = {OrientationMode::FromMinNorm};
    else if (opt.orientation == "exhaustive") p.modes = {OrientationMode::Exhaustive};
    else if (opt.orientation == "explicit") {
        p.modes = {OrientationMode::Explicit};
        p.explicit_signs.resize(int(opt.explicit_signs.size()));
        for (std::size_t i = 0; i < opt.explicit_signs.size(); ++i)
            p.explicit_signs(int(i)) = opt.explicit_signs[i];
    } else {
        throw config_error("unknown --orientation: " + opt.orientation);
    }
    return p;
}

void write_sidecar(const Options& opt, const std::string& experiment, json config) {
    config["threads"] = opt.threads;
    json j;
    j["experiment"] = experiment;
    j["seed"] = opt.seed;
    j["config"] = std::move(config);
    j["versions"] = {{"artifact", kArtifactVersion}, {"rng", rng_version()}};
    std::ofstream out(opt.out + ".json", std::ios::binary);
    if (!out) throw data_error("cannot write file: " + opt.out + ".json");
    out << j.dump(2) << "\n";
}

NetworkWeights draw_trial_weights(int K, int d, double bias, std::mt19937_64& eng,
                                  bool with_z) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    NetworkWeights nw;
    nw.W.resize(K, d + 1);
    for (int j = 0; j < K; ++j) {
        for (int c = 0; c < d; ++c) nw.W(j, c) = gauss(eng);
        nw.W(j, d) = bias;
    }
    nw.z.resize(K);
    if (with_z)
        for (int j = 0; j < K; ++j) nw.z(j) = gauss(eng);
    else
        nw.z.setOnes();
    return nw;
}

int run_genuineness_scan(const Options& opt) {
    if (opt.biases.empty()) throw config_error("genuineness-scan needs at least one --bias");
    const Dataset data = build_dataset(opt);
    const auto rows = genuineness_scan(data, opt.k, opt.biases, opt.trials, opt.seed,
                                       build_policy(opt), opt.eps_t, opt.box_m);
    CsvTable t;
    t.header = {"bias",          "genuine_pct", "continuous_pct",   "mean_pg",
                "activated_pct", "inconclusive_pct", "seed"};
    for (const auto& r : rows)
        t.rows.push_back({format_double(r.bias), format_double(r.genuine_pct),
                          format_double(r.continuous_pct), format_double(r.mean_pg),
                          format_double(r.activated_pct), format_double(r.inconclusive_pct),
                          std::to_string(r.seed)});
    write_csv(opt.out, t);
    json cfg;
    cfg["data"] = dataset_config(opt);
    cfg["k"] = opt.k;
    cfg["biases"] = opt.biases;
    cfg["trials"] = opt.trials;
    cfg["orientation"] = opt.orientation;
    cfg["box_m"] = opt.box_m;
    cfg["eps_t"] = opt.eps_t;
    write_sidecar(opt, "genuineness-scan", cfg);
    return 0;
}

const char* status_name(DescentStatus s) {
    switch (s) {
        case DescentStatus::Escaped: return "escaped";
        case DescentStatus::Trapped: return "trapped";
        case DescentStatus::Inconclusive: return "inconclusive";
        default: return "numerical_failure";
    }
}

int run_gd_verify(const Options& opt) {
    if (opt.biases.empty()) throw config_error("gd-verify needs at least one --bias");
    const Dataset data = build_dataset(opt);
    GDParams params;
    params.stepsize = opt.stepsize;
    params.grad_tol = opt.grad_tol;
    params.max_iters = opt.max_iters;
    params.checkpoint_every = opt.checkpoint_every;
    if (!opt.trace_dir.empty()) std::filesystem::create_directories(opt.trace_dir);

    CsvTable t;
    t.header = {"bias",       "trial",      "status",          "step",
                "iterations", "final_loss", "final_grad_norm", "seed"};
    for (std::size_t bi = 0; bi < opt.biases.size(); ++bi) {
        for (int trial = 0; trial < opt.trials; ++trial) {
            auto eng = make_engine(opt.seed, std::uint64_t(bi) * std::uint64_t(opt.trials) +
                                                 std::uint64_t(trial));
            const NetworkWeights start =
                draw_trial_weights(opt.k, data.d, opt.biases[bi], eng, true);
            const DescentOutcome r = gd_verify(start, data, params);
            t.rows.push_back({format_double(opt.biases[bi]), std::to_string(trial),
                              status_name(r.status), std::to_string(r.step),
                              std::to_string(r.iterations), format_double(r.final_loss),
                              format_double(r.final_grad_norm), std::to_string(opt.seed)});
            if (!opt.trace_dir.empty()) {
                CsvTable trace;
                trace.header = {"iteration", "loss", "grad_norm", "crossed"};
                for (const auto& c : r.checkpoints)
                    trace.rows.push_back({std::to_string(c.iteration), format_double(c.loss),
                                          format_double(c.grad_norm), "0"});
                trace.rows.push_back({std::to_string(r.iterations), format_double(r.final_loss),
                                      format_double(r.final_grad_norm),
                                      r.status == DescentStatus::Escaped ? "1" : "0"});
                write_csv(opt.trace_dir + "/trial_b" + std::to_string(bi) + "_t" +
                              std::to_string(trial) + ".csv",
                          trace);
            }
        }
    }
    write_csv(opt.out, t);
    json cfg;
    cfg["data"] = dataset_config(opt);
    cfg["k"] = opt.k;
    cfg["biases"] = opt.biases;
    cfg["trials"] = opt.trials;
    cfg["stepsize"] = opt.stepsize;
    cfg["grad_tol"] = opt.grad_tol;
    cfg["max_iters"] = opt.max_iters;
    cfg["checkpoint_every"] = opt.checkpoint_every;
    if (!opt.trace_dir.empty()) cfg["trace_dir"] = opt.trace_dir;
    write_sidecar(opt, "gd-verify", cfg);
    return 0;
}

int run_cell_diameter(const Options& opt) {
    const Dataset data = build_dataset(opt);
    const MeanDiameterResult r = mean_diameter(data, opt.n_weights, opt.seed);
    CsvTable t;
    t.header = {"n_weights", "n_directions", "closed_cells", "open_cells", "mean_diameter",
                "seed"};
    t.rows.push_back({std::to_string(opt.n_weights), std::to_string(10 * data.D()),
                      std::to_string(r.closed_cells), std::to_string(r.open_cells),
                      r.mean ? format_double(*r.mean) : "nan", std::to_string(opt.seed)});
    write_csv(opt.out, t);
    json cfg;
    cfg["data"] = dataset_config(opt);
    cfg["n_weights"] = opt.n_weights;
    cfg["weight_range"] = "[-1,1]^D";
    write_sidecar(opt, "cell-diameter", cfg);
    return 0;
}

int run_cell_count(const Options& opt) {
    const BigInt cells = cell_count(opt.n_samples, opt.dim);
    CsvTable t;
    t.header = {"n_samples", "dim", "cells"};
    t.rows.push_back({std::to_string(opt.n_samples), std::to_string(opt.dim), cells.str()});
    write_csv(opt.out, t);
    json cfg;
    cfg["n_samples"] = opt.n_samples;
    cfg["dim"] = opt.dim;
    write_sidecar(opt, "cell-count", cfg);
    return 0;
}

int run_critical(const Options& opt) {
    if (opt.biases.empty()) throw config_error("critical needs at least one --bias");
    const Dataset data = build_dataset(opt);
    CsvTable t;
    t.header = {"bias", "trial", "n", "k",   "d_augmented",  "rank",
                "kind", "loss",  "activated_pct", "seed"};
    for (std::size_t bi = 0; bi < opt.biases.size(); ++bi) {
        for (int trial = 0; trial < opt.trials; ++trial) {
            auto eng = make_engine(opt.seed, std::uint64_t(bi) * std::uint64_t(opt.trials) +
                                                 std::uint64_t(trial));
            const NetworkWeights nw =
                draw_trial_weights(opt.k, data.d, opt.biases[bi], eng, false);
            const ActivationPattern pattern = activation_pattern(nw, data);
            const CriticalSystem sys = assemble_system(pattern, data);
            const CriticalSolution sol = solve_critical(sys);
            t.rows.push_back(
                {format_double(opt.biases[bi]), std::to_string(trial),
                 std::to_string(data.N()), std::to_string(opt.k), std::to_string(data.D()),
                 std::to_string(sol.rank),
                 sol.kind == SolutionKind::Unique ? "unique" : "continuous",
                 format_double(loss_at_critical(sys, sol)),
                 format_double(100.0 * activated_fraction(pattern)),
                 std::to_string(opt.seed)});
        }
    }
    write_csv(opt.out, t);
    json cfg;
    cfg["data"] = dataset_config(opt);
    cfg["k"] = opt.k;
    cfg["biases"] = opt.biases;
    cfg["trials"] = opt.trials;
    write_sidecar(opt, "critical", cfg);
    return 0;
}

Weights1D build_weights_1d(const Options& opt) {
    if (opt.positions.empty() || opt.positions.size() != opt.normals.size())
        throw config_error("--positions and --normals must match and be non-empty");
    Weights1D w;
    w.h.resize(int(opt.positions.size()));
    w.normals.resize(int(opt.normals.size()));
    for (std::size_t i = 0; i < opt.positions.size(); ++i) {
        w.h(int(i)) = opt.positions[i];
        w.normals(int(i)) = opt.normals[i];
    }
    return w;
}

void append_scan_rows(CsvTable& t, const std::vector<Scan1DPoint>& pts, bool two_coords) {
    for (const auto& p : pts) {
        std::vector<std::string> row;
        row.push_back(format_double(p.coord));
        if (two_coords) row.push_back(format_double(p.coord2));
        for (int k = 0; k < p.h_star.size(); ++k) row.push_back(format_double(p.h_star(k)));
        row.push_back(format_double(p.pg_moved));
        row.push_back(format_double(p.pt_moved));
        row.push_back(format_double(p.pg_max));
        row.push_back(format_double(p.pg_union));
        row.push_back(format_double(p.pt));
        t.rows.push_back(std::move(row));
    }
}

std::vector<std::string> scan_header(int K, bool two_coords) {
    std::vector<std::string> h;
    h.push_back(two_coords ? "x_w1" : "coord");
    if (two_coords) h.push_back("x_w2");
    for (int k = 0; k < K; ++k) h.push_back("h_star_" + std::to_string(k));
    h.insert(h.end(), {"pg_moved", "pt_moved", "pg_max", "pg_union", "pt"});
    return h;
}

int run_gauss1d(const Options& opt) {
    CsvTable t;
    json cfg;
    cfg["mode"] = opt.mode;
    cfg["n"] = opt.n1d;
    if (opt.mode == "sweep" || opt.mode == "shift") {
        const Weights1D base = build_weights_1d(opt);
        const Vec grid = linspace(opt.grid_min, opt.grid_max, opt.grid_steps);
        const auto pts = opt.mode == "sweep"
                             ? sweep_scan(base, opt.moved_index, grid, opt.n1d)
                             : shift_scan(base, grid, opt.n1d);
        t.header = scan_header(base.K(), false);
        append_scan_rows(t, pts, false);
        cfg["positions"] = opt.positions;
        cfg["normals"] = opt.normals;
        cfg["grid"] = {{"min", opt.grid_min}, {"max", opt.grid_max}, {"steps", opt.grid_steps}};
        if (opt.mode == "sweep") cfg["moved_index"] = opt.moved_index;
    } else if (opt.mode == "product2") {
        const Vec g1 = linspace(opt.grid_min, opt.grid_max, opt.grid_steps);
        const Vec g2 = linspace(opt.grid2_min, opt.grid2_max, opt.grid2_steps);
        const auto pts = product2_scan(g1, g2, opt.n1d);
        t.header = scan_header(2, true);
        append_scan_rows(t, pts, true);
        cfg["grid_w1"] = {{"min", opt.grid_min}, {"max", opt.grid_max}, {"steps", opt.grid_steps}};
        cfg["grid_w2"] = {{"min", opt.grid2_min}, {"max", opt.grid2_max}, {"steps", opt.grid2_steps}};
    } else if (opt.mode == "mc") {
        const Weights1D w = build_weights_1d(opt);
        const double freq = mc_existence_frequency(w, opt.n1d, opt.mc_datasets, opt.seed);
        const auto analytic = shift_scan(w, Vec::Zero(1), opt.n1d).front();
        t.header = {"n_samples", "datasets", "empirical_frequency", "analytic_pg_max",
                    "analytic_pt"};
        t.rows.push_back({std::to_string(opt.n1d), std::to_string(opt.mc_datasets),
                          format_double(freq), format_double(analytic.pg_max),
                          format_double(analytic.pt)});
        cfg["positions"] = opt.positions;
        cfg["normals"] = opt.normals;
        cfg["datasets"] = opt.mc_datasets;
    } else if (opt.mode == "losscurve") {
        const Weights1D base = build_weights_1d(opt);
        if (opt.moved_index < 0 || opt.moved_index >= base.K())
            throw config_error("--moved-index out of range");
        auto eng = make_engine(opt.seed, 0);
        const Dataset1D ds = generate_1d_dataset(opt.n1d, eng);
        const Vec grid = linspace(opt.grid_min, opt.grid_max, opt.grid_steps);
        t.header = {"coord", "loss"};
        for (int g = 0; g < grid.size(); ++g) {
            std::vector<int> order(std::size_t(base.K()));
            std::iota(order.begin(), order.end(), 0);
            Vec h = base.h;
            h(opt.moved_index) = grid(g);
            std::sort(order.begin(), order.end(), [&](int a, int b) { return h(a) < h(b); });
            Weights1D w;
            w.h.resize(base.K());
            w.normals.resize(base.K());
            for (int k = 0; k < base.K(); ++k) {
                w.h(k) = h(order[std::size_t(k)]);
                w.normals(k) = base.normals(order[std::size_t(k)]);
            }
            t.rows.push_back({format_double(grid(g)), format_double(empirical_loss_1d(w, ds))});
        }
        cfg["positions"] = opt.positions;
        cfg["normals"] = opt.normals;
        cfg["moved_index"] = opt.moved_index;
        cfg["grid"] = {{"min", opt.grid_min}, {"max", opt.grid_max}, {"steps", opt.grid_steps}};
    } else {
        throw config_error("unknown --mode: " + opt.mode);
    }
    write_csv(opt.out, t);
    write_sidecar(opt, "gauss1d-prob", cfg);
    return 0;
}

void add_common(CLI::App* cmd, Options& opt, bool with_data) {
    cmd->add_option("--seed", opt.seed, "master RNG seed (mandatory; no wall-clock seeding)")
        ->required();
    cmd->add_option("--out", opt.out, "output CSV path (sidecar written to <out>.json)")
        ->required();
    cmd->add_option("--threads", opt.threads, "worker threads (recorded; trials run sequentially)")
        ->check(CLI::PositiveNumber);
    if (!with_data) return;
    cmd->add_option("--data", opt.data_kind, "dataset kind: gaussian | mnist | cifar10");
    cmd->add_option("--d", opt.d, "gaussian raw input dimension");
    cmd->add_option("--n-per-class", opt.n_per_class, "gaussian samples per class");
    cmd->add_option("--mnist-images", opt.mnist_images, "idx image file");
    cmd->add_option("--mnist-labels", opt.mnist_labels, "idx label file");
    cmd->add_option("--digit-a", opt.digit_a, "mnist positive digit");
    cmd->add_option("--digit-b", opt.digit_b, "mnist negative digit");
    cmd->add_option("--cifar-batches", opt.cifar_batches, "cifar10 binary batch files")
        ->expected(-1);
    cmd->add_option("--class-a", opt.class_a, "cifar10 positive class");
    cmd->add_option("--class-b", opt.class_b, "cifar10 negative class");
    cmd->add_option("--per-class", opt.per_class, "loader samples per class");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"one-hidden-layer ReLU loss landscape toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "flat key-value config file; sections per subcommand");
    app.allow_config_extras(false);

    Options opt;

    CLI::App* scan = app.add_subcommand("genuineness-scan",
                                        "classify critical points across bias values");
    add_common(scan, opt, true);
    scan->add_option("--k", opt.k, "hidden width");
    scan->add_option("--bias", opt.biases, "bias values")->expected(-1)->required();
    scan->add_option("--trials", opt.trials, "weight draws per bias")->check(CLI::PositiveNumber);
    scan->add_option("--orientation", opt.orientation,
                     "default | all-positive | all-negative | from-min-norm | exhaustive | explicit");
    scan->add_option("--explicit-signs", opt.explicit_signs, "signs for --orientation explicit")
        ->expected(-1);
    scan->add_option("--max-exhaustive", opt.max_exhaustive, "exhaustive orientation K cap");
    scan->add_option("--box-m", opt.box_m, "witness box bound");
    scan->add_option("--eps-t", opt.eps_t, "feasibility margin threshold");

    CLI::App* gd = app.add_subcommand("gd-verify", "gradient-descent cell-escape verification");
    add_common(gd, opt, true);
    gd->add_option("--k", opt.k, "hidden width");
    gd->add_option("--bias", opt.biases, "bias values")->expected(-1)->required();
    gd->add_option("--trials", opt.trials, "starts per bias")->check(CLI::PositiveNumber);
    gd->add_option("--stepsize", opt.stepsize, "gradient step");
    gd->add_option("--grad-tol", opt.grad_tol, "gradient norm threshold");
    gd->add_option("--max-iters", opt.max_iters, "iteration cap");
    gd->add_option("--checkpoint-every", opt.checkpoint_every, "checkpoint interval");
    gd->add_option("--trace-dir", opt.trace_dir, "write per-trial iteration logs here");

    CLI::App* diam = app.add_subcommand("cell-diameter", "sampled mean cell diameter");
    add_common(diam, opt, true);
    diam->add_option("--n-weights", opt.n_weights, "weight draws")->check(CLI::PositiveNumber);

    CLI::App* count = app.add_subcommand("cell-count", "generic hyperplane-arrangement cells");
    add_common(count, opt, false);
    count->add_option("--n-samples", opt.n_samples, "hyperplane count")->required();
    count->add_option("--dim", opt.dim, "arrangement dimension")->required();

    CLI::App* crit = app.add_subcommand("critical", "per-cell least-squares summaries");
    add_common(crit, opt, true);
    crit->add_option("--k", opt.k, "hidden width");
    crit->add_option("--bias", opt.biases, "bias values")->expected(-1)->required();
    crit->add_option("--trials", opt.trials, "weight draws per bias")->check(CLI::PositiveNumber);

    CLI::App* g1 = app.add_subcommand("gauss1d-prob", "1D analytic probability machinery");
    add_common(g1, opt, false);
    g1->add_option("--mode", opt.mode, "sweep | shift | product2 | mc | losscurve");
    g1->add_option("--positions", opt.positions, "weight positions")->expected(-1);
    g1->add_option("--normals", opt.normals, "weight normals (+1/-1)")->expected(-1);
    g1->add_option("--moved-index", opt.moved_index, "which weight sweeps");
    g1->add_option("--grid-min", opt.grid_min, "first grid start");
    g1->add_option("--grid-max", opt.grid_max, "first grid end");
    g1->add_option("--grid-steps", opt.grid_steps, "first grid points");
    g1->add_option("--grid2-min", opt.grid2_min, "second grid start (product2)");
    g1->add_option("--grid2-max", opt.grid2_max, "second grid end (product2)");
    g1->add_option("--grid2-steps", opt.grid2_steps, "second grid points (product2)");
    g1->add_option("--n", opt.n1d, "sample count N in the probability power");
    g1->add_option("--mc-datasets", opt.mc_datasets, "Monte-Carlo dataset count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (scan->parsed()) return run_genuineness_scan(opt);
        if (gd->parsed()) return run_gd_verify(opt);
        if (diam->parsed()) return run_cell_diameter(opt);
        if (count->parsed()) return run_cell_count(opt);
        if (crit->parsed()) return run_critical(opt);
        if (g1->parsed()) return run_gauss1d(opt);
        std::fprintf(stderr, "no subcommand selected\n");
        return 2;
    } catch (const config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const data_error& e) {
        std::fprintf(stderr, "data error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return 4;
    }
}
