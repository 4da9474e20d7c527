// Command-line front end: load a scenario, run single simulations, V-sweeps,
// and queue traces, and emit deterministic CSV outputs.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dlsa/analysis.hpp"
#include "dlsa/config_io.hpp"
#include "dlsa/csv.hpp"
#include "dlsa/engine.hpp"
#include "dlsa/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;  // bad flags, unreadable or invalid config
constexpr int kExitFault = 2;  // runtime failure inside a simulation

namespace fs = std::filesystem;

std::string default_out_dir() {
    if (const char* env = std::getenv("DLSA_OUTPUT_DIR"); env && *env) return env;
    return ".";
}

std::optional<dlsa::NetworkConfig> load_and_validate(
    const std::string& path, std::optional<double> V,
    std::optional<uint64_t> seed, std::optional<int64_t> horizon) {
    dlsa::NetworkConfig cfg;
    try {
        cfg = dlsa::load_config_file(path);
    } catch (const dlsa::ConfigParseError& e) {
        std::cerr << e.what() << "\n";
        return std::nullopt;
    }
    if (V) cfg.control_V = *V;
    if (seed) cfg.seed = *seed;
    if (horizon) cfg.horizon = *horizon;

    const auto violations = dlsa::validate_config(cfg);
    if (!violations.empty()) {
        std::cerr << "invalid config " << path << ":\n";
        for (const auto& v : violations) std::cerr << "  " << v << "\n";
        return std::nullopt;
    }
    return cfg;
}

int write_fault(const std::string& out_dir, const dlsa::EngineFault& f) {
    std::cerr << "runtime fault: " << f.what() << "\n";
    if (!f.diagnostic.empty()) {
        const std::string path = out_dir + "/fault_diagnostic.txt";
        try {
            dlsa::write_text_file(path, std::string(f.what()) + "\n" + f.diagnostic);
            std::cerr << "diagnostic written to " << path << "\n";
        } catch (const std::exception& e) {
            std::cerr << e.what() << "\n";
        }
    }
    return kExitFault;
}

std::vector<std::string> z_headers(int n) {
    std::vector<std::string> h;
    for (int i = 0; i < n; ++i) h.push_back("Z_" + std::to_string(i));
    return h;
}

int cmd_run(const std::string& config_path, std::optional<double> V,
            std::optional<uint64_t> seed, std::optional<int64_t> horizon,
            const std::string& out_dir, const std::string& trace_out,
            int exact_limit, bool check_invariants) {
    auto cfg = load_and_validate(config_path, V, seed, horizon);
    if (!cfg) return kExitUsage;

    // The trace is streamed: a long horizon should not buffer in memory.
    std::ofstream trace;
    dlsa::RunOptions opts;
    opts.exact_edge_limit = exact_limit;
    opts.validate = check_invariants;
    if (!trace_out.empty()) {
        trace.open(trace_out, std::ios::binary);
        if (!trace) {
            std::cerr << "cannot write trace file: " << trace_out << "\n";
            return kExitUsage;
        }
        std::vector<std::string> head{"slot", "total_backlog"};
        for (const auto& z : z_headers(cfg->node_count)) head.push_back(z);
        head.push_back("objective");
        head.push_back("admitted_sum");
        trace << dlsa::csv_join(head) << "\n";
        opts.observer = [&trace](const dlsa::SlotRecord& rec,
                                 const dlsa::QueueState&, const dlsa::SlotDecision&) {
            std::vector<std::string> row{std::to_string(rec.slot),
                                         dlsa::csv_double(rec.total_backlog)};
            for (double z : rec.Z) row.push_back(dlsa::csv_double(z));
            row.push_back(dlsa::csv_double(rec.objective));
            row.push_back(dlsa::csv_double(rec.admitted_sum));
            trace << dlsa::csv_join(row) << "\n";
        };
    }

    dlsa::RunMetrics metrics;
    try {
        metrics = dlsa::run(*cfg, opts);
    } catch (const dlsa::EngineFault& f) {
        return write_fault(out_dir, f);
    } catch (const std::exception& e) {
        std::cerr << "runtime fault: " << e.what() << "\n";
        return kExitFault;
    }

    try {
        fs::create_directories(out_dir);
        dlsa::write_text_file(out_dir + "/summary.csv",
                              dlsa::summary_csv(*cfg, metrics));
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitFault;
    }

    std::cout << "V=" << dlsa::csv_double(cfg->control_V)
              << " seed=" << cfg->seed << " horizon=" << metrics.horizon
              << " selector=" << (metrics.exact_selection ? "exact" : "greedy (approximate)")
              << "\n"
              << "avg_utility=" << dlsa::csv_double(metrics.avg_utility)
              << " avg_backlog=" << dlsa::csv_double(metrics.avg_backlog)
              << " stability_stat=" << dlsa::csv_double(metrics.stability_stat)
              << " max_avg_power=" << dlsa::csv_double(metrics.max_avg_power())
              << "\n"
              << "summary: " << out_dir << "/summary.csv\n";
    return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::vector<double>& v_set,
              const std::vector<uint64_t>& seeds, std::optional<int64_t> horizon,
              const std::string& out_dir, int workers, int exact_limit) {
    auto cfg = load_and_validate(config_path, std::nullopt, std::nullopt,
                                 std::nullopt);
    if (!cfg) return kExitUsage;

    dlsa::SweepSpec spec;
    spec.base = *cfg;
    spec.V_values = v_set;
    spec.seeds = seeds.empty() ? std::vector<uint64_t>{cfg->seed} : seeds;
    spec.horizon_override = horizon;
    spec.workers = workers;
    spec.exact_edge_limit = exact_limit;

    dlsa::SweepResult result;
    try {
        result = dlsa::run_sweep(spec);
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        fs::create_directories(out_dir);
        dlsa::write_text_file(out_dir + "/sweep.csv", dlsa::sweep_rows_to_csv(result));
        dlsa::write_text_file(out_dir + "/report.csv",
                              dlsa::report_to_csv(result.report));
        dlsa::write_text_file(out_dir + "/report.txt",
                              dlsa::report_to_text(result.report));
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitFault;
    }

    std::cout << dlsa::report_to_text(result.report);
    std::cout << "sweep rows: " << out_dir << "/sweep.csv\n";

    if (result.any_failed) {
        for (const auto& row : result.rows)
            if (row.failed)
                std::cerr << "run V=" << dlsa::csv_double(row.V) << " seed="
                          << row.seed << " failed: " << row.error << "\n";
        return kExitFault;
    }
    return kExitOk;
}

int cmd_trace(const std::string& config_path,
              const std::vector<std::string>& pair_args, int64_t slots,
              std::optional<double> V, std::optional<uint64_t> seed,
              const std::string& out_dir, const std::string& trace_out) {
    auto cfg = load_and_validate(config_path, V, seed, slots);
    if (!cfg) return kExitUsage;

    std::vector<std::pair<int, int>> pairs;  // (node, commodity index)
    std::vector<std::string> headers{"slot"};
    for (const auto& arg : pair_args) {
        const auto colon = arg.find(':');
        int n = -1, c = -1;
        try {
            if (colon == std::string::npos) throw std::invalid_argument(arg);
            n = std::stoi(arg.substr(0, colon));
            c = std::stoi(arg.substr(colon + 1));
        } catch (const std::exception&) {
            std::cerr << "bad --pair '" << arg << "', expected <node>:<commodity>\n";
            return kExitUsage;
        }
        if (n < 0 || n >= cfg->node_count) {
            std::cerr << "unknown pair " << arg << ": node out of range\n";
            return kExitUsage;
        }
        const int k = cfg->commodity_index(c);
        if (k < 0) {
            std::cerr << "unknown pair " << arg << ": no commodity with destination "
                      << c << "\n";
            return kExitUsage;
        }
        if (n == c) {
            std::cerr << "pair " << arg
                      << " rejected: destination queue is identically zero\n";
            return kExitUsage;
        }
        pairs.emplace_back(n, k);
        headers.push_back("Q_" + std::to_string(n) + "_" + std::to_string(c));
    }

    std::string csv = dlsa::csv_join(headers) + "\n";
    dlsa::RunOptions opts;
    opts.observer = [&](const dlsa::SlotRecord& rec, const dlsa::QueueState& q,
                        const dlsa::SlotDecision&) {
        std::vector<std::string> row{std::to_string(rec.slot)};
        for (const auto& [n, k] : pairs) row.push_back(dlsa::csv_double(q.Q(n, k)));
        csv += dlsa::csv_join(row) + "\n";
    };

    try {
        dlsa::run(*cfg, opts);
    } catch (const dlsa::EngineFault& f) {
        return write_fault(out_dir, f);
    } catch (const std::exception& e) {
        std::cerr << "runtime fault: " << e.what() << "\n";
        return kExitFault;
    }

    const std::string path =
        trace_out.empty() ? out_dir + "/queue_trace.csv" : trace_out;
    try {
        fs::create_directories(fs::path(path).parent_path().empty()
                                   ? "."
                                   : fs::path(path).parent_path().string());
        dlsa::write_text_file(path, csv);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitFault;
    }
    std::cout << "queue trace: " << path << "\n";
    return kExitOk;
}

int cmd_check_config(const std::string& config_path) {
    dlsa::NetworkConfig cfg;
    try {
        cfg = dlsa::load_config_file(config_path);
    } catch (const dlsa::ConfigParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }
    const auto violations = dlsa::validate_config(cfg);
    if (!violations.empty()) {
        for (const auto& v : violations) std::cerr << v << "\n";
        return kExitUsage;
    }
    std::cout << "ok (scenario hash " << dlsa::structural_hash(cfg) << ")\n";
    return kExitOk;
}

int cmd_report(const std::string& csv_path, const std::string& config_path,
               const std::string& out_dir) {
    auto cfg = load_and_validate(config_path, std::nullopt, std::nullopt,
                                 std::nullopt);
    if (!cfg) return kExitUsage;

    std::vector<std::pair<double, dlsa::RunMetrics>> runs;
    try {
        const auto table = dlsa::read_csv_file(csv_path);
        const std::vector<std::string> expect{"V",
                                              "seed",
                                              "avg_utility",
                                              "avg_backlog",
                                              "stability_stat",
                                              "max_avg_power"};
        if (table.header != expect)
            throw std::runtime_error("unexpected sweep CSV header in " + csv_path);
        for (const auto& row : table.rows) {
            dlsa::RunMetrics m;
            m.avg_utility = std::stod(row[2]);
            m.avg_backlog = std::stod(row[3]);
            m.stability_stat = std::stod(row[4]);
            m.avg_power = {std::stod(row[5])};
            runs.emplace_back(std::stod(row[0]), std::move(m));
        }
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    dlsa::TheoryReport report;
    try {
        report = dlsa::diagnose_sweep(runs, *cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        fs::create_directories(out_dir);
        dlsa::write_text_file(out_dir + "/report.csv", dlsa::report_to_csv(report));
        dlsa::write_text_file(out_dir + "/report.txt", dlsa::report_to_text(report));
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitFault;
    }
    std::cout << dlsa::report_to_text(report);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"degree-limited scheduling simulator for multihop satellite networks"};
    app.require_subcommand(1);

    std::string config_path, csv_path;
    std::string out_dir = default_out_dir();
    std::string trace_out;
    std::optional<double> opt_V;
    std::optional<uint64_t> opt_seed;
    std::optional<int64_t> opt_horizon;
    std::vector<double> v_set;
    std::vector<uint64_t> seeds;
    std::vector<std::string> pair_args;
    int64_t trace_slots = 1000;
    int workers = 1;
    int exact_limit = 20;
    bool check_invariants = false;

    auto add_common = [&](CLI::App* sub, bool with_overrides) {
        sub->add_option("--out", out_dir, "output directory (env DLSA_OUTPUT_DIR)");
        sub->add_option("--exact-limit", exact_limit,
                        "edge-count cap for the exact link selector")
            ->check(CLI::Range(0, 30));
        if (with_overrides) {
            sub->add_option("--V", opt_V, "override control parameter V")
                ->check(CLI::Range(1.0, 1e12));
            sub->add_option("--seed", opt_seed, "override RNG seed");
        }
    };

    auto* run_cmd = app.add_subcommand("run", "run one simulation");
    run_cmd->add_option("config", config_path, "scenario config file")->required();
    add_common(run_cmd, true);
    run_cmd->add_option("--horizon", opt_horizon, "override horizon (slots)")
        ->check(CLI::Range(int64_t{0}, int64_t{2000000000}));
    run_cmd->add_option("--trace-out", trace_out, "write a per-slot trace CSV here");
    run_cmd->add_flag("--check-invariants", check_invariants,
                      "validate per-slot invariants while running");

    auto* sweep_cmd = app.add_subcommand("sweep", "run a V x seed sweep");
    sweep_cmd->add_option("config", config_path, "scenario config file")->required();
    sweep_cmd->add_option("--V-set", v_set, "V values (comma separated)")
        ->required()
        ->delimiter(',');
    sweep_cmd->add_option("--seeds", seeds, "seeds (comma separated)")->delimiter(',');
    sweep_cmd->add_option("--horizon", opt_horizon, "override horizon (slots)")
        ->check(CLI::Range(int64_t{0}, int64_t{2000000000}));
    sweep_cmd->add_option("--workers", workers, "concurrent runs")
        ->check(CLI::Range(1, 256));
    add_common(sweep_cmd, false);

    auto* trace_cmd = app.add_subcommand("trace", "dump per-slot queue sizes");
    trace_cmd->add_option("config", config_path, "scenario config file")->required();
    trace_cmd->add_option("--pair", pair_args,
                          "queue to trace, <node>:<commodity>; repeatable")
        ->required();
    trace_cmd->add_option("--slots", trace_slots, "number of slots to trace")
        ->check(CLI::Range(int64_t{1}, int64_t{2000000000}));
    add_common(trace_cmd, true);
    trace_cmd->add_option("--trace-out", trace_out, "output CSV path");

    auto* check_cmd = app.add_subcommand("check-config", "validate a config file");
    check_cmd->add_option("config", config_path, "scenario config file")->required();

    auto* report_cmd =
        app.add_subcommand("report", "rebuild the theory report from a sweep CSV");
    report_cmd->add_option("csv", csv_path, "sweep.csv produced by 'sweep'")
        ->required();
    report_cmd->add_option("--config", config_path, "scenario config file")
        ->required();
    add_common(report_cmd, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (run_cmd->parsed())
        return cmd_run(config_path, opt_V, opt_seed, opt_horizon, out_dir,
                       trace_out, exact_limit, check_invariants);
    if (sweep_cmd->parsed())
        return cmd_sweep(config_path, v_set, seeds, opt_horizon, out_dir, workers,
                         exact_limit);
    if (trace_cmd->parsed())
        return cmd_trace(config_path, pair_args, trace_slots, opt_V, opt_seed,
                         out_dir, trace_out);
    if (check_cmd->parsed()) return cmd_check_config(config_path);
    if (report_cmd->parsed()) return cmd_report(csv_path, config_path, out_dir);
    return kExitUsage;
}
