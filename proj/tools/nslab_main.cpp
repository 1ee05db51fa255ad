/*
   Copyright 2026 The nullstellensatz-lab authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "nslab/harness/sweeps.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace nslab;

struct CommonArgs {
    std::string config_path;
    std::string out_path;
    std::string csv_path;
    bool resume = false;
    int threads = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_resume) {
    cmd->add_option("--config", args.config_path, "config file path")->required();
    cmd->add_option("--out", args.out_path, "JSONL output path")->required();
    cmd->add_option("--csv", args.csv_path, "summary CSV path (default: out path with .csv)");
    cmd->add_option("--threads", args.threads, "worker count (overrides NULLSTELLENSATZ_LAB_THREADS)");
    if (with_resume) cmd->add_flag("--resume", args.resume, "continue an interrupted run");
}

std::string default_csv_path(const std::string& out) {
    std::size_t dot = out.rfind('.');
    std::size_t slash = out.find_last_of('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return out + ".csv";
    return out.substr(0, dot) + ".csv";
}

// Runs one subcommand: resolves resume state, streams rows to the JSONL
// and CSV sinks, prints a summary, and maps violations to the exit code.
int execute(const CommonArgs& args, bool with_csv,
            const std::function<RunSummary(const RunOptions&, const RowSink&)>& run) {
    RunOptions opt;
    opt.threads = args.threads;

    const std::string csv_path = args.csv_path.empty() ? default_csv_path(args.out_path) : args.csv_path;
    std::ios_base::openmode mode = std::ios::binary | std::ios::trunc;
    if (args.resume) {
        std::ifstream probe(args.out_path);
        if (probe.good()) {
            opt.skip_rows = count_complete_rows(args.out_path);
            if (with_csv) rebuild_csv_from_jsonl(args.out_path, csv_path);
            mode = std::ios::binary | std::ios::app;
            std::cerr << "resuming after " << opt.skip_rows << " completed rows\n";
        }
    }

    std::ofstream out(args.out_path, mode);
    if (!out) {
        std::cerr << "error: cannot open " << args.out_path << " for writing\n";
        return 1;
    }
    std::ofstream csv;
    if (with_csv) {
        csv.open(csv_path, opt.skip_rows > 0 ? (std::ios::binary | std::ios::app)
                                             : (std::ios::binary | std::ios::trunc));
        if (!csv) {
            std::cerr << "error: cannot open " << csv_path << " for writing\n";
            return 1;
        }
        if (opt.skip_rows == 0) csv << kCsvHeader << "\n";
    }

    RowSink sink = [&](const ResultRow& row) {
        out << row.to_jsonl() << "\n";
        if (with_csv) csv << row.to_csv() << "\n";
    };

    RunSummary summary = run(opt, sink);
    out.flush();
    if (with_csv) csv.flush();

    std::cerr << "rows=" << summary.rows << " bound_rows=" << summary.bound_rows
              << " skipped=" << summary.skipped << " instances=" << summary.instances
              << " violations=" << summary.violations;
    if (summary.min_slack) std::cerr << " min_slack=" << *summary.min_slack;
    std::cerr << "\n";
    if (summary.violations > 0) {
        std::cerr << "VIOLATION: a bound failed against brute force. Reproducible instances:\n";
        for (const auto& row : summary.violation_rows) std::cerr << "  " << row.to_jsonl() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"value-set bound laboratory: exhaustive verification of diagonal-form value-set bounds, "
                 "conjecture scanning, extremal constructions and proof replays"};
    app.require_subcommand(1);

    CommonArgs verify_args, scan_args, extremal_args, cn_args, replay_args;
    CLI::App* verify = app.add_subcommand("verify-bounds", "sweep lower bounds against brute force");
    add_common(verify, verify_args, true);
    CLI::App* scan = app.add_subcommand("scan-conjecture", "scan for counterexamples to the conjectured bound");
    add_common(scan, scan_args, true);
    CLI::App* extremal = app.add_subcommand("build-extremal", "build and check the extremal constructions");
    add_common(extremal, extremal_args, false);
    CLI::App* cn = app.add_subcommand("cn-demo", "grid witness search demos");
    add_common(cn, cn_args, false);
    CLI::App* replay = app.add_subcommand("replay", "replay the lower-bound proofs as checked computation");
    add_common(replay, replay_args, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) {
            auto cfg = SweepConfig::from_config(ConfigFile::load(verify_args.config_path));
            return execute(verify_args, true, [&](const RunOptions& opt, const RowSink& sink) {
                return run_verify_bounds(cfg, opt, sink);
            });
        }
        if (scan->parsed()) {
            auto cfg = ConjectureScanConfig::from_config(ConfigFile::load(scan_args.config_path));
            int rc = execute(scan_args, true, [&](const RunOptions& opt, const RowSink& sink) {
                return run_scan_conjecture(cfg, opt, sink);
            });
            std::cerr << (rc == 2 ? "verdict: Counterexample\n" : "verdict: NoCounterexample\n");
            return rc;
        }
        if (extremal->parsed()) {
            auto cfg = ConfigFile::load(extremal_args.config_path);
            return execute(extremal_args, true, [&](const RunOptions& opt, const RowSink& sink) {
                return run_build_extremal(cfg, opt, sink);
            });
        }
        if (cn->parsed()) {
            auto cfg = ConfigFile::load(cn_args.config_path);
            return execute(cn_args, false, [&](const RunOptions& opt, const RowSink& sink) {
                return run_cn_demo(cfg, opt, sink);
            });
        }
        if (replay->parsed()) {
            auto cfg = ConfigFile::load(replay_args.config_path);
            return execute(replay_args, false, [&](const RunOptions& opt, const RowSink& sink) {
                return run_replay(cfg, opt, sink);
            });
        }
    } catch (const LabError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
