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

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

using namespace nslab;

namespace {

std::string capture_jsonl(const RunSummary&, const std::vector<std::string>& lines) {
    std::string out;
    for (const auto& l : lines) out += l + "\n";
    return out;
}

struct Capture {
    std::vector<std::string> lines;
    RowSink sink() {
        return [this](const ResultRow& r) { lines.push_back(r.to_jsonl()); };
    }
    std::string text() const { return capture_jsonl({}, lines); }
};

SweepConfig tiny_sweep() {
    SweepConfig cfg;
    cfg.fields = {"Fp:5"};
    cfg.k_lo = cfg.k_hi = 2;
    cfg.n_lo = cfg.n_hi = 2;
    cfg.subsets = SubsetMode::Exhaustive;
    cfg.bounds = {BoundKind::Thm11, BoundKind::Thm12};
    cfg.coeff_samples = 3;
    cfg.tail_zero = true;
    cfg.tail_random = true;
    cfg.seed_given = true;
    cfg.seed = 99;
    return cfg;
}

std::string temp_path(const std::string& name) {
    return std::string("harness_test_") + name;
}

}  // namespace

TEST_CASE("config parsing") {
    std::istringstream in(
        "# comment\n"
        "fields = Fp:5, Fp:7\n"
        "k = 1..3\n"
        "n = 2\n"
        "subsets = exhaustive\n"
        "bounds = thm11, cor14\n"
        "tails = zero,random\n"
        "seed = 42\n"
        "\n"
        "[replay]\n"
        "field = Fp:7   ; trailing comment\n"
        "k = 2\n"
        "[replay]\n"
        "field = Fp:5\n"
        "k = 1\n");
    auto cfg = ConfigFile::parse(in, "test");
    CHECK(cfg.global.get("fields") == "Fp:5, Fp:7");
    CHECK(parse_range(cfg.global.get("k")) == std::pair<std::int64_t, std::int64_t>{1, 3});
    CHECK(parse_range(cfg.global.get("n")) == std::pair<std::int64_t, std::int64_t>{2, 2});
    REQUIRE(cfg.sections.size() == 2);
    CHECK(cfg.sections[0].get("field") == "Fp:7");
    CHECK(cfg.sections[1].get("k") == "1");

    auto sweep = SweepConfig::from_config(cfg);
    CHECK(sweep.fields.size() == 2);
    CHECK(sweep.k_hi == 3);
    CHECK(sweep.bounds.size() == 2);
    CHECK(sweep.tail_random);
    CHECK(sweep.seed == 42);

    std::istringstream bad("k = \nfoo\n");
    CHECK_THROWS_AS(ConfigFile::parse(bad, "bad"), LabError);
}

TEST_CASE("config validation rejects missing seed for sampled work") {
    SweepConfig cfg = tiny_sweep();
    cfg.seed_given = false;
    CHECK_THROWS_AS(run_verify_bounds(cfg, {}, nullptr), LabError);
    cfg.coeffs_ones = true;
    cfg.tail_random = false;
    // exhaustive subsets + fixed coefficients + zero tails: no seed needed
    CHECK_NOTHROW(run_verify_bounds(cfg, {}, nullptr));
}

TEST_CASE("tiny exhaustive sweep has zero violations and correct skips") {
    SweepConfig cfg = tiny_sweep();
    RunSummary summary = run_verify_bounds(cfg, {}, nullptr);
    CHECK(summary.violations == 0);
    CHECK(summary.instances == 31u * 31u);
    // thm-1.2 requires |A_2| >= 2: instances with a singleton A_2 are
    // skipped with a reason, not counted as violations
    CHECK(summary.skipped > 0);
    CHECK(summary.rows > summary.skipped);
}

TEST_CASE("k = 1 rows reproduce the sumset bound") {
    SweepConfig cfg = tiny_sweep();
    cfg.k_lo = cfg.k_hi = 1;
    cfg.bounds = {BoundKind::Thm11};
    cfg.fields = {"Fp:7"};
    cfg.tail_random = false;
    cfg.coeff_samples = 2;
    Capture cap;
    RunSummary summary = run_verify_bounds(cfg, {}, cap.sink());
    CHECK(summary.violations == 0);
    for (const auto& line : cap.lines) {
        auto j = nlohmann::json::parse(line);
        if (j["skip"].get<std::string>().empty()) {
            const auto sizes = j["sizes"].get<std::vector<std::int64_t>>();
            const std::int64_t expect = std::min<std::int64_t>(7, sizes[0] + sizes[1] - 1);
            CHECK(j["bound"].get<std::int64_t>() == expect);
        }
    }
}

TEST_CASE("extension-field sweep stays violation-free") {
    SweepConfig cfg;
    cfg.fields = {"Fq:3:1,0,1", "Fq:2:1,1,1"};
    cfg.k_lo = 1;
    cfg.k_hi = 2;
    cfg.n_lo = cfg.n_hi = 2;
    cfg.subsets = SubsetMode::Sampled;
    cfg.subset_samples = 50;
    cfg.bounds = {BoundKind::Thm11, BoundKind::Thm12};
    cfg.coeff_samples = 3;
    cfg.seed_given = true;
    cfg.seed = 21;
    RunSummary summary = run_verify_bounds(cfg, {}, nullptr);
    CHECK(summary.violations == 0);
    CHECK(summary.bound_rows > 0);
}

TEST_CASE("rational window sweep stays violation-free") {
    SweepConfig cfg;
    cfg.fields = {"Q"};
    cfg.k_lo = 1;
    cfg.k_hi = 2;
    cfg.n_lo = cfg.n_hi = 2;
    cfg.subsets = SubsetMode::Sampled;
    cfg.subset_samples = 40;
    cfg.q_window = 3;
    cfg.bounds = {BoundKind::Thm11};
    cfg.coeff_samples = 3;
    cfg.seed_given = true;
    cfg.seed = 5;
    RunSummary summary = run_verify_bounds(cfg, {}, nullptr);
    CHECK(summary.violations == 0);
    CHECK(summary.bound_rows > 0);
}

TEST_CASE("determinism: thread counts do not change the bytes") {
    SweepConfig cfg = tiny_sweep();
    Capture one, eight;
    RunOptions opt1, opt8;
    opt1.threads = 1;
    opt8.threads = 8;
    run_verify_bounds(cfg, opt1, one.sink());
    run_verify_bounds(cfg, opt8, eight.sink());
    CHECK(one.lines.size() == eight.lines.size());
    CHECK(one.text() == eight.text());
}

TEST_CASE("sampled and exhaustive modes agree on instances both visit") {
    // On F_5 the sampled masks land inside the exhaustive mask space, so
    // every sampled row must match the exhaustive row with the same
    // coordinates (coefficients are drawn identically only for matching
    // subset indices, so compare value-level facts instead: bound and
    // observed for identical (sizes, coeffs, tail)).
    SweepConfig ex = tiny_sweep();
    ex.tail_random = false;
    ex.coeff_samples = 2;
    Capture cap_ex;
    run_verify_bounds(ex, {}, cap_ex.sink());

    SweepConfig sa = ex;
    sa.subsets = SubsetMode::Sampled;
    sa.subset_samples = 30;
    Capture cap_sa;
    run_verify_bounds(sa, {}, cap_sa.sink());

    auto key_of = [](const std::string& line) {
        auto j = nlohmann::json::parse(line);
        return j["field"].dump() + j["k"].dump() + j["masks"].dump() + j["coeffs"].dump() + j["tail"].dump() +
               j["bound_name"].dump();
    };
    auto facts_of = [](const std::string& line) {
        auto j = nlohmann::json::parse(line);
        return j["bound"].dump() + "/" + j["observed"].dump();
    };
    std::map<std::string, std::string> exhaustive_facts;
    for (const auto& line : cap_ex.lines) exhaustive_facts[key_of(line)] = facts_of(line);
    int matched = 0;
    for (const auto& line : cap_sa.lines) {
        auto it = exhaustive_facts.find(key_of(line));
        if (it != exhaustive_facts.end()) {
            CHECK(it->second == facts_of(line));
            ++matched;
        }
    }
    CHECK(matched > 0);
}

TEST_CASE("conjecture scan on the proven linear case") {
    ConjectureScanConfig cfg;
    cfg.fields = {"Fp:3", "Fp:5"};
    cfg.pairs = {{1, 2}, {1, 3}};
    cfg.subsets = SubsetMode::Exhaustive;
    cfg.coeff_samples = 4;
    cfg.seed_given = true;
    cfg.seed = 17;
    Capture cap;
    RunSummary summary = run_scan_conjecture(cfg, {}, cap.sink());
    CHECK(summary.violations == 0);  // NoCounterexample
    CHECK(summary.min_slack.has_value());
    CHECK(*summary.min_slack >= 0);
    // the forced negated pair shows up with delta = 1
    bool saw_delta = false;
    for (const auto& line : cap.lines) {
        auto j = nlohmann::json::parse(line);
        CHECK(j["kind"] == "conjecture");
        if (j["delta"].get<int>() == 1) saw_delta = true;
    }
    CHECK(saw_delta);
    ConjectureScanConfig bad = cfg;
    bad.pairs = {{2, 2}};
    CHECK_THROWS_AS(run_scan_conjecture(bad, {}, nullptr), LabError);
}

TEST_CASE("resume reproduces an uninterrupted run byte for byte") {
    SweepConfig cfg = tiny_sweep();
    cfg.coeff_samples = 2;
    cfg.tail_random = false;

    Capture full;
    run_verify_bounds(cfg, {}, full.sink());
    const std::string full_text = full.text();

    const std::string path = temp_path("resume.jsonl");
    {
        // write only the first 100 rows, simulating an interrupt
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        for (std::size_t i = 0; i < 100 && i < full.lines.size(); ++i) out << full.lines[i] << "\n";
    }
    const std::uint64_t done = count_complete_rows(path);
    CHECK(done == 100);

    RunOptions opt;
    opt.skip_rows = done;
    Capture rest;
    run_verify_bounds(cfg, opt, rest.sink());
    std::string stitched;
    for (std::size_t i = 0; i < 100; ++i) stitched += full.lines[i] + "\n";
    stitched += rest.text();
    CHECK(stitched == full_text);
    std::remove(path.c_str());
}

TEST_CASE("resume with an empty file is a full run") {
    const std::string path = temp_path("empty.jsonl");
    std::ofstream(path, std::ios::trunc).close();
    CHECK(count_complete_rows(path) == 0);
    std::remove(path.c_str());
}

TEST_CASE("corrupt results files are rejected with a line number") {
    const std::string path = temp_path("corrupt.jsonl");
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out << R"({"id":0,"kind":"bound"})" << "\n";
        out << R"({"id":1,"kind":)";  // truncated mid-row, no newline
    }
    CHECK_THROWS_WITH_AS(count_complete_rows(path),
                         doctest::Contains("line 2"), LabError);
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out << R"({"id":0})" << "\n" << "not json" << "\n";
    }
    CHECK_THROWS_AS(count_complete_rows(path), LabError);
    std::remove(path.c_str());
}

TEST_CASE("replay, cn and extremal section runners") {
    std::istringstream in(
        "[replay]\n"
        "field = Fp:7\n"
        "k = 2\n"
        "a = 1,1\n"
        "sets = 0,1,2,3,4,5,6 | 0,1,2,3,4,5,6\n"
        "restricted = false\n"
        "[replay]\n"
        "field = Q\n"
        "k = 1\n"
        "a = 1,1\n"
        "sets = 0,1,2 | 0,1,2\n"
        "inject_c = 4\n");
    auto cfg = ConfigFile::parse(in, "replay");
    Capture cap;
    RunSummary summary = run_replay(cfg, {}, cap.sink());
    CHECK(summary.rows == 2);
    CHECK(summary.violations == 0);
    auto j0 = nlohmann::json::parse(cap.lines[0]);
    CHECK(j0["kind"] == "trace");
    CHECK(j0["bound"] == 7);
    auto j1 = nlohmann::json::parse(cap.lines[1]);
    CHECK(j1["extra"]["contradiction_branch"] == true);
    CHECK(j1["extra"]["coeff_match"] == true);

    std::istringstream cn_in(
        "[cn]\n"
        "field = Fp:5\n"
        "poly = 1:1,0 + 1:0,1\n"
        "grids = 0,1 | 0,1\n"
        "target = 1,0\n"
        "[cn]\n"
        "field = Fp:5\n"
        "poly = 1:1,0\n"
        "grids = 0 | 0,1\n"
        "target = 1,0\n");
    auto cn_cfg = ConfigFile::parse(cn_in, "cn");
    Capture cn_cap;
    run_cn_demo(cn_cfg, {}, cn_cap.sink());
    REQUIRE(cn_cap.lines.size() == 2);
    auto c0 = nlohmann::json::parse(cn_cap.lines[0]);
    CHECK(c0["extra"]["found"] == true);
    auto c1 = nlohmann::json::parse(cn_cap.lines[1]);
    CHECK(c1["skip"].get<std::string>().find("hypothesis") == 0);

    std::istringstream ex_in(
        "[example21]\n"
        "field = Fp:7\n"
        "k = 2\n"
        "a = 1\n"
        "q = 2\n"
        "r = 0\n"
        "[example21]\n"
        "field = Fp:7\n"
        "k = 2\n"
        "a = 1\n"
        "q = 3\n"
        "r = 0\n"
        "[example31]\n"
        "field = Fp:7\n"
        "k = 2\n"
        "a = 1,1\n"
        "q = 2,2\n"
        "s = 1,2\n"
        "[example41]\n"
        "k = 2\n"
        "n = 3\n"
        "q = 2\n"
        "r = 1\n");
    auto ex_cfg = ConfigFile::parse(ex_in, "extremal");
    Capture ex_cap;
    RunSummary ex_summary = run_build_extremal(ex_cfg, {}, ex_cap.sink());
    CHECK(ex_summary.violations == 0);
    REQUIRE(ex_cap.lines.size() == 4);
    auto e0 = nlohmann::json::parse(ex_cap.lines[0]);
    CHECK(e0["tight"] == true);
    auto e1 = nlohmann::json::parse(ex_cap.lines[1]);
    CHECK(e1["skip"].get<std::string>().find("Infeasible") != std::string::npos);
    auto e2 = nlohmann::json::parse(ex_cap.lines[2]);
    CHECK(e2["tight"] == true);
    auto e3 = nlohmann::json::parse(ex_cap.lines[3]);
    CHECK(e3["tight"] == true);
    CHECK(e3["extra"]["interval_ok"] == true);
}

TEST_CASE("csv lines match the documented columns") {
    ResultRow r;
    r.id = 3;
    r.field = "Fp:5";
    r.k = 2;
    r.n = 2;
    r.sizes = {3, 4};
    r.bound_name = "thm-1.1";
    r.has_values = true;
    r.bound = 3;
    r.observed = 4;
    r.slack = 1;
    CHECK(std::string(kCsvHeader) == "experiment_id,field,k,n,sizes,bound_name,bound,observed,slack,tight,violation");
    CHECK(r.to_csv() == "3,Fp:5,2,2,3|4,thm-1.1,3,4,1,0,0");
    ResultRow skip;
    skip.id = 4;
    skip.field = "Fp:5";
    skip.k = 2;
    skip.n = 2;
    skip.sizes = {1, 1};
    skip.bound_name = "thm-1.2";
    skip.skip_reason = "precondition: needs |A_i| >= i";
    CHECK(skip.to_csv() == "4,Fp:5,2,2,1|1,thm-1.2,,,,0,0");
}

TEST_CASE("summary accounting flags violations loudly") {
    RunSummary s;
    ResultRow ok;
    ok.has_values = true;
    ok.bound = 3;
    ok.observed = 4;
    ok.slack = 1;
    s.absorb(ok);
    CHECK(s.violations == 0);
    CHECK(s.min_slack == 1);
    ResultRow bad = ok;
    bad.observed = 2;
    bad.slack = -1;
    bad.violation = true;
    s.absorb(bad);
    CHECK(s.violations == 1);
    CHECK(s.min_slack == -1);
    REQUIRE(s.violation_rows.size() == 1);
    CHECK(s.violation_rows[0].slack == -1);
    ResultRow skip;
    skip.skip_reason = "precondition: needs n <= k";
    s.absorb(skip);
    CHECK(s.skipped == 1);
    CHECK(s.violations == 1);
}

TEST_CASE("thread count resolution") {
    CHECK(resolve_thread_count(3) == 3);
    setenv("NULLSTELLENSATZ_LAB_THREADS", "5", 1);
    CHECK(resolve_thread_count(0) == 5);
    unsetenv("NULLSTELLENSATZ_LAB_THREADS");
    CHECK(resolve_thread_count(0) >= 1);
}
