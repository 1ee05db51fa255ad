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

#include "nslab/harness/runner.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <fstream>

namespace nslab {

namespace {

nlohmann::ordered_json row_json(const ResultRow& r) {
    nlohmann::ordered_json j;
    j["id"] = r.id;
    j["kind"] = r.kind;
    j["field"] = r.field;
    j["k"] = r.k;
    j["n"] = r.n;
    j["sizes"] = r.sizes;
    j["masks"] = r.masks;
    j["coeffs"] = r.coeffs;
    j["tail"] = r.tail;
    j["bound_name"] = r.bound_name;
    j["skip"] = r.skip_reason;
    if (r.has_values) {
        j["bound"] = r.bound;
        j["observed"] = r.observed;
        j["slack"] = r.slack;
    } else {
        j["bound"] = nullptr;
        j["observed"] = nullptr;
        j["slack"] = nullptr;
    }
    j["tight"] = r.tight;
    j["violation"] = r.violation;
    if (r.kind == "conjecture") j["delta"] = r.delta;
    if (!r.extra_json.empty()) j["extra"] = nlohmann::ordered_json::parse(r.extra_json);
    return j;
}

ResultRow row_from_json(const nlohmann::ordered_json& j) {
    ResultRow r;
    r.id = j.at("id").get<std::uint64_t>();
    r.kind = j.at("kind").get<std::string>();
    r.field = j.at("field").get<std::string>();
    r.k = j.at("k").get<std::int64_t>();
    r.n = j.at("n").get<std::int64_t>();
    r.sizes = j.at("sizes").get<std::vector<std::int64_t>>();
    r.masks = j.at("masks").get<std::vector<std::uint64_t>>();
    r.coeffs = j.at("coeffs").get<std::vector<std::string>>();
    r.tail = j.at("tail").get<std::string>();
    r.bound_name = j.at("bound_name").get<std::string>();
    r.skip_reason = j.at("skip").get<std::string>();
    r.has_values = !j.at("bound").is_null();
    if (r.has_values) {
        r.bound = j.at("bound").get<std::int64_t>();
        r.observed = j.at("observed").get<std::int64_t>();
        r.slack = j.at("slack").get<std::int64_t>();
    }
    r.tight = j.at("tight").get<bool>();
    r.violation = j.at("violation").get<bool>();
    if (j.contains("delta")) r.delta = j.at("delta").get<int>();
    if (j.contains("extra")) r.extra_json = j.at("extra").dump();
    return r;
}

std::string join_sizes(const std::vector<std::int64_t>& sizes) {
    std::string s;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (i) s += "|";
        s += std::to_string(sizes[i]);
    }
    return s;
}

}  // namespace

const char* const kCsvHeader = "experiment_id,field,k,n,sizes,bound_name,bound,observed,slack,tight,violation";

std::string ResultRow::to_jsonl() const { return row_json(*this).dump(); }

std::string ResultRow::to_csv() const {
    std::string s = std::to_string(id) + "," + field + "," + std::to_string(k) + "," + std::to_string(n) +
                    "," + join_sizes(sizes) + "," + bound_name + ",";
    if (has_values) {
        s += std::to_string(bound);
        s += ",";
        s += std::to_string(observed);
        s += ",";
        s += std::to_string(slack);
    } else {
        s += ",,";
    }
    s += ",";
    s += tight ? "1" : "0";
    s += ",";
    s += violation ? "1" : "0";
    return s;
}

void RunSummary::absorb(const ResultRow& row) {
    ++rows;
    wall_ms_total += row.wall_ms;
    if (!row.skip_reason.empty()) {
        ++skipped;
        return;
    }
    if (row.has_values) {
        ++bound_rows;
        if (!min_slack || row.slack < *min_slack) min_slack = row.slack;
        if (row.violation) {
            ++violations;
            if (violation_rows.size() < 16) violation_rows.push_back(row);
        }
    }
}

void run_ordered(std::uint64_t task_count, int threads,
                 const std::function<std::vector<ResultRow>(std::uint64_t)>& work,
                 const std::function<void(std::uint64_t, std::vector<ResultRow>&&)>& flush) {
    threads = std::max(1, threads);
    if (task_count == 0) return;

    std::atomic<std::uint64_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex mu;
    std::map<std::uint64_t, std::vector<ResultRow>> pending;
    std::uint64_t flush_next = 0;
    std::exception_ptr first_error;

    auto worker = [&]() {
        for (;;) {
            if (failed.load(std::memory_order_relaxed)) return;
            std::uint64_t t = next.fetch_add(1);
            if (t >= task_count) return;
            std::vector<ResultRow> block;
            try {
                block = work(t);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!first_error) first_error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
                return;
            }
            std::lock_guard<std::mutex> lock(mu);
            pending.emplace(t, std::move(block));
            // Depositing thread drains the ready prefix; the lock
            // serializes flushes and preserves task order.
            while (!pending.empty() && pending.begin()->first == flush_next) {
                auto node = pending.extract(pending.begin());
                try {
                    flush(flush_next, std::move(node.mapped()));
                } catch (...) {
                    if (!first_error) first_error = std::current_exception();
                    failed.store(true, std::memory_order_relaxed);
                    return;
                }
                ++flush_next;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::uint64_t count_complete_rows(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw_err(Err::CorruptFile, "cannot open " + path);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (content.empty()) return 0;
    if (content.back() != '\n')
        throw_err(Err::CorruptFile, path + ": truncated final row (missing newline) at line " +
                                        std::to_string(1 + std::count(content.begin(), content.end(), '\n')));
    std::uint64_t rows = 0;
    std::size_t pos = 0;
    int line = 0;
    while (pos < content.size()) {
        ++line;
        std::size_t nl = content.find('\n', pos);
        std::string text = content.substr(pos, nl - pos);
        pos = nl + 1;
        nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
        if (j.is_discarded() || !j.is_object() || !j.contains("id"))
            throw_err(Err::CorruptFile, path + ": unparsable row at line " + std::to_string(line));
        if (j["id"].get<std::uint64_t>() != rows)
            throw_err(Err::CorruptFile, path + ": row id out of sequence at line " + std::to_string(line));
        ++rows;
    }
    return rows;
}

void rebuild_csv_from_jsonl(const std::string& jsonl_path, const std::string& csv_path) {
    std::ifstream in(jsonl_path, std::ios::binary);
    if (!in) throw_err(Err::CorruptFile, "cannot open " + jsonl_path);
    std::ofstream out(csv_path, std::ios::binary | std::ios::trunc);
    if (!out) throw_err(Err::CorruptFile, "cannot open " + csv_path + " for writing");
    out << kCsvHeader << "\n";
    std::string text;
    int line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (text.empty()) continue;
        nlohmann::ordered_json j = nlohmann::ordered_json::parse(text, nullptr, false);
        if (j.is_discarded())
            throw_err(Err::CorruptFile, jsonl_path + ": unparsable row at line " + std::to_string(line));
        out << row_from_json(j).to_csv() << "\n";
    }
}

int resolve_thread_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("NULLSTELLENSATZ_LAB_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<int>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace nslab
