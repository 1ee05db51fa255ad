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

#ifndef NSLAB_HARNESS_RUNNER_HPP
#define NSLAB_HARNESS_RUNNER_HPP

#include "nslab/bounds.hpp"

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace nslab {

/// One output row. Append-only; rows are emitted in a deterministic order
/// independent of the worker count, and ids are assigned at flush time.
/// The wall-time field is in-memory bookkeeping only: serialized outputs
/// must be byte-identical across runs, so timing never reaches them.
struct ResultRow {
    std::uint64_t id = 0;
    std::string kind = "bound";  // bound | conjecture | construction | trace
    std::string field;
    std::int64_t k = 0;
    std::int64_t n = 0;
    std::vector<std::int64_t> sizes;
    std::vector<std::uint64_t> masks;  // subset bitmasks: the reproducible instance descriptor
    std::vector<std::string> coeffs;
    std::string tail = "0";
    std::string bound_name;
    std::string skip_reason;  // nonempty: row records a skipped check
    bool has_values = false;  // bound/observed/slack meaningful
    std::int64_t bound = 0;
    std::int64_t observed = 0;
    std::int64_t slack = 0;
    bool tight = false;
    bool violation = false;
    int delta = -1;             // conjecture rows only
    std::string extra_json;     // serialized object appended as "extra" (constructions, traces)
    double wall_ms = 0.0;       // never serialized

    std::string to_jsonl() const;
    std::string to_csv() const;
};

extern const char* const kCsvHeader;

struct RunSummary {
    std::uint64_t rows = 0;
    std::uint64_t bound_rows = 0;
    std::uint64_t skipped = 0;
    std::uint64_t violations = 0;
    std::uint64_t instances = 0;
    std::optional<std::int64_t> min_slack;  // over value-carrying rows
    std::vector<ResultRow> violation_rows;  // first few, for loud reporting
    double wall_ms_total = 0.0;

    void absorb(const ResultRow& row);
};

using RowSink = std::function<void(const ResultRow&)>;

/// Worker pool over independent tasks with order-preserving flush: blocks
/// are handed to `flush` strictly in task order no matter how many
/// threads raced on `work`. Exceptions from workers are rethrown on the
/// calling thread after the pool drains.
void run_ordered(std::uint64_t task_count, int threads,
                 const std::function<std::vector<ResultRow>(std::uint64_t)>& work,
                 const std::function<void(std::uint64_t, std::vector<ResultRow>&&)>& flush);

/// Validates an existing JSONL results file and returns the number of
/// complete rows. Any unparsable or truncated line (including a missing
/// final newline) raises CorruptFile with its line number.
std::uint64_t count_complete_rows(const std::string& path);

/// Rebuilds the summary CSV from an existing JSONL file (used on resume so
/// both outputs stay consistent).
void rebuild_csv_from_jsonl(const std::string& jsonl_path, const std::string& csv_path);

/// Worker count: explicit argument if positive, else the
/// NULLSTELLENSATZ_LAB_THREADS environment variable, else the hardware
/// parallelism.
int resolve_thread_count(int requested = 0);

}  // namespace nslab

#endif
