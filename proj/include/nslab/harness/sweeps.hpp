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

#ifndef NSLAB_HARNESS_SWEEPS_HPP
#define NSLAB_HARNESS_SWEEPS_HPP

#include "nslab/harness/config.hpp"
#include "nslab/harness/runner.hpp"
#include "nslab/valueset.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace nslab {

enum class SubsetMode {
    Exhaustive,  // all nonempty bitmasks, increasing numeric order
    Sampled,     // seeded uniform masks
    Auto,        // exhaustive when 2^q - 1 <= exhaustive_cap, else sampled
};

enum class BoundKind { Thm11, Thm12, Cor14, Dsh, Cms };

const char* bound_kind_name(BoundKind b);

/// Bound-verification sweep configuration. Subsets of a finite field are
/// encoded as bitmasks over the canonical element order; the rational
/// model draws subsets from the integer window {-q_window..q_window}.
struct SweepConfig {
    std::vector<std::string> fields;
    std::int64_t k_lo = 1, k_hi = 1;
    std::int64_t n_lo = 1, n_hi = 1;
    bool common_sets = false;  // one subset shared by all variables
    SubsetMode subsets = SubsetMode::Auto;
    std::int64_t subset_samples = 1000;
    std::int64_t exhaustive_cap = 4096;
    std::vector<BoundKind> bounds{BoundKind::Thm11};
    bool coeffs_ones = false;
    std::int64_t coeff_samples = 50;
    bool tail_zero = true;
    bool tail_random = false;
    bool seed_given = false;
    std::uint64_t seed = 0;
    std::uint64_t budget = kDefaultBudget;
    std::int64_t q_window = 4;

    static SweepConfig from_config(const ConfigFile& cfg);
    void validate() const;
};

/// Conjecture scan: restricted value sets of diagonal forms over a common
/// subset, compared against the conjectured bound with exact arithmetic.
struct ConjectureScanConfig {
    std::vector<std::string> fields;                         // prime fields
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;  // (k, n) with n > k
    SubsetMode subsets = SubsetMode::Auto;
    std::int64_t subset_samples = 10000;
    std::int64_t exhaustive_cap = 1000;
    std::int64_t coeff_samples = 20;  // seeded draws; the negated pair is prepended at n = 2
    bool tail_zero = true;
    bool tail_random = false;
    bool seed_given = false;
    std::uint64_t seed = 0;
    std::uint64_t budget = kDefaultBudget;

    static ConjectureScanConfig from_config(const ConfigFile& cfg);
    void validate() const;
};

struct RunOptions {
    int threads = 0;               // 0: env var / hardware
    std::uint64_t skip_rows = 0;   // resume: suppress and fast-skip the first rows
};

RunSummary run_verify_bounds(const SweepConfig& cfg, const RunOptions& opt, const RowSink& sink);
RunSummary run_scan_conjecture(const ConjectureScanConfig& cfg, const RunOptions& opt, const RowSink& sink);

/// Section-table runners ([replay], [cn], [example21|example31|example41]).
RunSummary run_replay(const ConfigFile& cfg, const RunOptions& opt, const RowSink& sink);
RunSummary run_cn_demo(const ConfigFile& cfg, const RunOptions& opt, const RowSink& sink);
RunSummary run_build_extremal(const ConfigFile& cfg, const RunOptions& opt, const RowSink& sink);

}  // namespace nslab

#endif
