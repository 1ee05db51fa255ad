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

#include "nslab/constructions.hpp"
#include "nslab/nullstellensatz.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <random>

namespace nslab {

namespace {

constexpr std::uint64_t kInstancesPerTask = 1024;
constexpr std::uint64_t kTagSubset = 0x73;
constexpr std::uint64_t kTagCoeff = 0x63;
constexpr std::uint64_t kTagTail = 0x74;

std::mt19937_64 rng_for(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
    std::uint64_t h = splitmix64(seed);
    for (auto v : path) h = hash_combine_u64(h, v);
    return std::mt19937_64(h);
}

std::int64_t to_i64(const BigInt& v) {
    if (v < std::numeric_limits<std::int64_t>::min() || v > std::numeric_limits<std::int64_t>::max())
        throw_err(Err::BadParams, "value out of 64-bit range in report");
    return static_cast<std::int64_t>(v);
}

// Per-field sweep context. The universe is the bitmask domain: the whole
// field in canonical order, or the integer window for the rational model.
struct FieldCtx {
    Field field;
    std::vector<Elem> universe;

    explicit FieldCtx(const Field& f, std::int64_t q_window) : field(f) {
        if (f.finite()) {
            universe = f.all_elements();
        } else {
            for (std::int64_t v = -q_window; v <= q_window; ++v) universe.push_back(f.from_int(v));
        }
        if (universe.size() > 62)
            throw_err(Err::BadParams, "field too large for bitmask sweeps: " + f.descriptor());
    }

    std::uint64_t mask_count() const { return (std::uint64_t{1} << universe.size()) - 1; }

    std::vector<Elem> subset_of(std::uint64_t mask) const {
        std::vector<Elem> s;
        for (std::size_t b = 0; b < universe.size(); ++b)
            if (mask & (std::uint64_t{1} << b)) s.push_back(universe[b]);
        return s;
    }

    Elem nonzero_draw(std::mt19937_64& rng) const {
        if (field.finite()) return field.element(1 + static_cast<std::int64_t>(rng() % (field.size() - 1)));
        const std::int64_t w = (static_cast<std::int64_t>(universe.size()) - 1) / 2;
        std::int64_t i = static_cast<std::int64_t>(rng() % (2 * w));
        return field.from_int(i < w ? i + 1 : -(i - w + 1));
    }

    Elem any_draw(std::mt19937_64& rng) const {
        if (field.finite()) return field.element(static_cast<std::int64_t>(rng() % field.size()));
        const std::int64_t w = (static_cast<std::int64_t>(universe.size()) - 1) / 2;
        return field.from_int(static_cast<std::int64_t>(rng() % (2 * w + 1)) - w);
    }
};

// Exponent vectors of total degree < k, in lexicographic order.
std::vector<SparsePoly::Exps> exps_below_degree(int n, std::int64_t k) {
    std::vector<SparsePoly::Exps> out;
    SparsePoly::Exps cur(n, 0);
    auto descend = [&](auto&& self, int var, std::int64_t left) -> void {
        if (var == n) {
            out.push_back(cur);
            return;
        }
        for (std::int64_t e = 0; e <= left; ++e) {
            cur[var] = static_cast<std::int32_t>(e);
            self(self, var + 1, left - e);
        }
        cur[var] = 0;
    };
    descend(descend, 0, k - 1);
    return out;
}

SparsePoly draw_tail(const FieldCtx& ctx, const std::vector<SparsePoly::Exps>& candidates, int n,
                     std::mt19937_64& rng) {
    SparsePoly g(n);
    const std::uint64_t monomials = 1 + rng() % 3;
    for (std::uint64_t t = 0; t < monomials; ++t) {
        const auto& e = candidates[rng() % candidates.size()];
        g.add_term(ctx.field, e, ctx.any_draw(rng));
    }
    return g;
}

struct Block {
    int field_idx = 0;
    std::int64_t k = 1;
    std::int64_t n = 1;
    bool exhaustive = true;
    bool per_variable = false;
    std::uint64_t mask_count = 0;  // M, exhaustive only
    std::uint64_t count = 0;       // instances in this block
    std::uint64_t base = 0;        // global instance offset
};

std::uint64_t checked_pow(std::uint64_t m, std::int64_t n, std::uint64_t cap) {
    std::uint64_t r = 1;
    for (std::int64_t i = 0; i < n; ++i) {
        if (m != 0 && r > cap / m)
            throw_err(Err::BudgetExceeded, "exhaustive subset space exceeds the configured budget");
        r *= m;
    }
    return r;
}

std::vector<std::uint64_t> decode_masks(const Block& b, const FieldCtx& ctx, std::uint64_t subset_idx,
                                        std::uint64_t seed) {
    std::vector<std::uint64_t> masks(b.n);
    if (b.exhaustive) {
        if (!b.per_variable) {
            std::fill(masks.begin(), masks.end(), subset_idx + 1);
        } else {
            // Mixed-radix decode, x_1 most significant: each variable's
            // mask advances in increasing numeric order.
            std::uint64_t rest = subset_idx;
            for (std::int64_t i = b.n - 1; i >= 0; --i) {
                masks[i] = rest % b.mask_count + 1;
                rest /= b.mask_count;
            }
        }
    } else {
        auto rng = rng_for(seed, {kTagSubset, static_cast<std::uint64_t>(b.field_idx),
                                  static_cast<std::uint64_t>(b.k), static_cast<std::uint64_t>(b.n), subset_idx});
        const std::uint64_t m = ctx.mask_count();
        if (!b.per_variable) {
            std::fill(masks.begin(), masks.end(), 1 + rng() % m);
        } else {
            for (auto& mask : masks) mask = 1 + rng() % m;
        }
    }
    return masks;
}

const char* subset_mode_req_seed = "sampled subsets, sampled coefficients and random tails all require an explicit seed";

// ---------------------------------------------------------------------
// verify-bounds
// ---------------------------------------------------------------------

struct SweepPlan {
    SweepConfig cfg;
    std::vector<FieldCtx> fields;
    std::vector<Block> blocks;
    std::uint64_t total_instances = 0;
    std::vector<std::vector<SparsePoly::Exps>> tail_exps;  // per block

    const Block& block_of(std::uint64_t inst, std::uint64_t& local) const {
        auto it = std::upper_bound(blocks.begin(), blocks.end(), inst,
                                   [](std::uint64_t v, const Block& b) { return v < b.base; });
        const Block& b = *std::prev(it);
        local = inst - b.base;
        return b;
    }
};

SweepPlan make_sweep_plan(const SweepConfig& cfg) {
    cfg.validate();
    SweepPlan plan{cfg, {}, {}, 0, {}};
    for (const auto& d : cfg.fields) plan.fields.emplace_back(Field::parse(d), cfg.q_window);

    bool any_sampled = false;
    for (int fi = 0; fi < static_cast<int>(plan.fields.size()); ++fi) {
        const auto& ctx = plan.fields[fi];
        for (std::int64_t k = cfg.k_lo; k <= cfg.k_hi; ++k) {
            for (std::int64_t n = cfg.n_lo; n <= cfg.n_hi; ++n) {
                Block b;
                b.field_idx = fi;
                b.k = k;
                b.n = n;
                b.per_variable = !cfg.common_sets;
                b.mask_count = ctx.mask_count();
                switch (cfg.subsets) {
                    case SubsetMode::Exhaustive: b.exhaustive = true; break;
                    case SubsetMode::Sampled: b.exhaustive = false; break;
                    case SubsetMode::Auto:
                        b.exhaustive = b.mask_count <= static_cast<std::uint64_t>(cfg.exhaustive_cap);
                        break;
                }
                if (b.exhaustive) {
                    b.count = b.per_variable ? checked_pow(b.mask_count, n, cfg.budget) : b.mask_count;
                    if (b.count > cfg.budget)
                        throw_err(Err::BudgetExceeded, "exhaustive subset space exceeds the configured budget");
                } else {
                    any_sampled = true;
                    b.count = static_cast<std::uint64_t>(cfg.subset_samples);
                }
                b.base = plan.total_instances;
                plan.total_instances += b.count;
                if (plan.total_instances > cfg.budget)
                    throw_err(Err::BudgetExceeded, "total subset count exceeds the configured budget");
                plan.blocks.push_back(b);
                plan.tail_exps.push_back(cfg.tail_random ? exps_below_degree(static_cast<int>(n), k)
                                                         : std::vector<SparsePoly::Exps>{});
            }
        }
    }
    const bool needs_seed = any_sampled || !cfg.coeffs_ones || cfg.tail_random;
    if (needs_seed && !cfg.seed_given) throw_err(Err::BadParams, subset_mode_req_seed);
    return plan;
}

std::vector<std::vector<Elem>> coeff_draws_for(const FieldCtx& ctx, const SweepConfig& cfg, const Block& b,
                                               std::uint64_t subset_idx) {
    std::vector<std::vector<Elem>> draws;
    if (cfg.coeffs_ones) {
        draws.emplace_back(b.n, ctx.field.one());
        return draws;
    }
    auto rng = rng_for(cfg.seed, {kTagCoeff, static_cast<std::uint64_t>(b.field_idx),
                                  static_cast<std::uint64_t>(b.k), static_cast<std::uint64_t>(b.n), subset_idx});
    for (std::int64_t d = 0; d < cfg.coeff_samples; ++d) {
        std::vector<Elem> a;
        a.reserve(b.n);
        for (std::int64_t i = 0; i < b.n; ++i) a.push_back(ctx.nonzero_draw(rng));
        if (std::find(draws.begin(), draws.end(), a) == draws.end()) draws.push_back(std::move(a));
    }
    return draws;
}

enum class InstanceSkip { None, Skip };

struct BoundGate {
    InstanceSkip instance;
    std::string reason;
};

BoundGate gate_for(BoundKind bound, const FieldCtx& ctx, const Block& b,
                   const std::vector<std::int64_t>& sizes, bool common_masks, bool all_full) {
    switch (bound) {
        case BoundKind::Thm11: return {InstanceSkip::None, ""};
        case BoundKind::Thm12: {
            if (b.n > b.k) return {InstanceSkip::Skip, "precondition: needs n <= k"};
            for (std::int64_t i = 1; i <= b.n; ++i)
                if (sizes[i - 1] < i) return {InstanceSkip::Skip, "precondition: needs |A_i| >= i"};
            return {InstanceSkip::None, ""};
        }
        case BoundKind::Cor14:
            if (!common_masks) return {InstanceSkip::Skip, "precondition: needs a common subset"};
            return {InstanceSkip::None, ""};
        case BoundKind::Dsh:
            if (b.k != 1 || !common_masks)
                return {InstanceSkip::Skip, "precondition: needs k = 1 and a common subset"};
            return {InstanceSkip::None, ""};
        case BoundKind::Cms: {
            if (ctx.field.kind() != FieldKind::Prime)
                return {InstanceSkip::Skip, "precondition: needs a prime field"};
            const std::int64_t p = ctx.field.char_p();
            if (!(p > 3 && b.k > 1 && 2 * b.k < p - 1 && (p - 1) % b.k == 0))
                return {InstanceSkip::Skip, "precondition: Chowla-Mann-Straus hypotheses on (p, k)"};
            if (!all_full) return {InstanceSkip::Skip, "precondition: needs A_i = F_p"};
            return {InstanceSkip::None, ""};
        }
    }
    return {InstanceSkip::Skip, "unknown bound"};
}

bool subdraw_qualifies(BoundKind bound, const Field& f, const std::vector<Elem>& coeffs, bool tail_is_zero) {
    switch (bound) {
        case BoundKind::Thm11:
        case BoundKind::Thm12:
        case BoundKind::Cor14: return true;
        case BoundKind::Dsh:
            return tail_is_zero &&
                   std::all_of(coeffs.begin(), coeffs.end(), [&](const Elem& c) { return f.is_one(c); });
        case BoundKind::Cms: return tail_is_zero;
    }
    return false;
}

std::vector<ResultRow> process_sweep_instance(const SweepPlan& plan, std::uint64_t inst, bool count_only) {
    const auto start = std::chrono::steady_clock::now();
    std::uint64_t subset_idx = 0;
    const Block& b = plan.block_of(inst, subset_idx);
    const FieldCtx& ctx = plan.fields[b.field_idx];
    const SweepConfig& cfg = plan.cfg;

    const auto masks = decode_masks(b, ctx, subset_idx, cfg.seed);
    const bool common_masks = std::all_of(masks.begin(), masks.end(), [&](auto m) { return m == masks[0]; });
    const bool all_full = std::all_of(masks.begin(), masks.end(), [&](auto m) { return m == ctx.mask_count(); });

    std::vector<std::vector<Elem>> raw_sets;
    raw_sets.reserve(b.n);
    for (auto m : masks) raw_sets.push_back(ctx.subset_of(m));
    SubsetFamily family = SubsetFamily::of(ctx.field, std::move(raw_sets));
    const auto sizes = family.sizes();

    ResultRow proto;
    proto.field = ctx.field.descriptor();
    proto.k = b.k;
    proto.n = b.n;
    proto.sizes = sizes;
    proto.masks = masks;

    std::vector<ResultRow> rows;
    std::vector<BoundKind> active;
    for (BoundKind bound : cfg.bounds) {
        BoundGate gate = gate_for(bound, ctx, b, sizes, common_masks, all_full);
        if (gate.instance == InstanceSkip::Skip) {
            ResultRow r = proto;
            r.bound_name = bound_kind_name(bound);
            r.skip_reason = gate.reason;
            rows.push_back(std::move(r));
        } else {
            active.push_back(bound);
        }
    }

    if (!active.empty()) {
        const auto coeff_draws = coeff_draws_for(ctx, cfg, b, subset_idx);
        std::vector<int> tails;
        if (cfg.tail_zero) tails.push_back(0);
        if (cfg.tail_random) tails.push_back(1);

        for (std::size_t ci = 0; ci < coeff_draws.size(); ++ci) {
            const auto& a = coeff_draws[ci];
            for (int tail_kind : tails) {
                SparsePoly g(static_cast<int>(b.n));
                if (tail_kind == 1) {
                    auto rng = rng_for(cfg.seed, {kTagTail, static_cast<std::uint64_t>(b.field_idx),
                                                  static_cast<std::uint64_t>(b.k),
                                                  static_cast<std::uint64_t>(b.n), subset_idx, ci});
                    g = draw_tail(ctx, plan.tail_exps[&b - plan.blocks.data()], static_cast<int>(b.n), rng);
                }
                const bool tail_is_zero = g.is_zero();
                DiagonalForm form(b.k, a, g);

                std::optional<ValueSetResult> vs_unrestricted, vs_restricted;
                auto observed = [&](bool restricted) -> std::int64_t {
                    if (count_only) return 0;
                    auto& slot = restricted ? vs_restricted : vs_unrestricted;
                    if (!slot)
                        slot = restricted ? restricted_value_set(ctx.field, form, family, cfg.budget)
                                          : value_set(ctx.field, form, family, cfg.budget);
                    return slot->size();
                };

                for (BoundKind bound : active) {
                    if (!subdraw_qualifies(bound, ctx.field, a, tail_is_zero)) continue;
                    ResultRow r = proto;
                    r.bound_name = bound_kind_name(bound);
                    r.coeffs.reserve(a.size());
                    for (const auto& c : a) r.coeffs.push_back(ctx.field.elem_to_string(c));
                    r.tail = g.to_text(ctx.field);
                    r.has_values = true;
                    if (!count_only) {
                        BigInt bv;
                        std::int64_t obs = 0;
                        const CharBound ch = ctx.field.characteristic();
                        switch (bound) {
                            case BoundKind::Thm11:
                                bv = bound_thm_1_1(ch, b.k, sizes);
                                obs = observed(false);
                                break;
                            case BoundKind::Thm12:
                                bv = bound_thm_1_2(ch, b.k, sizes);
                                obs = observed(true);
                                break;
                            case BoundKind::Cor14:
                                bv = bound_cor_1_4(ch, b.k, b.n, sizes[0]);
                                obs = observed(true);
                                break;
                            case BoundKind::Dsh:
                                bv = bound_dsh(ch, b.n, sizes[0]);
                                obs = observed(true);
                                break;
                            case BoundKind::Cms:
                                bv = bound_cms(ctx.field.char_p(), b.k, b.n);
                                obs = observed(false);
                                break;
                        }
                        r.bound = to_i64(bv);
                        r.observed = obs;
                        r.slack = obs - r.bound;
                        r.tight = r.slack == 0;
                        r.violation = r.slack < 0;
                    }
                    rows.push_back(std::move(r));
                }
            }
        }
    }

    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    for (auto& r : rows) r.wall_ms = ms;
    return rows;
}

// ---------------------------------------------------------------------
// scan-conjecture
// ---------------------------------------------------------------------

struct ConjecturePlan {
    ConjectureScanConfig cfg;
    std::vector<FieldCtx> fields;
    std::vector<Block> blocks;  // k,n from pairs
    std::uint64_t total_instances = 0;
    std::vector<std::vector<SparsePoly::Exps>> tail_exps;

    const Block& block_of(std::uint64_t inst, std::uint64_t& local) const {
        auto it = std::upper_bound(blocks.begin(), blocks.end(), inst,
                                   [](std::uint64_t v, const Block& b) { return v < b.base; });
        const Block& b = *std::prev(it);
        local = inst - b.base;
        return b;
    }
};

ConjecturePlan make_conjecture_plan(const ConjectureScanConfig& cfg) {
    cfg.validate();
    ConjecturePlan plan{cfg, {}, {}, 0, {}};
    for (const auto& d : cfg.fields) plan.fields.emplace_back(Field::parse(d), 4);

    bool any_sampled = false;
    for (int fi = 0; fi < static_cast<int>(plan.fields.size()); ++fi) {
        const auto& ctx = plan.fields[fi];
        for (const auto& [k, n] : cfg.pairs) {
            Block b;
            b.field_idx = fi;
            b.k = k;
            b.n = n;
            b.per_variable = false;
            b.mask_count = ctx.mask_count();
            switch (cfg.subsets) {
                case SubsetMode::Exhaustive: b.exhaustive = true; break;
                case SubsetMode::Sampled: b.exhaustive = false; break;
                case SubsetMode::Auto:
                    b.exhaustive = b.mask_count <= static_cast<std::uint64_t>(cfg.exhaustive_cap);
                    break;
            }
            b.count = b.exhaustive ? b.mask_count : static_cast<std::uint64_t>(cfg.subset_samples);
            if (!b.exhaustive) any_sampled = true;
            b.base = plan.total_instances;
            plan.total_instances += b.count;
            if (plan.total_instances > cfg.budget)
                throw_err(Err::BudgetExceeded, "total subset count exceeds the configured budget");
            plan.blocks.push_back(b);
            plan.tail_exps.push_back(cfg.tail_random ? exps_below_degree(static_cast<int>(n), k)
                                                     : std::vector<SparsePoly::Exps>{});
        }
    }
    if ((any_sampled || cfg.coeff_samples > 0 || cfg.tail_random) && !cfg.seed_given)
        throw_err(Err::BadParams, subset_mode_req_seed);
    return plan;
}

std::vector<ResultRow> process_conjecture_instance(const ConjecturePlan& plan, std::uint64_t inst,
                                                   bool count_only) {
    const auto start = std::chrono::steady_clock::now();
    std::uint64_t subset_idx = 0;
    const Block& b = plan.block_of(inst, subset_idx);
    const FieldCtx& ctx = plan.fields[b.field_idx];
    const ConjectureScanConfig& cfg = plan.cfg;
    const Field& f = ctx.field;

    const auto masks = decode_masks(b, ctx, subset_idx, cfg.seed);
    SubsetFamily family = SubsetFamily::repeated(f, ctx.subset_of(masks[0]), static_cast<int>(b.n));
    const auto sizes = family.sizes();

    // Coefficient draws; the a_1 = -a_2 pair is prepended at n = 2 so the
    // delta = 1 branch is always exercised.
    std::vector<std::vector<Elem>> draws;
    if (b.n == 2) draws.push_back({f.one(), f.neg(f.one())});
    auto rng = rng_for(cfg.seed, {kTagCoeff, static_cast<std::uint64_t>(b.field_idx),
                                  static_cast<std::uint64_t>(b.k), static_cast<std::uint64_t>(b.n), subset_idx});
    for (std::int64_t d = 0; d < cfg.coeff_samples; ++d) {
        std::vector<Elem> a;
        a.reserve(b.n);
        for (std::int64_t i = 0; i < b.n; ++i) a.push_back(ctx.nonzero_draw(rng));
        if (std::find(draws.begin(), draws.end(), a) == draws.end()) draws.push_back(std::move(a));
    }

    std::vector<int> tails;
    if (cfg.tail_zero) tails.push_back(0);
    if (cfg.tail_random) tails.push_back(1);

    std::vector<ResultRow> rows;
    for (std::size_t ci = 0; ci < draws.size(); ++ci) {
        const auto& a = draws[ci];
        for (int tail_kind : tails) {
            SparsePoly g(static_cast<int>(b.n));
            if (tail_kind == 1) {
                auto trng = rng_for(cfg.seed, {kTagTail, static_cast<std::uint64_t>(b.field_idx),
                                               static_cast<std::uint64_t>(b.k), static_cast<std::uint64_t>(b.n),
                                               subset_idx, ci});
                g = draw_tail(ctx, plan.tail_exps[&b - plan.blocks.data()], static_cast<int>(b.n), trng);
            }
            DiagonalForm form(b.k, a, g);
            const int delta = conjecture_delta(f, a);

            ResultRow r;
            r.kind = "conjecture";
            r.field = f.descriptor();
            r.k = b.k;
            r.n = b.n;
            r.sizes = sizes;
            r.masks = masks;
            for (const auto& c : a) r.coeffs.push_back(f.elem_to_string(c));
            r.tail = g.to_text(f);
            r.bound_name = "conjecture-1.1";
            r.delta = delta;
            r.has_values = true;
            if (!count_only) {
                const BigInt bv = bound_conjecture(f.characteristic(), b.k, b.n, sizes[0], delta);
                const std::int64_t obs = restricted_value_set(f, form, family, cfg.budget).size();
                r.bound = to_i64(bv);
                r.observed = obs;
                r.slack = obs - r.bound;
                r.tight = r.slack == 0;
                r.violation = r.slack < 0;
            }
            rows.push_back(std::move(r));
        }
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    for (auto& r : rows) r.wall_ms = ms;
    return rows;
}

// ---------------------------------------------------------------------
// shared driver with resume-aware row accounting
// ---------------------------------------------------------------------

RunSummary drive(std::uint64_t total_instances,
                 const std::function<std::vector<ResultRow>(std::uint64_t, bool)>& process,
                 const RunOptions& opt, const RowSink& sink) {
    RunSummary summary;
    const std::uint64_t task_count = (total_instances + kInstancesPerTask - 1) / kInstancesPerTask;

    std::uint64_t start_task = 0;
    std::uint64_t rows_before_start = 0;
    if (opt.skip_rows > 0) {
        // Cheap counting pre-pass: row multiplicity per instance is known
        // without any value-set work, so fully-written tasks are skipped.
        std::uint64_t cum = 0;
        std::uint64_t task = 0;
        for (; task < task_count; ++task) {
            std::uint64_t task_rows = 0;
            const std::uint64_t lo = task * kInstancesPerTask;
            const std::uint64_t hi = std::min(total_instances, lo + kInstancesPerTask);
            for (std::uint64_t i = lo; i < hi; ++i) task_rows += process(i, true).size();
            if (cum + task_rows > opt.skip_rows) break;
            cum += task_rows;
        }
        if (task == task_count && cum < opt.skip_rows)
            throw_err(Err::CorruptFile, "results file holds more rows than this configuration generates");
        start_task = task;
        rows_before_start = cum;
    }

    std::atomic<std::uint64_t> instances_done{0};
    std::uint64_t next_id = rows_before_start;

    run_ordered(
        task_count - start_task, resolve_thread_count(opt.threads),
        [&](std::uint64_t rel_task) {
            const std::uint64_t task = start_task + rel_task;
            const std::uint64_t lo = task * kInstancesPerTask;
            const std::uint64_t hi = std::min(total_instances, lo + kInstancesPerTask);
            std::vector<ResultRow> rows;
            for (std::uint64_t i = lo; i < hi; ++i) {
                auto r = process(i, false);
                rows.insert(rows.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
                instances_done.fetch_add(1, std::memory_order_relaxed);
            }
            return rows;
        },
        [&](std::uint64_t, std::vector<ResultRow>&& rows) {
            for (auto& r : rows) {
                r.id = next_id++;
                if (r.id < opt.skip_rows) continue;  // boundary task: already on disk
                summary.absorb(r);
                if (sink) sink(r);
            }
        });

    summary.instances = instances_done.load();
    return summary;
}

Field field_for_section(const ConfigSection& s) { return Field::parse(s.get("field")); }

std::vector<Elem> parse_elems(const Field& f, const std::string& text) {
    std::vector<Elem> out;
    for (const auto& part : parse_str_list(text)) out.push_back(f.elem_parse(part));
    return out;
}

std::vector<std::vector<Elem>> parse_sets(const Field& f, const std::string& text) {
    std::vector<std::vector<Elem>> out;
    for (const auto& group : parse_str_list(text, '|')) out.push_back(parse_elems(f, group));
    return out;
}

}  // namespace

const char* bound_kind_name(BoundKind b) {
    switch (b) {
        case BoundKind::Thm11: return "thm-1.1";
        case BoundKind::Thm12: return "thm-1.2";
        case BoundKind::Cor14: return "cor-1.4";
        case BoundKind::Dsh: return "dsh";
        case BoundKind::Cms: return "cms";
    }
    return "?";
}

void SweepConfig::validate() const {
    if (fields.empty()) throw_err(Err::BadParams, "no fields configured");
    if (k_lo < 1 || k_hi < k_lo) throw_err(Err::BadParams, "bad k range");
    if (n_lo < 1 || n_hi < n_lo) throw_err(Err::BadParams, "bad n range");
    if (bounds.empty()) throw_err(Err::BadParams, "no bounds configured");
    if (!tail_zero && !tail_random) throw_err(Err::BadParams, "no tail policy configured");
    if (subsets != SubsetMode::Exhaustive && subset_samples < 1)
        throw_err(Err::BadParams, "subset_samples must be >= 1");
    if (!coeffs_ones && coeff_samples < 1) throw_err(Err::BadParams, "coeff_samples must be >= 1");
    if (q_window < 1) throw_err(Err::BadParams, "q_window must be >= 1");
}

void ConjectureScanConfig::validate() const {
    if (fields.empty()) throw_err(Err::BadParams, "no fields configured");
    if (pairs.empty()) throw_err(Err::BadParams, "no (k, n) pairs configured");
    for (const auto& [k, n] : pairs)
        if (k < 1 || n <= k)
            throw_err(Err::PreconditionViolated,
                      "conjecture scan needs n > k >= 1, got k=" + std::to_string(k) + " n=" + std::to_string(n));
    if (subsets != SubsetMode::Exhaustive && subset_samples < 1)
        throw_err(Err::BadParams, "subset_samples must be >= 1");
    if (coeff_samples < 0) throw_err(Err::BadParams, "coeff_samples must be >= 0");
}

namespace {

SubsetMode parse_subset_mode(const std::string& s) {
    if (s == "exhaustive") return SubsetMode::Exhaustive;
    if (s == "sampled") return SubsetMode::Sampled;
    if (s == "auto") return SubsetMode::Auto;
    throw_err(Err::ParseError, "bad subsets mode '" + s + "'");
}

std::vector<BoundKind> parse_bounds(const std::string& s) {
    std::vector<BoundKind> out;
    for (const auto& name : parse_str_list(s)) {
        if (name == "thm11") out.push_back(BoundKind::Thm11);
        else if (name == "thm12") out.push_back(BoundKind::Thm12);
        else if (name == "cor14") out.push_back(BoundKind::Cor14);
        else if (name == "dsh") out.push_back(BoundKind::Dsh);
        else if (name == "cms") out.push_back(BoundKind::Cms);
        else throw_err(Err::ParseError, "unknown bound '" + name + "'");
    }
    return out;
}

void parse_tails(const std::string& s, bool& zero, bool& random) {
    zero = random = false;
    for (const auto& t : parse_str_list(s)) {
        if (t == "zero") zero = true;
        else if (t == "random") random = true;
        else throw_err(Err::ParseError, "unknown tail policy '" + t + "'");
    }
}

}  // namespace

SweepConfig SweepConfig::from_config(const ConfigFile& cfg) {
    const ConfigSection& g = cfg.global;
    SweepConfig out;
    out.fields = parse_str_list(g.get("fields"));
    std::tie(out.k_lo, out.k_hi) = parse_range(g.get("k"));
    std::tie(out.n_lo, out.n_hi) = parse_range(g.get("n"));
    out.common_sets = g.get_or("subset_mode", "per_variable") == "common";
    out.subsets = parse_subset_mode(g.get_or("subsets", "auto"));
    out.subset_samples = parse_i64(g.get_or("subset_samples", "1000"));
    out.exhaustive_cap = parse_i64(g.get_or("exhaustive_cap", "4096"));
    out.bounds = parse_bounds(g.get_or("bounds", "thm11"));
    out.coeffs_ones = g.get_or("coeffs", "sampled") == "ones";
    out.coeff_samples = parse_i64(g.get_or("coeff_samples", "50"));
    parse_tails(g.get_or("tails", "zero"), out.tail_zero, out.tail_random);
    out.seed_given = g.has("seed");
    if (out.seed_given) out.seed = parse_u64(g.get("seed"));
    out.budget = parse_u64(g.get_or("budget", std::to_string(kDefaultBudget)));
    out.q_window = parse_i64(g.get_or("q_window", "4"));
    return out;
}

ConjectureScanConfig ConjectureScanConfig::from_config(const ConfigFile& cfg) {
    const ConfigSection& g = cfg.global;
    ConjectureScanConfig out;
    out.fields = parse_str_list(g.get("fields"));
    out.pairs = parse_pair_list(g.get("pairs"));
    out.subsets = parse_subset_mode(g.get_or("subsets", "auto"));
    out.subset_samples = parse_i64(g.get_or("subset_samples", "10000"));
    out.exhaustive_cap = parse_i64(g.get_or("exhaustive_cap", "1000"));
    out.coeff_samples = parse_i64(g.get_or("coeff_samples", "20"));
    parse_tails(g.get_or("tails", "zero"), out.tail_zero, out.tail_random);
    out.seed_given = g.has("seed");
    if (out.seed_given) out.seed = parse_u64(g.get("seed"));
    out.budget = parse_u64(g.get_or("budget", std::to_string(kDefaultBudget)));
    return out;
}

RunSummary run_verify_bounds(const SweepConfig& cfg, const RunOptions& opt, const RowSink& sink) {
    SweepPlan plan = make_sweep_plan(cfg);
    return drive(
        plan.total_instances,
        [&plan](std::uint64_t inst, bool count_only) { return process_sweep_instance(plan, inst, count_only); },
        opt, sink);
}

RunSummary run_scan_conjecture(const ConjectureScanConfig& cfg, const RunOptions& opt, const RowSink& sink) {
    ConjecturePlan plan = make_conjecture_plan(cfg);
    return drive(
        plan.total_instances,
        [&plan](std::uint64_t inst, bool count_only) {
            return process_conjecture_instance(plan, inst, count_only);
        },
        opt, sink);
}

// ---------------------------------------------------------------------
// section-table runners
// ---------------------------------------------------------------------

RunSummary run_replay(const ConfigFile& cfg, const RunOptions& opt, const RowSink& sink) {
    const std::uint64_t budget = parse_u64(cfg.global.get_or("budget", std::to_string(kDefaultBudget)));
    std::vector<ResultRow> rows;
    for (const auto& s : cfg.sections) {
        if (s.name != "replay") throw_err(Err::ParseError, "unexpected section [" + s.name + "]");
        const Field f = field_for_section(s);
        const std::int64_t k = parse_i64(s.get("k"));
        const std::vector<Elem> a = parse_elems(f, s.get("a"));
        auto sets = parse_sets(f, s.get("sets"));
        SparsePoly g = SparsePoly::from_text(f, static_cast<int>(a.size()), s.get_or("g", "0"));
        const bool restricted = parse_bool(s.get_or("restricted", "false"));
        DiagonalForm form(k, a, std::move(g));
        SubsetFamily family = SubsetFamily::of(f, std::move(sets));

        ReplayOptions ro;
        ro.budget = budget;
        if (s.has("inject_c")) ro.inject_c_limit = static_cast<std::size_t>(parse_i64(s.get("inject_c")));
        ProofTrace trace = replay_proof(f, form, family, restricted, ro);

        ResultRow r;
        r.kind = "trace";
        r.field = f.descriptor();
        r.k = k;
        r.n = form.n();
        r.sizes = family.sizes();
        for (const auto& c : a) r.coeffs.push_back(f.elem_to_string(c));
        r.tail = form.g.to_text(f);
        r.bound_name = "replay";
        r.has_values = true;
        r.bound = trace.plan.target_bound;
        r.observed = trace.c_size;
        r.slack = r.observed - r.bound;
        r.tight = r.slack == 0;
        r.violation = r.slack < 0;
        r.extra_json = trace.to_json_text(f);
        rows.push_back(std::move(r));
    }
    RunSummary summary;
    for (std::uint64_t i = 0; i < rows.size(); ++i) {
        rows[i].id = i;
        if (i < opt.skip_rows) continue;
        summary.absorb(rows[i]);
        if (sink) sink(rows[i]);
    }
    summary.instances = rows.size();
    return summary;
}

RunSummary run_cn_demo(const ConfigFile& cfg, const RunOptions& opt, const RowSink& sink) {
    std::vector<ResultRow> rows;
    for (const auto& s : cfg.sections) {
        if (s.name != "cn") throw_err(Err::ParseError, "unexpected section [" + s.name + "]");
        const Field f = field_for_section(s);
        auto grids = parse_sets(f, s.get("grids"));
        const int n = static_cast<int>(grids.size());
        std::vector<std::int64_t> target64 = parse_i64_list(s.get("target"));
        SparsePoly::Exps target(target64.begin(), target64.end());

        SparsePoly p(n);
        if (s.has("poly")) {
            p = SparsePoly::from_text(f, n, s.get("poly"));
        } else {
            const std::int64_t k = parse_i64(s.get("k"));
            const std::vector<Elem> a = parse_elems(f, s.get("a"));
            SparsePoly g = SparsePoly::from_text(f, n, s.get_or("g", "0"));
            const std::vector<Elem> c = s.has("c") ? parse_elems(f, s.get("c")) : std::vector<Elem>{};
            const std::int64_t big_n = parse_i64(s.get("N"));
            const bool restricted = parse_bool(s.get_or("restricted", "false"));
            p = proof_polynomial(f, DiagonalForm(k, a, std::move(g)), c, big_n, restricted, target);
        }

        SubsetFamily family = SubsetFamily::of(f, std::move(grids));
        ResultRow r;
        r.kind = "trace";
        r.field = f.descriptor();
        r.k = parse_i64(s.get_or("k", "0"));
        r.n = n;
        r.sizes = family.sizes();
        r.bound_name = "cn-witness";
        nlohmann::ordered_json extra;
        extra["poly"] = p.to_text(f);
        try {
            auto witness = cn_witness_search(f, p, family, target);
            extra["found"] = witness.has_value();
            if (witness) {
                nlohmann::ordered_json w = nlohmann::ordered_json::array();
                for (const auto& e : *witness) w.push_back(f.elem_to_string(e));
                extra["witness"] = w;
            }
        } catch (const LabError& e) {
            if (e.code() != Err::HypothesisUnmet) throw;
            r.skip_reason = std::string("hypothesis: ") + e.what();
        }
        r.extra_json = extra.dump();
        rows.push_back(std::move(r));
    }
    RunSummary summary;
    for (std::uint64_t i = 0; i < rows.size(); ++i) {
        rows[i].id = i;
        if (i < opt.skip_rows) continue;
        summary.absorb(rows[i]);
        if (sink) sink(rows[i]);
    }
    summary.instances = rows.size();
    return summary;
}

RunSummary run_build_extremal(const ConfigFile& cfg, const RunOptions& opt, const RowSink& sink) {
    const std::uint64_t budget = parse_u64(cfg.global.get_or("budget", std::to_string(kDefaultBudget)));
    std::vector<ResultRow> rows;
    for (const auto& s : cfg.sections) {
        ResultRow r;
        r.kind = "construction";
        if (s.name == "example21" || s.name == "example31") {
            const Field f = field_for_section(s);
            const std::int64_t k = parse_i64(s.get("k"));
            const std::vector<Elem> a = parse_elems(f, s.get("a"));
            const std::vector<std::int64_t> q = parse_i64_list(s.get("q"));
            r.field = f.descriptor();
            r.k = k;
            r.n = static_cast<std::int64_t>(a.size());
            for (const auto& c : a) r.coeffs.push_back(f.elem_to_string(c));
            const bool is21 = s.name == "example21";
            r.bound_name = is21 ? "ex2.1/eq-1.3" : "ex3.1/eq-1.5";
            try {
                SubsetFamily family = is21
                                          ? build_example_2_1(f, k, a, q, parse_i64_list(s.get("r")))
                                          : build_example_3_1(f, k, a, q, parse_i64_list(s.get("s")));
                DiagonalForm form = construction_form(f, k, a);
                r.sizes = family.sizes();
                r.tail = form.g.to_text(f);
                const auto vs = is21 ? value_set(f, form, family, budget)
                                     : restricted_value_set(f, form, family, budget);
                const BigInt bound = is21 ? bound_thm_1_1(f.characteristic(), k, r.sizes)
                                          : bound_thm_1_2(f.characteristic(), k, r.sizes);
                r.has_values = true;
                r.bound = to_i64(bound);
                r.observed = vs.size();
                r.slack = r.observed - r.bound;
                r.tight = r.slack == 0;
                r.violation = r.slack < 0;
                nlohmann::ordered_json extra;
                nlohmann::ordered_json sets = nlohmann::ordered_json::array();
                for (const auto& set : family.sets) {
                    nlohmann::ordered_json one = nlohmann::ordered_json::array();
                    for (const auto& e : set) one.push_back(f.elem_to_string(e));
                    sets.push_back(one);
                }
                extra["sets"] = sets;
                nlohmann::ordered_json values = nlohmann::ordered_json::array();
                for (const auto& v : vs.values) values.push_back(f.elem_to_string(v));
                extra["values"] = values;
                r.extra_json = extra.dump();
            } catch (const LabError& e) {
                if (e.code() != Err::Infeasible) throw;
                r.skip_reason = e.what();
            }
        } else if (s.name == "example41") {
            const std::int64_t k = parse_i64(s.get("k"));
            const std::int64_t n = parse_i64(s.get("n"));
            const std::int64_t q = parse_i64(s.get("q"));
            const std::int64_t rr = parse_i64(s.get("r"));
            r.field = "Z";
            r.k = k;
            r.n = n;
            r.bound_name = "ex4.1/size";
            const Example41Model model = example_4_1_closed_forms(k, n, q, rr);
            const auto brute = example_4_1_brute(k, n, q, rr);
            const bool interval_ok = !brute.empty() && brute.front() == model.m_v &&
                                     brute.back() == model.big_m_v &&
                                     static_cast<std::int64_t>(brute.size()) == model.v_size;
            r.has_values = true;
            r.bound = model.v_size;
            r.observed = static_cast<std::int64_t>(brute.size());
            r.slack = r.observed - r.bound;
            r.tight = r.slack == 0;
            r.violation = !interval_ok;
            nlohmann::ordered_json extra;
            extra["q"] = q;
            extra["r"] = rr;
            extra["m_v"] = model.m_v;
            extra["M_v"] = model.big_m_v;
            extra["interval_ok"] = interval_ok;
            r.extra_json = extra.dump();
        } else {
            throw_err(Err::ParseError, "unexpected section [" + s.name + "]");
        }
        rows.push_back(std::move(r));
    }
    RunSummary summary;
    for (std::uint64_t i = 0; i < rows.size(); ++i) {
        rows[i].id = i;
        if (i < opt.skip_rows) continue;
        summary.absorb(rows[i]);
        if (sink) sink(rows[i]);
    }
    summary.instances = rows.size();
    return summary;
}

}  // namespace nslab
