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

#include "nslab/nullstellensatz.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <numeric>

namespace nslab {

std::vector<std::int64_t> ShrinkPlan::coefficient_exponents() const {
    std::vector<std::int64_t> out(shrunk_sizes.size());
    for (std::size_t i = 0; i < shrunk_sizes.size(); ++i) {
        const std::int64_t offset = restricted ? static_cast<std::int64_t>(i) + 1 : 1;
        const std::int64_t num = shrunk_sizes[i] - offset;
        if (num % k != 0)
            throw_err(Err::TheoremViolated, "shrunken size not congruent to its offset mod k");
        out[i] = num / k;
    }
    return out;
}

std::vector<std::int32_t> ShrinkPlan::target_exponents() const {
    std::vector<std::int32_t> out(shrunk_sizes.size());
    for (std::size_t i = 0; i < shrunk_sizes.size(); ++i)
        out[i] = static_cast<std::int32_t>(shrunk_sizes[i] - 1);
    return out;
}

ShrinkPlan shrink_subsets(const CharBound& c, std::int64_t k, std::span<const std::int64_t> sizes,
                          bool restricted) {
    const std::int64_t n = static_cast<std::int64_t>(sizes.size());
    if (k < 1 || n < 1) throw_err(Err::PreconditionViolated, "need k >= 1 and n >= 1");
    if (restricted && n > k) throw_err(Err::PreconditionViolated, "restricted case needs n <= k");
    std::vector<std::int64_t> qs(n);
    for (std::int64_t i = 1; i <= n; ++i) {
        const std::int64_t offset = restricted ? i : 1;
        if (sizes[i - 1] < offset)
            throw_err(Err::PreconditionViolated,
                      restricted ? "restricted case needs |A_i| >= i" : "subsets must be nonempty");
        qs[i - 1] = (sizes[i - 1] - offset) / k;
    }

    // m: the largest prefix whose floor counts still sum below p(F).
    std::int64_t m = n;
    if (c.is_finite()) {
        const std::int64_t p = c.prime_value();
        m = 0;
        std::int64_t acc = 0;
        for (std::int64_t i = 0; i < n; ++i) {
            if (acc + qs[i] < p) {
                acc += qs[i];
                m = i + 1;
            } else {
                break;
            }
        }
    }

    ShrinkPlan plan;
    plan.restricted = restricted;
    plan.k = k;
    plan.cut_index = static_cast<int>(m);
    plan.q_list = qs;
    plan.char_bound = c;
    plan.shrunk_sizes.resize(n);

    const std::int64_t total = std::accumulate(qs.begin(), qs.end(), std::int64_t{0});
    if (m == n) {
        for (std::int64_t i = 1; i <= n; ++i)
            plan.shrunk_sizes[i - 1] = k * qs[i - 1] + (restricted ? i : 1);
        plan.target_bound = static_cast<std::int64_t>(c.min_with(BigInt(total) + 1));
    } else {
        const std::int64_t p = c.prime_value();
        std::int64_t prefix = 0;
        for (std::int64_t i = 1; i <= m; ++i) {
            plan.shrunk_sizes[i - 1] = k * qs[i - 1] + (restricted ? i : 1);
            prefix += qs[i - 1];
        }
        plan.shrunk_sizes[m] = k * (p - 1 - prefix) + (restricted ? m + 1 : 1);
        for (std::int64_t j = m + 2; j <= n; ++j) plan.shrunk_sizes[j - 1] = restricted ? j : 1;
        plan.target_bound = p;
    }

    // The proofs' exponent accounting, checked for every produced plan.
    std::int64_t check = 0;
    for (std::int64_t i = 1; i <= n; ++i) {
        check += plan.shrunk_sizes[i - 1] - (restricted ? i : 1);
        if (plan.shrunk_sizes[i - 1] > sizes[i - 1])
            throw_err(Err::TheoremViolated, "shrunken subset exceeds original cardinality");
    }
    if (check != k * (plan.target_bound - 1))
        throw_err(Err::TheoremViolated, "shrink accounting identity failed");
    return plan;
}

SparsePoly proof_polynomial(const Field& f, const DiagonalForm& d, std::span<const Elem> c_values,
                            std::int64_t n_bound, bool restricted, const SparsePoly::Exps& cap) {
    if (n_bound < 1) throw_err(Err::BadParams, "bound N must be >= 1");
    if (static_cast<std::int64_t>(c_values.size()) > n_bound - 1)
        throw_err(Err::TooManyValues, "|C| must be at most N-1");
    const int n = d.n();
    SparsePoly fe = d.expand(f);
    SparsePoly p = SparsePoly::constant(f, n, f.one());
    const std::int64_t power = n_bound - 1 - static_cast<std::int64_t>(c_values.size());
    for (std::int64_t i = 0; i < power; ++i) p = p.mul_truncated(f, fe, cap);
    for (const auto& c : c_values) p = p.mul_truncated(f, fe.plus_const(f, f.neg(c)), cap);
    if (restricted) {
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                SparsePoly factor =
                    SparsePoly::variable(f, n, j).plus(f, SparsePoly::variable(f, n, i).scaled(f, f.from_int(-1)));
                p = p.mul_truncated(f, factor, cap);
            }
        }
    }
    return p;
}

Elem critical_coefficient(const ShrinkPlan& plan, std::span<const Elem> a, const Field& f) {
    if (static_cast<int>(a.size()) != plan.n())
        throw_err(Err::ArityMismatch, "coefficient list does not match the plan");
    const auto exps = plan.coefficient_exponents();
    const std::int64_t top = plan.target_bound - 1;
    BigInt m = multinomial(top, exps);
    Elem out = f.from_bigint(m);
    for (std::size_t i = 0; i < a.size(); ++i) out = f.mul(out, f.pow(a[i], exps[i]));
    return out;
}

bool multinomial_nonzero(std::int64_t top, std::span<const std::int64_t> parts, const CharBound& p) {
    std::int64_t sum = 0;
    for (auto q : parts) {
        if (q < 0) throw_err(Err::BadPartition, "negative part");
        sum += q;
    }
    if (sum != top) throw_err(Err::BadPartition, "parts do not sum to top");
    if (!p.is_finite()) return true;
    const std::int64_t pv = p.prime_value();
    std::int64_t v = prime_valuation_factorial(top, pv);
    for (auto q : parts) v -= prime_valuation_factorial(q, pv);
    return v == 0;
}

std::optional<std::vector<Elem>> cn_witness_search(const Field& f, const SparsePoly& p,
                                                   const SubsetFamily& grids,
                                                   const SparsePoly::Exps& target) {
    const int n = p.arity();
    if (grids.n() != n || static_cast<int>(target.size()) != n)
        throw_err(Err::ArityMismatch, "grid/target arity mismatch");
    std::int64_t target_sum = 0;
    for (int i = 0; i < n; ++i) {
        if (target[i] < 0) throw_err(Err::BadParams, "negative target exponent");
        if (target[i] >= static_cast<std::int64_t>(grids.sets[i].size()))
            throw_err(Err::HypothesisUnmet,
                      "need target_i < |A_i| (variable " + std::to_string(i + 1) + ")");
        target_sum += target[i];
    }
    if (p.total_degree() != target_sum)
        throw_err(Err::HypothesisUnmet, "need deg P = sum of target exponents");

    std::vector<Elem> point(n, f.zero());
    std::optional<std::vector<Elem>> found;
    auto descend = [&](auto&& self, int depth) -> bool {
        if (depth == n) {
            if (!f.is_zero(p.eval(f, point))) {
                found = point;
                return true;
            }
            return false;
        }
        for (const auto& x : grids.sets[depth]) {
            point[depth] = x;
            if (self(self, depth + 1)) return true;
        }
        return false;
    };
    descend(descend, 0);
    if (!found && !f.is_zero(p.coefficient_of(f, target)))
        throw_err(Err::TheoremViolated,
                  "nonzero target coefficient with hypotheses satisfied, but no witness on the grid");
    return found;
}

std::string ProofTrace::to_json_text(const Field& f) const {
    nlohmann::ordered_json j;
    j["restricted"] = plan.restricted;
    j["k"] = plan.k;
    j["n"] = plan.n();
    j["char"] = plan.char_bound.to_string();
    j["cut_index"] = plan.cut_index;
    j["q_list"] = plan.q_list;
    j["shrunk_sizes"] = plan.shrunk_sizes;
    j["N"] = plan.target_bound;
    nlohmann::ordered_json sets = nlohmann::ordered_json::array();
    for (const auto& s : shrunk_sets) {
        nlohmann::ordered_json one = nlohmann::ordered_json::array();
        for (const auto& e : s) one.push_back(f.elem_to_string(e));
        sets.push_back(one);
    }
    j["shrunk_sets"] = sets;
    j["c_size"] = c_size;
    j["c_used_size"] = c_used_size;
    j["injected"] = injected;
    j["contradiction_branch"] = contradiction_branch;
    if (coeff_extracted) j["coeff_extracted"] = f.elem_to_string(*coeff_extracted);
    if (coeff_closed_form) j["coeff_closed_form"] = f.elem_to_string(*coeff_closed_form);
    j["coeff_match"] = coeff_match;
    j["coeff_nonzero"] = coeff_nonzero;
    if (witness) {
        nlohmann::ordered_json w = nlohmann::ordered_json::array();
        for (const auto& e : *witness) w.push_back(f.elem_to_string(e));
        j["witness"] = w;
        j["witness_value"] = f.elem_to_string(*witness_value);
        j["witness_value_outside_c"] = witness_value_outside_c;
    }
    if (!reading_note.empty()) j["reading_note"] = reading_note;
    return j.dump();
}

ProofTrace replay_proof(const Field& f, const DiagonalForm& d, const SubsetFamily& a, bool restricted,
                        const ReplayOptions& options) {
    if (validate(f, d) != FormViolation::None)
        throw_err(Err::BadParams, std::string("invalid diagonal form: ") + form_violation_name(validate(f, d)));
    if (a.n() != d.n()) throw_err(Err::ArityMismatch, "family arity does not match the form");

    const auto sizes = a.sizes();
    ProofTrace trace;
    trace.plan = shrink_subsets(f.characteristic(), d.k, sizes, restricted);
    const std::int64_t n_bound = trace.plan.target_bound;

    trace.shrunk_sets.resize(a.n());
    for (int i = 0; i < a.n(); ++i) {
        // Lexicographically smallest valid subset: the first |A_i'|
        // elements in canonical order.
        trace.shrunk_sets[i].assign(a.sets[i].begin(),
                                    a.sets[i].begin() + trace.plan.shrunk_sizes[i]);
    }
    SubsetFamily shrunk = SubsetFamily::of(f, trace.shrunk_sets);

    ValueSetResult c_full = restricted ? restricted_value_set(f, d, shrunk, options.budget)
                                       : value_set(f, d, shrunk, options.budget);
    trace.c_size = c_full.size();

    std::vector<Elem> c_used = c_full.values;
    if (options.inject_c_limit && *options.inject_c_limit < c_used.size()) {
        c_used.resize(*options.inject_c_limit);
        trace.injected = true;
    }
    trace.c_used_size = static_cast<std::int64_t>(c_used.size());

    if (restricted && trace.plan.cut_index < trace.plan.n())
        trace.reading_note =
            "exponent on a_{m+1} read as the integer p-1-q_1-...-q_m (the value whose factorial divides "
            "the multinomial), matching the coefficient computation preceding the closed form";

    if (trace.c_used_size > n_bound - 1) return trace;  // |C| >= N: nothing to contradict

    trace.contradiction_branch = true;
    const auto target = trace.plan.target_exponents();
    SparsePoly p = proof_polynomial(f, d, c_used, n_bound, restricted, target);
    trace.coeff_extracted = p.coefficient_of(f, target);
    trace.coeff_closed_form = critical_coefficient(trace.plan, d.a, f);
    trace.coeff_match = *trace.coeff_extracted == *trace.coeff_closed_form;
    trace.coeff_nonzero = !f.is_zero(*trace.coeff_extracted);
    if (!trace.coeff_match)
        throw_err(Err::TheoremViolated, "extracted coefficient differs from the closed form");
    if (!trace.coeff_nonzero)
        throw_err(Err::TheoremViolated, "critical coefficient vanished");

    // Witness scan evaluates the factored form of the proof polynomial
    // directly; truncation would corrupt pointwise values.
    const std::int64_t power = n_bound - 1 - trace.c_used_size;
    std::vector<Elem> point(a.n(), f.zero());
    std::optional<std::vector<Elem>> witness;
    auto descend = [&](auto&& self, int depth) -> bool {
        if (depth == a.n()) {
            Elem fv = d.eval(f, point);
            Elem v = f.pow(fv, power);
            for (const auto& c : c_used) v = f.mul(v, f.sub(fv, c));
            if (restricted)
                for (int i = 0; i < a.n(); ++i)
                    for (int j = i + 1; j < a.n(); ++j) v = f.mul(v, f.sub(point[j], point[i]));
            if (!f.is_zero(v)) {
                witness = point;
                return true;
            }
            return false;
        }
        for (const auto& x : shrunk.sets[depth]) {
            point[depth] = x;
            if (self(self, depth + 1)) return true;
        }
        return false;
    };
    descend(descend, 0);
    if (!witness)
        throw_err(Err::TheoremViolated, "no contradiction witness despite a nonzero critical coefficient");
    trace.witness = witness;
    trace.witness_value = d.eval(f, *witness);
    trace.witness_value_outside_c =
        std::find(c_used.begin(), c_used.end(), *trace.witness_value) == c_used.end();
    return trace;
}

}  // namespace nslab
