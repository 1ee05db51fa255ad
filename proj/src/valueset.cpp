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

#include "nslab/valueset.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <set>

namespace nslab {

namespace {

// Fields up to this size get dense q*q operation tables; larger finite
// fields use the generic element walker instead of a quadratic table.
constexpr std::int64_t kDenseTableLimit = 4096;

// Dense operation tables for one finite field: element index arithmetic
// turns the enumeration inner loop into integer table lookups. Built once
// per field and shared (fields are immutable).
struct FieldTables {
    std::int64_t q = 0;
    std::vector<std::int32_t> add;  // q*q
    std::vector<std::int32_t> mul;  // q*q
    std::vector<std::int32_t> negate;

    std::int32_t add_at(std::int32_t a, std::int32_t b) const { return add[a * q + b]; }
    std::int32_t mul_at(std::int32_t a, std::int32_t b) const { return mul[a * q + b]; }

    std::int32_t pow_at(std::int32_t a, std::int64_t e) const {
        std::int32_t acc = 1;  // canonical index of the multiplicative identity
        std::int32_t base = a;
        while (e > 0) {
            if (e & 1) acc = mul_at(acc, base);
            base = mul_at(base, base);
            e >>= 1;
        }
        return acc;
    }
};

std::shared_ptr<const FieldTables> tables_for(const Field& f) {
    static std::mutex mu;
    static std::map<std::string, std::shared_ptr<const FieldTables>> cache;
    const std::string key = f.descriptor();
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto t = std::make_shared<FieldTables>();
    const std::int64_t q = f.size();
    t->q = q;
    t->add.resize(q * q);
    t->mul.resize(q * q);
    t->negate.resize(q);
    auto elems = f.all_elements();
    for (std::int64_t i = 0; i < q; ++i) {
        t->negate[i] = static_cast<std::int32_t>(f.index_of(f.neg(elems[i])));
        for (std::int64_t j = 0; j < q; ++j) {
            t->add[i * q + j] = static_cast<std::int32_t>(f.index_of(f.add(elems[i], elems[j])));
            t->mul[i * q + j] = static_cast<std::int32_t>(f.index_of(f.mul(elems[i], elems[j])));
        }
    }
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.emplace(key, std::move(t));
    return it->second;
}

// Tail polynomial compiled to index arithmetic: per term, the coefficient
// index and per-variable power tables over element indices.
struct CompiledTail {
    struct Term {
        std::int32_t coef;
        std::vector<std::pair<int, std::vector<std::int32_t>>> factors;  // (var, x_idx -> x^e idx)
    };
    std::vector<Term> terms;
    bool empty() const { return terms.empty(); }

    std::int32_t eval(const FieldTables& t, const std::int32_t* tuple) const {
        std::int32_t acc = 0;
        for (const auto& term : terms) {
            std::int32_t v = term.coef;
            for (const auto& [var, table] : term.factors) v = t.mul_at(v, table[tuple[var]]);
            acc = t.add_at(acc, v);
        }
        return acc;
    }
};

CompiledTail compile_tail(const Field& f, const FieldTables& t, const SparsePoly& g) {
    CompiledTail out;
    for (const auto& [e, c] : g.terms()) {
        CompiledTail::Term term;
        term.coef = static_cast<std::int32_t>(f.index_of(c));
        for (int var = 0; var < g.arity(); ++var) {
            if (e[var] == 0) continue;
            std::vector<std::int32_t> table(t.q);
            for (std::int64_t x = 0; x < t.q; ++x)
                table[x] = t.pow_at(static_cast<std::int32_t>(x), e[var]);
            term.factors.emplace_back(var, std::move(table));
        }
        out.terms.push_back(std::move(term));
    }
    return out;
}

std::uint64_t checked_space(const SubsetFamily& a, std::uint64_t budget) {
    std::uint64_t space = 1;
    for (const auto& s : a.sets) {
        if (s.empty()) return 0;
        if (space > budget / std::max<std::uint64_t>(s.size(), 1))
            throw_err(Err::BudgetExceeded, "tuple space exceeds evaluation budget of " + std::to_string(budget));
        space *= s.size();
    }
    if (space > budget)
        throw_err(Err::BudgetExceeded, "tuple space exceeds evaluation budget of " + std::to_string(budget));
    return space;
}

// Finite-field enumeration core. Variables are walked outermost-to-
// innermost x_1..x_n, each A_i in canonical sorted order; prefix sums of
// the a_i x_i^k contributions are reused across the walk.
struct FiniteWalk {
    const FieldTables& t;
    int n;
    std::vector<std::vector<std::int32_t>> elem_idx;     // per var: element indices of A_i
    std::vector<std::vector<std::int32_t>> contrib_idx;  // per var: index of a_i * x^k
    CompiledTail tail;
    bool restricted = false;

    std::vector<char> seen;         // by value index
    std::vector<char> used;         // by element index (restricted)
    std::vector<std::int32_t> partial;
    std::vector<std::int32_t> tuple;
    std::uint64_t tuple_count = 0;

    void run() {
        seen.assign(t.q, 0);
        used.assign(t.q, 0);
        partial.assign(n + 1, 0);
        tuple.assign(n, 0);
        descend(0);
    }

    void descend(int depth) {
        if (depth == n) {
            std::int32_t v = partial[n];
            if (!tail.empty()) v = t.add_at(v, tail.eval(t, tuple.data()));
            seen[v] = 1;
            ++tuple_count;
            return;
        }
        const auto& ids = elem_idx[depth];
        const auto& contribs = contrib_idx[depth];
        for (std::size_t i = 0; i < ids.size(); ++i) {
            if (restricted && used[ids[i]]) continue;
            tuple[depth] = ids[i];
            partial[depth + 1] = t.add_at(partial[depth], contribs[i]);
            if (restricted) used[ids[i]] = 1;
            descend(depth + 1);
            if (restricted) used[ids[i]] = 0;
        }
    }
};

FiniteWalk make_finite_walk(const Field& f, const FieldTables& t, const DiagonalForm& d,
                            const SubsetFamily& a, bool restricted) {
    FiniteWalk w{t, a.n(), {}, {}, {}, restricted, {}, {}, {}, {}, 0};
    w.elem_idx.resize(a.n());
    w.contrib_idx.resize(a.n());
    for (int i = 0; i < a.n(); ++i) {
        std::int32_t ai = static_cast<std::int32_t>(f.index_of(d.a[i]));
        for (const auto& x : a.sets[i]) {
            std::int32_t xi = static_cast<std::int32_t>(f.index_of(x));
            w.elem_idx[i].push_back(xi);
            w.contrib_idx[i].push_back(t.mul_at(ai, t.pow_at(xi, d.k)));
        }
    }
    if (!d.g.is_zero()) w.tail = compile_tail(f, t, d.g);
    return w;
}

// Characteristic-zero (and generic) path: exact rationals, image kept in
// an ordered set. Injectivity masks index into the union of the A_i.
struct GenericWalk {
    const Field& f;
    const DiagonalForm& d;
    int n;
    std::vector<std::vector<int>> union_idx;  // per var: position in union
    std::vector<std::vector<Elem>> elems;
    std::vector<std::vector<Elem>> contribs;  // a_i * x^k
    bool restricted = false;

    std::set<Elem> seen;
    std::vector<char> used;
    std::vector<Elem> partial;
    std::vector<Elem> tuple;
    std::uint64_t tuple_count = 0;

    void run() {
        partial.assign(n + 1, f.zero());
        tuple.assign(n, f.zero());
        descend(0);
    }

    void descend(int depth) {
        if (depth == n) {
            Elem v = partial[n];
            if (!d.g.is_zero()) v = f.add(v, d.g.eval(f, tuple));
            seen.insert(v);
            ++tuple_count;
            return;
        }
        for (std::size_t i = 0; i < elems[depth].size(); ++i) {
            if (restricted && used[union_idx[depth][i]]) continue;
            tuple[depth] = elems[depth][i];
            partial[depth + 1] = f.add(partial[depth], contribs[depth][i]);
            if (restricted) used[union_idx[depth][i]] = 1;
            descend(depth + 1);
            if (restricted) used[union_idx[depth][i]] = 0;
        }
    }
};

ValueSetResult run_generic(const Field& f, const DiagonalForm& d, const SubsetFamily& a, bool restricted) {
    std::vector<Elem> all;
    for (const auto& s : a.sets) all.insert(all.end(), s.begin(), s.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());

    GenericWalk w{f, d, a.n(), {}, {}, {}, restricted, {}, {}, {}, {}, 0};
    w.union_idx.resize(a.n());
    w.elems = a.sets;
    w.contribs.resize(a.n());
    for (int i = 0; i < a.n(); ++i) {
        for (const auto& x : a.sets[i]) {
            auto it = std::lower_bound(all.begin(), all.end(), x);
            w.union_idx[i].push_back(static_cast<int>(it - all.begin()));
            w.contribs[i].push_back(f.mul(d.a[i], f.pow(x, d.k)));
        }
    }
    w.used.assign(all.size(), 0);
    w.run();

    ValueSetResult r;
    r.restricted = restricted;
    r.tuple_count = w.tuple_count;
    r.values.assign(w.seen.begin(), w.seen.end());
    return r;
}

ValueSetResult run_valueset(const Field& f, const DiagonalForm& d, const SubsetFamily& a, bool restricted,
                            std::uint64_t budget) {
    if (d.n() < 1) throw_err(Err::BadParams, "diagonal form needs at least one variable");
    if (a.n() != d.n()) throw_err(Err::ArityMismatch, "family arity does not match the form");
    if (validate(f, d) != FormViolation::None)
        throw_err(Err::BadParams, std::string("invalid diagonal form: ") + form_violation_name(validate(f, d)));
    for (const auto& s : a.sets)
        if (s.empty() && !restricted) throw_err(Err::EmptySubset, "every A_i must be nonempty");
    bool any_empty = std::any_of(a.sets.begin(), a.sets.end(), [](const auto& s) { return s.empty(); });
    if (any_empty) {
        ValueSetResult r;
        r.restricted = restricted;
        return r;
    }
    checked_space(a, budget);

    if (!f.finite() || f.size() > kDenseTableLimit) return run_generic(f, d, a, restricted);

    auto tables = tables_for(f);
    FiniteWalk w = make_finite_walk(f, *tables, d, a, restricted);
    w.run();

    ValueSetResult r;
    r.restricted = restricted;
    r.tuple_count = w.tuple_count;
    for (std::int64_t i = 0; i < tables->q; ++i)
        if (w.seen[i]) r.values.push_back(f.element(i));
    return r;
}

}  // namespace

SubsetFamily SubsetFamily::of(const Field& f, std::vector<std::vector<Elem>> raw) {
    SubsetFamily fam;
    fam.sets = std::move(raw);
    for (auto& s : fam.sets) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    (void)f;
    return fam;
}

SubsetFamily SubsetFamily::repeated(const Field& f, std::vector<Elem> a, int n) {
    std::vector<std::vector<Elem>> raw(n, a);
    return of(f, std::move(raw));
}

std::vector<std::int64_t> SubsetFamily::sizes() const {
    std::vector<std::int64_t> out;
    out.reserve(sets.size());
    for (const auto& s : sets) out.push_back(static_cast<std::int64_t>(s.size()));
    return out;
}

bool ValueSetResult::contains(const Elem& v) const {
    return std::binary_search(values.begin(), values.end(), v);
}

ValueSetResult value_set(const Field& f, const DiagonalForm& d, const SubsetFamily& a, std::uint64_t budget) {
    return run_valueset(f, d, a, false, budget);
}

ValueSetResult restricted_value_set(const Field& f, const DiagonalForm& d, const SubsetFamily& a,
                                    std::uint64_t budget) {
    return run_valueset(f, d, a, true, budget);
}

namespace {

// Element-level early-exit scan for fields too large for dense tables.
Solvability solvable_scan_generic(const Field& f, const DiagonalForm& d, std::uint64_t budget) {
    const int n = d.n();
    std::vector<Elem> tuple(n, f.zero());
    std::vector<Elem> partial(n + 1, f.zero());
    std::uint64_t evals = 0;
    Solvability s;
    auto descend = [&](auto&& self, int depth) -> bool {
        if (depth == n) {
            ++evals;
            Elem v = partial[n];
            if (!d.g.is_zero()) v = f.add(v, d.g.eval(f, tuple));
            if (f.is_zero(v)) {
                s.solvable = true;
                s.witness = tuple;
                return true;
            }
            if (evals > budget) throw_err(Err::BudgetExceeded, "solvability scan exceeded evaluation budget");
            return false;
        }
        for (std::int64_t x = 0; x < f.size(); ++x) {
            tuple[depth] = f.element(x);
            partial[depth + 1] = f.add(partial[depth], f.mul(d.a[depth], f.pow(tuple[depth], d.k)));
            if (self(self, depth + 1)) return true;
        }
        return false;
    };
    descend(descend, 0);
    return s;
}

}  // namespace

Solvability is_solvable_zero(const Field& f, const DiagonalForm& d, std::uint64_t budget) {
    if (!f.finite()) throw_err(Err::InfiniteField, "solvability scan needs a finite field");
    if (d.n() < 1) throw_err(Err::BadParams, "diagonal form needs at least one variable");
    if (validate(f, d) != FormViolation::None)
        throw_err(Err::BadParams, std::string("invalid diagonal form: ") + form_violation_name(validate(f, d)));
    if (f.size() > kDenseTableLimit) return solvable_scan_generic(f, d, budget);
    auto tables = tables_for(f);
    const FieldTables& t = *tables;
    const int n = d.n();
    std::vector<std::int32_t> contrib(t.q);
    std::vector<std::vector<std::int32_t>> contribs(n);
    for (int i = 0; i < n; ++i) {
        std::int32_t ai = static_cast<std::int32_t>(f.index_of(d.a[i]));
        contribs[i].resize(t.q);
        for (std::int64_t x = 0; x < t.q; ++x)
            contribs[i][x] = t.mul_at(ai, t.pow_at(static_cast<std::int32_t>(x), d.k));
    }
    CompiledTail tail;
    if (!d.g.is_zero()) tail = compile_tail(f, t, d.g);

    std::vector<std::int32_t> tuple(n, 0), partial(n + 1, 0);
    std::uint64_t evals = 0;
    std::vector<std::int32_t> witness;

    // Depth-first scan in canonical order with early exit on the first
    // zero of f; bails out with BudgetExceeded if the budget is consumed
    // without a verdict.
    auto descend = [&](auto&& self, int depth) -> bool {
        if (depth == n) {
            ++evals;
            std::int32_t v = partial[n];
            if (!tail.empty()) v = t.add_at(v, tail.eval(t, tuple.data()));
            if (v == 0) {
                witness = tuple;
                return true;
            }
            if (evals > budget) throw_err(Err::BudgetExceeded, "solvability scan exceeded evaluation budget");
            return false;
        }
        for (std::int64_t x = 0; x < t.q; ++x) {
            tuple[depth] = static_cast<std::int32_t>(x);
            partial[depth + 1] = t.add_at(partial[depth], contribs[depth][x]);
            if (self(self, depth + 1)) return true;
        }
        return false;
    };

    Solvability s;
    if (descend(descend, 0)) {
        s.solvable = true;
        for (auto idx : witness) s.witness.push_back(f.element(idx));
    }
    return s;
}

DasBound das_lower_bound(const Field& f, const SparsePoly& p, const std::vector<std::vector<Elem>>& s) {
    if (!f.finite()) throw_err(Err::InfiniteField, "power sums need a finite field");
    if (s.empty()) throw_err(Err::BadParams, "S must be nonempty");
    for (const auto& x : s)
        if (static_cast<int>(x.size()) != p.arity()) throw_err(Err::ArityMismatch, "tuple arity mismatch");

    std::vector<Elem> vals;
    vals.reserve(s.size());
    for (const auto& x : s) vals.push_back(p.eval(f, x));

    std::set<Elem> image(vals.begin(), vals.end());
    const std::int64_t image_size = static_cast<std::int64_t>(image.size());

    std::vector<Elem> powers(vals.size(), f.one());
    const std::int64_t cap = f.size();
    for (std::int64_t l = 0; l <= cap; ++l) {
        Elem sum = f.zero();
        for (const auto& pw : powers) sum = f.add(sum, pw);
        if (!f.is_zero(sum)) {
            if (image_size < l + 1)
                throw_err(Err::TheoremViolated, "power-sum bound exceeded the image size (l=" + std::to_string(l) + ")");
            return DasBound{l, image_size};
        }
        for (std::size_t i = 0; i < powers.size(); ++i) powers[i] = f.mul(powers[i], vals[i]);
    }
    throw_err(Err::NotFound, "no nonzero power sum with l <= " + std::to_string(cap));
}

std::int64_t felszeghy_threshold(std::int64_t p, std::int64_t k) {
    if (k < 1) throw_err(Err::BadParams, "k must be positive");
    if (k >= p) throw_err(Err::KTooLarge, "threshold needs k < p");
    std::int64_t t = (p - 1) / k;
    return (p - 1 + t - 1) / t;
}

}  // namespace nslab
