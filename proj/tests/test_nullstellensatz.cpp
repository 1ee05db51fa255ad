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

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace nslab;

namespace {

std::vector<Elem> first_elems(const Field& f, std::int64_t count) {
    std::vector<Elem> out;
    for (std::int64_t i = 0; i < count; ++i) out.push_back(f.element(i));
    return out;
}

// Signed permutation expansion of the Vandermonde determinant, used as an
// oracle against the iterated product.
SparsePoly vandermonde_by_permutations(const Field& f, int n) {
    SparsePoly out(n);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        int inversions = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        SparsePoly::Exps e(n);
        for (int i = 0; i < n; ++i) e[i] = static_cast<std::int32_t>(perm[i]);
        out.add_term(f, e, inversions % 2 == 0 ? f.one() : f.neg(f.one()));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

SparsePoly vandermonde_by_product(const Field& f, int n) {
    SparsePoly out = SparsePoly::constant(f, n, f.one());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            SparsePoly factor =
                SparsePoly::variable(f, n, j).plus(f, SparsePoly::variable(f, n, i).scaled(f, f.from_int(-1)));
            out = out.mul(f, factor);
        }
    return out;
}

}  // namespace

TEST_CASE("shrink_subsets follows the proof bookkeeping") {
    // (Prime 5, k=1, sizes [4,4], unrestricted): worked through the proof
    // by hand: m = 1, |A_1'| = 4, |A_2'| = 2, N = 5.
    const std::vector<std::int64_t> s1{4, 4};
    auto plan1 = shrink_subsets(CharBound::prime(5), 1, s1, false);
    CHECK(plan1.cut_index == 1);
    CHECK(plan1.shrunk_sizes == std::vector<std::int64_t>{4, 2});
    CHECK(plan1.target_bound == 5);

    // (Infinity, k=2, sizes [5,3], unrestricted): m = n, sizes stay (5,3), N = 4.
    const std::vector<std::int64_t> s2{5, 3};
    auto plan2 = shrink_subsets(CharBound::infinite(), 2, s2, false);
    CHECK(plan2.cut_index == 2);
    CHECK(plan2.shrunk_sizes == std::vector<std::int64_t>{5, 3});
    CHECK(plan2.target_bound == 4);

    // (Infinity, k=3, sizes [4,5,6], restricted): q = (1,1,1), sizes (4,5,6), N = 4.
    const std::vector<std::int64_t> s3{4, 5, 6};
    auto plan3 = shrink_subsets(CharBound::infinite(), 3, s3, true);
    CHECK(plan3.q_list == std::vector<std::int64_t>{1, 1, 1});
    CHECK(plan3.shrunk_sizes == std::vector<std::int64_t>{4, 5, 6});
    CHECK(plan3.target_bound == 4);

    CHECK_THROWS_AS(shrink_subsets(CharBound::prime(5), 2, s3, true), LabError);  // n > k
}

TEST_CASE("shrink accounting identities on random parameters") {
    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 1500; ++trial) {
        const bool restricted = rng() % 2 == 0;
        const std::int64_t k = 1 + static_cast<std::int64_t>(rng() % 4);
        const std::int64_t n =
            restricted ? 1 + static_cast<std::int64_t>(rng() % k) : 1 + static_cast<std::int64_t>(rng() % 4);
        std::vector<std::int64_t> sizes(n);
        for (std::int64_t i = 1; i <= n; ++i)
            sizes[i - 1] = (restricted ? i : 1) + static_cast<std::int64_t>(rng() % 10);
        const CharBound c = rng() % 3 == 0 ? CharBound::infinite()
                                           : CharBound::prime(std::vector<std::int64_t>{2, 3, 5, 7, 11}[rng() % 5]);
        auto plan = shrink_subsets(c, k, sizes, restricted);
        std::int64_t acc = 0;
        for (std::int64_t i = 1; i <= n; ++i) {
            acc += plan.shrunk_sizes[i - 1] - (restricted ? i : 1);
            CHECK(plan.shrunk_sizes[i - 1] <= sizes[i - 1]);
            CHECK(plan.shrunk_sizes[i - 1] >= (restricted ? i : 1));
        }
        CHECK(acc == k * (plan.target_bound - 1));
        // N matches the bound the corresponding theorem states
        const BigInt expect = restricted ? bound_thm_1_2(c, k, sizes) : bound_thm_1_1(c, k, sizes);
        CHECK(BigInt(plan.target_bound) == expect);
    }
}

TEST_CASE("proof_polynomial examples") {
    Field f7 = Field::prime(7);

    // C empty, N = 1: the empty product is the constant 1
    DiagonalForm d1 = DiagonalForm::pure(f7, 2, {f7.one()});
    auto p1 = proof_polynomial(f7, d1, {}, 1, false, {5});
    CHECK(p1 == SparsePoly::constant(f7, 1, f7.one()));

    // n = 2 restricted, C empty, N = 1: just the Vandermonde factor x2 - x1
    DiagonalForm d2 = DiagonalForm::pure(f7, 2, {f7.one(), f7.one()});
    auto p2 = proof_polynomial(f7, d2, {}, 1, true, {3, 3});
    SparsePoly expect(2);
    expect.add_term(f7, {0, 1}, f7.one());
    expect.add_term(f7, {1, 0}, f7.neg(f7.one()));
    CHECK(p2 == expect);

    // f = x1^2 + x2^2 with C = {0}, N = 3: the product is f*(f - 0) = f^2,
    // whose x1^2 x2^2 coefficient is 2 (expand (x1^2+x2^2)^2 by hand).
    std::vector<Elem> c{f7.zero()};
    auto p3 = proof_polynomial(f7, d2, c, 3, false, {2, 2});
    CHECK(p3.coefficient_of(f7, {2, 2}) == f7.from_int(2));

    // |C| > N-1 is rejected
    CHECK_THROWS_AS(proof_polynomial(f7, d2, c, 1, false, {2, 2}), LabError);
}

TEST_CASE("critical_coefficient examples") {
    Field f7 = Field::prime(7);

    ShrinkPlan plan;
    plan.restricted = false;
    plan.k = 2;
    plan.shrunk_sizes = {3, 3};
    plan.target_bound = 3;
    plan.char_bound = CharBound::prime(7);
    const std::vector<Elem> ones{f7.one(), f7.one()};
    CHECK(critical_coefficient(plan, ones, f7) == f7.from_int(2));  // 2!/(1!1!) = 2

    ShrinkPlan trivial;
    trivial.k = 2;
    trivial.shrunk_sizes = {1};
    trivial.target_bound = 1;
    const std::vector<Elem> one{f7.one()};
    CHECK(critical_coefficient(trivial, one, f7) == f7.one());

    ShrinkPlan plan3;
    plan3.k = 2;
    plan3.shrunk_sizes = {5, 3};
    plan3.target_bound = 4;
    const std::vector<Elem> a{f7.one(), f7.from_int(2)};
    CHECK(critical_coefficient(plan3, a, f7) == f7.from_int(6));  // 3!/(2!1!) * 1 * 2 = 6
}

TEST_CASE("multinomial_nonzero") {
    const std::vector<std::int64_t> parts{2, 2};
    CHECK(multinomial_nonzero(4, parts, CharBound::prime(7)));   // 6 mod 7
    CHECK_FALSE(multinomial_nonzero(4, parts, CharBound::prime(3)));  // 6 mod 3
    CHECK(multinomial_nonzero(4, parts, CharBound::infinite()));
    const std::vector<std::int64_t> bad{2, 3};
    CHECK_THROWS_AS(multinomial_nonzero(4, bad, CharBound::prime(7)), LabError);

    // Legendre-valuation decision agrees with direct big-integer arithmetic
    std::mt19937_64 rng(79);
    for (int trial = 0; trial < 300; ++trial) {
        const std::int64_t p = std::vector<std::int64_t>{2, 3, 5, 7, 11}[rng() % 5];
        const int count = 1 + static_cast<int>(rng() % 4);
        std::vector<std::int64_t> ps(count);
        std::int64_t top = 0;
        for (auto& x : ps) {
            x = static_cast<std::int64_t>(rng() % 9);
            top += x;
        }
        const BigInt direct = multinomial(top, ps);
        CHECK(multinomial_nonzero(top, ps, CharBound::prime(p)) == (direct % p != 0));
    }

    // top < p always yields a nonzero multinomial (the proofs' situation)
    for (std::int64_t p : {5, 7, 13})
        for (std::int64_t a = 0; a < p; ++a)
            for (std::int64_t b = 0; a + b < p; ++b) {
                const std::vector<std::int64_t> two{a, b};
                CHECK(multinomial_nonzero(a + b, two, CharBound::prime(p)));
            }
}

TEST_CASE("Vandermonde product equals the signed permutation expansion") {
    for (const Field& f : {Field::prime(7), Field::rationals()})
        for (int n = 1; n <= 5; ++n)
            CHECK(vandermonde_by_product(f, n) == vandermonde_by_permutations(f, n));
}

TEST_CASE("cn_witness_search examples") {
    Field f5 = Field::prime(5);

    // constant 1 finds the first grid tuple
    SparsePoly one = SparsePoly::constant(f5, 1, f5.one());
    auto fam = SubsetFamily::of(f5, {first_elems(f5, 3)});
    auto w = cn_witness_search(f5, one, fam, {0});
    REQUIRE(w.has_value());
    CHECK((*w)[0] == f5.element(0));

    // P = prod_{a in A}(x - a) vanishes identically on the grid; the natural
    // target fails the hypothesis target < |A|
    SparsePoly vanish = SparsePoly::constant(f5, 1, f5.one());
    for (const auto& a : fam.sets[0]) {
        SparsePoly factor = SparsePoly::variable(f5, 1, 0);
        factor.add_term(f5, {0}, f5.neg(a));
        vanish = vanish.mul(f5, factor);
    }
    CHECK_THROWS_AS(cn_witness_search(f5, vanish, fam, {3}), LabError);
    try {
        cn_witness_search(f5, vanish, fam, {3});
    } catch (const LabError& e) {
        CHECK(e.code() == Err::HypothesisUnmet);
    }

    // proof polynomial for f = x1 + x2, C = {0,1}, N = 3 over grids {0,1,2}^2:
    // witness must have x1 + x2 outside {0,1}
    DiagonalForm lin = DiagonalForm::pure(f5, 1, {f5.one(), f5.one()});
    std::vector<Elem> c{f5.from_int(0), f5.from_int(1)};
    auto grids = SubsetFamily::of(f5, {first_elems(f5, 3), first_elems(f5, 3)});
    auto p = proof_polynomial(f5, lin, c, 3, false, {2, 2});
    // oracle: scan the 9 tuples directly
    bool oracle_found = false;
    for (std::int64_t x = 0; x < 3 && !oracle_found; ++x)
        for (std::int64_t y = 0; y < 3 && !oracle_found; ++y)
            oracle_found = (x + y) % 5 != 0 && (x + y) % 5 != 1;
    CHECK(oracle_found);
    auto w2 = cn_witness_search(f5, p, grids, {1, 1});
    REQUIRE(w2.has_value());
    Elem value = lin.eval(f5, *w2);
    CHECK(value != f5.from_int(0));
    CHECK(value != f5.from_int(1));
}

TEST_CASE("central identity: extracted coefficient equals the closed form") {
    std::mt19937_64 rng(83);
    const std::vector<Field> fields{Field::prime(5), Field::prime(7), Field::prime(11), Field::prime(13),
                                    Field::rationals()};
    int checked = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const Field& f = fields[rng() % fields.size()];
        const bool restricted = rng() % 2 == 0;
        const std::int64_t k = restricted ? 2 + static_cast<std::int64_t>(rng() % 2)
                                          : 1 + static_cast<std::int64_t>(rng() % 3);
        const std::int64_t n =
            restricted ? 1 + static_cast<std::int64_t>(rng() % std::min<std::int64_t>(k, 3)) : 1 + static_cast<std::int64_t>(rng() % 3);
        const std::int64_t max_size = f.finite() ? std::min<std::int64_t>(f.size(), 7) : 6;
        std::vector<std::int64_t> sizes(n);
        for (std::int64_t i = 1; i <= n; ++i) {
            const std::int64_t lo = restricted ? i : 1;
            if (lo > max_size) sizes[i - 1] = lo;
            else sizes[i - 1] = lo + static_cast<std::int64_t>(rng() % (max_size - lo + 1));
        }
        if (f.finite() && *std::max_element(sizes.begin(), sizes.end()) > f.size()) continue;

        auto plan = shrink_subsets(f.characteristic(), k, sizes, restricted);

        std::vector<Elem> a;
        for (std::int64_t i = 0; i < n; ++i)
            a.push_back(f.finite() ? f.element(1 + static_cast<std::int64_t>(rng() % (f.size() - 1)))
                                   : f.from_int(1 + static_cast<std::int64_t>(rng() % 5)));
        // tails of degree < k, sometimes nonzero
        SparsePoly g(static_cast<int>(n));
        if (k > 1 && rng() % 2 == 0) {
            for (int t = 0; t < 2; ++t) {
                SparsePoly::Exps e(n, 0);
                std::int64_t left = k - 1;
                for (std::int64_t i = 0; i < n && left > 0; ++i) {
                    e[i] = static_cast<std::int32_t>(rng() % (left + 1));
                    left -= e[i];
                }
                Elem coef = f.finite() ? f.element(static_cast<std::int64_t>(rng() % f.size()))
                                       : f.from_int(static_cast<std::int64_t>(rng() % 7) - 3);
                g.add_term(f, e, coef);
            }
        }
        DiagonalForm d(k, a, g);

        // arbitrary C with |C| <= N-1: the identity holds for any values
        const std::int64_t c_count = static_cast<std::int64_t>(rng() % plan.target_bound);
        std::vector<Elem> c;
        for (std::int64_t i = 0; i < c_count; ++i)
            c.push_back(f.finite() ? f.element(static_cast<std::int64_t>(rng() % f.size()))
                                   : f.from_int(static_cast<std::int64_t>(rng() % 9) - 4));

        const auto target = plan.target_exponents();
        SparsePoly p = proof_polynomial(f, d, c, plan.target_bound, restricted, target);
        const Elem extracted = p.coefficient_of(f, target);
        const Elem closed = critical_coefficient(plan, a, f);
        CHECK(extracted == closed);
        CHECK_FALSE(f.is_zero(closed));
        ++checked;
    }
    CHECK(checked >= 350);
}

TEST_CASE("replay examples") {
    // F_7, f = x1^2 + x2^2 over the full field: N = 7, |C| = 7, no branch
    Field f7 = Field::prime(7);
    DiagonalForm d = DiagonalForm::pure(f7, 2, {f7.one(), f7.one()});
    auto fam = SubsetFamily::of(f7, {f7.all_elements(), f7.all_elements()});
    auto trace = replay_proof(f7, d, fam, false);
    CHECK(trace.plan.target_bound == 7);
    CHECK(trace.c_size >= 7);
    CHECK_FALSE(trace.contradiction_branch);

    // char 0, f = x1 + x2 over {0,1,2}^2: N = 5 and C = {0..4}
    Field q = Field::rationals();
    DiagonalForm lin = DiagonalForm::pure(q, 1, {q.one(), q.one()});
    std::vector<Elem> window{q.from_int(0), q.from_int(1), q.from_int(2)};
    auto famq = SubsetFamily::of(q, {window, window});
    auto traceq = replay_proof(q, lin, famq, false);
    CHECK(traceq.plan.target_bound == 5);
    CHECK(traceq.c_size == 5);
    CHECK_FALSE(traceq.contradiction_branch);

    // injected truncation: the contradiction branch fires and finds a
    // witness whose value lies outside the truncated C
    ReplayOptions opt;
    opt.inject_c_limit = static_cast<std::size_t>(traceq.plan.target_bound - 1);
    auto injected = replay_proof(q, lin, famq, false, opt);
    CHECK(injected.injected);
    CHECK(injected.contradiction_branch);
    CHECK(injected.coeff_match);
    CHECK(injected.coeff_nonzero);
    REQUIRE(injected.witness.has_value());
    CHECK(injected.witness_value_outside_c);

    // restricted replay with injection over a finite field
    Field f5 = Field::prime(5);
    DiagonalForm d5 = DiagonalForm::pure(f5, 2, {f5.one(), f5.from_int(2)});
    auto fam5 = SubsetFamily::of(f5, {f5.all_elements(), f5.all_elements()});
    auto trace5 = replay_proof(f5, d5, fam5, true);
    CHECK_FALSE(trace5.contradiction_branch);
    ReplayOptions opt5;
    opt5.inject_c_limit = 1;
    auto injected5 = replay_proof(f5, d5, fam5, true, opt5);
    CHECK(injected5.contradiction_branch);
    CHECK(injected5.coeff_match);
    REQUIRE(injected5.witness.has_value());
    CHECK(injected5.witness_value_outside_c);
    // trace serializes to one JSON document
    CHECK(injected5.to_json_text(f5).find("\"coeff_match\":true") != std::string::npos);
}

TEST_CASE("the m < n cut fires and the restricted trace records its reading") {
    // Unrestricted cut over F_3: sizes (3,3) with k = 1 give floor counts
    // (2,2); the prefix stops after one variable, so m = 1 < n and N = p.
    Field f3 = Field::prime(3);
    DiagonalForm lin = DiagonalForm::pure(f3, 1, {f3.one(), f3.one()});
    auto fam = SubsetFamily::of(f3, {f3.all_elements(), f3.all_elements()});
    auto plan = shrink_subsets(f3.characteristic(), 1, fam.sizes(), false);
    CHECK(plan.cut_index == 1);
    CHECK(plan.target_bound == 3);
    CHECK(replay_proof(f3, lin, fam, false).c_size == 3);

    // The restricted cut needs a floor count reaching p, which no prime
    // field admits; F_4 with k = 1, n = 1, |A| = 4 gives q_1 = 3 >= 2.
    Field f4 = Field::extension(2, {1, 1, 1});
    const std::vector<std::int64_t> sizes{4};
    auto rplan = shrink_subsets(f4.characteristic(), 1, sizes, true);
    CHECK(rplan.cut_index == 0);
    CHECK(rplan.target_bound == 2);
    CHECK(rplan.shrunk_sizes == std::vector<std::int64_t>{2});

    DiagonalForm d4 = DiagonalForm::pure(f4, 1, {f4.one()});
    auto fam4 = SubsetFamily::of(f4, {f4.all_elements()});
    auto trace = replay_proof(f4, d4, fam4, true);
    CHECK_FALSE(trace.reading_note.empty());
    CHECK(trace.c_size >= trace.plan.target_bound);

    ReplayOptions opt;
    opt.inject_c_limit = 1;
    auto injected = replay_proof(f4, d4, fam4, true, opt);
    CHECK(injected.contradiction_branch);
    CHECK(injected.coeff_match);
    CHECK(injected.coeff_nonzero);
}
