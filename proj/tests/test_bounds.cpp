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

#include "nslab/bounds.hpp"

#include <doctest.h>

#include <vector>

using namespace nslab;

namespace {

// Exact-rational oracle for the conjectured bound's fractional-part form:
// n(|A|-n)/k - k {n/k} {(|A|-n)/k} + 1.
BigRat conjecture_body_rational(std::int64_t k, std::int64_t n, std::int64_t size_a) {
    const BigRat nk(n, k);
    const BigRat dk(size_a - n, k);
    return BigRat(n) * (size_a - n) / k - BigRat(k) * frac_part(nk) * frac_part(dk) + 1;
}

}  // namespace

TEST_CASE("bound_thm_1_1 examples") {
    const std::vector<std::int64_t> s1{3, 4};
    CHECK(bound_thm_1_1(CharBound::infinite(), 1, s1) == 6);  // Cauchy-Davenport shape
    const std::vector<std::int64_t> s2{5, 4};
    CHECK(bound_thm_1_1(CharBound::prime(7), 2, s2) == 4);
    const std::vector<std::int64_t> s3{5, 5, 5};
    CHECK(bound_thm_1_1(CharBound::prime(5), 3, s3) == 4);
    CHECK_THROWS_AS(bound_thm_1_1(CharBound::prime(5), 0, s3), LabError);
}

TEST_CASE("bound_thm_1_1 with k = 1 is the sumset bound") {
    for (std::int64_t p : {5, 7, 11}) {
        for (std::int64_t s1 = 1; s1 <= p; ++s1) {
            for (std::int64_t s2 = 1; s2 <= p; ++s2) {
                const std::vector<std::int64_t> s{s1, s2};
                CHECK(bound_thm_1_1(CharBound::prime(p), 1, s) ==
                      CharBound::prime(p).min_with(BigInt(s1) + s2 - 2 + 1));
            }
        }
    }
}

TEST_CASE("equal sets realize the corollary forms") {
    // characteristic zero: n*floor((|A|-1)/k) + 1
    for (std::int64_t k = 1; k <= 4; ++k)
        for (std::int64_t n = 1; n <= 5; ++n)
            for (std::int64_t size = 1; size <= 12; ++size) {
                const std::vector<std::int64_t> sizes(n, size);
                CHECK(bound_thm_1_1(CharBound::infinite(), k, sizes) == BigInt(n) * ((size - 1) / k) + 1);
            }
    // prime characteristic trigger: floor((|A|-1)/k) >= (p-1)/n forces the bound to p
    for (std::int64_t p : {5, 7}) {
        for (std::int64_t k = 1; k <= 3; ++k)
            for (std::int64_t n = 1; n <= 4; ++n)
                for (std::int64_t size = 1; size <= p; ++size) {
                    const std::vector<std::int64_t> sizes(n, size);
                    if (BigInt((size - 1) / k) * n >= p - 1)
                        CHECK(bound_thm_1_1(CharBound::prime(p), k, sizes) == p);
                }
    }
}

TEST_CASE("bound_thm_1_2 examples") {
    const std::vector<std::int64_t> s1{4, 5, 6};
    CHECK(bound_thm_1_2(CharBound::infinite(), 3, s1) == 4);
    const std::vector<std::int64_t> s2{3, 4};
    CHECK(bound_thm_1_2(CharBound::prime(7), 2, s2) == 3);
    const std::vector<std::int64_t> s3{1, 2, 3};
    CHECK(bound_thm_1_2(CharBound::infinite(), 3, s3) == 1);
    CHECK(bound_thm_1_2(CharBound::infinite(), 5, s3) == 1);
    CHECK_THROWS_AS(bound_thm_1_2(CharBound::prime(7), 1, s2), LabError);  // n > k
    const std::vector<std::int64_t> bad{3, 1};
    CHECK_THROWS_AS(bound_thm_1_2(CharBound::prime(7), 2, bad), LabError);  // |A_2| < 2
}

TEST_CASE("bound_cor_1_4 examples and branch agreement") {
    CHECK(bound_cor_1_4(CharBound::infinite(), 3, 2, 8) == 5);
    CHECK(bound_cor_1_4(CharBound::prime(11), 2, 4, 9) == 6);
    CHECK(bound_cor_1_4(CharBound::prime(13), 2, 2, 7) == 6);
    for (std::int64_t k = 1; k <= 6; ++k)
        for (std::int64_t size = 0; size <= 30; ++size) {
            // at n = k the two branch formulas agree for every size
            const std::int64_t q = size / k, r = size % k;
            CHECK(BigInt(k) * (q - 1) + std::min(k, r) + 1 == BigInt(size) - k + 1);
            CHECK(bound_cor_1_4(CharBound::infinite(), k, k, size) == BigInt(size) - k + 1);
        }
}

TEST_CASE("bound_conjecture: k = 1 reduces to the restricted-sum bound") {
    for (std::int64_t n = 2; n <= 6; ++n)
        for (std::int64_t size = 0; size <= 20; ++size) {
            CHECK(bound_conjecture(CharBound::infinite(), 1, n, size, 0) == BigInt(n) * (size - n) + 1);
            CHECK(bound_conjecture(CharBound::prime(7), 1, n, size, 0) ==
                  bound_dsh(CharBound::prime(7), n, size));
        }
}

TEST_CASE("bound_conjecture dual evaluation examples") {
    // (Infinity, k=2, n=3, |A|=7): integer form 1*4 + 1*2 + 1 = 7
    CHECK(bound_conjecture(CharBound::infinite(), 2, 3, 7, 0) == 7);
    CHECK(conjecture_body_rational(2, 3, 7) == 7);
    // (Infinity, k=2, n=3, |A|=8): 1*5 + 1*2 + 1 = 8; 7.5 - 0.5 + 1 = 8
    CHECK(bound_conjecture(CharBound::infinite(), 2, 3, 8, 0) == 8);
    CHECK(conjecture_body_rational(2, 3, 8) == 8);
    CHECK_THROWS_AS(bound_conjecture(CharBound::infinite(), 3, 3, 8, 0), LabError);  // needs n > k
}

TEST_CASE("integer identity equals the rational form exhaustively") {
    for (std::int64_t k = 1; k <= 29; ++k)
        for (std::int64_t n = k + 1; n <= 30; ++n)
            for (std::int64_t size = n + 1; size <= 60; ++size) {
                const BigInt integer_form = bound_conjecture(CharBound::infinite(), k, n, size, 0);
                const BigRat rational_form = conjecture_body_rational(k, n, size);
                CHECK(BigRat(integer_form) == rational_form);
            }
}

TEST_CASE("the conjectured bound strengthens the n >= k corollary branch") {
    for (std::int64_t p : {5, 7, 11}) {
        for (std::int64_t k = 1; k <= 4; ++k)
            for (std::int64_t n = k + 1; n <= 8; ++n)
                for (std::int64_t size = n; size <= 2 * p; ++size)
                    for (int delta : {0, 1}) {
                        const BigInt conj = bound_conjecture(CharBound::prime(p), k, n, size, delta);
                        const BigInt weak = std::min(BigInt(p) - delta, BigInt(size) - n + 1);
                        CHECK(conj >= weak);
                    }
    }
}

TEST_CASE("delta from actual coefficients") {
    Field f7 = Field::prime(7);
    const std::vector<Elem> negated{f7.from_int(2), f7.from_int(5)};
    CHECK(conjecture_delta(f7, negated) == 1);
    const std::vector<Elem> plain{f7.from_int(2), f7.from_int(3)};
    CHECK(conjecture_delta(f7, plain) == 0);
    const std::vector<Elem> three{f7.one(), f7.one(), f7.neg(f7.one())};
    CHECK(conjecture_delta(f7, three) == 0);  // only n = 2 carries the correction
    Field f2 = Field::prime(2);
    const std::vector<Elem> self_neg{f2.one(), f2.one()};
    CHECK(conjecture_delta(f2, self_neg) == 1);  // -1 = 1 in F_2
}

TEST_CASE("bound_dsh examples") {
    CHECK(bound_dsh(CharBound::prime(5), 2, 5) == 5);
    CHECK(bound_dsh(CharBound::infinite(), 3, 3) == 1);
    CHECK(bound_dsh(CharBound::prime(7), 2, 4) == 5);
}

TEST_CASE("bound_cms examples") {
    CHECK(bound_cms(13, 3, 2) == 13);
    CHECK(bound_cms(13, 2, 1) == 7);
    CHECK_THROWS_AS(bound_cms(11, 5, 2), LabError);  // k = (p-1)/2
    CHECK_THROWS_AS(bound_cms(13, 5, 2), LabError);  // k does not divide p-1
    CHECK_THROWS_AS(bound_cms(3, 2, 2), LabError);   // p <= 3
}

TEST_CASE("bounds are monotone in every subset size") {
    for (std::int64_t k = 1; k <= 3; ++k) {
        for (std::int64_t s1 = 1; s1 <= 10; ++s1)
            for (std::int64_t s2 = 1; s2 <= 10; ++s2) {
                const std::vector<std::int64_t> a{s1, s2};
                const std::vector<std::int64_t> b{s1 + 1, s2};
                const std::vector<std::int64_t> c{s1, s2 + 1};
                for (const auto& ch : {CharBound::infinite(), CharBound::prime(7)}) {
                    CHECK(bound_thm_1_1(ch, k, b) >= bound_thm_1_1(ch, k, a));
                    CHECK(bound_thm_1_1(ch, k, c) >= bound_thm_1_1(ch, k, a));
                    if (k >= 2 && s2 >= 2) {
                        CHECK(bound_thm_1_2(ch, k, b) >= bound_thm_1_2(ch, k, a));
                        CHECK(bound_thm_1_2(ch, k, c) >= bound_thm_1_2(ch, k, a));
                    }
                }
            }
        for (std::int64_t n = 1; n <= 5; ++n)
            for (std::int64_t size = n; size <= 20; ++size) {
                CHECK(bound_cor_1_4(CharBound::prime(11), k, n, size + 1) >=
                      bound_cor_1_4(CharBound::prime(11), k, n, size));
                if (n > k)
                    CHECK(bound_conjecture(CharBound::prime(11), k, n, size + 1, 0) >=
                          bound_conjecture(CharBound::prime(11), k, n, size, 0));
            }
    }
}

TEST_CASE("BoundReport flags negative slack as a violation") {
    auto good = BoundReport::make("Fp:5", 2, 2, {3, 3}, "thm-1.1", 3, 4);
    CHECK_FALSE(good.violation);
    CHECK_FALSE(good.tight);
    CHECK(good.slack == 1);
    auto tight = BoundReport::make("Fp:5", 2, 2, {3, 3}, "thm-1.1", 4, 4);
    CHECK(tight.tight);
    auto bad = BoundReport::make("Fp:5", 2, 2, {3, 3}, "thm-1.1", 5, 4);
    CHECK(bad.violation);
    CHECK(bad.slack == -1);
}
