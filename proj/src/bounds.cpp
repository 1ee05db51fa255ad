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

namespace nslab {

BigInt bound_thm_1_1(const CharBound& c, std::int64_t k, std::span<const std::int64_t> sizes) {
    if (k < 1) throw_err(Err::BadParams, "k must be positive");
    if (sizes.empty()) throw_err(Err::BadParams, "need at least one subset");
    BigInt sum = 0;
    for (auto s : sizes) {
        if (s < 1) throw_err(Err::BadParams, "subset sizes must be >= 1");
        sum += floor_div_i64(s - 1, k);
    }
    return c.min_with(sum + 1);
}

BigInt bound_thm_1_2(const CharBound& c, std::int64_t k, std::span<const std::int64_t> sizes) {
    const std::int64_t n = static_cast<std::int64_t>(sizes.size());
    if (k < 1 || n < 1) throw_err(Err::BadParams, "need k >= 1 and n >= 1");
    if (n > k) throw_err(Err::PreconditionViolated, "restricted bound needs n <= k");
    BigInt sum = 0;
    for (std::int64_t i = 1; i <= n; ++i) {
        if (sizes[i - 1] < i)
            throw_err(Err::PreconditionViolated, "restricted bound needs |A_i| >= i");
        sum += floor_div_i64(sizes[i - 1] - i, k);
    }
    return c.min_with(sum + 1);
}

BigInt bound_cor_1_4(const CharBound& c, std::int64_t k, std::int64_t n, std::int64_t size_a) {
    if (k < 1 || n < 1) throw_err(Err::BadParams, "need k >= 1 and n >= 1");
    if (size_a < 0) throw_err(Err::BadParams, "negative subset size");
    const std::int64_t q = size_a / k;
    const std::int64_t r = size_a % k;
    const BigInt small_n = BigInt(n) * (q - 1) + std::min(n, r) + 1;
    const BigInt large_n = BigInt(size_a) - n + 1;
    if (n == k && small_n != large_n)
        throw_err(Err::TheoremViolated, "corollary branches disagree at n = k");
    return c.min_with(n <= k ? small_n : large_n);
}

BigInt bound_conjecture(const CharBound& c, std::int64_t k, std::int64_t n, std::int64_t size_a, int delta) {
    if (k < 1) throw_err(Err::BadParams, "k must be positive");
    if (n <= k) throw_err(Err::PreconditionViolated, "conjectured bound needs n > k");
    if (size_a < 0) throw_err(Err::BadParams, "negative subset size");
    if (delta != 0 && delta != 1) throw_err(Err::BadParams, "delta must be 0 or 1");
    const std::int64_t d = size_a - n;
    const std::int64_t s = floor_mod_i64(n, k);
    const BigInt body = BigInt(n / k) * d + BigInt(s) * floor_div_i64(d, k) + 1;
    if (!c.is_finite()) return body;
    const BigInt cap = BigInt(c.prime_value()) - delta;
    return body < cap ? body : cap;
}

int conjecture_delta(const Field& f, std::span<const Elem> a) {
    if (a.size() != 2) return 0;
    return a[0] == f.neg(a[1]) ? 1 : 0;
}

BigInt bound_dsh(const CharBound& c, std::int64_t n, std::int64_t size_a) {
    if (n < 1) throw_err(Err::BadParams, "n must be positive");
    return c.min_with(BigInt(n) * (size_a - n) + 1);
}

BigInt bound_cms(std::int64_t p, std::int64_t k, std::int64_t n) {
    if (!is_prime_i64(p)) throw_err(Err::NotPrime, std::to_string(p) + " is not prime");
    if (n < 1) throw_err(Err::BadParams, "n must be positive");
    if (p <= 3) throw_err(Err::PreconditionViolated, "needs p > 3");
    if (!(k > 1 && 2 * k < p - 1)) throw_err(Err::PreconditionViolated, "needs 1 < k < (p-1)/2");
    if ((p - 1) % k != 0) throw_err(Err::PreconditionViolated, "needs k | p-1");
    BigInt body = BigInt(2 * n - 1) * ((p - 1) / k) + 1;
    return CharBound::prime(p).min_with(body);
}

BoundReport BoundReport::make(std::string field_descriptor, std::int64_t k, std::int64_t n,
                              std::vector<std::int64_t> sizes, std::string bound_name, BigInt bound,
                              std::int64_t observed) {
    BoundReport r;
    r.field_descriptor = std::move(field_descriptor);
    r.k = k;
    r.n = n;
    r.sizes = std::move(sizes);
    r.bound_name = std::move(bound_name);
    r.bound = std::move(bound);
    r.observed = observed;
    r.slack = BigInt(observed) - r.bound;
    r.tight = r.slack == 0;
    r.violation = r.slack < 0;
    return r;
}

}  // namespace nslab
