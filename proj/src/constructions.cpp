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

#include "nslab/constructions.hpp"

#include <algorithm>
#include <set>

namespace nslab {

namespace {

bool char_divides_k(const Field& f, std::int64_t k) {
    return f.finite() && k % f.char_p() == 0;
}

// Exactly-k-preimages check shared by both extremal builds.
std::vector<Elem> preimage_exactly_k(const Field& f, std::int64_t k, RootsVariant variant, const Elem& value,
                                     const std::string& what) {
    auto roots = f.roots_of(value, k, variant);
    if (static_cast<std::int64_t>(roots.size()) != k)
        throw_err(Err::Infeasible, what + " " + f.elem_to_string(value) + " has " +
                                       std::to_string(roots.size()) + " preimages under f_k, need " +
                                       std::to_string(k));
    return roots;
}

}  // namespace

Elem f_k_apply(const Field& f, std::int64_t k, const Elem& x) {
    Elem v = f.pow(x, k);
    if (char_divides_k(f, k)) v = f.sub(v, x);
    return v;
}

DiagonalForm construction_form(const Field& f, std::int64_t k, std::span<const Elem> a) {
    const int n = static_cast<int>(a.size());
    SparsePoly tail(n);
    if (char_divides_k(f, k)) {
        for (int i = 0; i < n; ++i) {
            SparsePoly::Exps e(n, 0);
            e[i] = 1;
            tail.add_term(f, e, f.neg(a[i]));
        }
    }
    return DiagonalForm(k, std::vector<Elem>(a.begin(), a.end()), std::move(tail));
}

SubsetFamily build_example_2_1(const Field& f, std::int64_t k, std::span<const Elem> a,
                               std::span<const std::int64_t> q, std::span<const std::int64_t> r) {
    if (!f.finite()) throw_err(Err::InfiniteField, "extremal build enumerates a finite field");
    const std::size_t n = a.size();
    if (q.size() != n || r.size() != n) throw_err(Err::ArityMismatch, "a, q, r must have equal length");
    if (k < 1) throw_err(Err::BadParams, "k must be positive");
    const std::int64_t p = f.char_p();
    const RootsVariant variant = char_divides_k(f, k) ? RootsVariant::PowKMinusX : RootsVariant::PowK;

    std::vector<std::vector<Elem>> sets(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (f.is_zero(a[i])) throw_err(Err::BadParams, "coefficients must be nonzero");
        if (q[i] < 1 || q[i] >= p) throw_err(Err::PreconditionViolated, "need 1 <= q_i < p(F)");
        if (r[i] < 0 || r[i] > k - 1) throw_err(Err::PreconditionViolated, "need 0 <= r_i <= k-1");
        const Elem ai_inv = f.inv(a[i]);
        std::vector<Elem> set;
        for (std::int64_t j = 1; j <= q[i]; ++j) {
            Elem value = f.mul(f.from_int(j), ai_inv);
            auto roots = preimage_exactly_k(f, k, variant, value, "needed value");
            if (j == q[i]) {
                // R_i: drop the lexicographically smallest r_i roots of
                // the top value.
                std::sort(roots.begin(), roots.end());
                roots.erase(roots.begin(), roots.begin() + r[i]);
            }
            set.insert(set.end(), roots.begin(), roots.end());
        }
        sets[i] = std::move(set);
        if (static_cast<std::int64_t>(sets[i].size()) != k * q[i] - r[i])
            throw_err(Err::TheoremViolated, "built subset has unexpected cardinality");
    }
    return SubsetFamily::of(f, std::move(sets));
}

SubsetFamily build_example_3_1(const Field& f, std::int64_t k, std::span<const Elem> a,
                               std::span<const std::int64_t> q, std::span<const std::int64_t> s_sizes) {
    if (!f.finite()) throw_err(Err::InfiniteField, "extremal build enumerates a finite field");
    const std::size_t n = a.size();
    if (q.size() != n || s_sizes.size() != n)
        throw_err(Err::ArityMismatch, "a, q, s_sizes must have equal length");
    if (k < static_cast<std::int64_t>(n)) throw_err(Err::PreconditionViolated, "needs k >= n");
    const std::int64_t p = f.char_p();
    const RootsVariant variant = char_divides_k(f, k) ? RootsVariant::PowKMinusX : RootsVariant::PowK;

    std::vector<std::vector<Elem>> sets(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (f.is_zero(a[i])) throw_err(Err::BadParams, "coefficients must be nonzero");
        if (q[i] < 1 || q[i] >= p) throw_err(Err::PreconditionViolated, "need 1 <= q_i < p(F)");
        const std::int64_t want = static_cast<std::int64_t>(i) + 1;
        if (s_sizes[i] < want || s_sizes[i] > k)
            throw_err(Err::PreconditionViolated, "need i <= |S_i| <= k");
        const Elem ai_inv = f.inv(a[i]);
        std::vector<Elem> set;
        // S_i: lexicographically smallest s_i elements of the preimage of a_i^{-1}.
        auto first = preimage_exactly_k(f, k, variant, ai_inv, "needed value");
        std::sort(first.begin(), first.end());
        set.insert(set.end(), first.begin(), first.begin() + s_sizes[i]);
        for (std::int64_t j = 2; j <= q[i]; ++j) {
            Elem value = f.mul(f.from_int(j), ai_inv);
            auto roots = preimage_exactly_k(f, k, variant, value, "needed value");
            set.insert(set.end(), roots.begin(), roots.end());
        }
        sets[i] = std::move(set);
        if (static_cast<std::int64_t>(sets[i].size()) != k * (q[i] - 1) + s_sizes[i])
            throw_err(Err::TheoremViolated, "built subset has unexpected cardinality");
    }
    return SubsetFamily::of(f, std::move(sets));
}

Example41Model example_4_1_closed_forms(std::int64_t k, std::int64_t n, std::int64_t q, std::int64_t r) {
    if (k < 1 || n < 1 || q < 0 || r < 0) throw_err(Err::BadParams, "need k,n >= 1 and q,r >= 0");
    if (r >= k) throw_err(Err::BadParams, "need r < k");
    if (n < k) throw_err(Err::BadParams, "model needs n >= k");
    const std::int64_t size_a = k * q + r;
    if (size_a < n) throw_err(Err::BadParams, "need |A| = kq + r >= n");

    Example41Model m;
    m.k = k;
    m.n = n;
    m.q = q;
    m.r = r;
    const std::int64_t u = n / k;
    m.s = n % k;
    m.d_rs = r >= m.s ? r - m.s : 0;
    // k * sum_{i=1}^{u} i + s(u+1); k*u*(u+1) is even so the division is exact.
    m.m_v = k * u * (u + 1) / 2 + m.s * (u + 1);
    std::int64_t sum_desc = 0;  // sum_{i=0}^{u-1} (q - i)
    for (std::int64_t i = 0; i < u; ++i) sum_desc += q - i;
    m.big_m_v = r * (q + 1) + k * sum_desc + (m.s - r) * (q - u) - m.d_rs;
    m.v_size = m.big_m_v - m.m_v + 1;

    // The final display of the example, kept as a cross-check.
    const std::int64_t d = size_a - n;
    const std::int64_t alt = 1 + u * d + m.s * floor_div_i64(d, k) + (r < m.s ? r : 0);
    if (alt != m.v_size) throw_err(Err::TheoremViolated, "closed forms disagree internally");
    return m;
}

std::vector<std::int64_t> example_4_1_brute(std::int64_t k, std::int64_t n, std::int64_t q, std::int64_t r) {
    if (k < 1 || n < 0 || q < 0 || r < 0) throw_err(Err::BadParams, "need k >= 1 and n,q,r >= 0");
    if (n == 0) return {0};
    std::set<std::int64_t> sums;
    // Distribute n picks over values 1..q+1: each j <= q at most k times,
    // the value q+1 at most r times.
    auto descend = [&](auto&& self, std::int64_t value, std::int64_t remaining, std::int64_t acc) -> void {
        if (remaining == 0) {
            sums.insert(acc);
            return;
        }
        if (value > q + 1) return;
        const std::int64_t cap = value == q + 1 ? r : k;
        for (std::int64_t c = 0; c <= std::min(cap, remaining); ++c)
            self(self, value + 1, remaining - c, acc + c * value);
    };
    descend(descend, 1, n, 0);
    return {sums.begin(), sums.end()};
}

TightnessVerdict check_tightness(const BoundReport& report) {
    TightnessVerdict v;
    v.slack = report.slack;
    if (report.slack == 0)
        v.kind = TightnessVerdict::Kind::Tight;
    else if (report.slack > 0)
        v.kind = TightnessVerdict::Kind::Slack;
    else
        v.kind = TightnessVerdict::Kind::Counterexample;
    return v;
}

std::vector<std::int64_t> suggest_primes(std::int64_t k, int count, std::int64_t limit) {
    if (k < 1 || count < 0) throw_err(Err::BadParams, "need k >= 1 and count >= 0");
    std::vector<std::int64_t> out;
    for (std::int64_t p = 2; p <= limit && static_cast<int>(out.size()) < count; ++p)
        if (is_prime_i64(p) && (p - 1) % k == 0) out.push_back(p);
    return out;
}

}  // namespace nslab
