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

#ifndef NSLAB_CONSTRUCTIONS_HPP
#define NSLAB_CONSTRUCTIONS_HPP

#include "nslab/bounds.hpp"
#include "nslab/valueset.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace nslab {

/// f_k(x): x^k - x when the characteristic divides k, else x^k. Chosen so
/// that f_k(x) = c has exactly k roots over an algebraically closed field.
Elem f_k_apply(const Field& f, std::int64_t k, const Elem& x);

/// The sum a_1 f_k(x_1) + ... + a_n f_k(x_n) as a diagonal form (the tail
/// is -sum a_i x_i when the characteristic divides k, zero otherwise).
DiagonalForm construction_form(const Field& f, std::int64_t k, std::span<const Elem> a);

/// Extremal family for the unrestricted bound: A_i is the preimage under
/// f_k of {a_i^{-1}, ..., q_i a_i^{-1}} with r_i elements removed from the
/// top preimage. Every needed value must have exactly k preimages in the
/// given finite field, verified at build time; otherwise Infeasible names
/// the first failing value. Removed sets R_i are the lexicographically
/// smallest choices.
SubsetFamily build_example_2_1(const Field& f, std::int64_t k, std::span<const Elem> a,
                               std::span<const std::int64_t> q, std::span<const std::int64_t> r);

/// Extremal family for the restricted bound (k >= n): A_i keeps only a
/// size-s_i piece S_i of the preimage of a_i^{-1} plus the full preimages
/// of j a_i^{-1} for 2 <= j <= q_i. Requires i <= s_i <= k.
SubsetFamily build_example_3_1(const Field& f, std::int64_t k, std::span<const Elem> a,
                               std::span<const std::int64_t> q, std::span<const std::int64_t> s_sizes);

/// Exact combinatorial model of the complex extremal example: values of
/// sum y_i with y_i in {1..q+1}, multiplicity of q+1 at most r and of
/// each j <= q at most k. Closed forms for the extremes and the size.
struct Example41Model {
    std::int64_t k = 1, n = 1, q = 0, r = 0;
    std::int64_t s = 0;       // n mod k
    std::int64_t m_v = 0;     // smallest element of V
    std::int64_t big_m_v = 0; // largest element of V
    std::int64_t d_rs = 0;    // r-s if r >= s else 0
    std::int64_t v_size = 0;  // |V| = M_V - m_V + 1
};

/// Requires n >= k, r < k and kq + r >= n (BadParams otherwise).
Example41Model example_4_1_closed_forms(std::int64_t k, std::int64_t n, std::int64_t q, std::int64_t r);

/// Independent oracle for the closed forms: enumerate the multisets and
/// collect the sums. n = 0 yields {0}; infeasible caps yield the empty set.
std::vector<std::int64_t> example_4_1_brute(std::int64_t k, std::int64_t n, std::int64_t q, std::int64_t r);

struct TightnessVerdict {
    enum class Kind { Tight, Slack, Counterexample };
    Kind kind = Kind::Tight;
    BigInt slack = 0;
};

/// Classifies observed |V| against the bound. Negative slack is reported
/// as a counterexample, never swallowed.
TightnessVerdict check_tightness(const BoundReport& report);

/// Primes p = 1 (mod k): in F_p every nonzero k-th-power target has
/// exactly k preimages, so the extremal builds are feasible there.
std::vector<std::int64_t> suggest_primes(std::int64_t k, int count, std::int64_t limit = 100000);

}  // namespace nslab

#endif
