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

#ifndef NSLAB_BOUNDS_HPP
#define NSLAB_BOUNDS_HPP

#include "nslab/field.hpp"
#include "nslab/numeric.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace nslab {

// Every lower bound is evaluated in arbitrary-precision integers; the
// fractional-part form of the conjectured bound exists only in tests as a
// rational-arithmetic oracle.

/// min{p(F), sum_i floor((|A_i|-1)/k) + 1}. Valid for any diagonal form.
BigInt bound_thm_1_1(const CharBound& c, std::int64_t k, std::span<const std::int64_t> sizes);

/// min{p(F), sum_i floor((|A_i|-i)/k) + 1} for the restricted value set;
/// requires n <= k and |A_i| >= i.
BigInt bound_thm_1_2(const CharBound& c, std::int64_t k, std::span<const std::int64_t> sizes);

/// Common-set corollary. Writing |A| = kq + r with 0 <= r < k:
/// n <= k branch: min{p(F), n(q-1) + min{n,r} + 1};
/// n >= k branch: min{p(F), |A| - n + 1}.
/// The two branches agree at n = k (asserted in-operation).
BigInt bound_cor_1_4(const CharBound& c, std::int64_t k, std::int64_t n, std::int64_t size_a);

/// The conjectured restricted bound for n > k:
///   min{p(F) - delta, n(|A|-n)/k - k{n/k}{(|A|-n)/k} + 1},
/// evaluated exactly through the integer identity
///   floor(n/k)(|A|-n) + (n mod k) * floor((|A|-n)/k).
BigInt bound_conjecture(const CharBound& c, std::int64_t k, std::int64_t n, std::int64_t size_a, int delta);

/// delta is 1 exactly when n = 2 and a_1 = -a_2.
int conjecture_delta(const Field& f, std::span<const Elem> a);

/// min{p(F), n(|A|-n) + 1} (restricted sums of distinct elements).
BigInt bound_dsh(const CharBound& c, std::int64_t n, std::int64_t size_a);

/// min{p, (2n-1)(p-1)/k + 1}; requires p > 3, 1 < k < (p-1)/2, k | p-1.
BigInt bound_cms(std::int64_t p, std::int64_t k, std::int64_t n);

/// One experiment row: parameters, a bound, the brute-forced value-set
/// size, the slack, and the tightness flag. Negative slack with satisfied
/// preconditions is a counterexample and must be flagged, never swallowed.
struct BoundReport {
    std::string field_descriptor;
    std::int64_t k = 0;
    std::int64_t n = 0;
    std::vector<std::int64_t> sizes;
    std::string bound_name;
    BigInt bound = 0;
    std::int64_t observed = 0;
    BigInt slack = 0;  // observed - bound
    bool tight = false;
    bool violation = false;

    static BoundReport make(std::string field_descriptor, std::int64_t k, std::int64_t n,
                            std::vector<std::int64_t> sizes, std::string bound_name, BigInt bound,
                            std::int64_t observed);
};

}  // namespace nslab

#endif
