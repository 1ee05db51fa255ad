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

#ifndef NSLAB_VALUESET_HPP
#define NSLAB_VALUESET_HPP

#include "nslab/poly.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace nslab {

/// The finite nonempty subsets A_1..A_n. Sets are canonicalized on
/// construction: sorted in the field's enumeration order, duplicates
/// removed.
struct SubsetFamily {
    std::vector<std::vector<Elem>> sets;

    static SubsetFamily of(const Field& f, std::vector<std::vector<Elem>> raw);
    /// A_1 = ... = A_n = a (common-set family).
    static SubsetFamily repeated(const Field& f, std::vector<Elem> a, int n);

    int n() const { return static_cast<int>(sets.size()); }
    std::vector<std::int64_t> sizes() const;
};

struct ValueSetResult {
    std::vector<Elem> values;  // sorted, duplicate-free: the exact image
    std::uint64_t tuple_count = 0;
    bool restricted = false;

    std::int64_t size() const { return static_cast<std::int64_t>(values.size()); }
    bool contains(const Elem& v) const;
};

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

/// Exact image of the diagonal form over A_1 x ... x A_n, enumerated with
/// prefix partial sums of the a_i x_i^k contributions. All A_i must be
/// nonempty (EmptySubset). Tuple spaces above the budget are rejected
/// with BudgetExceeded, never sampled.
ValueSetResult value_set(const Field& f, const DiagonalForm& d, const SubsetFamily& a,
                         std::uint64_t budget = kDefaultBudget);

/// Image over tuples with pairwise distinct coordinates only. Empty sets
/// and families with no injective tuple legally produce an empty result.
ValueSetResult restricted_value_set(const Field& f, const DiagonalForm& d, const SubsetFamily& a,
                                    std::uint64_t budget = kDefaultBudget);

struct Solvability {
    bool solvable = false;
    std::vector<Elem> witness;  // nonempty iff solvable
};

/// Whether f(x) = 0 has a solution over F^n, by scan with early exit on
/// the first witness. Finite fields only. If the space exceeds the budget
/// and no witness was found within it, BudgetExceeded is raised rather
/// than returning a silent "false".
Solvability is_solvable_zero(const Field& f, const DiagonalForm& d, std::uint64_t budget = kDefaultBudget);

struct DasBound {
    std::int64_t l = 0;           // least l with sum_{x in S} P(x)^l != 0
    std::int64_t image_size = 0;  // |{P(x) : x in S}|, always >= l+1
};

/// Power-sum lower bound: the least l with a nonzero power sum over S.
/// Search is capped at |F| (NotFound beyond). The guarantee
/// image_size >= l+1 is checked before returning.
DasBound das_lower_bound(const Field& f, const SparsePoly& p, const std::vector<std::vector<Elem>>& s);

/// ceil((p-1)/floor((p-1)/k)); requires k < p (KTooLarge).
std::int64_t felszeghy_threshold(std::int64_t p, std::int64_t k);

}  // namespace nslab

#endif
