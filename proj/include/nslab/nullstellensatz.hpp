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

#ifndef NSLAB_NULLSTELLENSATZ_HPP
#define NSLAB_NULLSTELLENSATZ_HPP

#include "nslab/bounds.hpp"
#include "nslab/valueset.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nslab {

/// The subset-shrinking bookkeeping behind both lower-bound proofs: each
/// A_i is replaced by a subset A_i' sized so that the exponent accounting
/// sum(|A_i'| - 1) = k(N-1) (unrestricted) or sum(|A_i'| - i) = k(N-1)
/// (restricted) holds exactly, where N is the target bound.
struct ShrinkPlan {
    bool restricted = false;
    std::int64_t k = 1;
    int cut_index = 0;  // m: number of leading variables kept at full floor count
    std::vector<std::int64_t> shrunk_sizes;
    std::vector<std::int64_t> q_list;  // per-variable floor counts
    std::int64_t target_bound = 1;     // N
    CharBound char_bound = CharBound::infinite();

    int n() const { return static_cast<int>(shrunk_sizes.size()); }

    /// Exponent of a_i in the closed-form coefficient:
    /// (|A_i'| - 1)/k unrestricted, (|A_i'| - i)/k restricted.
    std::vector<std::int64_t> coefficient_exponents() const;

    /// The monomial the proof extracts: (|A_1'|-1, ..., |A_n'|-1).
    std::vector<std::int32_t> target_exponents() const;
};

/// Computes shrunken cardinalities per the proofs, including the m+1
/// adjustment and the singleton (resp. size-i) tail. Preconditions are
/// those of the corresponding theorem.
ShrinkPlan shrink_subsets(const CharBound& c, std::int64_t k, std::span<const std::int64_t> sizes,
                          bool restricted);

/// The proof polynomial
///   f^(N-1-|C|) * prod_{c in C} (f - c) * [prod_{i<j} (x_j - x_i) if restricted],
/// built with truncated multiplication capped at the target exponent
/// vector. Requires |C| <= N-1 (TooManyValues).
SparsePoly proof_polynomial(const Field& f, const DiagonalForm& d, std::span<const Elem> c_values,
                            std::int64_t n_bound, bool restricted, const SparsePoly::Exps& cap);

/// Closed-form critical coefficient:
///   (N-1)! / prod(c_i!) * prod a_i^{c_i},
/// with c_i the per-variable coefficient exponents of the plan. In the
/// restricted case with m < n this uses the integer exponent
/// p(F)-1-q_1-...-q_m on a_{m+1} (see the trace's reading note).
Elem critical_coefficient(const ShrinkPlan& plan, std::span<const Elem> a, const Field& f);

/// Whether top!/prod(parts!) is nonzero in characteristic p, decided by
/// Legendre valuations. Requires sum(parts) == top (BadPartition).
bool multinomial_nonzero(std::int64_t top, std::span<const std::int64_t> parts, const CharBound& p);

/// Exhaustive grid search for a point with P != 0, after checking the
/// grid-theorem hypotheses deg P = sum(target_i) and target_i < |A_i|
/// (HypothesisUnmet otherwise). If the hypotheses hold, the target
/// coefficient is nonzero and no witness exists, TheoremViolated is
/// raised: that would falsify the theorem.
std::optional<std::vector<Elem>> cn_witness_search(const Field& f, const SparsePoly& p,
                                                   const SubsetFamily& grids,
                                                   const SparsePoly::Exps& target);

struct ProofTrace {
    ShrinkPlan plan;
    std::vector<std::vector<Elem>> shrunk_sets;
    std::int64_t c_size = 0;           // |C| over the shrunken family
    std::int64_t c_used_size = 0;      // after optional injection
    bool injected = false;
    bool contradiction_branch = false;  // fired iff |C_used| <= N-1
    std::optional<Elem> coeff_extracted;
    std::optional<Elem> coeff_closed_form;
    bool coeff_match = false;
    bool coeff_nonzero = false;
    std::optional<std::vector<Elem>> witness;
    std::optional<Elem> witness_value;
    bool witness_value_outside_c = false;
    std::string reading_note;  // restricted m<n exponent reading

    std::string to_json_text(const Field& f) const;
};

struct ReplayOptions {
    /// Truncate C to this many values before the contradiction check.
    /// The theorems being true means the branch never fires naturally;
    /// injecting a truncated C exercises it.
    std::optional<std::size_t> inject_c_limit;
    std::uint64_t budget = kDefaultBudget;
};

/// Runs one theorem proof end to end: shrink, brute-force C over the
/// shrunken family, and if |C| < N build the proof polynomial, extract
/// the critical coefficient, check it against the closed form, and find
/// the contradiction witness (a grid point whose value lies outside C).
ProofTrace replay_proof(const Field& f, const DiagonalForm& d, const SubsetFamily& a, bool restricted,
                        const ReplayOptions& options = {});

}  // namespace nslab

#endif
