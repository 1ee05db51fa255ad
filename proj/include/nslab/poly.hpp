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

#ifndef NSLAB_POLY_HPP
#define NSLAB_POLY_HPP

#include "nslab/field.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace nslab {

/// Sparse multivariate polynomial: a map from exponent vectors to nonzero
/// coefficients. Exponent vectors are fixed-length tuples; iteration is
/// lexicographic (std::map order), so serialization is reproducible.
class SparsePoly {
  public:
    using Exps = std::vector<std::int32_t>;

    explicit SparsePoly(int arity) : arity_(arity) {
        if (arity < 0) throw_err(Err::BadParams, "negative arity");
    }

    static SparsePoly constant(const Field& f, int arity, const Elem& c);
    static SparsePoly monomial(const Field& f, Exps e, const Elem& c);
    /// x_i (0-based index).
    static SparsePoly variable(const Field& f, int arity, int i);

    int arity() const { return arity_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    /// Max coordinate-sum over stored exponents; -1 for the zero polynomial.
    std::int64_t total_degree() const;
    const std::map<Exps, Elem>& terms() const { return terms_; }

    /// Stored coefficient of the monomial with exponent vector d, or zero.
    Elem coefficient_of(const Field& f, const Exps& d) const;

    Elem eval(const Field& f, std::span<const Elem> x) const;

    SparsePoly plus(const Field& f, const SparsePoly& o) const;
    SparsePoly plus_const(const Field& f, const Elem& c) const;
    SparsePoly scaled(const Field& f, const Elem& c) const;

    /// Full product.
    SparsePoly mul(const Field& f, const SparsePoly& o) const;

    /// Product with every monomial whose exponent exceeds cap in ANY
    /// coordinate discarded. Coefficients of monomials <= cap coordinatewise
    /// agree with the full product, since multiplication never decreases
    /// exponents.
    SparsePoly mul_truncated(const Field& f, const SparsePoly& o, const Exps& cap) const;

    /// "c:e1,...,en" terms joined by " + "; "0" for the zero polynomial.
    std::string to_text(const Field& f) const;
    static SparsePoly from_text(const Field& f, int arity, const std::string& text);

    bool operator==(const SparsePoly& o) const { return arity_ == o.arity_ && terms_ == o.terms_; }

    /// Inserts (adds) a term, dropping the entry if the sum cancels.
    void add_term(const Field& f, const Exps& e, const Elem& c);

  private:
    void check_arity(const Exps& e) const;

    int arity_;
    std::map<Exps, Elem> terms_;
};

/// The diagonal form a_1 x_1^k + ... + a_n x_n^k + g(x_1,...,x_n) with
/// every a_i nonzero and deg g < k.
struct DiagonalForm {
    std::int64_t k = 1;
    std::vector<Elem> a;
    SparsePoly g;

    DiagonalForm(std::int64_t k_, std::vector<Elem> a_, SparsePoly g_)
        : k(k_), a(std::move(a_)), g(std::move(g_)) {}

    /// Pure power form with zero tail.
    static DiagonalForm pure(const Field& f, std::int64_t k, std::vector<Elem> a);

    int n() const { return static_cast<int>(a.size()); }

    Elem eval(const Field& f, std::span<const Elem> x) const;

    /// Expansion into a SparsePoly (used by the proof machinery).
    SparsePoly expand(const Field& f) const;
};

enum class FormViolation { None, ZeroCoefficient, TailDegree, ArityMismatch, BadExponent };

const char* form_violation_name(FormViolation v);

/// Reports which invariant of the diagonal form fails, if any.
FormViolation validate(const Field& f, const DiagonalForm& d);

}  // namespace nslab

#endif
