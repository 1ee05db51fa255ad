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

#ifndef NSLAB_FIELD_HPP
#define NSLAB_FIELD_HPP

#include "nslab/errors.hpp"
#include "nslab/numeric.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace nslab {

/// One field element in canonical form. Representation depends on the
/// field kind: residue in [0,p) for prime fields, a coefficient vector of
/// length m with entries in [0,p) for extension fields (low degree
/// first), an exact normalized fraction for the rational model. Equality
/// and ordering are representation-level and therefore decidable; the
/// ordering matches the owning field's canonical enumeration order.
class Elem {
  public:
    Elem() : rep_(std::int64_t{0}) {}

    bool operator==(const Elem& o) const { return rep_ == o.rep_; }
    bool operator!=(const Elem& o) const { return !(*this == o); }
    bool operator<(const Elem& o) const;

    bool is_residue() const { return std::holds_alternative<std::int64_t>(rep_); }
    bool is_vector() const { return std::holds_alternative<std::vector<std::int64_t>>(rep_); }
    bool is_fraction() const { return std::holds_alternative<BigRat>(rep_); }

    std::int64_t residue() const { return std::get<std::int64_t>(rep_); }
    const std::vector<std::int64_t>& coeffs() const { return std::get<std::vector<std::int64_t>>(rep_); }
    const BigRat& fraction() const { return std::get<BigRat>(rep_); }

  private:
    friend class Field;
    explicit Elem(std::int64_t r) : rep_(r) {}
    explicit Elem(std::vector<std::int64_t> v) : rep_(std::move(v)) {}
    explicit Elem(BigRat q) : rep_(std::move(q)) {}

    std::variant<std::int64_t, std::vector<std::int64_t>, BigRat> rep_;
};

enum class FieldKind { Prime, Extension, Rational };

enum class RootsVariant { PowK, PowKMinusX };

/// A computational field: F_p, F_{p^m} (explicit irreducible modulus), or
/// the exact rational model of characteristic zero. Values are immutable
/// after construction and safe to share across threads.
class Field {
  public:
    /// F_p = Z/pZ. Throws NotPrime for composite p.
    static Field prime(std::int64_t p);

    /// F_{p^m} = F_p[x]/(modulus). Coefficients are listed low degree
    /// first and the polynomial must be monic of degree m >= 1. Throws
    /// Reducible if the modulus factors over F_p.
    static Field extension(std::int64_t p, std::vector<std::int64_t> modulus);

    /// Exact characteristic-zero model (arbitrary-precision fractions).
    static Field rationals();

    /// Parse a descriptor: "Fp:7", "Fq:3:1,0,1" (modulus low-to-high), "Q".
    static Field parse(const std::string& descriptor);
    std::string descriptor() const;

    FieldKind kind() const { return kind_; }
    CharBound characteristic() const;
    bool finite() const { return kind_ != FieldKind::Rational; }
    /// Number of elements; throws InfiniteField for the rational model.
    std::int64_t size() const;
    std::int64_t char_p() const { return p_; }
    std::int64_t ext_degree() const { return m_; }
    const std::vector<std::int64_t>& modulus() const { return modulus_; }

    Elem zero() const;
    Elem one() const;
    Elem from_int(std::int64_t v) const;
    Elem from_bigint(const BigInt& v) const;
    /// Rational model only.
    Elem from_fraction(const BigRat& q) const;

    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    /// Multiplicative inverse; throws DivByZero on zero.
    Elem inv(const Elem& a) const;
    /// a^e for e >= 0 (square and multiply); throws BadParams on e < 0.
    Elem pow(const Elem& a, std::int64_t e) const;

    bool is_zero(const Elem& a) const { return a == zero(); }
    bool is_one(const Elem& a) const { return a == one(); }

    /// Canonical index of an element, 0 .. size()-1 (finite fields only).
    /// Prime: the residue itself. Extension: sum c_i * p^i.
    std::int64_t index_of(const Elem& a) const;
    Elem element(std::int64_t index) const;
    std::vector<Elem> all_elements() const;

    std::string elem_to_string(const Elem& a) const;
    Elem elem_parse(const std::string& text) const;

    /// All x with x^k = c (PowK) or x^k - x = c (PowKMinusX), by
    /// exhaustive scan; finite fields only (InfiniteField otherwise).
    std::vector<Elem> roots_of(const Elem& c, std::int64_t k, RootsVariant variant) const;

    bool operator==(const Field& o) const {
        return kind_ == o.kind_ && p_ == o.p_ && modulus_ == o.modulus_;
    }

  private:
    Field(FieldKind kind, std::int64_t p, std::vector<std::int64_t> modulus);

    void check_elem(const Elem& a) const;

    FieldKind kind_;
    std::int64_t p_ = 0;                  // prime modulus (0 for rationals)
    std::int64_t m_ = 1;                  // extension degree
    std::vector<std::int64_t> modulus_;   // monic, low degree first (extension only)
    std::int64_t q_ = 0;                  // p^m (finite kinds)
};

}  // namespace nslab

#endif
