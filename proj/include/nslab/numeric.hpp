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

#ifndef NSLAB_NUMERIC_HPP
#define NSLAB_NUMERIC_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nslab {

// All formula evaluation is exact: arbitrary-precision integers and
// rationals, never floating point.
using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// Floor division (rounds toward -infinity). b must be positive.
BigInt floor_div(const BigInt& a, const BigInt& b);
std::int64_t floor_div_i64(std::int64_t a, std::int64_t b);

/// a - b*floor_div(a, b); always in [0, b).
BigInt floor_mod(const BigInt& a, const BigInt& b);
std::int64_t floor_mod_i64(std::int64_t a, std::int64_t b);

/// Fractional part {a} = a - floor(a) of an exact rational.
BigRat frac_part(const BigRat& a);

BigInt factorial(std::int64_t n);

/// top! / (parts[0]! * ... * parts[m-1]!). Requires sum(parts) == top.
BigInt multinomial(std::int64_t top, std::span<const std::int64_t> parts);

/// Exponent of prime p in n! (Legendre's formula).
std::int64_t prime_valuation_factorial(std::int64_t n, std::int64_t p);

/// Deterministic trial-division primality test; fine at desk scale.
bool is_prime_i64(std::int64_t n);

std::int64_t gcd_i64(std::int64_t a, std::int64_t b);

/// p(F): the additive order of the multiplicative identity — a prime for
/// fields of positive characteristic, a distinguished infinity otherwise.
/// Infinity is a symbolic state here, never a sentinel integer.
class CharBound {
  public:
    static CharBound infinite() { return CharBound(std::nullopt); }
    static CharBound prime(std::int64_t p);

    bool is_finite() const { return p_.has_value(); }
    std::int64_t prime_value() const;

    /// min{p(F), x}; with infinite characteristic this is x itself.
    BigInt min_with(const BigInt& x) const;

    bool operator==(const CharBound& o) const { return p_ == o.p_; }

    std::string to_string() const;

  private:
    explicit CharBound(std::optional<std::int64_t> p) : p_(p) {}
    std::optional<std::int64_t> p_;
};

/// splitmix64 step; used to derive per-instance RNG seeds.
std::uint64_t splitmix64(std::uint64_t x);

inline std::uint64_t hash_combine_u64(std::uint64_t h, std::uint64_t v) {
    return splitmix64(h ^ (v + 0x9e3779b97f4a7c15ULL));
}

}  // namespace nslab

#endif
