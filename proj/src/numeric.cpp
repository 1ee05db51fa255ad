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

#include "nslab/numeric.hpp"

#include "nslab/errors.hpp"

#include <numeric>

namespace nslab {

const char* err_name(Err e) {
    switch (e) {
        case Err::NotPrime: return "NotPrime";
        case Err::Reducible: return "Reducible";
        case Err::DivByZero: return "DivByZero";
        case Err::InfiniteField: return "InfiniteField";
        case Err::ArityMismatch: return "ArityMismatch";
        case Err::EmptySubset: return "EmptySubset";
        case Err::BudgetExceeded: return "BudgetExceeded";
        case Err::PreconditionViolated: return "PreconditionViolated";
        case Err::BadParams: return "BadParams";
        case Err::NotFound: return "NotFound";
        case Err::KTooLarge: return "KTooLarge";
        case Err::TooManyValues: return "TooManyValues";
        case Err::HypothesisUnmet: return "HypothesisUnmet";
        case Err::TheoremViolated: return "TheoremViolated";
        case Err::Infeasible: return "Infeasible";
        case Err::BadPartition: return "BadPartition";
        case Err::CorruptFile: return "CorruptFile";
        case Err::Counterexample: return "Counterexample";
        case Err::ParseError: return "ParseError";
    }
    return "UnknownError";
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
    if (b <= 0) throw_err(Err::BadParams, "floor_div requires positive divisor");
    BigInt q = a / b;          // truncates toward zero
    if (a % b != 0 && a < 0) q -= 1;
    return q;
}

std::int64_t floor_div_i64(std::int64_t a, std::int64_t b) {
    if (b <= 0) throw_err(Err::BadParams, "floor_div requires positive divisor");
    std::int64_t q = a / b;
    if (a % b != 0 && a < 0) q -= 1;
    return q;
}

BigInt floor_mod(const BigInt& a, const BigInt& b) { return a - b * floor_div(a, b); }

std::int64_t floor_mod_i64(std::int64_t a, std::int64_t b) { return a - b * floor_div_i64(a, b); }

BigRat frac_part(const BigRat& a) {
    BigInt fl = floor_div(numerator(a), denominator(a));
    return a - BigRat(fl);
}

BigInt factorial(std::int64_t n) {
    if (n < 0) throw_err(Err::BadParams, "factorial of negative integer");
    BigInt r = 1;
    for (std::int64_t i = 2; i <= n; ++i) r *= i;
    return r;
}

BigInt multinomial(std::int64_t top, std::span<const std::int64_t> parts) {
    std::int64_t sum = 0;
    for (auto p : parts) {
        if (p < 0) throw_err(Err::BadPartition, "negative part");
        sum += p;
    }
    if (sum != top) throw_err(Err::BadPartition, "parts do not sum to top");
    BigInt r = factorial(top);
    for (auto p : parts) r /= factorial(p);
    return r;
}

std::int64_t prime_valuation_factorial(std::int64_t n, std::int64_t p) {
    if (p < 2) throw_err(Err::BadParams, "valuation needs p >= 2");
    std::int64_t v = 0;
    for (std::int64_t q = p; q <= n; q *= p) {
        v += n / q;
        if (q > n / p) break;  // avoid overflow of q *= p
    }
    return v;
}

bool is_prime_i64(std::int64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (std::int64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

std::int64_t gcd_i64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

CharBound CharBound::prime(std::int64_t p) {
    if (!is_prime_i64(p)) throw_err(Err::NotPrime, "characteristic must be prime, got " + std::to_string(p));
    return CharBound(p);
}

std::int64_t CharBound::prime_value() const {
    if (!p_) throw_err(Err::InfiniteField, "characteristic is infinite");
    return *p_;
}

BigInt CharBound::min_with(const BigInt& x) const {
    if (!p_) return x;
    BigInt p = *p_;
    return x < p ? x : p;
}

std::string CharBound::to_string() const { return p_ ? std::to_string(*p_) : "inf"; }

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace nslab
