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

#include "nslab/field.hpp"

#include <algorithm>
#include <sstream>

namespace nslab {

namespace {

// Univariate polynomials over F_p as coefficient vectors, low degree
// first, no trailing zeros. Used for extension-field arithmetic and the
// irreducibility check.
using PV = std::vector<std::int64_t>;

std::int64_t mod_p(std::int64_t a, std::int64_t p) {
    std::int64_t r = a % p;
    return r < 0 ? r + p : r;
}

std::int64_t inv_mod_p(std::int64_t a, std::int64_t p) {
    // extended Euclid
    std::int64_t t = 0, new_t = 1, r = p, new_r = mod_p(a, p);
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::swap(t -= q * new_t, new_t);
        std::swap(r -= q * new_r, new_r);
    }
    if (r != 1) throw_err(Err::DivByZero, "no inverse of " + std::to_string(a) + " mod " + std::to_string(p));
    return mod_p(t, p);
}

PV pv_trim(PV a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

std::int64_t pv_deg(const PV& a) { return static_cast<std::int64_t>(a.size()) - 1; }

PV pv_sub(const PV& a, const PV& b, std::int64_t p) {
    PV r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::int64_t x = (i < a.size() ? a[i] : 0) - (i < b.size() ? b[i] : 0);
        r[i] = mod_p(x, p);
    }
    return pv_trim(std::move(r));
}

PV pv_mul(const PV& a, const PV& b, std::int64_t p) {
    if (a.empty() || b.empty()) return {};
    PV r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = mod_p(r[i + j] + a[i] * b[j], p);
    }
    return pv_trim(std::move(r));
}

PV pv_mod(PV a, const PV& d, std::int64_t p) {
    a = pv_trim(std::move(a));
    std::int64_t lead_inv = inv_mod_p(d.back(), p);
    while (pv_deg(a) >= pv_deg(d)) {
        std::int64_t shift = pv_deg(a) - pv_deg(d);
        std::int64_t c = mod_p(a.back() * lead_inv, p);
        for (std::size_t i = 0; i < d.size(); ++i)
            a[i + shift] = mod_p(a[i + shift] - c * d[i], p);
        a = pv_trim(std::move(a));
    }
    return a;
}

PV pv_gcd(PV a, PV b, std::int64_t p) {
    a = pv_trim(std::move(a));
    b = pv_trim(std::move(b));
    while (!b.empty()) {
        PV r = pv_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// x^(p^d) mod f, by square-and-multiply over the exponent p^d.
PV pv_frobenius_power(const PV& f, std::int64_t p, std::int64_t d) {
    BigInt e = 1;
    for (std::int64_t i = 0; i < d; ++i) e *= p;
    PV base = pv_mod(PV{0, 1}, f, p);
    PV acc{1};
    while (e > 0) {
        if ((e & 1) != 0) acc = pv_mod(pv_mul(acc, base, p), f, p);
        base = pv_mod(pv_mul(base, base, p), f, p);
        e >>= 1;
    }
    return acc;
}

std::int64_t pv_eval(const PV& a, std::int64_t x, std::int64_t p) {
    std::int64_t v = 0;
    for (auto it = a.rbegin(); it != a.rend(); ++it) v = mod_p(v * x + *it, p);
    return v;
}

// Degree 2 or 3: irreducible iff no root. Higher degrees: distinct-degree
// style check, gcd(x^(p^d) - x, f) must be constant for d <= deg(f)/2.
bool pv_irreducible(const PV& f, std::int64_t p) {
    std::int64_t m = pv_deg(f);
    if (m == 1) return true;
    if (m <= 3) {
        for (std::int64_t x = 0; x < p; ++x)
            if (pv_eval(f, x, p) == 0) return false;
        return true;
    }
    for (std::int64_t d = 1; d <= m / 2; ++d) {
        PV xq = pv_frobenius_power(f, p, d);
        PV g = pv_gcd(pv_sub(xq, PV{0, 1}, p), f, p);
        if (pv_deg(g) > 0) return false;
    }
    return true;
}

// Extended Euclid in F_p[x]: returns u with u*a = gcd (mod modu); the gcd
// must be a nonzero constant for invertibility.
PV pv_inverse_mod(const PV& a, const PV& modu, std::int64_t p) {
    PV r0 = modu, r1 = pv_trim(a);
    if (r1.empty()) throw_err(Err::DivByZero, "inverse of zero");
    PV s0{}, s1{1};
    while (!r1.empty()) {
        // divide r0 by r1
        PV q(std::max<std::int64_t>(pv_deg(r0) - pv_deg(r1) + 1, 0), 0);
        PV rem = r0;
        std::int64_t lead_inv = inv_mod_p(r1.back(), p);
        while (pv_deg(rem) >= pv_deg(r1)) {
            std::int64_t shift = pv_deg(rem) - pv_deg(r1);
            std::int64_t c = mod_p(rem.back() * lead_inv, p);
            q[shift] = c;
            for (std::size_t i = 0; i < r1.size(); ++i)
                rem[i + shift] = mod_p(rem[i + shift] - c * r1[i], p);
            rem = pv_trim(std::move(rem));
        }
        PV s2 = pv_sub(s0, pv_mul(q, s1, p), p);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (pv_deg(r0) != 0) throw_err(Err::DivByZero, "element not invertible (gcd with modulus nonconstant)");
    std::int64_t c = inv_mod_p(r0[0], p);
    PV u = s0;
    for (auto& x : u) x = mod_p(x * c, p);
    return pv_mod(std::move(u), modu, p);
}

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

bool Elem::operator<(const Elem& o) const {
    if (rep_.index() != o.rep_.index()) return rep_.index() < o.rep_.index();
    if (is_residue()) return residue() < o.residue();
    if (is_fraction()) return fraction() < o.fraction();
    // Extension elements compare as their canonical index: highest
    // coefficient is most significant.
    const auto& a = coeffs();
    const auto& b = o.coeffs();
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

Field::Field(FieldKind kind, std::int64_t p, std::vector<std::int64_t> modulus)
    : kind_(kind), p_(p), modulus_(std::move(modulus)) {
    if (kind_ == FieldKind::Rational) {
        m_ = 1;
        q_ = 0;
        return;
    }
    m_ = kind_ == FieldKind::Extension ? static_cast<std::int64_t>(modulus_.size()) - 1 : 1;
    q_ = 1;
    for (std::int64_t i = 0; i < m_; ++i) q_ *= p_;
}

Field Field::prime(std::int64_t p) {
    if (!is_prime_i64(p)) throw_err(Err::NotPrime, std::to_string(p) + " is not prime");
    return Field(FieldKind::Prime, p, {});
}

Field Field::extension(std::int64_t p, std::vector<std::int64_t> modulus) {
    if (!is_prime_i64(p)) throw_err(Err::NotPrime, std::to_string(p) + " is not prime");
    modulus = pv_trim(std::move(modulus));
    if (pv_deg(modulus) < 1) throw_err(Err::BadParams, "modulus must have degree >= 1");
    if (modulus.back() != 1) throw_err(Err::BadParams, "modulus must be monic");
    for (auto& c : modulus) c = mod_p(c, p);
    if (!pv_irreducible(modulus, p)) throw_err(Err::Reducible, "modulus is reducible over F_" + std::to_string(p));
    return Field(FieldKind::Extension, p, std::move(modulus));
}

Field Field::rationals() { return Field(FieldKind::Rational, 0, {}); }

Field Field::parse(const std::string& descriptor) {
    if (descriptor == "Q") return rationals();
    auto parts = split_on(descriptor, ':');
    try {
        if (parts.size() == 2 && parts[0] == "Fp") return prime(std::stoll(parts[1]));
        if (parts.size() == 3 && parts[0] == "Fq") {
            std::int64_t p = std::stoll(parts[1]);
            std::vector<std::int64_t> mod;
            for (const auto& c : split_on(parts[2], ',')) mod.push_back(std::stoll(c));
            return extension(p, std::move(mod));
        }
    } catch (const std::invalid_argument&) {
        throw_err(Err::ParseError, "bad field descriptor: " + descriptor);
    } catch (const std::out_of_range&) {
        throw_err(Err::ParseError, "bad field descriptor: " + descriptor);
    }
    throw_err(Err::ParseError, "bad field descriptor: " + descriptor);
}

std::string Field::descriptor() const {
    switch (kind_) {
        case FieldKind::Prime: return "Fp:" + std::to_string(p_);
        case FieldKind::Extension: {
            std::string s = "Fq:" + std::to_string(p_) + ":";
            for (std::size_t i = 0; i < modulus_.size(); ++i) {
                if (i) s += ",";
                s += std::to_string(modulus_[i]);
            }
            return s;
        }
        case FieldKind::Rational: return "Q";
    }
    return "?";
}

CharBound Field::characteristic() const {
    return kind_ == FieldKind::Rational ? CharBound::infinite() : CharBound::prime(p_);
}

std::int64_t Field::size() const {
    if (!finite()) throw_err(Err::InfiniteField, "rational model has no finite size");
    return q_;
}

void Field::check_elem(const Elem& a) const {
    bool ok = false;
    switch (kind_) {
        case FieldKind::Prime: ok = a.is_residue(); break;
        case FieldKind::Extension: ok = a.is_vector() && static_cast<std::int64_t>(a.coeffs().size()) == m_; break;
        case FieldKind::Rational: ok = a.is_fraction(); break;
    }
    if (!ok) throw_err(Err::BadParams, "element does not belong to field " + descriptor());
}

Elem Field::zero() const { return from_int(0); }
Elem Field::one() const { return from_int(1); }

Elem Field::from_int(std::int64_t v) const {
    switch (kind_) {
        case FieldKind::Prime: return Elem(mod_p(v, p_));
        case FieldKind::Extension: {
            std::vector<std::int64_t> c(m_, 0);
            c[0] = mod_p(v, p_);
            return Elem(std::move(c));
        }
        case FieldKind::Rational: return Elem(BigRat(v));
    }
    throw_err(Err::BadParams, "bad field kind");
}

Elem Field::from_bigint(const BigInt& v) const {
    if (kind_ == FieldKind::Rational) return Elem(BigRat(v));
    BigInt r = floor_mod(v, BigInt(p_));
    return from_int(static_cast<std::int64_t>(r));
}

Elem Field::from_fraction(const BigRat& q) const {
    if (kind_ != FieldKind::Rational) throw_err(Err::BadParams, "fractions only live in the rational model");
    return Elem(q);
}

Elem Field::add(const Elem& a, const Elem& b) const {
    check_elem(a);
    check_elem(b);
    switch (kind_) {
        case FieldKind::Prime: return Elem(mod_p(a.residue() + b.residue(), p_));
        case FieldKind::Extension: {
            std::vector<std::int64_t> c(m_);
            for (std::int64_t i = 0; i < m_; ++i) c[i] = mod_p(a.coeffs()[i] + b.coeffs()[i], p_);
            return Elem(std::move(c));
        }
        case FieldKind::Rational: return Elem(a.fraction() + b.fraction());
    }
    throw_err(Err::BadParams, "bad field kind");
}

Elem Field::sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }

Elem Field::neg(const Elem& a) const {
    check_elem(a);
    switch (kind_) {
        case FieldKind::Prime: return Elem(mod_p(-a.residue(), p_));
        case FieldKind::Extension: {
            std::vector<std::int64_t> c(m_);
            for (std::int64_t i = 0; i < m_; ++i) c[i] = mod_p(-a.coeffs()[i], p_);
            return Elem(std::move(c));
        }
        case FieldKind::Rational: return Elem(-a.fraction());
    }
    throw_err(Err::BadParams, "bad field kind");
}

Elem Field::mul(const Elem& a, const Elem& b) const {
    check_elem(a);
    check_elem(b);
    switch (kind_) {
        case FieldKind::Prime: return Elem(mod_p(a.residue() * b.residue(), p_));
        case FieldKind::Extension: {
            PV prod = pv_mod(pv_mul(a.coeffs(), b.coeffs(), p_), modulus_, p_);
            prod.resize(m_, 0);
            return Elem(std::move(prod));
        }
        case FieldKind::Rational: return Elem(a.fraction() * b.fraction());
    }
    throw_err(Err::BadParams, "bad field kind");
}

Elem Field::inv(const Elem& a) const {
    check_elem(a);
    if (is_zero(a)) throw_err(Err::DivByZero, "inverse of zero");
    switch (kind_) {
        case FieldKind::Prime: return Elem(inv_mod_p(a.residue(), p_));
        case FieldKind::Extension: {
            PV u = pv_inverse_mod(a.coeffs(), modulus_, p_);
            u.resize(m_, 0);
            return Elem(std::move(u));
        }
        case FieldKind::Rational: return Elem(BigRat(1) / a.fraction());
    }
    throw_err(Err::BadParams, "bad field kind");
}

Elem Field::pow(const Elem& a, std::int64_t e) const {
    if (e < 0) throw_err(Err::BadParams, "pow needs nonnegative exponent");
    Elem acc = one();
    Elem base = a;
    check_elem(base);
    while (e > 0) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

std::int64_t Field::index_of(const Elem& a) const {
    if (!finite()) throw_err(Err::InfiniteField, "no canonical index in the rational model");
    check_elem(a);
    if (kind_ == FieldKind::Prime) return a.residue();
    std::int64_t idx = 0;
    for (std::size_t i = a.coeffs().size(); i-- > 0;) idx = idx * p_ + a.coeffs()[i];
    return idx;
}

Elem Field::element(std::int64_t index) const {
    if (!finite()) throw_err(Err::InfiniteField, "no canonical index in the rational model");
    if (index < 0 || index >= q_) throw_err(Err::BadParams, "element index out of range");
    if (kind_ == FieldKind::Prime) return Elem(index);
    std::vector<std::int64_t> c(m_);
    for (std::int64_t i = 0; i < m_; ++i) {
        c[i] = index % p_;
        index /= p_;
    }
    return Elem(std::move(c));
}

std::vector<Elem> Field::all_elements() const {
    std::vector<Elem> out;
    out.reserve(size());
    for (std::int64_t i = 0; i < size(); ++i) out.push_back(element(i));
    return out;
}

std::string Field::elem_to_string(const Elem& a) const {
    check_elem(a);
    switch (kind_) {
        case FieldKind::Prime: return std::to_string(a.residue());
        case FieldKind::Extension: {
            std::string s = "[";
            for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
                if (i) s += ",";
                s += std::to_string(a.coeffs()[i]);
            }
            return s + "]";
        }
        case FieldKind::Rational: {
            std::ostringstream os;
            os << a.fraction();
            return os.str();
        }
    }
    return "?";
}

Elem Field::elem_parse(const std::string& text) const {
    try {
        switch (kind_) {
            case FieldKind::Prime: return from_int(std::stoll(text));
            case FieldKind::Extension: {
                if (text.size() >= 2 && text.front() == '[' && text.back() == ']') {
                    std::vector<std::int64_t> c;
                    for (const auto& part : split_on(text.substr(1, text.size() - 2), ','))
                        c.push_back(mod_p(std::stoll(part), p_));
                    if (static_cast<std::int64_t>(c.size()) != m_)
                        throw_err(Err::ParseError, "expected " + std::to_string(m_) + " coefficients: " + text);
                    return Elem(std::move(c));
                }
                return from_int(std::stoll(text));
            }
            case FieldKind::Rational: {
                auto parts = split_on(text, '/');
                if (parts.size() == 1) return Elem(BigRat(BigInt(parts[0])));
                if (parts.size() == 2) return Elem(BigRat(BigInt(parts[0]), BigInt(parts[1])));
                throw_err(Err::ParseError, "bad rational: " + text);
            }
        }
    } catch (const std::invalid_argument&) {
        throw_err(Err::ParseError, "bad element literal: " + text);
    } catch (const std::out_of_range&) {
        throw_err(Err::ParseError, "bad element literal: " + text);
    }
    throw_err(Err::ParseError, "bad element literal: " + text);
}

std::vector<Elem> Field::roots_of(const Elem& c, std::int64_t k, RootsVariant variant) const {
    if (!finite()) throw_err(Err::InfiniteField, "roots_of enumerates a finite field");
    if (k < 1) throw_err(Err::BadParams, "exponent k must be positive");
    check_elem(c);
    std::vector<Elem> out;
    for (std::int64_t i = 0; i < size(); ++i) {
        Elem x = element(i);
        Elem v = pow(x, k);
        if (variant == RootsVariant::PowKMinusX) v = sub(v, x);
        if (v == c) out.push_back(x);
    }
    return out;
}

}  // namespace nslab
