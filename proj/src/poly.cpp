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

#include "nslab/poly.hpp"

#include <algorithm>
#include <numeric>

namespace nslab {

void SparsePoly::check_arity(const Exps& e) const {
    if (static_cast<int>(e.size()) != arity_)
        throw_err(Err::ArityMismatch, "exponent vector of length " + std::to_string(e.size()) +
                                          " in polynomial of arity " + std::to_string(arity_));
    for (auto x : e)
        if (x < 0) throw_err(Err::BadParams, "negative exponent");
}

SparsePoly SparsePoly::constant(const Field& f, int arity, const Elem& c) {
    SparsePoly p(arity);
    p.add_term(f, Exps(arity, 0), c);
    return p;
}

SparsePoly SparsePoly::monomial(const Field& f, Exps e, const Elem& c) {
    SparsePoly p(static_cast<int>(e.size()));
    p.add_term(f, e, c);
    return p;
}

SparsePoly SparsePoly::variable(const Field& f, int arity, int i) {
    if (i < 0 || i >= arity) throw_err(Err::BadParams, "variable index out of range");
    Exps e(arity, 0);
    e[i] = 1;
    return monomial(f, std::move(e), f.one());
}

std::int64_t SparsePoly::total_degree() const {
    std::int64_t deg = -1;
    for (const auto& [e, c] : terms_)
        deg = std::max<std::int64_t>(deg, std::accumulate(e.begin(), e.end(), std::int64_t{0}));
    return deg;
}

Elem SparsePoly::coefficient_of(const Field& f, const Exps& d) const {
    check_arity(d);
    auto it = terms_.find(d);
    return it == terms_.end() ? f.zero() : it->second;
}

void SparsePoly::add_term(const Field& f, const Exps& e, const Elem& c) {
    check_arity(e);
    if (f.is_zero(c)) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second = f.add(it->second, c);
        if (f.is_zero(it->second)) terms_.erase(it);
    }
}

Elem SparsePoly::eval(const Field& f, std::span<const Elem> x) const {
    if (static_cast<int>(x.size()) != arity_)
        throw_err(Err::ArityMismatch, "point arity " + std::to_string(x.size()) + " vs " + std::to_string(arity_));
    Elem acc = f.zero();
    for (const auto& [e, c] : terms_) {
        Elem t = c;
        for (int i = 0; i < arity_; ++i)
            if (e[i] != 0) t = f.mul(t, f.pow(x[i], e[i]));
        acc = f.add(acc, t);
    }
    return acc;
}

SparsePoly SparsePoly::plus(const Field& f, const SparsePoly& o) const {
    if (arity_ != o.arity_) throw_err(Err::ArityMismatch, "adding polynomials of different arity");
    SparsePoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(f, e, c);
    return r;
}

SparsePoly SparsePoly::plus_const(const Field& f, const Elem& c) const {
    SparsePoly r = *this;
    r.add_term(f, Exps(arity_, 0), c);
    return r;
}

SparsePoly SparsePoly::scaled(const Field& f, const Elem& c) const {
    SparsePoly r(arity_);
    if (f.is_zero(c)) return r;
    for (const auto& [e, v] : terms_) r.add_term(f, e, f.mul(v, c));
    return r;
}

SparsePoly SparsePoly::mul(const Field& f, const SparsePoly& o) const {
    if (arity_ != o.arity_) throw_err(Err::ArityMismatch, "multiplying polynomials of different arity");
    SparsePoly r(arity_);
    Exps e(arity_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            for (int i = 0; i < arity_; ++i) e[i] = ea[i] + eb[i];
            r.add_term(f, e, f.mul(ca, cb));
        }
    }
    return r;
}

SparsePoly SparsePoly::mul_truncated(const Field& f, const SparsePoly& o, const Exps& cap) const {
    if (arity_ != o.arity_) throw_err(Err::ArityMismatch, "multiplying polynomials of different arity");
    if (static_cast<int>(cap.size()) != arity_) throw_err(Err::ArityMismatch, "cap arity mismatch");
    SparsePoly r(arity_);
    Exps e(arity_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            bool keep = true;
            for (int i = 0; i < arity_; ++i) {
                e[i] = ea[i] + eb[i];
                if (e[i] > cap[i]) {
                    keep = false;
                    break;
                }
            }
            if (keep) r.add_term(f, e, f.mul(ca, cb));
        }
    }
    return r;
}

std::string SparsePoly::to_text(const Field& f) const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [e, c] : terms_) {
        if (!s.empty()) s += "+";
        s += f.elem_to_string(c);
        s += ":";
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(e[i]);
        }
    }
    return s;
}

SparsePoly SparsePoly::from_text(const Field& f, int arity, const std::string& text) {
    SparsePoly p(arity);
    auto trim = [](std::string s) {
        std::size_t b = s.find_first_not_of(" \t");
        std::size_t e = s.find_last_not_of(" \t");
        return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    std::string body = trim(text);
    if (body.empty() || body == "0") return p;
    std::size_t pos = 0;
    while (pos != std::string::npos) {
        std::size_t next = body.find('+', pos);
        std::string term = trim(body.substr(pos, next == std::string::npos ? next : next - pos));
        pos = next == std::string::npos ? next : next + 1;
        if (term.empty()) continue;
        std::size_t colon = term.rfind(':');
        if (colon == std::string::npos) throw_err(Err::ParseError, "bad term (missing ':'): " + term);
        Elem c = f.elem_parse(trim(term.substr(0, colon)));
        Exps e;
        std::string rest = term.substr(colon + 1);
        std::string cur;
        for (char ch : rest + ",") {
            if (ch == ',') {
                cur = trim(cur);
                if (cur.empty()) throw_err(Err::ParseError, "bad exponent list: " + term);
                e.push_back(static_cast<std::int32_t>(std::stol(cur)));
                cur.clear();
            } else {
                cur.push_back(ch);
            }
        }
        p.add_term(f, e, c);
    }
    return p;
}

DiagonalForm DiagonalForm::pure(const Field&, std::int64_t k, std::vector<Elem> a) {
    int n = static_cast<int>(a.size());
    return DiagonalForm(k, std::move(a), SparsePoly(n));
}

Elem DiagonalForm::eval(const Field& f, std::span<const Elem> x) const {
    if (static_cast<int>(x.size()) != n())
        throw_err(Err::ArityMismatch, "point arity " + std::to_string(x.size()) + " vs " + std::to_string(n()));
    Elem acc = f.zero();
    for (int i = 0; i < n(); ++i) acc = f.add(acc, f.mul(a[i], f.pow(x[i], k)));
    if (!g.is_zero()) acc = f.add(acc, g.eval(f, x));
    return acc;
}

SparsePoly DiagonalForm::expand(const Field& f) const {
    SparsePoly r = g;
    for (int i = 0; i < n(); ++i) {
        SparsePoly::Exps e(n(), 0);
        e[i] = static_cast<std::int32_t>(k);
        r.add_term(f, e, a[i]);
    }
    return r;
}

const char* form_violation_name(FormViolation v) {
    switch (v) {
        case FormViolation::None: return "ok";
        case FormViolation::ZeroCoefficient: return "zero coefficient";
        case FormViolation::TailDegree: return "tail degree not below k";
        case FormViolation::ArityMismatch: return "tail arity mismatch";
        case FormViolation::BadExponent: return "exponent k not positive";
    }
    return "?";
}

FormViolation validate(const Field& f, const DiagonalForm& d) {
    if (d.k < 1) return FormViolation::BadExponent;
    if (d.g.arity() != d.n()) return FormViolation::ArityMismatch;
    for (const auto& c : d.a)
        if (f.is_zero(c)) return FormViolation::ZeroCoefficient;
    if (d.g.total_degree() >= d.k) return FormViolation::TailDegree;
    return FormViolation::None;
}

}  // namespace nslab
