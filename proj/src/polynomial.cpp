#include "qmrel/polynomial.hpp"

#include <algorithm>

#include "qmrel/errors.hpp"

namespace qmrel {

namespace {

// Storage comparator: descending block order over the owning table.
struct StorageLess {
    const VarTable* vt;
    bool operator()(const Term& a, const Term& b) const {
        return MonomialOrder::block().compare(a.mono, b.mono, *vt) > 0;
    }
};

void require_compatible(const Polynomial& a, const Polynomial& b) {
    if (!tables_compatible(a.table(), b.table()))
        throw usage_error("polynomials belong to different variable tables");
}

}  // namespace

Polynomial Polynomial::constant(const VarTable& vt, const Rational& c) {
    return term(vt, Monomial(vt.size()), c);
}

Polynomial Polynomial::variable(const VarTable& vt, std::size_t var) {
    if (var >= vt.size()) throw usage_error("variable index out of range");
    return term(vt, Monomial::unit(vt.size(), var), 1);
}

Polynomial Polynomial::variable(const VarTable& vt, std::string_view name) {
    return variable(vt, vt.index(name));
}

Polynomial Polynomial::term(const VarTable& vt, Monomial m, const Rational& c) {
    if (m.width() != vt.size()) throw usage_error("monomial width does not match table");
    Polynomial p(vt);
    if (c != 0) p.terms_.push_back(Term{std::move(m), c});
    return p;
}

Polynomial Polynomial::from_terms(const VarTable& vt, std::vector<Term> terms) {
    for (const Term& t : terms)
        if (t.mono.width() != vt.size()) throw usage_error("monomial width does not match table");
    std::sort(terms.begin(), terms.end(), StorageLess{&vt});
    Polynomial p(vt);
    for (Term& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().mono == t.mono)
            p.terms_.back().coeff += t.coeff;
        else
            p.terms_.push_back(std::move(t));
        if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
    }
    return p;
}

std::uint64_t Polynomial::total_degree() const {
    std::uint64_t d = 0;
    for (const Term& t : terms_) d = std::max(d, t.mono.degree());
    return d;
}

std::uint64_t Polynomial::degree_in(const VarScope& scope) const {
    std::uint64_t d = 0;
    for (const Term& t : terms_) d = std::max(d, t.mono.degree_in(scope));
    return d;
}

bool Polynomial::uses_only(const VarScope& scope) const {
    for (const Term& t : terms_)
        if (!t.mono.within(scope)) return false;
    return true;
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

Rational Polynomial::constant_value() const {
    if (!is_constant()) throw usage_error("polynomial is not constant");
    return terms_.empty() ? Rational(0) : terms_[0].coeff;
}

const Rational* Polynomial::coeff_of(const Monomial& m) const {
    // Terms are sorted descending, so binary search with the inverted
    // comparator.
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [this](const Term& t,
                                                                       const Monomial& key) {
        return MonomialOrder::block().compare(t.mono, key, *vt_) > 0;
    });
    if (it != terms_.end() && it->mono == m) return &it->coeff;
    return nullptr;
}

bool Polynomial::operator==(const Polynomial& o) const {
    if (!tables_compatible(*vt_, *o.vt_)) return false;
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].mono != o.terms_[i].mono || terms_[i].coeff != o.terms_[i].coeff)
            return false;
    return true;
}

Polynomial poly_add(const Polynomial& a, const Polynomial& b) {
    require_compatible(a, b);
    const VarTable& vt = a.table();
    MonomialOrder ord = MonomialOrder::block();
    std::vector<Term> out;
    out.reserve(a.terms().size() + b.terms().size());
    std::size_t i = 0, j = 0;
    while (i < a.terms().size() && j < b.terms().size()) {
        int c = ord.compare(a.terms()[i].mono, b.terms()[j].mono, vt);
        if (c > 0) {
            out.push_back(a.terms()[i++]);
        } else if (c < 0) {
            out.push_back(b.terms()[j++]);
        } else {
            Rational s = a.terms()[i].coeff + b.terms()[j].coeff;
            if (s != 0) out.push_back(Term{a.terms()[i].mono, std::move(s)});
            ++i;
            ++j;
        }
    }
    for (; i < a.terms().size(); ++i) out.push_back(a.terms()[i]);
    for (; j < b.terms().size(); ++j) out.push_back(b.terms()[j]);
    return Polynomial(vt, std::move(out));
}

Polynomial poly_neg(const Polynomial& a) { return poly_scale(a, Rational(-1)); }

Polynomial poly_sub(const Polynomial& a, const Polynomial& b) {
    return poly_add(a, poly_neg(b));
}

Polynomial poly_scale(const Polynomial& a, const Rational& c) {
    if (c == 0) return Polynomial(a.table());
    std::vector<Term> terms;
    terms.reserve(a.terms().size());
    for (const Term& t : a.terms()) terms.push_back(Term{t.mono, t.coeff * c});
    return Polynomial(a.table(), std::move(terms));
}

Polynomial poly_mul_term(const Polynomial& a, const Monomial& m, const Rational& c) {
    if (c == 0) return Polynomial(a.table());
    // Multiplying every monomial by a fixed monomial preserves the block
    // order, so the sorted term vector stays sorted.
    std::vector<Term> terms;
    terms.reserve(a.terms().size());
    for (const Term& t : a.terms()) terms.push_back(Term{Monomial::mul(t.mono, m), t.coeff * c});
    return Polynomial(a.table(), std::move(terms));
}

Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
    require_compatible(a, b);
    if (a.is_zero() || b.is_zero()) return Polynomial(a.table());
    PolyBuilder acc(a.table());
    acc.add_product(a, b);
    return acc.take();
}

Polynomial poly_pow(const Polynomial& a, std::uint32_t e) {
    Polynomial result = Polynomial::constant(a.table(), 1);
    for (std::uint32_t k = 0; k < e; ++k) result = poly_mul(result, a);
    return result;
}

void PolyBuilder::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = acc_.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) acc_.erase(it);
    }
}

void PolyBuilder::add(const Polynomial& p) {
    for (const Term& t : p.terms()) add_term(t.mono, t.coeff);
}

void PolyBuilder::add_scaled(const Polynomial& p, const Rational& c) {
    if (c == 0) return;
    for (const Term& t : p.terms()) add_term(t.mono, t.coeff * c);
}

void PolyBuilder::add_product(const Polynomial& a, const Polynomial& b) {
    for (const Term& ta : a.terms())
        for (const Term& tb : b.terms())
            add_term(Monomial::mul(ta.mono, tb.mono), ta.coeff * tb.coeff);
}

Polynomial PolyBuilder::take() {
    std::vector<Term> terms;
    terms.reserve(acc_.size());
    for (auto& [m, c] : acc_) {
        if (c != 0) terms.push_back(Term{m, c});
    }
    acc_.clear();
    std::sort(terms.begin(), terms.end(), StorageLess{vt_});
    return Polynomial(*vt_, std::move(terms));
}

Polynomial substitute(const Polynomial& f, const std::map<std::size_t, Polynomial>& subs) {
    const VarTable& vt = f.table();
    for (const auto& [var, val] : subs) {
        if (var >= vt.size()) throw usage_error("substitution variable index out of range");
        if (!tables_compatible(vt, val.table()))
            throw usage_error("substitution value belongs to a different table");
    }
    // Memoized powers of the substituted values.
    std::map<std::pair<std::size_t, std::uint32_t>, Polynomial> powers;
    auto power = [&](std::size_t var, std::uint32_t e) -> const Polynomial& {
        auto key = std::make_pair(var, e);
        auto it = powers.find(key);
        if (it == powers.end()) it = powers.emplace(key, poly_pow(subs.at(var), e)).first;
        return it->second;
    };

    PolyBuilder acc(vt);
    for (const Term& t : f.terms()) {
        Monomial kept(vt.size());
        Polynomial factor = Polynomial::constant(vt, t.coeff);
        for (std::size_t i = 0; i < vt.size(); ++i) {
            std::uint32_t e = t.mono.exp(i);
            if (e == 0) continue;
            if (subs.count(i))
                factor = poly_mul(factor, power(i, e));
            else
                kept.set_exp(i, e);
        }
        if (!kept.is_one()) factor = poly_mul_term(factor, kept, 1);
        acc.add(factor);
    }
    return acc.take();
}

Polynomial substitute(const Polynomial& f,
                      const std::vector<std::pair<std::string, Polynomial>>& subs) {
    std::map<std::size_t, Polynomial> bysize;
    for (const auto& [name, val] : subs) {
        auto [it, fresh] = bysize.emplace(f.table().index(name), val);
        (void)it;
        if (!fresh) throw usage_error("duplicate substitution for variable " + name);
    }
    return substitute(f, bysize);
}

Rational eval_at(const Polynomial& f, const std::vector<Rational>& point) {
    const VarTable& vt = f.table();
    if (point.size() != vt.size())
        throw usage_error("evaluation point has wrong dimension");
    // Memoized powers per variable, grown on demand.
    std::vector<std::vector<Rational>> pows(vt.size());
    auto power = [&](std::size_t var, std::uint32_t e) -> const Rational& {
        auto& tab = pows[var];
        if (tab.empty()) tab.push_back(Rational(1));
        while (tab.size() <= e) tab.push_back(tab.back() * point[var]);
        return tab[e];
    };
    Rational sum(0);
    for (const Term& t : f.terms()) {
        Rational v = t.coeff;
        for (std::size_t i = 0; i < vt.size(); ++i) {
            std::uint32_t e = t.mono.exp(i);
            if (e != 0) v *= power(i, e);
        }
        sum += v;
    }
    return sum;
}

std::vector<std::pair<Monomial, Polynomial>> coefficient_rules(const Polynomial& f,
                                                               const VarScope& scope,
                                                               const MonomialOrder& ord) {
    const VarTable& vt = f.table();
    if (scope.size() != vt.size()) throw usage_error("scope does not match table");
    VarScope rest = scope_complement(scope);
    std::unordered_map<Monomial, std::vector<Term>, MonomialHash> groups;
    for (const Term& t : f.terms())
        groups[t.mono.restricted(scope)].push_back(Term{t.mono.restricted(rest), t.coeff});

    std::vector<std::pair<Monomial, Polynomial>> out;
    out.reserve(groups.size());
    for (auto& [key, terms] : groups)
        out.emplace_back(key, Polynomial::from_terms(vt, std::move(terms)));
    std::sort(out.begin(), out.end(),
              [&](const auto& a, const auto& b) { return ord.compare(a.first, b.first, vt) > 0; });
    return out;
}

}  // namespace qmrel
