// Sparse exact multivariate polynomials over the rationals. A polynomial
// owns a reference to its variable table and stores its terms sorted in
// strictly descending block order, so equality is plain term-vector
// equality and the canonical form is unique.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qmrel/monomial.hpp"
#include "qmrel/order.hpp"
#include "qmrel/rational.hpp"
#include "qmrel/vartable.hpp"

namespace qmrel {

struct Term {
    Monomial mono;
    Rational coeff;
};

class Polynomial {
public:
    explicit Polynomial(const VarTable& vt) : vt_(&vt) {}

    static Polynomial constant(const VarTable& vt, const Rational& c);
    static Polynomial variable(const VarTable& vt, std::size_t var);
    static Polynomial variable(const VarTable& vt, std::string_view name);
    static Polynomial term(const VarTable& vt, Monomial m, const Rational& c);
    // Accepts terms in any order, merges duplicates, drops zeros.
    static Polynomial from_terms(const VarTable& vt, std::vector<Term> terms);

    const VarTable& table() const { return *vt_; }
    const std::vector<Term>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    std::uint64_t total_degree() const;
    std::uint64_t degree_in(const VarScope& scope) const;
    bool uses_only(const VarScope& scope) const;
    bool is_constant() const;
    // The coefficient of the unit monomial viewpoint: requires is_constant().
    Rational constant_value() const;

    // Coefficient of an exact monomial, or nullptr when absent.
    const Rational* coeff_of(const Monomial& m) const;

    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

private:
    // Trusted constructor: terms must already be sorted descending in
    // block order with no zeros and no duplicates.
    Polynomial(const VarTable& vt, std::vector<Term> sorted)
        : vt_(&vt), terms_(std::move(sorted)) {}

    friend class PolyBuilder;
    friend Polynomial poly_add(const Polynomial&, const Polynomial&);
    friend Polynomial poly_scale(const Polynomial&, const Rational&);
    friend Polynomial poly_mul_term(const Polynomial&, const Monomial&, const Rational&);

    const VarTable* vt_;
    std::vector<Term> terms_;
};

Polynomial poly_add(const Polynomial& a, const Polynomial& b);
Polynomial poly_sub(const Polynomial& a, const Polynomial& b);
Polynomial poly_neg(const Polynomial& a);
Polynomial poly_mul(const Polynomial& a, const Polynomial& b);
Polynomial poly_scale(const Polynomial& a, const Rational& c);
// a * (c * m), a single-term multiplication.
Polynomial poly_mul_term(const Polynomial& a, const Monomial& m, const Rational& c);
Polynomial poly_pow(const Polynomial& a, std::uint32_t e);

// Incremental sum accumulator; cheaper than repeated poly_add when many
// contributions are combined.
class PolyBuilder {
public:
    explicit PolyBuilder(const VarTable& vt) : vt_(&vt) {}
    void add_term(const Monomial& m, const Rational& c);
    void add(const Polynomial& p);
    void add_scaled(const Polynomial& p, const Rational& c);
    void add_product(const Polynomial& a, const Polynomial& b);
    Polynomial take();

private:
    const VarTable* vt_;
    std::unordered_map<Monomial, Rational, MonomialHash> acc_;
};

// Simultaneous substitution of polynomials for variables. Variables not in
// the map are kept. All polynomials must share the table.
Polynomial substitute(const Polynomial& f, const std::map<std::size_t, Polynomial>& subs);
// Convenience: substitute by variable name.
Polynomial substitute(const Polynomial& f,
                      const std::vector<std::pair<std::string, Polynomial>>& subs);

// Full evaluation at a rational point (one value per table variable).
Rational eval_at(const Polynomial& f, const std::vector<Rational>& point);

// View f as a polynomial in the scope variables: the list of
// (scope monomial, coefficient polynomial in the remaining variables),
// sorted descending by the given order on the scope monomials.
std::vector<std::pair<Monomial, Polynomial>> coefficient_rules(
    const Polynomial& f, const VarScope& scope,
    const MonomialOrder& ord = MonomialOrder::block());

// Text form: signed sum of terms, each "rational", "power-product" or
// "rational*power-product"; exponents ">= 2" rendered with "^". Terms are
// emitted in descending order. parse_poly accepts the same grammar with
// insignificant whitespace.
std::string canonical_text(const Polynomial& f,
                           const MonomialOrder& ord = MonomialOrder::block());
Polynomial parse_poly(std::string_view text, const VarTable& vt);

}  // namespace qmrel
