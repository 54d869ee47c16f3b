// Polynomial text form.
//
//   poly          := [sign] term { sign term }
//   term          := rational "*" power-product | rational | power-product
//   power-product := factor { "*" factor }
//   factor        := variable [ "^" positive-int ]
//   rational      := integer [ "/" positive-int ]
//
// Whitespace between tokens is insignificant. The printer emits terms in
// descending order, writes no "*1" coefficients and no "^1" exponents.
#include <algorithm>
#include <cctype>
#include <string>

#include "qmrel/errors.hpp"
#include "qmrel/polynomial.hpp"

namespace qmrel {

namespace {

void append_term_body(std::string& out, const VarTable& vt, const Term& t) {
    Rational mag = abs(t.coeff);
    if (t.mono.is_one()) {
        out += rational_text(mag);
        return;
    }
    bool need_star = false;
    if (mag != 1) {
        out += rational_text(mag);
        need_star = true;
    }
    for (std::size_t i = 0; i < vt.size(); ++i) {
        std::uint32_t e = t.mono.exp(i);
        if (e == 0) continue;
        if (need_star) out += '*';
        out += vt.name(i);
        if (e > 1) {
            out += '^';
            out += std::to_string(e);
        }
        need_star = true;
    }
}

}  // namespace

std::string canonical_text(const Polynomial& f, const MonomialOrder& ord) {
    if (f.is_zero()) return "0";
    const VarTable& vt = f.table();
    std::vector<Term> terms = f.terms();
    if (ord != MonomialOrder::block())
        std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) {
            return ord.compare(a.mono, b.mono, vt) > 0;
        });
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        bool neg = terms[i].coeff < 0;
        if (i == 0) {
            if (neg) out += '-';
        } else {
            out += neg ? " - " : " + ";
        }
        append_term_body(out, vt, terms[i]);
    }
    return out;
}

namespace {

class Parser {
public:
    Parser(std::string_view text, const VarTable& vt) : text_(text), vt_(vt) {}

    Polynomial run() {
        std::vector<Term> terms;
        skip_ws();
        if (at_end()) fail("a term");
        bool neg = eat_sign(false);
        terms.push_back(parse_term(neg));
        skip_ws();
        while (!at_end()) {
            bool n = eat_sign(true);
            terms.push_back(parse_term(n));
            skip_ws();
        }
        return Polynomial::from_terms(vt_, std::move(terms));
    }

private:
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& expected) const {
        std::string found = at_end() ? "end of input" : "'" + std::string(1, peek()) + "'";
        throw parse_error(pos_, expected, found);
    }

    // Leading sign of a term. When required, a sign must be present.
    bool eat_sign(bool required) {
        skip_ws();
        if (!at_end() && (peek() == '+' || peek() == '-')) {
            bool neg = peek() == '-';
            ++pos_;
            return neg;
        }
        if (required) fail("'+' or '-'");
        return false;
    }

    Integer parse_uint() {
        skip_ws();
        if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("a digit");
        std::string digits;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) digits += text_[pos_++];
        return Integer(digits);
    }

    std::uint32_t parse_exponent() {
        std::size_t at = pos_;
        Integer e = parse_uint();
        if (e <= 0 || e > kDefaultExponentCap)
            throw parse_error(at, "an exponent between 1 and " +
                                      std::to_string(kDefaultExponentCap),
                              e.get_str());
        return static_cast<std::uint32_t>(e.get_ui());
    }

    // variable [ "^" positive-int ], merged into the exponent vector.
    void parse_factor(Monomial& mono) {
        skip_ws();
        if (at_end() || !std::isalpha(static_cast<unsigned char>(peek()))) fail("a variable name");
        std::size_t at = pos_;
        std::string name;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
            name += text_[pos_++];
        auto var = vt_.find(name);
        if (!var) throw parse_error(at, "a variable defined in the table", "'" + name + "'");
        std::uint32_t e = 1;
        skip_ws();
        if (!at_end() && peek() == '^') {
            ++pos_;
            e = parse_exponent();
        }
        std::uint64_t total = std::uint64_t(mono.exp(*var)) + e;
        if (total > kDefaultExponentCap)
            throw parse_error(at, "combined exponent within cap", name);
        mono.set_exp(*var, static_cast<std::uint32_t>(total));
    }

    Term parse_term(bool negative) {
        skip_ws();
        if (at_end()) fail("a term");
        Rational coeff(1);
        Monomial mono(vt_.size());
        bool have_pp = false;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            Integer num = parse_uint();
            Integer den(1);
            skip_ws();
            if (!at_end() && peek() == '/') {
                ++pos_;
                std::size_t at = pos_;
                den = parse_uint();
                if (den == 0) throw parse_error(at, "a positive denominator", "0");
            }
            coeff = Rational(num, den);
            coeff.canonicalize();
            skip_ws();
            if (!at_end() && peek() == '*') {
                ++pos_;
                parse_factor(mono);
                have_pp = true;
            }
        } else {
            parse_factor(mono);
            have_pp = true;
        }
        if (have_pp) {
            skip_ws();
            while (!at_end() && peek() == '*') {
                ++pos_;
                parse_factor(mono);
                skip_ws();
            }
        }
        if (negative) coeff = -coeff;
        return Term{std::move(mono), std::move(coeff)};
    }

    std::string_view text_;
    const VarTable& vt_;
    std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_poly(std::string_view text, const VarTable& vt) {
    return Parser(text, vt).run();
}

}  // namespace qmrel
