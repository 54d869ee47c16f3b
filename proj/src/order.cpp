#include "qmrel/order.hpp"

#include "qmrel/errors.hpp"

namespace qmrel {

namespace {

int lex_cmp(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
        std::uint32_t x = a.exp(i), y = b.exp(i);
        if (x != y) return x > y ? 1 : -1;
    }
    return 0;
}

// Graded reverse lexicographic on the index range [lo, hi): higher total
// degree wins; on equal degree, the last index where the exponents differ
// decides, and there the smaller exponent wins.
int degrevlex_cmp(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
    std::uint64_t da = 0, db = 0;
    for (std::size_t i = lo; i < hi; ++i) {
        da += a.exp(i);
        db += b.exp(i);
    }
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t i = hi; i-- > lo;) {
        std::uint32_t x = a.exp(i), y = b.exp(i);
        if (x != y) return x < y ? 1 : -1;
    }
    return 0;
}

}  // namespace

int MonomialOrder::compare(const Monomial& a, const Monomial& b, const VarTable& vt) const {
    if (a.width() != b.width() || a.width() != vt.size())
        throw usage_error("monomial width does not match variable table");
    std::size_t w = vt.size();
    switch (kind_) {
        case OrderKind::lex:
            return lex_cmp(a, b, 0, w);
        case OrderKind::degrevlex: {
            if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
            for (std::size_t i = w; i-- > 0;) {
                std::uint32_t x = a.exp(i), y = b.exp(i);
                if (x != y) return x < y ? 1 : -1;
            }
            return 0;
        }
        case OrderKind::block: {
            std::size_t mc = vt.matrix_count();
            int c = degrevlex_cmp(a, b, 0, mc);
            if (c != 0) return c;
            return degrevlex_cmp(a, b, mc, w);
        }
    }
    throw internal_error("unreachable order kind");
}

int MonomialOrder::compare_in_scope(const Monomial& a, const Monomial& b, const VarTable& vt,
                                    const VarScope& scope) const {
    // Restriction zeroes everything outside the scope, and the orders only
    // inspect positions where the arguments differ, so comparing the
    // restrictions is exactly the scoped comparison.
    return compare(a.restricted(scope), b.restricted(scope), vt);
}

std::string MonomialOrder::name() const {
    switch (kind_) {
        case OrderKind::lex:
            return "lex";
        case OrderKind::degrevlex:
            return "degrevlex";
        case OrderKind::block:
            return "block";
    }
    throw internal_error("unreachable order kind");
}

std::optional<MonomialOrder> MonomialOrder::from_name(std::string_view s) {
    if (s == "lex") return lex();
    if (s == "degrevlex") return degrevlex();
    if (s == "block") return block();
    return std::nullopt;
}

}  // namespace qmrel
