// Monomial orders. Three total orders are provided:
//   lex        pure lexicographic in table order
//   degrevlex  graded reverse lexicographic
//   block      degrevlex on the matrix variables, ties broken by
//              degrevlex on the parameter variables
// Under the block order any monomial containing a matrix variable beats
// every parameter-only monomial, so parameters behave like scalars during
// reduction.
#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "qmrel/monomial.hpp"
#include "qmrel/vartable.hpp"

namespace qmrel {

enum class OrderKind { lex, degrevlex, block };

class MonomialOrder {
public:
    static MonomialOrder lex() { return MonomialOrder(OrderKind::lex); }
    static MonomialOrder degrevlex() { return MonomialOrder(OrderKind::degrevlex); }
    static MonomialOrder block() { return MonomialOrder(OrderKind::block); }

    OrderKind kind() const { return kind_; }

    // +1 if a > b, 0 if equal, -1 if a < b.
    int compare(const Monomial& a, const Monomial& b, const VarTable& vt) const;

    // Compare as if the variables outside the scope did not exist.
    int compare_in_scope(const Monomial& a, const Monomial& b, const VarTable& vt,
                         const VarScope& scope) const;

    bool less(const Monomial& a, const Monomial& b, const VarTable& vt) const {
        return compare(a, b, vt) < 0;
    }

    std::string name() const;
    static std::optional<MonomialOrder> from_name(std::string_view s);

    bool operator==(const MonomialOrder& o) const { return kind_ == o.kind_; }
    bool operator!=(const MonomialOrder& o) const { return kind_ != o.kind_; }

private:
    explicit MonomialOrder(OrderKind k) : kind_(k) {}
    OrderKind kind_;
};

}  // namespace qmrel
