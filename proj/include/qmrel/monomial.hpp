// Monomials as dense exponent vectors over a fixed variable table. The
// width always equals the table size; exponents are bounded by a cap and
// multiplication raises a hard error on overflow rather than wrapping.
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qmrel/vartable.hpp"

namespace qmrel {

inline constexpr std::uint32_t kDefaultExponentCap = 0x7fffffffu;  // 2^31 - 1

class Monomial {
public:
    explicit Monomial(std::size_t width) : e_(width, 0) {}

    static Monomial unit(std::size_t width, std::size_t var, std::uint32_t exp = 1);

    std::size_t width() const { return e_.size(); }
    std::uint32_t exp(std::size_t i) const { return e_[i]; }
    void set_exp(std::size_t i, std::uint32_t v);

    std::uint64_t degree() const { return deg_; }
    std::uint64_t degree_in(const VarScope& scope) const;
    bool is_one() const { return deg_ == 0; }

    static Monomial mul(const Monomial& a, const Monomial& b,
                        std::uint32_t cap = kDefaultExponentCap);
    // Does a divide b?
    static bool divides(const Monomial& a, const Monomial& b);
    // b / a, assuming a divides b.
    static Monomial quotient(const Monomial& b, const Monomial& a);
    static Monomial lcm(const Monomial& a, const Monomial& b);
    static bool coprime(const Monomial& a, const Monomial& b);

    // Copy with all exponents outside the scope set to zero.
    Monomial restricted(const VarScope& scope) const;
    bool within(const VarScope& scope) const;

    bool operator==(const Monomial& o) const { return e_ == o.e_; }
    bool operator!=(const Monomial& o) const { return e_ != o.e_; }

    std::size_t hash() const;

private:
    std::vector<std::uint32_t> e_;
    std::uint64_t deg_ = 0;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

}  // namespace qmrel
