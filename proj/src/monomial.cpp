#include "qmrel/monomial.hpp"

#include <algorithm>

#include "qmrel/errors.hpp"

namespace qmrel {

Monomial Monomial::unit(std::size_t width, std::size_t var, std::uint32_t exp) {
    Monomial m(width);
    m.set_exp(var, exp);
    return m;
}

void Monomial::set_exp(std::size_t i, std::uint32_t v) {
    deg_ -= e_.at(i);
    e_[i] = v;
    deg_ += v;
}

std::uint64_t Monomial::degree_in(const VarScope& scope) const {
    std::uint64_t d = 0;
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (scope[i]) d += e_[i];
    return d;
}

Monomial Monomial::mul(const Monomial& a, const Monomial& b, std::uint32_t cap) {
    if (a.width() != b.width()) throw usage_error("monomial width mismatch");
    Monomial out(a.width());
    std::uint64_t deg = 0;
    for (std::size_t i = 0; i < a.e_.size(); ++i) {
        std::uint64_t s = std::uint64_t(a.e_[i]) + b.e_[i];
        if (s > cap)
            throw usage_error("exponent overflow: variable index " + std::to_string(i) +
                              " would reach " + std::to_string(s) + " (cap " +
                              std::to_string(cap) + ")");
        out.e_[i] = static_cast<std::uint32_t>(s);
        deg += s;
    }
    out.deg_ = deg;
    return out;
}

bool Monomial::divides(const Monomial& a, const Monomial& b) {
    if (a.deg_ > b.deg_) return false;
    for (std::size_t i = 0; i < a.e_.size(); ++i)
        if (a.e_[i] > b.e_[i]) return false;
    return true;
}

Monomial Monomial::quotient(const Monomial& b, const Monomial& a) {
    Monomial out(b.width());
    for (std::size_t i = 0; i < b.e_.size(); ++i) out.e_[i] = b.e_[i] - a.e_[i];
    out.deg_ = b.deg_ - a.deg_;
    return out;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
    Monomial out(a.width());
    std::uint64_t deg = 0;
    for (std::size_t i = 0; i < a.e_.size(); ++i) {
        out.e_[i] = std::max(a.e_[i], b.e_[i]);
        deg += out.e_[i];
    }
    out.deg_ = deg;
    return out;
}

bool Monomial::coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.e_.size(); ++i)
        if (a.e_[i] != 0 && b.e_[i] != 0) return false;
    return true;
}

Monomial Monomial::restricted(const VarScope& scope) const {
    Monomial out(width());
    std::uint64_t deg = 0;
    for (std::size_t i = 0; i < e_.size(); ++i) {
        if (scope[i]) {
            out.e_[i] = e_[i];
            deg += e_[i];
        }
    }
    out.deg_ = deg;
    return out;
}

bool Monomial::within(const VarScope& scope) const {
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (e_[i] != 0 && !scope[i]) return false;
    return true;
}

std::size_t Monomial::hash() const {
    // FNV-1a over the exponent words.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::uint32_t v : e_) {
        h ^= v;
        h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
}

}  // namespace qmrel
