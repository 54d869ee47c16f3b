// Groebner machinery over the exact polynomial ring: multivariate division
// with the leading monomial taken over a variable scope (so the remaining
// variables ride along inside coefficients), Buchberger's algorithm with
// both classical skip criteria, ideal membership, implication checking for
// constraint polynomials, and a checksummed text cache for bases.
//
// Division requires every divisor's leading scope-coefficient to be a
// rational constant; anything else raises unsupported_domain_error. All
// long-running entry points take a Budget and raise budget_error with a
// progress note when it is exhausted.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qmrel/polynomial.hpp"

namespace qmrel {

struct Budget {
    // One step per term produced while cancelling leading groups.
    std::uint64_t max_steps = 10'000'000;
    // Cap on live term storage across the working polynomials.
    std::uint64_t max_term_bytes = std::uint64_t(2) * 1024 * 1024 * 1024;

    // Reads QMREL_BUDGET (a step count) from the environment when present.
    static Budget from_env();
};

struct DivisionResult {
    Polynomial remainder;
    std::uint64_t steps = 0;
};

// Remainder of f on division by the divisors, deterministic for a fixed
// order, scope and divisor sequence (the first divisor whose leading
// monomial divides the current lead is always chosen).
DivisionResult divide(const Polynomial& f, const std::vector<Polynomial>& divisors,
                      const MonomialOrder& ord, const VarScope& scope,
                      const Budget& budget = {});

enum class PairStrategy {
    // Lowest lcm total degree first, ties broken lexicographically.
    degree,
    // Smallest lcm under the active monomial order first.
    order,
};

struct GroebnerBasis {
    const VarTable* vt = nullptr;
    MonomialOrder order = MonomialOrder::degrevlex();
    VarScope scope;
    std::vector<Polynomial> generators;
    std::vector<Polynomial> basis;  // reduced: monic, autoreduced, sorted by leading monomial
};

GroebnerBasis buchberger(const std::vector<Polynomial>& generators, const MonomialOrder& ord,
                         const VarScope& scope, const Budget& budget = {},
                         PairStrategy strategy = PairStrategy::degree);

bool member(const Polynomial& f, const GroebnerBasis& gb, const Budget& budget = {});

// The six quadrics cutting out the symplectic group of a 4x4 matrix of
// variables: the above-diagonal entries of X^T J X - J for the standard
// antisymmetric J. Their ideal is the reference ideal for all membership
// and implication checks on relation polynomials.
std::vector<Polynomial> sp4_generators(const VarTable& vt);

// How an implication was certified. "ideal" is plain membership; "power"
// means some square iterate of the constraint is in the ideal; "radical"
// is a full radical membership certificate via an auxiliary variable.
enum class ImpliedLevel { none, ideal, power, radical };

struct ImpliedOutcome {
    bool implied = false;
    ImpliedLevel level = ImpliedLevel::none;
    int power = 1;  // smallest checked k with constraint^k in the ideal, when level == power

    std::string describe() const;
};

// Does the vanishing of every polynomial in the coefficient ideal force
// the constraint to vanish? Checked against a Groebner basis of the
// coefficient ideal: first plain membership, then squares up to
// constraint^8, then a radical membership certificate.
ImpliedOutcome implied_by(const Polynomial& constraint, const GroebnerBasis& coefficient_basis,
                          const Budget& budget = {});

// Generators of the elimination ideal: all consequences of gens that do
// not involve the given variable. Computed with a block order that ranks
// the eliminated variable above everything else.
std::vector<Polynomial> eliminate_variable(const std::vector<Polynomial>& gens, std::size_t var,
                                           const Budget& budget = {});

// Text cache. save_basis writes a GBCACHE v1 file with the order, the
// variable list, the generators, the basis elements, and a trailing
// sha256 line over everything before it. load_basis re-verifies the hash,
// the variable list, and the reduced-basis invariants (including that all
// S-polynomials reduce to zero) before returning the basis.
void save_basis(const GroebnerBasis& gb, const std::string& path);
GroebnerBasis load_basis(const std::string& path, const VarTable& vt,
                         const Budget& budget = {});

}  // namespace qmrel
