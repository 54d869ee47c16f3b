// Exact arithmetic in quaternion algebras (a,b/Q) together with the
// constructive number theory used by the relation stages: the Rosati
// conjugation x -> alpha x* alpha^{-1}, the search for the presentation
// prime q, the construction of a second generator mu, and ramification
// predicates for quadratic fields.
#pragma once

#include <qmrel/rational.hpp>

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace qmrel {

// The algebra with basis {1, i, j, k}, i^2 = a, j^2 = b, ij = -ji = k.
struct QuatAlgebra {
    Rational a;
    Rational b;

    QuatAlgebra(Rational a, Rational b);

    bool operator==(const QuatAlgebra& o) const { return a == o.a && b == o.b; }
    bool operator!=(const QuatAlgebra& o) const { return !(*this == o); }
};

struct QuatElement {
    QuatAlgebra alg;
    Rational t, y, z, w;

    static QuatElement scalar(const QuatAlgebra& alg, Rational value);
    static QuatElement make(const QuatAlgebra& alg, Rational t, Rational y, Rational z,
                            Rational w);

    bool is_zero() const { return t == 0 && y == 0 && z == 0 && w == 0; }
    bool is_scalar() const { return y == 0 && z == 0 && w == 0; }
    // True when the trace vanishes, i.e. the element is a pure quaternion.
    bool is_pure() const { return t == 0; }

    std::string to_text() const;

    bool operator==(const QuatElement& o) const;
    bool operator!=(const QuatElement& o) const { return !(*this == o); }
};

QuatElement unit_i(const QuatAlgebra& alg);
QuatElement unit_j(const QuatAlgebra& alg);
QuatElement unit_k(const QuatAlgebra& alg);

QuatElement quat_add(const QuatElement& x, const QuatElement& y);
QuatElement quat_sub(const QuatElement& x, const QuatElement& y);
QuatElement quat_neg(const QuatElement& x);
QuatElement quat_scale(const QuatElement& x, const Rational& c);
QuatElement quat_mul(const QuatElement& x, const QuatElement& y);

// Standard involution: fixes the scalar part, negates i, j, k.
QuatElement quat_conj(const QuatElement& x);
Rational trd(const QuatElement& x);
Rational nrd(const QuatElement& x);

// Inverse via the standard involution; requires nrd(x) != 0.
QuatElement quat_inv(const QuatElement& x);

// The conjugation x -> alpha x* alpha^{-1}. Requires nrd(alpha) != 0.
QuatElement rosati(const QuatElement& x, const QuatElement& alpha);

enum class LambdaCase { i, j, k };

std::string lambda_name(LambdaCase c);
LambdaCase lambda_from_name(const std::string& name);
QuatElement basis_element(const QuatAlgebra& alg, LambdaCase c);

// Finds a standard basis element lambda with rosati(lambda, alpha) != lambda.
// Requires alpha pure, nonzero, with negative square. Such a witness always
// exists for valid input; failure to find one is an internal contradiction.
LambdaCase rosati_witness(const QuatElement& alpha);

// Legendre symbol (a/p) for an odd prime p, by Euler's criterion.
int legendre(const Integer& a, const Integer& p);

bool is_prime(const Integer& n);

// Prime factorization of |n| by trial division, smallest factor first.
// Throws when a cofactor beyond the trial bound cannot be certified.
std::vector<std::pair<Integer, unsigned>> factorize(const Integer& n);

struct QuadFieldDisc {
    Integer epsilon;
    Integer squarefree_part;
    Integer disc;
};

// Squarefree decomposition epsilon = e0^2 * e' and the discriminant of
// Q(sqrt(epsilon)): e' when e' is 1 mod 4, otherwise 4e'. Rejects perfect
// squares, which generate no quadratic field.
QuadFieldDisc quad_disc(const Integer& epsilon);

// True when the prime p does not divide disc(Q(sqrt(epsilon))).
bool is_unramified(const Integer& p, const Integer& epsilon);

// Smallest prime q with q = 5 mod 8, gcd(q, delta) = 1, and (q/p) = -1 for
// every odd prime p dividing delta. Requires delta positive, squarefree,
// with an even number of prime factors.
Integer find_q(const Integer& delta);

struct MuResult {
    QuatElement mu;
    Integer n;
    LambdaCase lambda;
    // Nonempty when the construction table's labeling needed correction.
    std::string note;
};

// Builds mu = y*i + z*j + w*k in (q, delta/Q) from the case table keyed on
// the witness lambda and on whether the conjugator's scalar coordinate
// vanishes. The chosen element is then verified: zero trace, moved by the
// conjugation, non-square square, unramified at 2, q, and the odd primes
// of delta, and not commuting with lambda. A failed check raises a
// constructed_value_error naming the condition.
MuResult find_mu(const Integer& q, const Integer& delta, LambdaCase lambda,
                 const std::array<Rational, 4>& alpha_coords);

// True when p is unramified in Q(sqrt(q)) or in Q(sqrt(delta)).
bool unramified_pair_check(const Integer& p, const Integer& q, const Integer& delta);

}  // namespace qmrel
