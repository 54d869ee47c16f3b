// 4x4 symbolic matrix algebra over the polynomial ring: products,
// transpose, determinant and adjugate by cofactor expansion (no division),
// the constant J-matrices used by the period-shape identities, parametric
// matrix families, and seeded rational symplectic matrices.
#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "qmrel/polynomial.hpp"

namespace qmrel {

class SymMatrix {
public:
    explicit SymMatrix(const VarTable& vt);  // zero matrix

    static SymMatrix identity(const VarTable& vt);
    static SymMatrix from_rationals(const VarTable& vt,
                                    const std::array<std::array<Rational, 4>, 4>& rows);

    const VarTable& table() const { return *vt_; }
    Polynomial& at(std::size_t r, std::size_t c);
    const Polynomial& at(std::size_t r, std::size_t c) const;

    bool is_zero() const;
    bool operator==(const SymMatrix& o) const;
    bool operator!=(const SymMatrix& o) const { return !(*this == o); }

    // Four lines with four semicolon-separated entries each.
    std::string to_text() const;

private:
    const VarTable* vt_;
    std::vector<Polynomial> e_;  // row-major, 16 entries
};

SymMatrix mat_add(const SymMatrix& a, const SymMatrix& b);
SymMatrix mat_sub(const SymMatrix& a, const SymMatrix& b);
SymMatrix mat_mul(const SymMatrix& a, const SymMatrix& b);
SymMatrix mat_transpose(const SymMatrix& a);
SymMatrix mat_scale(const SymMatrix& a, const Polynomial& s);
Polynomial determinant(const SymMatrix& a);
SymMatrix adjugate(const SymMatrix& a);
SymMatrix substitute(const SymMatrix& a,
                     const std::vector<std::pair<std::string, Polynomial>>& subs);

// 2x2 companion type for the block constructions of the period-shape
// identities; rows are (a b; c d).
struct Mat2 {
    Polynomial a, b, c, d;
};

Mat2 mat2_mul(const Mat2& x, const Mat2& y);
Mat2 mat2_transpose(const Mat2& x);
Mat2 mat2_adj(const Mat2& x);
Polynomial mat2_det(const Mat2& x);
Mat2 mat2_scale(const Mat2& x, const Polynomial& s);
SymMatrix block_diag(const Mat2& tl, const Mat2& br);

// The constant matrices of the period computations. Construction verifies
// the defining identities (J24 inverse-transpose, J0 inverse, antisymmetry
// of the symplectic form) and throws internal_error if any fails.
struct JConstants {
    SymMatrix J24, J24T, J0, J0inv, Jsym;

    static JConstants make(const VarTable& vt);
};

// The generic matrix of the sixteen matrix variables.
SymMatrix generic_Y(const VarTable& vt);

enum class BlockFamily { lowercase, capital };

// The generic block-lower-triangular endomorphism matrix: upper-left and
// lower-right 2x2 blocks from the a/c (or A/C) families, lower-left from
// b (or B), upper-right zero.
SymMatrix generic_block_lower(const VarTable& vt, BlockFamily family);

// The six-parameter symplectic family
//   (1 0 n m; 0 1 m l; p r 1+np+mr mp+lr; r q nr+qm 1+mr+lq),
// symplectic for every parameter value.
SymMatrix symplectic_family(const Polynomial& l, const Polynomial& m, const Polynomial& n,
                            const Polynomial& p, const Polynomial& q, const Polynomial& r);
// The same family on the table's own l,m,n,p,q,r variables.
SymMatrix symplectic_family_generic(const VarTable& vt);

// A seeded rational symplectic matrix (A 0; C (A^T)^-1): A is a random
// integer matrix of determinant +-1 built from elementary operations and
// C = (A^T)^-1 S for a random symmetric integer S, so A^T C is symmetric.
// Deterministic per seed.
SymMatrix numeric_symplectic_T(const VarTable& vt, std::uint64_t seed);

// Does M * Jsym * M^T equal scalar * Jsym as a polynomial identity?
// The caller supplies denominator-cleared forms.
bool riemann_check(const SymMatrix& m, const Polynomial& scalar);

// The two cleared period-pattern normal forms agree for a generic 2x2
// block D of pi variables:
//   J24 diag(det(D) D, adj(D^T)) J24 = J0inv diag(det(D) Pi, -Pi) J0
// with Pi = D diag(1,-1).
bool period_shape_equivalence(const VarTable& vt);

}  // namespace qmrel
