#include "qmrel/symmat.hpp"

#include "qmrel/errors.hpp"
#include "qmrel/prng.hpp"

namespace qmrel {

namespace {

void require_same_table(const SymMatrix& a, const SymMatrix& b) {
    if (!tables_compatible(a.table(), b.table()))
        throw usage_error("matrices belong to different variable tables");
}

}  // namespace

SymMatrix::SymMatrix(const VarTable& vt) : vt_(&vt), e_(16, Polynomial(vt)) {}

SymMatrix SymMatrix::identity(const VarTable& vt) {
    SymMatrix m(vt);
    for (std::size_t i = 0; i < 4; ++i) m.at(i, i) = Polynomial::constant(vt, 1);
    return m;
}

SymMatrix SymMatrix::from_rationals(const VarTable& vt,
                                    const std::array<std::array<Rational, 4>, 4>& rows) {
    SymMatrix m(vt);
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) m.at(r, c) = Polynomial::constant(vt, rows[r][c]);
    return m;
}

Polynomial& SymMatrix::at(std::size_t r, std::size_t c) {
    if (r >= 4 || c >= 4) throw usage_error("matrix index out of range");
    return e_[4 * r + c];
}

const Polynomial& SymMatrix::at(std::size_t r, std::size_t c) const {
    if (r >= 4 || c >= 4) throw usage_error("matrix index out of range");
    return e_[4 * r + c];
}

bool SymMatrix::is_zero() const {
    for (const Polynomial& p : e_)
        if (!p.is_zero()) return false;
    return true;
}

bool SymMatrix::operator==(const SymMatrix& o) const {
    for (std::size_t i = 0; i < 16; ++i)
        if (e_[i] != o.e_[i]) return false;
    return true;
}

std::string SymMatrix::to_text() const {
    std::string out;
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            if (c) out += ';';
            out += canonical_text(at(r, c));
        }
        out += '\n';
    }
    return out;
}

SymMatrix mat_add(const SymMatrix& a, const SymMatrix& b) {
    require_same_table(a, b);
    SymMatrix m(a.table());
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) m.at(r, c) = poly_add(a.at(r, c), b.at(r, c));
    return m;
}

SymMatrix mat_sub(const SymMatrix& a, const SymMatrix& b) {
    require_same_table(a, b);
    SymMatrix m(a.table());
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) m.at(r, c) = poly_sub(a.at(r, c), b.at(r, c));
    return m;
}

SymMatrix mat_mul(const SymMatrix& a, const SymMatrix& b) {
    require_same_table(a, b);
    SymMatrix m(a.table());
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) {
            PolyBuilder acc(a.table());
            for (std::size_t k = 0; k < 4; ++k) acc.add_product(a.at(r, k), b.at(k, c));
            m.at(r, c) = acc.take();
        }
    return m;
}

SymMatrix mat_transpose(const SymMatrix& a) {
    SymMatrix m(a.table());
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) m.at(r, c) = a.at(c, r);
    return m;
}

SymMatrix mat_scale(const SymMatrix& a, const Polynomial& s) {
    SymMatrix m(a.table());
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) m.at(r, c) = poly_mul(a.at(r, c), s);
    return m;
}

namespace {

// Determinant of the 3x3 minor omitting row i and column j.
Polynomial minor3(const SymMatrix& a, std::size_t i, std::size_t j) {
    std::size_t rs[3], cs[3], n = 0;
    for (std::size_t r = 0; r < 4; ++r)
        if (r != i) rs[n++] = r;
    n = 0;
    for (std::size_t c = 0; c < 4; ++c)
        if (c != j) cs[n++] = c;
    PolyBuilder acc(a.table());
    // Sarrus-style expansion of the 3x3 determinant.
    auto e = [&](std::size_t r, std::size_t c) -> const Polynomial& {
        return a.at(rs[r], cs[c]);
    };
    acc.add(poly_mul(e(0, 0), poly_sub(poly_mul(e(1, 1), e(2, 2)), poly_mul(e(1, 2), e(2, 1)))));
    acc.add(poly_neg(
        poly_mul(e(0, 1), poly_sub(poly_mul(e(1, 0), e(2, 2)), poly_mul(e(1, 2), e(2, 0))))));
    acc.add(poly_mul(e(0, 2), poly_sub(poly_mul(e(1, 0), e(2, 1)), poly_mul(e(1, 1), e(2, 0)))));
    return acc.take();
}

}  // namespace

Polynomial determinant(const SymMatrix& a) {
    PolyBuilder acc(a.table());
    for (std::size_t c = 0; c < 4; ++c) {
        Polynomial cof = poly_mul(a.at(0, c), minor3(a, 0, c));
        acc.add(c % 2 == 0 ? cof : poly_neg(cof));
    }
    return acc.take();
}

SymMatrix adjugate(const SymMatrix& a) {
    SymMatrix m(a.table());
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) {
            Polynomial cof = minor3(a, c, r);  // transposed cofactor
            m.at(r, c) = ((r + c) % 2 == 0) ? cof : poly_neg(cof);
        }
    return m;
}

SymMatrix substitute(const SymMatrix& a,
                     const std::vector<std::pair<std::string, Polynomial>>& subs) {
    SymMatrix m(a.table());
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) m.at(r, c) = substitute(a.at(r, c), subs);
    return m;
}

Mat2 mat2_mul(const Mat2& x, const Mat2& y) {
    return Mat2{poly_add(poly_mul(x.a, y.a), poly_mul(x.b, y.c)),
                poly_add(poly_mul(x.a, y.b), poly_mul(x.b, y.d)),
                poly_add(poly_mul(x.c, y.a), poly_mul(x.d, y.c)),
                poly_add(poly_mul(x.c, y.b), poly_mul(x.d, y.d))};
}

Mat2 mat2_transpose(const Mat2& x) { return Mat2{x.a, x.c, x.b, x.d}; }

Mat2 mat2_adj(const Mat2& x) { return Mat2{x.d, poly_neg(x.b), poly_neg(x.c), x.a}; }

Polynomial mat2_det(const Mat2& x) {
    return poly_sub(poly_mul(x.a, x.d), poly_mul(x.b, x.c));
}

Mat2 mat2_scale(const Mat2& x, const Polynomial& s) {
    return Mat2{poly_mul(x.a, s), poly_mul(x.b, s), poly_mul(x.c, s), poly_mul(x.d, s)};
}

SymMatrix block_diag(const Mat2& tl, const Mat2& br) {
    const VarTable& vt = tl.a.table();
    SymMatrix m(vt);
    m.at(0, 0) = tl.a;
    m.at(0, 1) = tl.b;
    m.at(1, 0) = tl.c;
    m.at(1, 1) = tl.d;
    m.at(2, 2) = br.a;
    m.at(2, 3) = br.b;
    m.at(3, 2) = br.c;
    m.at(3, 3) = br.d;
    return m;
}

JConstants JConstants::make(const VarTable& vt) {
    auto q = [](long v) { return Rational(v); };
    SymMatrix j24 = SymMatrix::from_rationals(
        vt, {{{q(1), q(0), q(0), q(0)},
              {q(0), q(0), q(0), q(-1)},
              {q(0), q(0), q(1), q(0)},
              {q(0), q(1), q(0), q(0)}}});
    SymMatrix j0 = SymMatrix::from_rationals(
        vt, {{{q(1), q(0), q(0), q(0)},
              {q(0), q(0), q(0), q(1)},
              {q(0), q(1), q(0), q(0)},
              {q(0), q(0), q(1), q(0)}}});
    SymMatrix j0inv = SymMatrix::from_rationals(
        vt, {{{q(1), q(0), q(0), q(0)},
              {q(0), q(0), q(1), q(0)},
              {q(0), q(0), q(0), q(1)},
              {q(0), q(1), q(0), q(0)}}});
    SymMatrix jsym = SymMatrix::from_rationals(
        vt, {{{q(0), q(0), q(1), q(0)},
              {q(0), q(0), q(0), q(1)},
              {q(-1), q(0), q(0), q(0)},
              {q(0), q(-1), q(0), q(0)}}});
    JConstants jc{j24, mat_transpose(j24), j0, j0inv, jsym};
    SymMatrix id = SymMatrix::identity(vt);
    if (mat_mul(jc.J24, jc.J24T) != id)
        throw internal_error("J24 transpose is not its inverse");
    if (mat_mul(jc.J0, jc.J0inv) != id) throw internal_error("J0inv is not the inverse of J0");
    if (mat_transpose(jc.Jsym) != mat_scale(jc.Jsym, Polynomial::constant(vt, -1)))
        throw internal_error("symplectic form is not antisymmetric");
    return jc;
}

SymMatrix generic_Y(const VarTable& vt) {
    SymMatrix m(vt);
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c)
            m.at(r, c) =
                Polynomial::variable(vt, "X" + std::to_string(r + 1) + std::to_string(c + 1));
    return m;
}

SymMatrix generic_block_lower(const VarTable& vt, BlockFamily family) {
    const char* tl = family == BlockFamily::lowercase ? "a" : "A";
    const char* bl = family == BlockFamily::lowercase ? "b" : "B";
    const char* br = family == BlockFamily::lowercase ? "c" : "C";
    auto v = [&](const char* stem, std::size_t r, std::size_t c) {
        return Polynomial::variable(vt, std::string(stem) + std::to_string(r) +
                                            std::to_string(c));
    };
    SymMatrix m(vt);
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) {
            m.at(r, c) = v(tl, r + 1, c + 1);
            m.at(r + 2, c) = v(bl, r + 1, c + 1);
            m.at(r + 2, c + 2) = v(br, r + 1, c + 1);
        }
    return m;
}

SymMatrix symplectic_family(const Polynomial& l, const Polynomial& m, const Polynomial& n,
                            const Polynomial& p, const Polynomial& q, const Polynomial& r) {
    const VarTable& vt = l.table();
    Polynomial one = Polynomial::constant(vt, 1);
    SymMatrix s(vt);
    s.at(0, 0) = one;
    s.at(0, 2) = n;
    s.at(0, 3) = m;
    s.at(1, 1) = one;
    s.at(1, 2) = m;
    s.at(1, 3) = l;
    s.at(2, 0) = p;
    s.at(2, 1) = r;
    s.at(2, 2) = poly_add(one, poly_add(poly_mul(n, p), poly_mul(m, r)));
    s.at(2, 3) = poly_add(poly_mul(m, p), poly_mul(l, r));
    s.at(3, 0) = r;
    s.at(3, 1) = q;
    s.at(3, 2) = poly_add(poly_mul(n, r), poly_mul(q, m));
    s.at(3, 3) = poly_add(one, poly_add(poly_mul(m, r), poly_mul(l, q)));
    return s;
}

SymMatrix symplectic_family_generic(const VarTable& vt) {
    auto v = [&](const char* name) { return Polynomial::variable(vt, name); };
    return symplectic_family(v("l"), v("m"), v("n"), v("p"), v("q"), v("r"));
}

SymMatrix numeric_symplectic_T(const VarTable& vt, std::uint64_t seed) {
    SplitMix64 rng(seed);
    // A: start from the identity and apply shear and sign operations; the
    // determinant stays +-1 throughout.
    long a[2][2] = {{1, 0}, {0, 1}};
    int ops = 3 + static_cast<int>(rng.below(4));
    for (int k = 0; k < ops; ++k) {
        long lam = rng.range(-3, 3);
        switch (rng.below(4)) {
            case 0:  // row1 += lam * row2
                a[0][0] += lam * a[1][0];
                a[0][1] += lam * a[1][1];
                break;
            case 1:  // row2 += lam * row1
                a[1][0] += lam * a[0][0];
                a[1][1] += lam * a[0][1];
                break;
            case 2:  // negate row1
                a[0][0] = -a[0][0];
                a[0][1] = -a[0][1];
                break;
            default:  // swap rows
                std::swap(a[0][0], a[1][0]);
                std::swap(a[0][1], a[1][1]);
                break;
        }
    }
    long det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    if (det != 1 && det != -1) throw internal_error("unimodular construction lost determinant");
    // (A^T)^-1 = det * adj(A)^T for det = +-1.
    long ainvt[2][2] = {{det * a[1][1], det * -a[1][0]}, {det * -a[0][1], det * a[0][0]}};
    // C = (A^T)^-1 * S with S symmetric, so A^T C = S stays symmetric.
    long s11 = rng.range(-4, 4), s12 = rng.range(-4, 4), s22 = rng.range(-4, 4);
    long s[2][2] = {{s11, s12}, {s12, s22}};
    long c[2][2];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) c[i][j] = ainvt[i][0] * s[0][j] + ainvt[i][1] * s[1][j];

    auto q = [](long v) { return Rational(v); };
    return SymMatrix::from_rationals(
        vt, {{{q(a[0][0]), q(a[0][1]), q(0), q(0)},
              {q(a[1][0]), q(a[1][1]), q(0), q(0)},
              {q(c[0][0]), q(c[0][1]), q(ainvt[0][0]), q(ainvt[0][1])},
              {q(c[1][0]), q(c[1][1]), q(ainvt[1][0]), q(ainvt[1][1])}}});
}

bool riemann_check(const SymMatrix& m, const Polynomial& scalar) {
    if (scalar.is_zero()) throw usage_error("riemann_check scalar must be nonzero");
    JConstants jc = JConstants::make(m.table());
    SymMatrix lhs = mat_mul(mat_mul(m, jc.Jsym), mat_transpose(m));
    return lhs == mat_scale(jc.Jsym, scalar);
}

bool period_shape_equivalence(const VarTable& vt) {
    auto v = [&](const char* name) { return Polynomial::variable(vt, name); };
    Mat2 d{v("pi11"), v("pi12"), v("pi21"), v("pi22")};
    Polynomial det = mat2_det(d);
    JConstants jc = JConstants::make(vt);

    // Left pattern, cleared by det(D): J24 diag(det*D, adj(D^T)) J24.
    SymMatrix lhs = mat_mul(mat_mul(jc.J24, block_diag(mat2_scale(d, det),
                                                       mat2_adj(mat2_transpose(d)))),
                            jc.J24);

    // Right pattern with Pi = D diag(1,-1), cleared by the same factor:
    // J0inv diag(det*Pi, -Pi) J0.
    Polynomial neg1 = Polynomial::constant(vt, -1);
    Mat2 pi{d.a, poly_neg(d.b), d.c, poly_neg(d.d)};
    SymMatrix rhs = mat_mul(
        mat_mul(jc.J0inv, block_diag(mat2_scale(pi, det), mat2_scale(pi, neg1))), jc.J0);
    return lhs == rhs;
}

}  // namespace qmrel
