// Relation polynomials among the entries of a generic 4x4 matrix of
// variables, and the staged verification pipeline that certifies which
// endomorphism parameters their vanishing forces.
#pragma once

#include <qmrel/groebner.hpp>
#include <qmrel/symmat.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qmrel {

struct RelationPolynomial {
    std::string name;
    Polynomial poly;
    // Sorted names of the non-matrix variables the polynomial involves.
    std::vector<std::string> params_used;
};

// adjugate(Y) * M * Y for the generic matrix Y of X variables over M's table.
SymMatrix z_matrix(const SymMatrix& m);

// Rqmarch = P13 P31 + P14 P41 + P23 P32 + P24 P42 - t1, where
// P = J24^T * z_matrix([alpha]) * J24. Every term is of degree 8 in the X
// variables except the lone -t1.
RelationPolynomial build_rqmarch(const VarTable& vt);

// Rqmord0 = R12 R23 - R14 R21 with R = J0 * z_matrix([alpha]) * J0inv;
// homogeneous of degree 8 in the X variables.
RelationPolynomial build_rqmord0(const VarTable& vt);

// Rqmord = R12 Q21 - R21 Q12 with Q = J0 * z_matrix([beta]) * J0inv.
RelationPolynomial build_rqmord(const VarTable& vt);

// Matrices and relation polynomials shared by the stages, built once.
struct RelationContext {
    const VarTable* vt = nullptr;
    JConstants jc;
    SymMatrix Y, adjY;
    SymMatrix alpha_dr, beta_dr;
    SymMatrix Zalpha, Zbeta;
    RelationPolynomial rqmarch, rqmord0, rqmord;
};

RelationContext make_relation_context(const VarTable& vt);

// Rqmarch with X replaced by X*T, assembled from adj(T) Zalpha T rather
// than by substituting into the expanded polynomial.
Polynomial rqmarch_transported(const RelationContext& ctx, const SymMatrix& t);

struct StageClaim {
    std::string constraint;
    bool implied = false;
};

struct StageSample {
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, bool>> verdicts;
};

struct StageReport {
    std::string stage;
    // (scope monomial, coefficient polynomial) pairs collected by the
    // stage, both in canonical text. Not part of the JSON serialization.
    std::vector<std::pair<std::string, std::string>> coefficients;
    std::vector<StageClaim> claims;
    std::size_t remainder_terms = 0;
    bool remainder_zero = false;
    std::vector<std::string> assumptions;
    std::vector<StageSample> samples;

    bool all_claims_hold() const;
    std::string to_json() const;
    std::string to_text() const;
};

struct StageOptions {
    // Reduced basis of the six quadrics; required by every stage that
    // reduces a relation polynomial or asks membership questions.
    const GroebnerBasis* basis = nullptr;
    Budget budget{};
    std::uint64_t seed = 0;
    int trials = 20;
    // Drop t1 from coefficient ideals (by elimination) before implication
    // checks. Off by default; verdicts with and without agree.
    bool eliminate_t1 = false;
};

// Substitutes the six-parameter symplectic family into Rqmarch, collects
// coefficients over {l,m,n,p,q,r}, and checks the ten forced constraints
// against the coefficient ideal.
StageReport arch_stage1(const RelationContext& ctx, const StageOptions& opt);

// Imposes the stage-1 conclusions on Rqmarch, reduces modulo the basis,
// and checks that the remainder coefficients force a11 = a22; then derives
// the t1 value from the constant-monomial coefficient and confirms the
// fully constrained polynomial reduces to zero.
StageReport arch_stage2(const RelationContext& ctx, const StageOptions& opt);

// Reduces Rqmord0 modulo the basis and checks the seven constraint
// polynomials its remainder coefficients force.
StageReport ord_stage1(const RelationContext& ctx, const StageOptions& opt);

// Imposes the stage-1 ordinary conclusions on both parameter sets inside
// Rqmord, reduces, and checks every entry of the commutator of the two
// constrained endomorphism matrices against the remainder coefficients.
StageReport ord_stage2(const RelationContext& ctx, const StageOptions& opt);

// For seeded block-lower-triangular symplectic T: the six quadrics remain
// in the ideal after X -> X*T, while Rqmarch stays outside it.
StageReport supersingular_transport(const RelationContext& ctx, const StageOptions& opt);

// The two period-pattern identities: the bilinear-form check on
// J24 diag(D, adj(D^T)) and the equivalence of the two cleared patterns.
StageReport shape_stage(const VarTable& vt);

// The three cleared two-row identities of the ordinary-shape argument.
StageReport delta_identity_check(const VarTable& vt);

}  // namespace qmrel
