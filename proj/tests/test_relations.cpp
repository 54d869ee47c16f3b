// Relation polynomials, the staged verification pipeline, and the stage
// report serialization.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <qmrel/errors.hpp>
#include <qmrel/prng.hpp>
#include <qmrel/relations.hpp>

#include <string>
#include <utility>
#include <vector>

using namespace qmrel;

namespace {

const VarTable& table() { return VarTable::standard(); }

const RelationContext& context() {
    static RelationContext ctx = make_relation_context(table());
    return ctx;
}

const GroebnerBasis& quadric_basis() {
    static GroebnerBasis gb = buchberger(sp4_generators(table()), MonomialOrder::degrevlex(),
                                         scope_matrix(table()));
    return gb;
}

StageOptions with_basis() {
    StageOptions opt;
    opt.basis = &quadric_basis();
    return opt;
}

std::vector<std::pair<std::string, Polynomial>> matrix_subs(const SymMatrix& m) {
    std::vector<std::pair<std::string, Polynomial>> subs;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            subs.emplace_back("X" + std::to_string(r + 1) + std::to_string(c + 1), m.at(r, c));
    return subs;
}

// A full evaluation point with small random rationals, one per variable.
std::vector<Rational> random_point(SplitMix64& rng) {
    std::vector<Rational> point(table().size());
    for (Rational& v : point) {
        v = Rational(rng.range(-7, 7), rng.range(1, 4));
        v.canonicalize();
    }
    return point;
}

Rational eval_matrix_entry(const Polynomial& e, const std::vector<Rational>& point) {
    return eval_at(e, point);
}

bool has_assumption(const StageReport& rep, const std::string& needle) {
    for (const std::string& a : rep.assumptions)
        if (a.find(needle) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST_CASE("relation polynomials have the frozen shapes") {
    const RelationContext& ctx = context();
    CHECK(ctx.rqmarch.poly.term_count() == 7329);
    CHECK(ctx.rqmord0.poly.term_count() == 9084);
    CHECK(ctx.rqmord.poly.term_count() == 7936);

    CHECK(ctx.rqmarch.name == "Rqmarch");
    CHECK(ctx.rqmord0.name == "Rqmord0");
    CHECK(ctx.rqmord.name == "Rqmord");

    std::vector<std::string> lower = {"a11", "a12", "a21", "a22", "b11", "b12",
                                      "b21", "b22", "c11", "c12", "c21", "c22"};
    std::vector<std::string> arch = lower;
    arch.push_back("t1");
    CHECK(ctx.rqmarch.params_used == arch);
    CHECK(ctx.rqmord0.params_used == lower);
    std::vector<std::string> both = {"A11", "A12", "A21", "A22", "B11", "B12",
                                     "B21", "B22", "C11", "C12", "C21", "C22"};
    both.insert(both.end(), lower.begin(), lower.end());
    CHECK(ctx.rqmord.params_used == both);
}

TEST_CASE("every term is of matrix degree eight except the lone t1") {
    const RelationContext& ctx = context();
    VarScope xs = scope_matrix(table());
    std::size_t constants = 0;
    for (const Term& t : ctx.rqmarch.poly.terms()) {
        std::uint64_t d = t.mono.restricted(xs).degree();
        if (d == 0) {
            ++constants;
            CHECK(t.mono.degree() == 1);
            CHECK(t.mono.exp(table().index("t1")) == 1);
            CHECK(t.coeff == Rational(-1));
        } else {
            CHECK(d == 8);
        }
    }
    CHECK(constants == 1);
    for (const Term& t : ctx.rqmord0.poly.terms()) CHECK(t.mono.restricted(xs).degree() == 8);
    for (const Term& t : ctx.rqmord.poly.terms()) CHECK(t.mono.restricted(xs).degree() == 8);
}

TEST_CASE("instantiating X at the identity gives the hand-computed value") {
    const RelationContext& ctx = context();
    Polynomial at_id = substitute(ctx.rqmarch.poly, matrix_subs(SymMatrix::identity(table())));
    CHECK(canonical_text(at_id) == "a12*a21 + c12*c21 - t1");
}

TEST_CASE("degenerate parameter choices collapse the relations to zero") {
    const VarTable& vt = table();
    const RelationContext& ctx = context();
    Polynomial zero = Polynomial::constant(vt, 0);
    Polynomial a11 = Polynomial::variable(vt, "a11");

    // Scalar endomorphism and t1 = 0.
    Polynomial scalar = substitute(
        ctx.rqmarch.poly,
        {{"a12", zero}, {"a21", zero}, {"b11", zero}, {"b12", zero}, {"b21", zero},
         {"b22", zero}, {"c12", zero}, {"c21", zero}, {"a22", a11}, {"c11", a11},
         {"c22", a11}, {"t1", zero}});
    CHECK(scalar.is_zero());

    // The scalar collapse has no t1 to cancel in Rqmord0.
    Polynomial scalar0 = substitute(
        ctx.rqmord0.poly,
        {{"a12", zero}, {"a21", zero}, {"b11", zero}, {"b12", zero}, {"b21", zero},
         {"b22", zero}, {"c12", zero}, {"c21", zero}, {"a22", a11}, {"c11", a11},
         {"c22", a11}});
    CHECK(scalar0.is_zero());

    // Equal parameter sets on both factors of Rqmord.
    std::vector<std::pair<std::string, Polynomial>> matched;
    for (const char* n : {"11", "12", "21", "22"}) {
        matched.emplace_back(std::string("A") + n, Polynomial::variable(vt, std::string("a") + n));
        matched.emplace_back(std::string("B") + n, Polynomial::variable(vt, std::string("b") + n));
        matched.emplace_back(std::string("C") + n, Polynomial::variable(vt, std::string("c") + n));
    }
    CHECK(substitute(ctx.rqmord.poly, matched).is_zero());
}

TEST_CASE("fully constrained parameters kill the relation at symplectic points") {
    const VarTable& vt = table();
    const RelationContext& ctx = context();
    // Everything the two archimedean stages force: vanishing b block and
    // off-diagonal entries, equal diagonal blocks, a11 = a22, and the t1
    // value, which collapses to 0 once a11 = a22.
    SplitMix64 rng(404);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        SymMatrix w = numeric_symplectic_T(vt, seed);
        std::vector<Rational> point(vt.size(), Rational(0));
        Rational s(rng.range(-20, 20), rng.range(1, 6));
        s.canonicalize();
        point[vt.index("a11")] = s;
        point[vt.index("a22")] = s;
        point[vt.index("c11")] = s;
        point[vt.index("c22")] = s;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
                point[vt.index("X" + std::to_string(r + 1) + std::to_string(c + 1))] =
                    eval_at(w.at(r, c), point);
        CHECK(eval_at(ctx.rqmarch.poly, point) == 0);
    }
}

TEST_CASE("stage runs are deterministic") {
    StageReport once = arch_stage2(context(), with_basis());
    StageReport again = arch_stage2(context(), with_basis());
    CHECK(once.to_json() == again.to_json());
    CHECK(once.to_text() == again.to_text());
}

TEST_CASE("transported relation agrees with direct substitution at rational points") {
    const VarTable& vt = table();
    const RelationContext& ctx = context();
    SplitMix64 rng(2026);
    for (std::uint64_t seed : {1, 2}) {
        SymMatrix t = numeric_symplectic_T(vt, seed);
        Polynomial transported = rqmarch_transported(ctx, t);
        std::vector<Rational> point = random_point(rng);
        // The same point with the matrix slots replaced by W * T.
        std::vector<Rational> moved = point;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) {
                Rational acc = 0;
                for (int k = 0; k < 4; ++k) {
                    std::size_t wi = vt.index("X" + std::to_string(r + 1) + std::to_string(k + 1));
                    acc += point[wi] * eval_matrix_entry(t.at(k, c), point);
                }
                moved[vt.index("X" + std::to_string(r + 1) + std::to_string(c + 1))] = acc;
            }
        CHECK(eval_at(transported, point) == eval_at(ctx.rqmarch.poly, moved));
    }
}

TEST_CASE("reduction modulo the quadric basis is sound at symplectic points") {
    const VarTable& vt = table();
    const RelationContext& ctx = context();
    const GroebnerBasis& gb = quadric_basis();
    Polynomial rho = divide(ctx.rqmarch.poly, gb.basis, gb.order, gb.scope).remainder;
    CHECK(rho.term_count() == 617);
    CHECK(!member(ctx.rqmarch.poly, gb));

    // The quadrics vanish at every symplectic matrix, so f and its
    // remainder must agree wherever X is symplectic.
    SplitMix64 rng(77);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        SymMatrix w = numeric_symplectic_T(vt, seed);
        std::vector<Rational> point = random_point(rng);
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
                point[vt.index("X" + std::to_string(r + 1) + std::to_string(c + 1))] =
                    eval_matrix_entry(w.at(r, c), point);
        for (const Polynomial& f : sp4_generators(vt)) CHECK(eval_at(f, point) == 0);
        CHECK(eval_at(ctx.rqmarch.poly, point) == eval_at(rho, point));
    }
}

TEST_CASE("family coefficients reconstruct the substituted relation") {
    const VarTable& vt = table();
    const RelationContext& ctx = context();
    StageReport rep = arch_stage1(context(), with_basis());

    Polynomial flat =
        substitute(ctx.rqmarch.poly, matrix_subs(symplectic_family_generic(vt)));
    CHECK(flat.term_count() == 86);
    CHECK(rep.remainder_terms == 86);
    CHECK(rep.coefficients.size() == 31);

    PolyBuilder sum(vt);
    for (const auto& [mono, coeff] : rep.coefficients)
        sum.add(poly_mul(parse_poly(mono, vt), parse_poly(coeff, vt)));
    CHECK(sum.take() == flat);
}

TEST_CASE("the family coefficient ideal forces products but not b12 alone") {
    const VarTable& vt = table();
    const RelationContext& ctx = context();
    Polynomial flat =
        substitute(ctx.rqmarch.poly, matrix_subs(symplectic_family_generic(vt)));
    std::vector<Polynomial> coeffs;
    for (const auto& [mono, coeff] : coefficient_rules(
             flat, scope_of(vt, {"l", "m", "n", "p", "q", "r"}), MonomialOrder::degrevlex()))
        coeffs.push_back(coeff);
    REQUIRE(coeffs.size() == 31);

    // A common zero of all the coefficients with b12 nonzero: scalar
    // diagonal blocks, b21 = 0, b12 free. It certifies that the family
    // collection alone cannot force b12 (only the product b12*b21).
    std::vector<Rational> witness(vt.size(), Rational(0));
    witness[vt.index("a11")] = 7;
    witness[vt.index("a22")] = 7;
    witness[vt.index("c11")] = 7;
    witness[vt.index("c22")] = 7;
    witness[vt.index("b12")] = 5;
    for (const Polynomial& c : coeffs) CHECK(eval_at(c, witness) == 0);

    GroebnerBasis cgb = buchberger(coeffs, MonomialOrder::degrevlex(), scope_all(vt));
    CHECK(!implied_by(Polynomial::variable(vt, "b12"), cgb).implied);
    CHECK(!implied_by(Polynomial::variable(vt, "b21"), cgb).implied);
    ImpliedOutcome product = implied_by(parse_poly("b12*b21", vt), cgb);
    CHECK(product.implied);
    CHECK(product.level == ImpliedLevel::ideal);
    ImpliedOutcome b11 = implied_by(Polynomial::variable(vt, "b11"), cgb);
    CHECK(b11.implied);
    CHECK(b11.level == ImpliedLevel::power);
    CHECK(b11.power == 2);
    // The family even forces a11 = a22 on its own (the constrained
    // relation is (a11 - a22)^2 G - t1 with G varying over the family).
    ImpliedOutcome diag = implied_by(parse_poly("a11 - a22", vt), cgb);
    CHECK(diag.implied);
    CHECK(diag.level == ImpliedLevel::power);
    CHECK(diag.power == 4);
    CHECK(implied_by(Polynomial::variable(vt, "t1"), cgb).level == ImpliedLevel::ideal);
    // Negative controls: the witness point keeps these alive.
    CHECK(!implied_by(Polynomial::variable(vt, "a11"), cgb).implied);
    CHECK(!implied_by(Polynomial::variable(vt, "c22"), cgb).implied);
}

TEST_CASE("archimedean stage 1 certifies all ten constraints") {
    StageReport rep = arch_stage1(context(), with_basis());
    CHECK(rep.stage == "arch1");
    REQUIRE(rep.claims.size() == 10);
    std::vector<std::string> expected = {"b11", "b12", "b21",       "b22",      "a12",
                                         "a21", "c12", "c21",       "a11 - c11", "a22 - c22"};
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(rep.claims[i].constraint == expected[i]);
        CHECK(rep.claims[i].implied);
    }
    CHECK(rep.all_claims_hold());
    // The off-diagonal b constraints need the fallback ideal; the report
    // says so rather than passing them off as family consequences.
    CHECK(has_assumption(rep, "b12: not implied by the family coefficient ideal"));
    CHECK(has_assumption(rep, "b21: not implied by the family coefficient ideal"));
    CHECK(has_assumption(rep, "assumed prime"));
}

TEST_CASE("dropping t1 from the coefficient ideal changes no verdict") {
    StageOptions opt = with_basis();
    StageReport plain = arch_stage1(context(), opt);
    opt.eliminate_t1 = true;
    StageReport dropped = arch_stage1(context(), opt);
    REQUIRE(plain.claims.size() == dropped.claims.size());
    for (std::size_t i = 0; i < plain.claims.size(); ++i) {
        CHECK(plain.claims[i].constraint == dropped.claims[i].constraint);
        CHECK(plain.claims[i].implied == dropped.claims[i].implied);
    }
    CHECK(has_assumption(dropped, "t1 was eliminated"));
}

TEST_CASE("archimedean stage 2 pins a11 = a22 and the t1 relation") {
    StageReport rep = arch_stage2(context(), with_basis());
    CHECK(rep.stage == "arch2");
    CHECK(rep.remainder_terms == 22);
    CHECK(!rep.remainder_zero);
    REQUIRE(rep.claims.size() == 2);
    CHECK(rep.claims[0].constraint == "a11 - a22");
    CHECK(rep.claims[0].implied);
    // The derived t1 value collapses to zero once a22 = a11, so the claim
    // is the polynomial t1 itself.
    CHECK(rep.claims[1].constraint == "t1");
    CHECK(rep.claims[1].implied);
    CHECK(rep.all_claims_hold());
}

TEST_CASE("ordinary stage 1 certifies the seven forced conditions") {
    StageReport rep = ord_stage1(context(), with_basis());
    CHECK(rep.stage == "ord1");
    CHECK(rep.remainder_terms == 487);
    REQUIRE(rep.claims.size() == 7);
    std::vector<std::string> expected = {"b11",       "b22",       "b12 + b21", "a11 - c11",
                                         "a21 - c12", "a12 - c21", "a22 - c22"};
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(rep.claims[i].constraint == expected[i]);
        CHECK(rep.claims[i].implied);
    }
    CHECK(rep.all_claims_hold());
}

TEST_CASE("ordinary stage 2 certifies the commutator and its converses") {
    StageReport rep = ord_stage2(context(), with_basis());
    CHECK(rep.stage == "ord2");
    CHECK(rep.remainder_terms == 40);
    REQUIRE(rep.claims.size() == 14);
    CHECK(rep.all_claims_hold());
    CHECK(rep.claims[12].constraint ==
          "an explicitly anticommuting instance leaves a nonzero remainder");
    CHECK(rep.claims[13].constraint == "matching parameter sets reduce the remainder to zero");
    CHECK(has_assumption(rep, "converse check (informative): 14 of 14"));
}

TEST_CASE("supersingular transport keeps the ideal and the relation apart") {
    StageOptions opt = with_basis();
    opt.trials = 2;
    StageReport rep = supersingular_transport(context(), opt);
    CHECK(rep.stage == "ssing");
    CHECK(rep.remainder_terms == 617);
    CHECK(!rep.remainder_zero);
    REQUIRE(rep.claims.size() == 3);
    CHECK(rep.all_claims_hold());
    REQUIRE(rep.samples.size() == 2);
    for (const StageSample& s : rep.samples) {
        REQUIRE(s.verdicts.size() == 3);
        CHECK(s.verdicts[0].first == "quadric_transports_in_ideal");
        CHECK(s.verdicts[1].first == "relation_transport_outside_ideal");
        CHECK(s.verdicts[2].first == "membership_preserved");
        for (const auto& [name, ok] : s.verdicts) CHECK(ok);
    }

    SUBCASE("reports serialize to the stable schema") {
        nlohmann::json j = nlohmann::json::parse(rep.to_json());
        REQUIRE(j.is_object());
        CHECK(j.size() == 6);
        CHECK(j.at("stage") == "ssing");
        REQUIRE(j.at("claims").is_array());
        CHECK(j.at("claims").size() == 3);
        for (const auto& c : j.at("claims")) {
            CHECK(c.size() == 2);
            CHECK(c.at("constraint").is_string());
            CHECK(c.at("implied").is_boolean());
        }
        CHECK(j.at("remainder_terms") == 617);
        CHECK(j.at("remainder_zero") == false);
        CHECK(j.at("assumptions").is_array());
        REQUIRE(j.at("samples").size() == 2);
        for (const auto& s : j.at("samples")) {
            CHECK(s.at("seed").is_number_unsigned());
            REQUIRE(s.at("verdicts").is_object());
            CHECK(s.at("verdicts").size() == 3);
        }
        CHECK(rep.to_text().find("all claims hold") != std::string::npos);
    }
}

TEST_CASE("shape and delta identity stages hold symbolically") {
    StageReport shapes = shape_stage(table());
    CHECK(shapes.stage == "shapes");
    CHECK(shapes.claims.size() == 2);
    CHECK(shapes.remainder_zero);
    CHECK(shapes.all_claims_hold());

    StageReport delta = delta_identity_check(table());
    CHECK(delta.stage == "delta");
    CHECK(delta.claims.size() == 3);
    CHECK(delta.remainder_zero);
    CHECK(delta.all_claims_hold());
}

TEST_CASE("stages demand a basis and respect their budget") {
    CHECK_THROWS_AS(arch_stage2(context(), StageOptions{}), usage_error);

    StageOptions opt = with_basis();
    opt.budget.max_steps = 10;
    try {
        ord_stage1(context(), opt);
        FAIL("expected the budget to be exhausted");
    } catch (const budget_error& e) {
        CHECK(std::string(e.what()).find("ord1:") == 0);
    }
}
