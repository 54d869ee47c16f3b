// Acceptance gate: one check per published criterion, each reported as a
// single PASS or FAIL line with its runtime. Exits nonzero when any
// criterion fails.
#include <qmrel/errors.hpp>
#include <qmrel/groebner.hpp>
#include <qmrel/prng.hpp>
#include <qmrel/quatalg.hpp>
#include <qmrel/relations.hpp>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace qmrel;

namespace {

using Clock = std::chrono::steady_clock;

int g_failures = 0;

void run_criterion(int number, const char* label, const std::function<bool()>& body) {
    auto start = Clock::now();
    bool ok = false;
    std::string note;
    try {
        ok = body();
    } catch (const std::exception& e) {
        note = e.what();
    }
    double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
    std::printf("criterion %d (%s): %s (%.2fs)%s%s\n", number, label, ok ? "PASS" : "FAIL",
                elapsed, note.empty() ? "" : " ", note.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

Rational small_rational(SplitMix64& rng) {
    Rational v(rng.range(-9, 9), rng.range(1, 4));
    v.canonicalize();
    return v;
}

// Sparse random polynomial in the matrix variables.
Polynomial random_matrix_poly(const VarTable& vt, SplitMix64& rng) {
    PolyBuilder b(vt);
    std::size_t terms = 1 + rng.below(4);
    for (std::size_t t = 0; t < terms; ++t) {
        Monomial m(vt.size());
        std::size_t factors = 1 + rng.below(3);
        for (std::size_t f = 0; f < factors; ++f) {
            std::size_t v = rng.below(vt.matrix_count());
            m.set_exp(v, m.exp(v) + 1);
        }
        std::int64_t c = rng.range(-9, 9);
        if (c == 0) c = 1;
        b.add_term(m, Rational(c));
    }
    return b.take();
}

// Leading scope monomial and coefficient under the given order.
std::pair<Monomial, Rational> scope_lead(const Polynomial& f, const VarScope& scope,
                                         const MonomialOrder& ord) {
    auto rules = coefficient_rules(f, scope, ord);
    if (rules.empty() || !rules.front().second.is_constant())
        throw internal_error("basis element has a nonconstant leading coefficient");
    return {rules.front().first, rules.front().second.constant_value()};
}

bool criterion_gb(const VarTable& vt, const GroebnerBasis& gb) {
    bool ok = true;

    std::vector<Polynomial> gens = sp4_generators(vt);
    for (const Polynomial& g : gens)
        ok = ok && divide(g, gb.basis, gb.order, gb.scope).remainder.is_zero();

    // Every S-polynomial of the basis must reduce to zero, checked pair by
    // pair with no skip criteria.
    for (std::size_t i = 0; i < gb.basis.size() && ok; ++i) {
        auto [mi, ci] = scope_lead(gb.basis[i], gb.scope, gb.order);
        for (std::size_t j = i + 1; j < gb.basis.size() && ok; ++j) {
            auto [mj, cj] = scope_lead(gb.basis[j], gb.scope, gb.order);
            Monomial l = Monomial::lcm(mi, mj);
            Polynomial spoly =
                poly_sub(poly_mul_term(gb.basis[i], Monomial::quotient(l, mi), 1 / ci),
                         poly_mul_term(gb.basis[j], Monomial::quotient(l, mj), 1 / cj));
            if (spoly.is_zero()) continue;
            ok = divide(spoly, gb.basis, gb.order, gb.scope).remainder.is_zero();
        }
    }

    // Membership verdicts must not depend on the order used for the basis.
    GroebnerBasis lex = buchberger(sp4_generators(vt), MonomialOrder::lex(), scope_matrix(vt));
    SplitMix64 rng(1);
    for (int t = 0; t < 50 && ok; ++t) {
        Polynomial probe = random_matrix_poly(vt, rng);
        if (t % 2 == 0) {
            // Half the probes are built inside the ideal.
            PolyBuilder b(vt);
            b.add_product(random_matrix_poly(vt, rng), gens[rng.below(gens.size())]);
            b.add_product(random_matrix_poly(vt, rng), gens[rng.below(gens.size())]);
            probe = b.take();
        }
        bool in_drl = member(probe, gb);
        bool in_lex = member(probe, lex);
        ok = in_drl == in_lex && (t % 2 != 0 || in_drl);
    }
    return ok;
}

bool all_hold(const StageReport& rep) {
    bool ok = !rep.claims.empty();
    for (const StageClaim& c : rep.claims) ok = ok && c.implied;
    return ok;
}

bool criterion_quat() {
    bool ok = find_q(6) == 5 && find_q(10) == 13 && find_q(15) == 53;

    // One construction per branch of the case analysis: each lambda with a
    // vanishing and a nonvanishing conjugator scalar coordinate.
    auto coords = [](long t, long y, long z, long w) {
        return std::array<Rational, 4>{Rational(t), Rational(y), Rational(z), Rational(w)};
    };
    const Integer q(5), delta(6);
    struct GridCase {
        LambdaCase lambda;
        std::array<Rational, 4> alpha;
    };
    std::vector<GridCase> grid = {
        {LambdaCase::i, coords(1, 0, 0, 0)}, {LambdaCase::i, coords(3, 1, 2, 7)},
        {LambdaCase::i, coords(0, 1, 0, 0)}, {LambdaCase::i, coords(0, 1, 0, 3)},
        {LambdaCase::j, coords(0, 0, 1, 0)}, {LambdaCase::j, coords(2, 0, 1, 0)},
        {LambdaCase::j, coords(1, 5, 1, 2)}, {LambdaCase::k, coords(1, 1, 1, 1)},
        {LambdaCase::k, coords(0, 1, 1, 1)},
    };
    for (const GridCase& g : grid) {
        MuResult res = find_mu(q, delta, g.lambda, g.alpha);
        ok = ok && trd(res.mu) == 0;
    }

    SplitMix64 rng(8);
    auto random_algebra = [&] {
        Rational a = small_rational(rng);
        Rational b = small_rational(rng);
        if (a == 0) a = 2;
        if (b == 0) b = 3;
        return QuatAlgebra(a, b);
    };
    for (int t = 0; t < 1000 && ok; ++t) {
        QuatAlgebra alg = random_algebra();
        QuatElement x = QuatElement::make(alg, small_rational(rng), small_rational(rng),
                                          small_rational(rng), small_rational(rng));
        QuatElement y = QuatElement::make(alg, small_rational(rng), small_rational(rng),
                                          small_rational(rng), small_rational(rng));
        ok = nrd(quat_mul(x, y)) == nrd(x) * nrd(y);
    }
    for (int t = 0; t < 1000 && ok; ++t) {
        QuatAlgebra alg = random_algebra();
        QuatElement alpha = QuatElement::make(alg, 0, small_rational(rng), small_rational(rng),
                                              small_rational(rng));
        while (nrd(alpha) == 0)
            alpha = QuatElement::make(alg, 0, small_rational(rng), small_rational(rng),
                                      small_rational(rng));
        QuatElement x = QuatElement::make(alg, small_rational(rng), small_rational(rng),
                                          small_rational(rng), small_rational(rng));
        ok = rosati(rosati(x, alpha), alpha) == x;
    }
    return ok;
}

bool criterion_trivial(const VarTable& vt, const RelationContext& ctx,
                       const GroebnerBasis& gb) {
    Polynomial zero = Polynomial::constant(vt, 0);
    Polynomial a11 = Polynomial::variable(vt, "a11");
    Polynomial scalar = substitute(
        ctx.rqmarch.poly,
        {{"a12", zero}, {"a21", zero}, {"b11", zero}, {"b12", zero}, {"b21", zero},
         {"b22", zero}, {"c12", zero}, {"c21", zero}, {"a22", a11}, {"c11", a11},
         {"c22", a11}, {"t1", zero}});
    bool ok = scalar.is_zero();

    std::vector<std::pair<std::string, Polynomial>> matched;
    for (const char* n : {"11", "12", "21", "22"}) {
        matched.emplace_back(std::string("A") + n, Polynomial::variable(vt, std::string("a") + n));
        matched.emplace_back(std::string("B") + n, Polynomial::variable(vt, std::string("b") + n));
        matched.emplace_back(std::string("C") + n, Polynomial::variable(vt, std::string("c") + n));
    }
    ok = ok && substitute(ctx.rqmord.poly, matched).is_zero();

    Polynomial f = parse_poly("1 - X11*X33 - X21*X43 + X13*X31 + X23*X41", vt);
    ok = ok && f == poly_neg(sp4_generators(vt)[1]);
    ok = ok && divide(f, gb.basis, gb.order, gb.scope).remainder.is_zero();
    return ok;
}

}  // namespace

int main() {
    const VarTable& vt = VarTable::standard();

    GroebnerBasis gb;
    run_criterion(1, "reduced basis under degrevlex, S-polynomials, order-independent membership",
                  [&] {
                      auto start = Clock::now();
                      gb = buchberger(sp4_generators(vt), MonomialOrder::degrevlex(),
                                      scope_matrix(vt));
                      double build = std::chrono::duration<double>(Clock::now() - start).count();
                      return build < 300.0 && gb.basis.size() == 16 && criterion_gb(vt, gb);
                  });

    RelationContext ctx = make_relation_context(vt);
    StageOptions opt;
    opt.basis = &gb;

    run_criterion(2, "family probe forces the ten archimedean constraints", [&] {
        auto start = Clock::now();
        StageReport rep = arch_stage1(ctx, opt);
        double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
        return elapsed < 120.0 && rep.claims.size() == 10 && all_hold(rep);
    });

    run_criterion(3, "constrained relation forces a11 = a22 and the t1 value", [&] {
        StageReport rep = arch_stage2(ctx, opt);
        return !rep.remainder_zero && rep.remainder_terms > 0 && rep.claims.size() == 2 &&
               rep.claims[0].constraint == "a11 - a22" && all_hold(rep);
    });

    run_criterion(4, "ordinary relation forces the seven block conditions", [&] {
        StageReport rep = ord_stage1(ctx, opt);
        return rep.claims.size() == 7 && all_hold(rep);
    });

    run_criterion(5, "commutator entries certified, converse instances behave", [&] {
        StageReport rep = ord_stage2(ctx, opt);
        return rep.claims.size() == 14 && all_hold(rep);
    });

    run_criterion(6, "twenty seeded transports preserve the ideal, never the relation", [&] {
        StageOptions topt = opt;
        topt.trials = 20;
        StageReport rep = supersingular_transport(ctx, topt);
        bool ok = rep.samples.size() == 20 && all_hold(rep);
        for (const StageSample& s : rep.samples)
            for (const auto& [name, verdict] : s.verdicts) ok = ok && verdict;
        return ok;
    });

    run_criterion(7, "period-shape and delta identities hold in seconds", [&] {
        auto s0 = Clock::now();
        StageReport shapes = shape_stage(vt);
        double t_shapes = std::chrono::duration<double>(Clock::now() - s0).count();
        auto s1 = Clock::now();
        StageReport delta = delta_identity_check(vt);
        double t_delta = std::chrono::duration<double>(Clock::now() - s1).count();
        return all_hold(shapes) && all_hold(delta) && shapes.claims.size() == 2 &&
               delta.claims.size() == 3 && t_shapes < 30.0 && t_delta < 30.0;
    });

    run_criterion(8, "quaternion constructions and 1000-pair properties", [&] {
        return criterion_quat();
    });

    run_criterion(9, "degenerate relations vanish and -f2 lies in the ideal", [&] {
        return criterion_trivial(vt, ctx, gb);
    });

    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
