#include "qmrel/relations.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "qmrel/errors.hpp"

namespace qmrel {

namespace {

Polynomial var(const VarTable& vt, const std::string& name) {
    return Polynomial::variable(vt, name);
}

std::vector<std::string> sorted_param_names(const Polynomial& f) {
    const VarTable& vt = f.table();
    std::set<std::string> names;
    for (const Term& t : f.terms())
        for (std::size_t i = 0; i < vt.size(); ++i)
            if (t.mono.exp(i) != 0 && !vt.is_matrix_var(i)) names.insert(vt.name(i));
    return {names.begin(), names.end()};
}

const std::vector<std::string> kLowerNames = {"a11", "a12", "a21", "a22", "b11", "b12",
                                              "b21", "b22", "c11", "c12", "c21", "c22"};
const std::vector<std::string> kCapitalNames = {"A11", "A12", "A21", "A22", "B11", "B12",
                                                "B21", "B22", "C11", "C12", "C21", "C22"};

// Every term must have degree 8 in the matrix variables, except that
// rqmarch carries the single extra term -t1.
void check_relation_terms(const Polynomial& p, const std::string& name, bool expect_t1) {
    const VarTable& vt = p.table();
    VarScope xs = scope_matrix(vt);
    Monomial t1_mono(vt.size());
    t1_mono.set_exp(vt.index("t1"), 1);
    std::size_t t1_terms = 0;
    for (const Term& t : p.terms()) {
        std::uint64_t dx = t.mono.degree_in(xs);
        if (dx == 8) continue;
        if (expect_t1 && dx == 0 && t.mono == t1_mono && t.coeff == Rational(-1)) {
            ++t1_terms;
            continue;
        }
        throw internal_error(name + ": unexpected term of matrix-degree " + std::to_string(dx));
    }
    if (expect_t1 && t1_terms != 1) throw internal_error(name + ": missing -t1 term");
}

void check_params_within(const RelationPolynomial& rp,
                         const std::vector<std::string>& allowed) {
    for (const std::string& n : rp.params_used)
        if (std::find(allowed.begin(), allowed.end(), n) == allowed.end())
            throw internal_error(rp.name + ": unexpected parameter " + n);
}

RelationPolynomial assemble_rqmarch(const VarTable& vt, const JConstants& jc,
                                    const SymMatrix& zalpha) {
    SymMatrix p = mat_mul(mat_mul(jc.J24T, zalpha), jc.J24);
    PolyBuilder acc(vt);
    acc.add_product(p.at(0, 2), p.at(2, 0));
    acc.add_product(p.at(0, 3), p.at(3, 0));
    acc.add_product(p.at(1, 2), p.at(2, 1));
    acc.add_product(p.at(1, 3), p.at(3, 1));
    Polynomial poly = poly_sub(acc.take(), var(vt, "t1"));

    RelationPolynomial rp{"Rqmarch", poly, sorted_param_names(poly)};
    check_relation_terms(poly, rp.name, true);
    std::vector<std::string> allowed = kLowerNames;
    allowed.push_back("t1");
    check_params_within(rp, allowed);
    return rp;
}

RelationPolynomial assemble_rqmord0(const JConstants& jc, const SymMatrix& zalpha) {
    SymMatrix r = mat_mul(mat_mul(jc.J0, zalpha), jc.J0inv);
    Polynomial poly = poly_sub(poly_mul(r.at(0, 1), r.at(1, 2)),
                               poly_mul(r.at(0, 3), r.at(1, 0)));
    RelationPolynomial rp{"Rqmord0", poly, sorted_param_names(poly)};
    check_relation_terms(poly, rp.name, false);
    check_params_within(rp, kLowerNames);
    return rp;
}

RelationPolynomial assemble_rqmord(const JConstants& jc, const SymMatrix& zalpha,
                                   const SymMatrix& zbeta) {
    SymMatrix r = mat_mul(mat_mul(jc.J0, zalpha), jc.J0inv);
    SymMatrix q = mat_mul(mat_mul(jc.J0, zbeta), jc.J0inv);
    Polynomial poly = poly_sub(poly_mul(r.at(0, 1), q.at(1, 0)),
                               poly_mul(r.at(1, 0), q.at(0, 1)));
    RelationPolynomial rp{"Rqmord", poly, sorted_param_names(poly)};
    check_relation_terms(poly, rp.name, false);
    std::vector<std::string> allowed = kLowerNames;
    allowed.insert(allowed.end(), kCapitalNames.begin(), kCapitalNames.end());
    check_params_within(rp, allowed);
    return rp;
}

SymMatrix z_of(const SymMatrix& adjy, const SymMatrix& m, const SymMatrix& y) {
    return mat_mul(mat_mul(adjy, m), y);
}

// Tags budget exhaustion with the stage that hit it.
template <typename Fn>
StageReport guarded(const std::string& stage, Fn&& fn) {
    try {
        return fn();
    } catch (const budget_error& e) {
        throw budget_error(stage + ": " + e.what());
    }
}

const GroebnerBasis& need_basis(const StageOptions& opt, const char* stage) {
    if (opt.basis == nullptr || opt.basis->basis.empty())
        throw usage_error(std::string(stage) +
                          " needs a Groebner basis of the symplectic quadrics; run gb first");
    return *opt.basis;
}

Polynomial monic(const Polynomial& p) {
    if (p.is_zero()) return p;
    return poly_scale(p, 1 / p.terms().front().coeff);
}

// One reduction pass over the collected coefficients. Each polynomial is
// divided by the ones already kept, and only nonzero remainders survive;
// the kept set generates the same ideal with far fewer elements, which
// keeps the pair queue of the basis computation small.
std::vector<Polynomial> interreduce(const std::vector<Polynomial>& gens, const MonomialOrder& ord,
                                    const VarScope& scope, const Budget& budget) {
    std::vector<Polynomial> sorted = gens;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const Polynomial& x, const Polynomial& y) {
                         return x.term_count() < y.term_count();
                     });
    std::vector<Polynomial> kept;
    for (const Polynomial& g : sorted) {
        if (g.is_zero()) continue;
        Polynomial r = kept.empty() ? g : divide(g, kept, ord, scope, budget).remainder;
        if (!r.is_zero()) kept.push_back(monic(r));
    }
    return kept;
}

struct CoefficientCollection {
    std::vector<Polynomial> gens;
    std::vector<std::pair<std::string, std::string>> listing;
};

CoefficientCollection collect_coefficients(const Polynomial& f, const VarScope& scope,
                                           const MonomialOrder& ord) {
    const VarTable& vt = f.table();
    CoefficientCollection out;
    for (const auto& [mono, coeff] : coefficient_rules(f, scope, ord)) {
        out.listing.emplace_back(canonical_text(Polynomial::term(vt, mono, Rational(1))),
                                 canonical_text(coeff));
        out.gens.push_back(coeff);
    }
    return out;
}

// Reduced basis of the ideal generated by the stage's coefficient
// polynomials, with the optional t1 elimination applied first.
GroebnerBasis coefficient_basis(const VarTable& vt, std::vector<Polynomial> gens,
                                const StageOptions& opt, StageReport& rep) {
    MonomialOrder ord = MonomialOrder::degrevlex();
    VarScope all = scope_all(vt);
    gens = interreduce(gens, ord, all, opt.budget);
    if (gens.empty()) throw internal_error(rep.stage + ": coefficient ideal is zero");
    if (opt.eliminate_t1) {
        std::size_t t1 = vt.index("t1");
        bool uses = false;
        for (const Polynomial& g : gens)
            for (const Term& t : g.terms())
                if (t.mono.exp(t1) != 0) uses = true;
        if (uses) {
            gens = eliminate_variable(gens, t1, opt.budget);
            std::string note =
                "t1 was eliminated from the coefficient ideal before the implication checks";
            if (std::find(rep.assumptions.begin(), rep.assumptions.end(), note) ==
                rep.assumptions.end())
                rep.assumptions.push_back(note);
            if (gens.empty())
                throw internal_error(rep.stage + ": elimination left no coefficient generators");
        }
    }
    return buchberger(gens, ord, all, opt.budget);
}

void claim_implied(StageReport& rep, const Polynomial& constraint, const GroebnerBasis& cgb,
                   const Budget& budget) {
    ImpliedOutcome out = implied_by(constraint, cgb, budget);
    std::string text = canonical_text(constraint);
    rep.claims.push_back(StageClaim{text, out.implied});
    if (out.implied && out.level != ImpliedLevel::ideal)
        rep.assumptions.push_back(text + ": certified by " + out.describe());
}

void note_primality_assumption(StageReport& rep) {
    rep.assumptions.push_back(
        "the ideal of the six symplectic quadrics is assumed prime; "
        "primality is not verified here");
}

std::map<std::size_t, Polynomial> matrix_substitution(const VarTable& vt, const SymMatrix& s) {
    std::map<std::size_t, Polynomial> subs;
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) {
            std::string name = "X" + std::to_string(r + 1) + std::to_string(c + 1);
            subs.emplace(vt.index(name), s.at(r, c));
        }
    return subs;
}

std::vector<std::pair<std::string, Polynomial>> forced_ordinary_conditions(
    const VarTable& vt, bool capital) {
    auto n = [&](const char* lower, const char* upper) { return capital ? upper : lower; };
    Polynomial zero(vt);
    return {
        {n("b11", "B11"), zero},
        {n("b22", "B22"), zero},
        {n("b12", "B12"), poly_neg(var(vt, n("b21", "B21")))},
        {n("a11", "A11"), var(vt, n("c11", "C11"))},
        {n("a21", "A21"), var(vt, n("c12", "C12"))},
        {n("a12", "A12"), var(vt, n("c21", "C21"))},
        {n("a22", "A22"), var(vt, n("c22", "C22"))},
    };
}

}  // namespace

SymMatrix z_matrix(const SymMatrix& m) {
    SymMatrix y = generic_Y(m.table());
    return z_of(adjugate(y), m, y);
}

RelationPolynomial build_rqmarch(const VarTable& vt) {
    return assemble_rqmarch(vt, JConstants::make(vt),
                            z_matrix(generic_block_lower(vt, BlockFamily::lowercase)));
}

RelationPolynomial build_rqmord0(const VarTable& vt) {
    return assemble_rqmord0(JConstants::make(vt),
                            z_matrix(generic_block_lower(vt, BlockFamily::lowercase)));
}

RelationPolynomial build_rqmord(const VarTable& vt) {
    return assemble_rqmord(JConstants::make(vt),
                           z_matrix(generic_block_lower(vt, BlockFamily::lowercase)),
                           z_matrix(generic_block_lower(vt, BlockFamily::capital)));
}

RelationContext make_relation_context(const VarTable& vt) {
    JConstants jc = JConstants::make(vt);
    SymMatrix y = generic_Y(vt);
    SymMatrix adjy = adjugate(y);
    SymMatrix alpha = generic_block_lower(vt, BlockFamily::lowercase);
    SymMatrix beta = generic_block_lower(vt, BlockFamily::capital);
    SymMatrix zalpha = z_of(adjy, alpha, y);
    SymMatrix zbeta = z_of(adjy, beta, y);
    RelationPolynomial rqmarch = assemble_rqmarch(vt, jc, zalpha);
    RelationPolynomial rqmord0 = assemble_rqmord0(jc, zalpha);
    RelationPolynomial rqmord = assemble_rqmord(jc, zalpha, zbeta);
    return RelationContext{&vt,  jc,     y,       adjy,    alpha, beta,
                           zalpha, zbeta, rqmarch, rqmord0, rqmord};
}

Polynomial rqmarch_transported(const RelationContext& ctx, const SymMatrix& t) {
    const VarTable& vt = *ctx.vt;
    SymMatrix zt = mat_mul(mat_mul(adjugate(t), ctx.Zalpha), t);
    SymMatrix p = mat_mul(mat_mul(ctx.jc.J24T, zt), ctx.jc.J24);
    PolyBuilder acc(vt);
    acc.add_product(p.at(0, 2), p.at(2, 0));
    acc.add_product(p.at(0, 3), p.at(3, 0));
    acc.add_product(p.at(1, 2), p.at(2, 1));
    acc.add_product(p.at(1, 3), p.at(3, 1));
    return poly_sub(acc.take(), var(vt, "t1"));
}

bool StageReport::all_claims_hold() const {
    for (const StageClaim& c : claims)
        if (!c.implied) return false;
    return true;
}

std::string StageReport::to_json() const {
    nlohmann::ordered_json j;
    j["stage"] = stage;
    j["claims"] = nlohmann::ordered_json::array();
    for (const StageClaim& c : claims)
        j["claims"].push_back({{"constraint", c.constraint}, {"implied", c.implied}});
    j["remainder_terms"] = remainder_terms;
    j["remainder_zero"] = remainder_zero;
    j["assumptions"] = assumptions;
    j["samples"] = nlohmann::ordered_json::array();
    for (const StageSample& s : samples) {
        nlohmann::ordered_json v = nlohmann::ordered_json::object();
        for (const auto& [name, ok] : s.verdicts) v[name] = ok;
        j["samples"].push_back({{"seed", s.seed}, {"verdicts", v}});
    }
    return j.dump(2);
}

std::string StageReport::to_text() const {
    std::ostringstream os;
    os << "stage: " << stage << "\n";
    for (const StageClaim& c : claims)
        os << "  claim: " << c.constraint << " -> " << (c.implied ? "holds" : "FAILS") << "\n";
    os << "  remainder: "
       << (remainder_zero ? std::string("zero")
                          : std::to_string(remainder_terms) + " terms")
       << "\n";
    for (const std::string& a : assumptions) os << "  note: " << a << "\n";
    for (const StageSample& s : samples) {
        os << "  sample " << s.seed << ":";
        for (const auto& [name, ok] : s.verdicts) os << " " << name << "=" << (ok ? "yes" : "no");
        os << "\n";
    }
    os << "  " << (all_claims_hold() ? "all claims hold" : "SOME CLAIMS FAILED") << "\n";
    return os.str();
}

StageReport arch_stage1(const RelationContext& ctx, const StageOptions& opt) {
    return guarded("arch1", [&] {
        const VarTable& vt = *ctx.vt;
        StageReport rep;
        rep.stage = "arch1";

        SymMatrix s = symplectic_family_generic(vt);
        SymMatrix zs = z_of(adjugate(s), ctx.alpha_dr, s);
        SymMatrix p = mat_mul(mat_mul(ctx.jc.J24T, zs), ctx.jc.J24);
        PolyBuilder acc(vt);
        acc.add_product(p.at(0, 2), p.at(2, 0));
        acc.add_product(p.at(0, 3), p.at(3, 0));
        acc.add_product(p.at(1, 2), p.at(2, 1));
        acc.add_product(p.at(1, 3), p.at(3, 1));
        Polynomial g = poly_sub(acc.take(), var(vt, "t1"));
        rep.remainder_terms = g.term_count();
        rep.remainder_zero = g.is_zero();

        VarScope family = scope_of(vt, {"l", "m", "n", "p", "q", "r"});
        CoefficientCollection cc = collect_coefficients(g, family, MonomialOrder::degrevlex());
        rep.coefficients = cc.listing;
        bool any_nonzero = false;
        for (const Polynomial& c : cc.gens)
            if (!c.is_zero()) any_nonzero = true;
        if (cc.gens.empty() || !any_nonzero)
            throw internal_error("arch1: the family substitution produced no coefficients");

        GroebnerBasis cgb = coefficient_basis(vt, cc.gens, opt, rep);
        std::vector<Polynomial> constraints = {
            var(vt, "b11"), var(vt, "b12"), var(vt, "b21"), var(vt, "b22"),
            var(vt, "a12"), var(vt, "a21"), var(vt, "c12"), var(vt, "c21"),
            poly_sub(var(vt, "a11"), var(vt, "c11")),
            poly_sub(var(vt, "a22"), var(vt, "c22")),
        };
        std::vector<ImpliedOutcome> outcomes;
        std::vector<std::string> notes(constraints.size());
        bool need_fallback = false;
        for (std::size_t i = 0; i < constraints.size(); ++i) {
            outcomes.push_back(implied_by(constraints[i], cgb, opt.budget));
            if (!outcomes.back().implied)
                need_fallback = true;
            else if (outcomes.back().level != ImpliedLevel::ideal)
                notes[i] = canonical_text(constraints[i]) + ": certified by " +
                           outcomes.back().describe();
        }

        // The family probe certifies the product b12*b21 but not either
        // factor: the parameter point with every entry scalar except a free
        // b12 kills all its coefficients. The vanishing hypothesis itself is
        // stronger, so undecided constraints are retried against the
        // coefficients of the relation reduced modulo the quadric basis,
        // which encode that hypothesis exactly.
        if (need_fallback) {
            GroebnerBasis local;
            const GroebnerBasis* quadrics = opt.basis;
            if (quadrics == nullptr || quadrics->basis.empty()) {
                local = buchberger(sp4_generators(vt), MonomialOrder::degrevlex(),
                                   scope_matrix(vt), opt.budget);
                quadrics = &local;
            }
            Polynomial rho = divide(ctx.rqmarch.poly, quadrics->basis, quadrics->order,
                                    quadrics->scope, opt.budget)
                                 .remainder;
            CoefficientCollection full = collect_coefficients(rho, quadrics->scope,
                                                              quadrics->order);
            GroebnerBasis fgb = coefficient_basis(vt, full.gens, opt, rep);
            for (std::size_t i = 0; i < constraints.size(); ++i) {
                if (outcomes[i].implied) continue;
                ImpliedOutcome retry = implied_by(constraints[i], fgb, opt.budget);
                if (retry.implied) {
                    outcomes[i] = retry;
                    notes[i] = canonical_text(constraints[i]) +
                               ": not implied by the family coefficient ideal; certified by " +
                               retry.describe() +
                               " against the coefficients of the relation reduced modulo the "
                               "quadric basis";
                }
            }
        }
        for (std::size_t i = 0; i < constraints.size(); ++i) {
            rep.claims.push_back(StageClaim{canonical_text(constraints[i]), outcomes[i].implied});
            if (!notes[i].empty()) rep.assumptions.push_back(notes[i]);
        }
        note_primality_assumption(rep);
        return rep;
    });
}

StageReport arch_stage2(const RelationContext& ctx, const StageOptions& opt) {
    return guarded("arch2", [&] {
        const VarTable& vt = *ctx.vt;
        const GroebnerBasis& gb = need_basis(opt, "arch2");
        StageReport rep;
        rep.stage = "arch2";

        Polynomial zero(vt);
        Polynomial a11 = var(vt, "a11");
        Polynomial a22 = var(vt, "a22");
        Polynomial constrained = substitute(
            ctx.rqmarch.poly,
            {{"b11", zero}, {"b12", zero}, {"b21", zero}, {"b22", zero},
             {"a12", zero}, {"a21", zero}, {"c12", zero}, {"c21", zero},
             {"c11", a11}, {"c22", a22}});
        Polynomial rho = divide(constrained, gb.basis, gb.order, gb.scope, opt.budget).remainder;
        rep.remainder_terms = rho.term_count();
        rep.remainder_zero = rho.is_zero();
        if (rho.is_zero())
            throw internal_error("arch2: the constrained relation reduced to zero outright");

        auto rules = coefficient_rules(rho, gb.scope, gb.order);
        std::vector<Polynomial> gens;
        Polynomial constant_coeff(vt);
        bool have_constant = false;
        for (const auto& [mono, coeff] : rules) {
            rep.coefficients.emplace_back(canonical_text(Polynomial::term(vt, mono, Rational(1))),
                                          canonical_text(coeff));
            gens.push_back(coeff);
            if (mono.degree() == 0) {
                constant_coeff = coeff;
                have_constant = true;
            }
        }
        GroebnerBasis cgb = coefficient_basis(vt, gens, opt, rep);
        claim_implied(rep, poly_sub(a11, a22), cgb, opt.budget);

        // The coefficient of the constant matrix monomial pins down t1:
        // it has the shape h(a11, a22) - t1, so h is read off by adding
        // t1 back and checking that t1 is gone.
        if (!have_constant)
            throw internal_error("arch2: remainder has no constant matrix-monomial coefficient");
        Polynomial t1 = var(vt, "t1");
        Polynomial h = poly_add(constant_coeff, t1);
        VarScope no_t1 = scope_complement(scope_of(vt, {"t1"}));
        if (!h.uses_only(no_t1))
            throw internal_error("arch2: constant coefficient is not linear in t1");

        // Substitutions are sequential on purpose: the t1 value still
        // mentions a22, so a22 -> a11 must run after it.
        Polynomial finished = substitute(substitute(rho, {{"t1", h}}), {{"a22", a11}});
        Polynomial full = substitute(substitute(constrained, {{"t1", h}}), {{"a22", a11}});
        Polynomial full_reduced = divide(full, gb.basis, gb.order, gb.scope, opt.budget).remainder;
        bool closes = finished.is_zero() && full_reduced.is_zero();
        rep.claims.push_back(StageClaim{canonical_text(poly_sub(t1, h)), closes});
        rep.assumptions.push_back(
            "the t1 relation is read off the constant-coefficient entry of the remainder "
            "and confirmed by reduction to zero");
        note_primality_assumption(rep);
        return rep;
    });
}

StageReport ord_stage1(const RelationContext& ctx, const StageOptions& opt) {
    return guarded("ord1", [&] {
        const VarTable& vt = *ctx.vt;
        const GroebnerBasis& gb = need_basis(opt, "ord1");
        StageReport rep;
        rep.stage = "ord1";

        Polynomial rho =
            divide(ctx.rqmord0.poly, gb.basis, gb.order, gb.scope, opt.budget).remainder;
        rep.remainder_terms = rho.term_count();
        rep.remainder_zero = rho.is_zero();
        if (rho.is_zero())
            throw internal_error("ord1: the relation reduced to zero outright");

        CoefficientCollection cc = collect_coefficients(rho, gb.scope, gb.order);
        rep.coefficients = cc.listing;
        GroebnerBasis cgb = coefficient_basis(vt, cc.gens, opt, rep);
        std::vector<Polynomial> constraints = {
            var(vt, "b11"),
            var(vt, "b22"),
            poly_add(var(vt, "b12"), var(vt, "b21")),
            poly_sub(var(vt, "a11"), var(vt, "c11")),
            poly_sub(var(vt, "a21"), var(vt, "c12")),
            poly_sub(var(vt, "a12"), var(vt, "c21")),
            poly_sub(var(vt, "a22"), var(vt, "c22")),
        };
        for (const Polynomial& c : constraints) claim_implied(rep, c, cgb, opt.budget);
        note_primality_assumption(rep);
        return rep;
    });
}

StageReport ord_stage2(const RelationContext& ctx, const StageOptions& opt) {
    return guarded("ord2", [&] {
        const VarTable& vt = *ctx.vt;
        const GroebnerBasis& gb = need_basis(opt, "ord2");
        StageReport rep;
        rep.stage = "ord2";

        auto lower = forced_ordinary_conditions(vt, false);
        auto upper = forced_ordinary_conditions(vt, true);
        auto both = lower;
        both.insert(both.end(), upper.begin(), upper.end());
        Polynomial constrained = substitute(ctx.rqmord.poly, both);
        Polynomial rho = divide(constrained, gb.basis, gb.order, gb.scope, opt.budget).remainder;
        rep.remainder_terms = rho.term_count();
        rep.remainder_zero = rho.is_zero();
        if (rho.is_zero())
            throw internal_error("ord2: the constrained relation reduced to zero outright");

        CoefficientCollection cc = collect_coefficients(rho, gb.scope, gb.order);
        rep.coefficients = cc.listing;
        GroebnerBasis cgb = coefficient_basis(vt, cc.gens, opt, rep);

        SymMatrix alpha_c = substitute(ctx.alpha_dr, lower);
        SymMatrix beta_c = substitute(ctx.beta_dr, upper);
        SymMatrix comm = mat_sub(mat_mul(alpha_c, beta_c), mat_mul(beta_c, alpha_c));
        std::vector<Polynomial> entries;
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c)
                if (!comm.at(r, c).is_zero()) entries.push_back(comm.at(r, c));
        if (entries.empty())
            throw internal_error("ord2: constrained families commute identically");
        for (const Polynomial& e : entries) claim_implied(rep, e, cgb, opt.budget);

        // Informative converse: how many remainder coefficients already lie
        // in the ideal spanned by the commutator entries.
        GroebnerBasis egb =
            buchberger(entries, MonomialOrder::degrevlex(), scope_all(vt), opt.budget);
        std::size_t inside = 0;
        for (const Polynomial& c : cc.gens)
            if (member(c, egb, opt.budget)) ++inside;
        rep.assumptions.push_back(
            "converse check (informative): " + std::to_string(inside) + " of " +
            std::to_string(cc.gens.size()) +
            " remainder coefficients lie in the ideal of the commutator entries");

        // Converse instances. Substituting parameter values into the
        // remainder gives the remainder of the instantiated relation, so an
        // anticommuting pair must leave it nonzero and equal parameter sets
        // must cancel it.
        Polynomial one = Polynomial::constant(vt, Rational(1));
        Polynomial zero = Polynomial::constant(vt, Rational(0));
        Polynomial anti = substitute(rho, {{"c11", one},
                                           {"c12", zero},
                                           {"c21", zero},
                                           {"c22", Polynomial::constant(vt, Rational(-1))},
                                           {"b21", one},
                                           {"C11", zero},
                                           {"C12", one},
                                           {"C21", one},
                                           {"C22", zero},
                                           {"B21", zero}});
        rep.claims.push_back(StageClaim{
            "an explicitly anticommuting instance leaves a nonzero remainder", !anti.is_zero()});
        Polynomial matched = substitute(rho, {{"C11", var(vt, "c11")},
                                              {"C12", var(vt, "c12")},
                                              {"C21", var(vt, "c21")},
                                              {"C22", var(vt, "c22")},
                                              {"B21", var(vt, "b21")}});
        rep.claims.push_back(
            StageClaim{"matching parameter sets reduce the remainder to zero", matched.is_zero()});
        note_primality_assumption(rep);
        return rep;
    });
}

StageReport supersingular_transport(const RelationContext& ctx, const StageOptions& opt) {
    return guarded("ssing", [&] {
        const VarTable& vt = *ctx.vt;
        const GroebnerBasis& gb = need_basis(opt, "ssing");
        StageReport rep;
        rep.stage = "ssing";
        if (opt.trials <= 0) throw usage_error("ssing: trials must be positive");

        Polynomial base_remainder =
            divide(ctx.rqmarch.poly, gb.basis, gb.order, gb.scope, opt.budget).remainder;
        rep.remainder_terms = base_remainder.term_count();
        rep.remainder_zero = base_remainder.is_zero();
        bool base_member = base_remainder.is_zero();

        std::vector<Polynomial> quadrics = sp4_generators(vt);
        bool all_quadrics = true;
        bool all_outside = true;
        for (int k = 0; k < opt.trials; ++k) {
            std::uint64_t seed = opt.seed + static_cast<std::uint64_t>(k);
            SymMatrix t = numeric_symplectic_T(vt, seed);
            SymMatrix yt = mat_mul(generic_Y(vt), t);
            auto subs = matrix_substitution(vt, yt);
            bool quadrics_in = true;
            for (const Polynomial& f : quadrics)
                if (!member(substitute(f, subs), gb, opt.budget)) quadrics_in = false;
            bool transported_member = member(rqmarch_transported(ctx, t), gb, opt.budget);
            StageSample sample;
            sample.seed = seed;
            sample.verdicts.emplace_back("quadric_transports_in_ideal", quadrics_in);
            sample.verdicts.emplace_back("relation_transport_outside_ideal", !transported_member);
            sample.verdicts.emplace_back("membership_preserved",
                                         transported_member == base_member);
            rep.samples.push_back(std::move(sample));
            all_quadrics = all_quadrics && quadrics_in;
            all_outside = all_outside && !transported_member;
        }
        rep.claims.push_back(
            StageClaim{"the six quadrics stay in the ideal under every sampled X -> X*T",
                       all_quadrics});
        rep.claims.push_back(StageClaim{
            "the relation polynomial stays outside the ideal under every sampled X -> X*T",
            all_outside});
        rep.claims.push_back(
            StageClaim{"the relation polynomial itself lies outside the ideal", !base_member});
        note_primality_assumption(rep);
        return rep;
    });
}

StageReport shape_stage(const VarTable& vt) {
    StageReport rep;
    rep.stage = "shapes";
    rep.remainder_zero = true;

    Mat2 d{var(vt, "pi11"), var(vt, "pi12"), var(vt, "pi21"), var(vt, "pi22")};
    SymMatrix m = mat_mul(JConstants::make(vt).J24, block_diag(d, mat2_adj(mat2_transpose(d))));
    rep.claims.push_back(
        StageClaim{"J24 diag(D, adj(D^T)) satisfies the cleared bilinear identity "
                   "with scalar det(D)",
                   riemann_check(m, mat2_det(d))});
    rep.claims.push_back(
        StageClaim{"the two cleared period patterns agree under Pi = D diag(1, -1)",
                   period_shape_equivalence(vt)});
    return rep;
}

StageReport delta_identity_check(const VarTable& vt) {
    StageReport rep;
    rep.stage = "delta";
    rep.remainder_zero = true;

    Mat2 pi{var(vt, "pi11"), var(vt, "pi12"), var(vt, "pi21"), var(vt, "pi22")};
    Mat2 adjpi = mat2_adj(pi);
    Polynomial zero(vt);
    auto diag = [&](const char* u, const char* v) {
        return Mat2{var(vt, u), zero, zero, var(vt, v)};
    };
    auto conj = [&](const Mat2& k) { return mat2_mul(mat2_mul(pi, k), adjpi); };
    Mat2 a = conj(diag("d11", "e22"));
    Mat2 b = conj(diag("d12", "e21"));
    Mat2 a_cap = conj(diag("D11", "E22"));
    Mat2 b_cap = conj(diag("D12", "E21"));

    auto cross = [](const Mat2& x, const Mat2& y) {
        return poly_sub(poly_mul(x.b, y.c), poly_mul(x.c, y.b));
    };
    rep.claims.push_back(
        StageClaim{"Z12 Z23 - Z21 Z14 vanishes after clearing det(pi), lowercase spectrum",
                   cross(a, b).is_zero()});
    rep.claims.push_back(
        StageClaim{"Z12 Z23 - Z21 Z14 vanishes after clearing det(pi), capital spectrum",
                   cross(a_cap, b_cap).is_zero()});
    rep.claims.push_back(
        StageClaim{"the mixed-family relation vanishes after clearing det(pi)^2",
                   cross(a, a_cap).is_zero()});
    return rep;
}

}  // namespace qmrel
