#include "qmrel/groebner.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <set>
#include <utility>

#include "qmrel/errors.hpp"

namespace qmrel {

namespace {

// ---------------------------------------------------------------- budgets

struct Meter {
    const Budget* budget;
    std::uint64_t bytes_per_term;
    std::string context;
    std::uint64_t steps = 0;
    std::uint64_t live_terms = 0;

    Meter(const Budget& b, std::size_t width, std::string ctx)
        : budget(&b), bytes_per_term(width * sizeof(std::uint32_t) + 48),
          context(std::move(ctx)) {}

    void charge(std::uint64_t n) {
        steps += n;
        if (steps > budget->max_steps) overflow("step budget");
    }

    void live(std::uint64_t terms) {
        live_terms = terms;
        if (live_terms * bytes_per_term > budget->max_term_bytes)
            overflow("term storage budget");
    }

    [[noreturn]] void overflow(const char* which) {
        throw budget_error(std::string(which) + " exhausted during " + context + " after " +
                           std::to_string(steps) + " steps with about " +
                           std::to_string(live_terms * bytes_per_term / (1024 * 1024)) +
                           " MiB of live terms");
    }
};

// ------------------------------------------------- scoped term comparison

int lex_range_cmp(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
        std::uint32_t x = a.exp(i), y = b.exp(i);
        if (x != y) return x > y ? 1 : -1;
    }
    return 0;
}

int degrevlex_range_cmp(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
    std::uint64_t da = 0, db = 0;
    for (std::size_t i = lo; i < hi; ++i) {
        da += a.exp(i);
        db += b.exp(i);
    }
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t i = hi; i-- > lo;) {
        std::uint32_t x = a.exp(i), y = b.exp(i);
        if (x != y) return x < y ? 1 : -1;
    }
    return 0;
}

// Comparison of scope parts plus a total tie-break on the full monomial.
// The scopes used on hot paths select a prefix of the table, which admits
// a range-based comparison with no temporary monomials.
struct ScopedCmp {
    const VarTable* vt;
    MonomialOrder ord;
    const VarScope* scope;
    std::optional<std::size_t> prefix;

    ScopedCmp(const VarTable& table, const MonomialOrder& o, const VarScope& s)
        : vt(&table), ord(o), scope(&s) {
        std::size_t k = 0;
        while (k < s.size() && s[k]) ++k;
        bool is_prefix = true;
        for (std::size_t i = k; i < s.size(); ++i)
            if (s[i]) is_prefix = false;
        if (is_prefix) prefix = k;
    }

    int scope_cmp(const Monomial& a, const Monomial& b) const {
        if (prefix) {
            std::size_t k = *prefix;
            switch (ord.kind()) {
                case OrderKind::lex:
                    return lex_range_cmp(a, b, 0, k);
                case OrderKind::degrevlex:
                    return degrevlex_range_cmp(a, b, 0, k);
                case OrderKind::block: {
                    std::size_t mc = std::min(vt->matrix_count(), k);
                    int c = degrevlex_range_cmp(a, b, 0, mc);
                    if (c != 0) return c;
                    return degrevlex_range_cmp(a, b, mc, k);
                }
            }
        }
        return ord.compare(a.restricted(*scope), b.restricted(*scope), *vt);
    }

    // Strict "greater" for sorting working polynomials descending.
    bool term_greater(const Term& x, const Term& y) const {
        int c = scope_cmp(x.mono, y.mono);
        if (c != 0) return c > 0;
        return MonomialOrder::block().compare(x.mono, y.mono, *vt) > 0;
    }
};

// Working polynomial: term vector sorted descending under ScopedCmp.
using WPoly = std::vector<Term>;

WPoly to_work(const Polynomial& f, const ScopedCmp& cmp) {
    WPoly w = f.terms();
    std::sort(w.begin(), w.end(),
              [&](const Term& a, const Term& b) { return cmp.term_greater(a, b); });
    return w;
}

// Working polynomial held as a ladder of sorted runs with geometrically
// growing capacities. Adding a rewrite product merges it into a run of
// comparable size, so a reduction step never rebuilds the whole
// polynomial. Equal monomials may sit in different runs until a merge or
// pop joins them, which is why a popped group can cancel to nothing.
class Geobucket {
public:
    Geobucket(WPoly initial, const ScopedCmp& cmp) : cmp_(&cmp) { add(std::move(initial)); }

    void add(WPoly v) {
        if (!v.empty()) place(std::move(v));
    }

    bool drained() const {
        for (const Rung& r : rungs_)
            if (r.head < r.terms.size()) return false;
        return true;
    }

    std::uint64_t live() const {
        std::uint64_t n = 0;
        for (const Rung& r : rungs_) n += r.terms.size() - r.head;
        return n;
    }

    // All live terms whose scope part matches the current maximum, merged
    // and zero-pruned; empty when those terms cancelled each other out.
    WPoly pop_leading_group() {
        const Rung* best = nullptr;
        for (const Rung& r : rungs_) {
            if (r.head >= r.terms.size()) continue;
            if (best == nullptr ||
                cmp_->scope_cmp(r.terms[r.head].mono, best->terms[best->head].mono) > 0)
                best = &r;
        }
        if (best == nullptr) return {};
        Monomial lead = best->terms[best->head].mono;
        WPoly group;
        for (Rung& r : rungs_) {
            while (r.head < r.terms.size() &&
                   cmp_->scope_cmp(r.terms[r.head].mono, lead) == 0) {
                group.push_back(std::move(r.terms[r.head]));
                ++r.head;
            }
            if (r.head == r.terms.size()) {
                r.terms.clear();
                r.head = 0;
            }
        }
        std::sort(group.begin(), group.end(),
                  [&](const Term& a, const Term& b) { return cmp_->term_greater(a, b); });
        WPoly merged;
        merged.reserve(group.size());
        for (Term& t : group) {
            if (!merged.empty() && merged.back().mono == t.mono) {
                merged.back().coeff += t.coeff;
                if (merged.back().coeff == 0) merged.pop_back();
            } else {
                merged.push_back(std::move(t));
            }
        }
        return merged;
    }

private:
    struct Rung {
        WPoly terms;
        std::size_t head = 0;
    };

    static std::size_t cap(std::size_t k) { return std::size_t(64) << (2 * k); }

    // Merge-add of two sorted duplicate-free runs, dropping zero sums.
    WPoly merge(const WPoly& a, std::size_t ahead, WPoly b) const {
        WPoly out;
        out.reserve((a.size() - ahead) + b.size());
        std::size_t i = ahead, j = 0;
        while (i < a.size() && j < b.size()) {
            if (a[i].mono == b[j].mono) {
                Rational s = a[i].coeff + b[j].coeff;
                if (s != 0) out.push_back(Term{a[i].mono, std::move(s)});
                ++i;
                ++j;
            } else if (cmp_->term_greater(a[i], b[j])) {
                out.push_back(a[i++]);
            } else {
                out.push_back(std::move(b[j++]));
            }
        }
        for (; i < a.size(); ++i) out.push_back(a[i]);
        for (; j < b.size(); ++j) out.push_back(std::move(b[j]));
        return out;
    }

    void place(WPoly v) {
        std::size_t k = 0;
        while (cap(k) < v.size()) ++k;
        while (true) {
            if (k >= rungs_.size()) rungs_.resize(k + 1);
            Rung& r = rungs_[k];
            if (r.head >= r.terms.size()) {
                r.terms = std::move(v);
                r.head = 0;
                return;
            }
            v = merge(r.terms, r.head, std::move(v));
            r.terms.clear();
            r.head = 0;
            if (v.empty()) return;
            if (v.size() <= cap(k)) {
                r.terms = std::move(v);
                return;
            }
            ++k;
        }
    }

    const ScopedCmp* cmp_;
    std::vector<Rung> rungs_;
};

// A divisor with a validated leading term: the scope part of its lead, and
// the rational constant standing in front of it.
struct Divisor {
    const Polynomial* g;
    Monomial lead_scope;
    Rational lc;
};

Divisor prepare_divisor(const Polynomial& g, const ScopedCmp& cmp, const VarScope& scope) {
    if (g.is_zero()) throw usage_error("zero polynomial used as a divisor");
    const Term* lead = &g.terms()[0];
    for (const Term& t : g.terms())
        if (cmp.term_greater(t, *lead)) lead = &t;
    Monomial ls = lead->mono.restricted(scope);
    // The whole coefficient group of the leading scope monomial must be
    // the single term "constant * scope monomial".
    for (const Term& t : g.terms()) {
        if (&t == lead) continue;
        if (cmp.scope_cmp(t.mono, lead->mono) == 0)
            throw unsupported_domain_error(
                "divisor leading coefficient is not a rational constant: " + canonical_text(g));
    }
    if (lead->mono != ls)
        throw unsupported_domain_error(
            "divisor leading coefficient is not a rational constant: " + canonical_text(g));
    return Divisor{&g, std::move(ls), lead->coeff};
}

DivisionResult divide_impl(const Polynomial& f, const std::vector<Divisor>& divisors,
                           const ScopedCmp& cmp, const VarScope& scope, Meter& meter) {
    Geobucket work(to_work(f, cmp), cmp);
    WPoly rem;
    WPoly product;
    Monomial last_lead(0);
    bool have_last = false;
    while (!work.drained()) {
        // The leading group: the live terms sharing the maximal scope part.
        WPoly group = work.pop_leading_group();
        if (group.empty()) continue;
        if (have_last && cmp.scope_cmp(group[0].mono, last_lead) >= 0)
            throw internal_error("division step failed to lower the leading scope monomial");
        last_lead = group[0].mono;
        have_last = true;
        Monomial mu = group[0].mono.restricted(scope);

        const Divisor* chosen = nullptr;
        for (const Divisor& d : divisors) {
            if (Monomial::divides(d.lead_scope, mu)) {
                chosen = &d;
                break;
            }
        }
        if (!chosen) {
            meter.charge(group.size());
            for (Term& t : group) rem.push_back(std::move(t));
            continue;
        }

        // The divisor's leading term cancels the group exactly, so the
        // rewrite product is built from the tail terms only.
        Monomial q = Monomial::quotient(mu, chosen->lead_scope);
        product.clear();
        product.reserve(group.size() * chosen->g->term_count());
        for (const Term& gt : group) {
            Monomial param_part = Monomial::quotient(gt.mono, mu);
            Monomial shift = Monomial::mul(param_part, q);
            Rational factor = gt.coeff / chosen->lc;
            for (const Term& t : chosen->g->terms()) {
                if (t.mono == chosen->lead_scope) continue;
                product.push_back(Term{Monomial::mul(shift, t.mono), -(factor * t.coeff)});
            }
        }
        std::sort(product.begin(), product.end(),
                  [&](const Term& a, const Term& b) { return cmp.term_greater(a, b); });
        WPoly packed;
        packed.reserve(product.size());
        for (Term& t : product) {
            if (!packed.empty() && packed.back().mono == t.mono) {
                packed.back().coeff += t.coeff;
                if (packed.back().coeff == 0) packed.pop_back();
            } else {
                packed.push_back(std::move(t));
            }
        }
        meter.charge(group.size() + packed.size());
        work.add(std::move(packed));
        meter.live(work.live() + rem.size());
    }
    std::vector<Term> rem_terms(rem.begin(), rem.end());
    return DivisionResult{Polynomial::from_terms(f.table(), std::move(rem_terms)), meter.steps};
}

std::vector<Divisor> prepare_divisors(const Polynomial& f, const std::vector<Polynomial>& gs,
                                      const ScopedCmp& cmp, const VarScope& scope) {
    std::vector<Divisor> divisors;
    divisors.reserve(gs.size());
    for (const Polynomial& g : gs) {
        if (!tables_compatible(f.table(), g.table()))
            throw usage_error("dividend and divisor tables differ");
        divisors.push_back(prepare_divisor(g, cmp, scope));
    }
    return divisors;
}

// --------------------------------------------------------------- helpers

Rational leading_coeff(const Polynomial& g, const ScopedCmp& cmp) {
    const Term* lead = &g.terms()[0];
    for (const Term& t : g.terms())
        if (cmp.term_greater(t, *lead)) lead = &t;
    return lead->coeff;
}

}  // namespace

Budget Budget::from_env() {
    Budget b;
    if (const char* env = std::getenv("QMREL_BUDGET")) {
        std::string s(env);
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
            throw validation_error("QMREL_BUDGET must be a non-negative integer, got '" + s +
                                   "'");
        b.max_steps = std::stoull(s);
    }
    return b;
}

DivisionResult divide(const Polynomial& f, const std::vector<Polynomial>& divisors,
                      const MonomialOrder& ord, const VarScope& scope, const Budget& budget) {
    if (scope.size() != f.table().size()) throw usage_error("scope does not match table");
    ScopedCmp cmp(f.table(), ord, scope);
    Meter meter(budget, f.table().size(), "division");
    auto prepared = prepare_divisors(f, divisors, cmp, scope);
    return divide_impl(f, prepared, cmp, scope, meter);
}

GroebnerBasis buchberger(const std::vector<Polynomial>& generators, const MonomialOrder& ord,
                         const VarScope& scope, const Budget& budget, PairStrategy strategy) {
    if (generators.empty()) throw usage_error("no generators given");
    const VarTable& vt = generators[0].table();
    if (scope.size() != vt.size()) throw usage_error("scope does not match table");
    ScopedCmp cmp(vt, ord, scope);
    Meter meter(budget, vt.size(), "basis construction");

    struct Item {
        Polynomial p;
        Monomial lm;
    };
    std::vector<Item> items;
    for (const Polynomial& g : generators) {
        if (!tables_compatible(vt, g.table())) throw usage_error("generator tables differ");
        if (g.is_zero()) continue;
        Divisor d = prepare_divisor(g, cmp, scope);
        items.push_back(Item{poly_scale(g, 1 / d.lc), d.lead_scope});
    }

    struct Pair {
        std::size_t i, j;
        Monomial lcm;
    };
    std::vector<Pair> queue;
    std::set<std::pair<std::size_t, std::size_t>> done;
    auto push_pairs = [&](std::size_t j) {
        for (std::size_t i = 0; i < j; ++i)
            queue.push_back(Pair{i, j, Monomial::lcm(items[i].lm, items[j].lm)});
    };
    for (std::size_t j = 0; j < items.size(); ++j) push_pairs(j);

    auto pick = [&]() {
        auto better = [&](const Pair& a, const Pair& b) {
            if (strategy == PairStrategy::degree) {
                if (a.lcm.degree() != b.lcm.degree()) return a.lcm.degree() < b.lcm.degree();
                int c = lex_range_cmp(a.lcm, b.lcm, 0, vt.size());
                if (c != 0) return c < 0;
            } else {
                int c = cmp.scope_cmp(a.lcm, b.lcm);
                if (c != 0) return c < 0;
            }
            if (a.i != b.i) return a.i < b.i;
            return a.j < b.j;
        };
        std::size_t best = 0;
        for (std::size_t k = 1; k < queue.size(); ++k)
            if (better(queue[k], queue[best])) best = k;
        Pair p = queue[best];
        queue.erase(queue.begin() + static_cast<std::ptrdiff_t>(best));
        return p;
    };

    while (!queue.empty()) {
        Pair pr = pick();
        done.emplace(pr.i, pr.j);
        if (Monomial::coprime(items[pr.i].lm, items[pr.j].lm)) continue;
        // Chain criterion: some third leading monomial divides the lcm and
        // both side pairs were already treated.
        bool chained = false;
        for (std::size_t k = 0; k < items.size() && !chained; ++k) {
            if (k == pr.i || k == pr.j) continue;
            if (!Monomial::divides(items[k].lm, pr.lcm)) continue;
            auto key = [&](std::size_t a, std::size_t b) {
                return std::make_pair(std::min(a, b), std::max(a, b));
            };
            if (done.count(key(pr.i, k)) && done.count(key(k, pr.j))) chained = true;
        }
        if (chained) continue;

        Polynomial s =
            poly_sub(poly_mul_term(items[pr.i].p, Monomial::quotient(pr.lcm, items[pr.i].lm), 1),
                     poly_mul_term(items[pr.j].p, Monomial::quotient(pr.lcm, items[pr.j].lm), 1));
        std::vector<Divisor> divisors;
        divisors.reserve(items.size());
        for (const Item& it : items) divisors.push_back(Divisor{&it.p, it.lm, Rational(1)});
        DivisionResult r = divide_impl(s, divisors, cmp, scope, meter);
        if (r.remainder.is_zero()) continue;
        Divisor d = prepare_divisor(r.remainder, cmp, scope);
        items.push_back(Item{poly_scale(r.remainder, 1 / d.lc), d.lead_scope});
        push_pairs(items.size() - 1);
        std::uint64_t stored = 0;
        for (const Item& it : items) stored += it.p.term_count();
        meter.live(stored);
    }

    // Minimal basis: drop elements whose leading monomial is divisible by
    // another surviving leading monomial.
    std::vector<bool> drop(items.size(), false);
    for (std::size_t i = 0; i < items.size(); ++i)
        for (std::size_t j = 0; j < items.size(); ++j) {
            if (i == j || drop[j] || drop[i]) continue;
            if (Monomial::divides(items[j].lm, items[i].lm) &&
                (items[j].lm != items[i].lm || j < i))
                drop[i] = true;
        }
    std::vector<Item> minimal;
    for (std::size_t i = 0; i < items.size(); ++i)
        if (!drop[i]) minimal.push_back(std::move(items[i]));

    // Autoreduce tails until stable.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < minimal.size(); ++i) {
            std::vector<Divisor> others;
            for (std::size_t j = 0; j < minimal.size(); ++j)
                if (j != i) others.push_back(Divisor{&minimal[j].p, minimal[j].lm, Rational(1)});
            DivisionResult r = divide_impl(minimal[i].p, others, cmp, scope, meter);
            if (r.remainder != minimal[i].p) {
                if (r.remainder.is_zero())
                    throw internal_error("minimal basis element reduced to zero");
                Rational lc = leading_coeff(r.remainder, cmp);
                minimal[i].p = poly_scale(r.remainder, 1 / lc);
                changed = true;
            }
        }
    }

    std::sort(minimal.begin(), minimal.end(),
              [&](const Item& a, const Item& b) { return cmp.scope_cmp(a.lm, b.lm) < 0; });

    GroebnerBasis gb;
    gb.vt = &vt;
    gb.order = ord;
    gb.scope = scope;
    gb.generators = generators;
    for (Item& it : minimal) gb.basis.push_back(std::move(it.p));
    return gb;
}

bool member(const Polynomial& f, const GroebnerBasis& gb, const Budget& budget) {
    if (!tables_compatible(f.table(), *gb.vt))
        throw usage_error("polynomial does not belong to the basis table");
    return divide(f, gb.basis, gb.order, gb.scope, budget).remainder.is_zero();
}

std::vector<Polynomial> sp4_generators(const VarTable& vt) {
    const char* texts[] = {
        "-X31*X12 - X41*X22 + X11*X32 + X21*X42",
        "-X31*X13 - X41*X23 + X11*X33 + X21*X43 - 1",
        "-X31*X14 - X41*X24 + X11*X34 + X21*X44",
        "-X32*X13 - X42*X23 + X12*X33 + X22*X43",
        "-X32*X14 - X42*X24 + X12*X34 + X22*X44 - 1",
        "-X33*X14 - X43*X24 + X13*X34 + X23*X44",
    };
    std::vector<Polynomial> gens;
    gens.reserve(6);
    for (const char* t : texts) gens.push_back(parse_poly(t, vt));
    return gens;
}

std::string ImpliedOutcome::describe() const {
    switch (level) {
        case ImpliedLevel::none:
            return "not implied";
        case ImpliedLevel::ideal:
            return "ideal membership";
        case ImpliedLevel::power:
            return "power " + std::to_string(power) + " membership";
        case ImpliedLevel::radical:
            return "radical membership (auxiliary-variable certificate)";
    }
    throw internal_error("unreachable implied level");
}

namespace {

// Rebuild f over another table, matching variables by name. Every variable
// actually used by f must exist in the target table.
Polynomial remap(const Polynomial& f, const VarTable& to) {
    const VarTable& from = f.table();
    std::vector<Term> terms;
    terms.reserve(f.term_count());
    for (const Term& t : f.terms()) {
        Monomial m(to.size());
        for (std::size_t i = 0; i < from.size(); ++i) {
            std::uint32_t e = t.mono.exp(i);
            if (e == 0) continue;
            m.set_exp(to.index(from.name(i)), e);
        }
        terms.push_back(Term{std::move(m), t.coeff});
    }
    return Polynomial::from_terms(to, std::move(terms));
}

std::vector<std::string> used_names(const std::vector<const Polynomial*>& polys) {
    const VarTable& vt = polys.at(0)->table();
    std::vector<bool> used(vt.size(), false);
    for (const Polynomial* p : polys)
        for (const Term& t : p->terms())
            for (std::size_t i = 0; i < vt.size(); ++i)
                if (t.mono.exp(i) != 0) used[i] = true;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < vt.size(); ++i)
        if (used[i]) names.push_back(vt.name(i));
    return names;
}

bool basis_contains_unit(const GroebnerBasis& gb) {
    for (const Polynomial& p : gb.basis)
        if (p.is_constant() && !p.is_zero()) return true;
    return false;
}

// Radical membership by the auxiliary-variable trick: g lies in the
// radical of the ideal exactly when adding 1 - z*g for a fresh variable z
// collapses the ideal to the whole ring.
bool radical_member(const Polynomial& g, const GroebnerBasis& gb, const Budget& budget) {
    std::vector<const Polynomial*> polys;
    for (const Polynomial& p : gb.basis) polys.push_back(&p);
    polys.push_back(&g);
    std::vector<std::string> names = used_names(polys);
    std::string aux = "z";
    while (std::find(names.begin(), names.end(), aux) != names.end()) aux += "z";
    names.push_back(aux);
    VarTable ext({}, names);

    std::vector<Polynomial> gens;
    for (const Polynomial& p : gb.basis) gens.push_back(remap(p, ext));
    Polynomial zg = poly_mul(Polynomial::variable(ext, aux), remap(g, ext));
    gens.push_back(poly_sub(Polynomial::constant(ext, 1), zg));
    GroebnerBasis egb = buchberger(gens, MonomialOrder::degrevlex(), scope_all(ext), budget);
    return basis_contains_unit(egb);
}

}  // namespace

ImpliedOutcome implied_by(const Polynomial& constraint, const GroebnerBasis& coefficient_basis,
                          const Budget& budget) {
    if (constraint.is_zero()) return ImpliedOutcome{true, ImpliedLevel::ideal, 1};
    if (member(constraint, coefficient_basis, budget))
        return ImpliedOutcome{true, ImpliedLevel::ideal, 1};
    Polynomial power = constraint;
    for (int k = 2; k <= 8; k *= 2) {
        power = poly_mul(power, power);
        if (member(power, coefficient_basis, budget))
            return ImpliedOutcome{true, ImpliedLevel::power, k};
    }
    if (radical_member(constraint, coefficient_basis, budget))
        return ImpliedOutcome{true, ImpliedLevel::radical, 0};
    return ImpliedOutcome{false, ImpliedLevel::none, 0};
}

std::vector<Polynomial> eliminate_variable(const std::vector<Polynomial>& gens, std::size_t var,
                                           const Budget& budget) {
    if (gens.empty()) return {};
    const VarTable& vt = gens[0].table();
    if (var >= vt.size()) throw usage_error("variable index out of range");
    std::vector<const Polynomial*> polys;
    for (const Polynomial& p : gens) polys.push_back(&p);
    std::vector<std::string> names = used_names(polys);
    std::vector<std::string> rest;
    for (const std::string& n : names)
        if (n != vt.name(var)) rest.push_back(n);
    // Block order with the eliminated variable alone in the leading block:
    // any monomial containing it outranks all that do not, so basis
    // elements free of it generate the elimination ideal.
    VarTable ext({vt.name(var)}, rest);

    std::vector<Polynomial> egens;
    for (const Polynomial& p : gens) egens.push_back(remap(p, ext));
    GroebnerBasis egb = buchberger(egens, MonomialOrder::block(), scope_all(ext), budget);
    std::vector<Polynomial> kept;
    for (const Polynomial& p : egb.basis) {
        bool uses = false;
        for (const Term& t : p.terms())
            if (t.mono.exp(0) != 0) uses = true;
        if (!uses) kept.push_back(remap(p, vt));
    }
    return kept;
}

}  // namespace qmrel
