// Command-line driver: compute and cache the Groebner basis of the
// symplectic quadrics, run the relation verification stages, and run the
// quaternion-algebra constructions. Exit codes: 0 success, 1 bad usage or
// invalid input, 2 a verified claim failed, 3 budget exhausted.
#include <CLI11.hpp>
#include <json.hpp>

#include <qmrel/errors.hpp>
#include <qmrel/groebner.hpp>
#include <qmrel/quatalg.hpp>
#include <qmrel/relations.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace qmrel;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string format_seconds(double s) {
    std::ostringstream out;
    out.precision(3);
    out << std::fixed << s << "s";
    return out.str();
}

struct RunConfig {
    std::string order = "degrevlex";
    std::string basis_path;
    std::string out_path = "basis.gb";
    bool json = false;
    bool eliminate_t1 = false;
    std::uint64_t seed = 0;
    int trials = 20;
    std::string stage;
    std::string quat_sub;
    std::int64_t delta = 0;
    std::int64_t q = 0;
    std::int64_t p = 0;
    std::string lambda = "i";
    std::string alpha;
};

MonomialOrder order_from_config(const RunConfig& cfg) {
    auto ord = MonomialOrder::from_name(cfg.order);
    if (!ord) throw usage_error("unknown monomial order: " + cfg.order);
    return *ord;
}

int cmd_gb(const RunConfig& cfg, const Budget& budget) {
    const VarTable& vt = VarTable::standard();
    MonomialOrder ord = order_from_config(cfg);

    if (std::filesystem::exists(cfg.out_path)) {
        try {
            GroebnerBasis cached = load_basis(cfg.out_path, vt, budget);
            if (cached.order == ord) {
                std::cout << cfg.out_path << " is up to date (" << cached.basis.size()
                          << " elements, " << cached.order.name() << ")\n";
                return 0;
            }
            std::cout << cfg.out_path << " holds a " << cached.order.name()
                      << " basis; recomputing for " << ord.name() << "\n";
        } catch (const error& e) {
            std::cout << cfg.out_path << " is not a valid basis cache (" << e.what()
                      << "); recomputing\n";
        }
    }

    auto start = Clock::now();
    GroebnerBasis gb = buchberger(sp4_generators(vt), ord, scope_matrix(vt), budget);
    double elapsed = seconds_since(start);
    save_basis(gb, cfg.out_path);
    std::cout << "reduced basis: " << gb.basis.size() << " elements (" << ord.name() << ") in "
              << format_seconds(elapsed) << "; wrote " << cfg.out_path << "\n";
    return 0;
}

// Stage order used by "all": the archimedean pair, the ordinary pair, the
// transport sampling, then the two identity stages.
std::vector<StageReport> run_stages(const std::string& stage, const RelationContext& ctx,
                                    const StageOptions& opt) {
    const VarTable& vt = *ctx.vt;
    if (stage == "arch1") return {arch_stage1(ctx, opt)};
    if (stage == "arch2") return {arch_stage2(ctx, opt)};
    if (stage == "ord1") return {ord_stage1(ctx, opt)};
    if (stage == "ord2") return {ord_stage2(ctx, opt)};
    if (stage == "ssing") return {supersingular_transport(ctx, opt)};
    if (stage == "shapes") return {shape_stage(vt), delta_identity_check(vt)};
    if (stage == "all")
        return {arch_stage1(ctx, opt),
                arch_stage2(ctx, opt),
                ord_stage1(ctx, opt),
                ord_stage2(ctx, opt),
                supersingular_transport(ctx, opt),
                shape_stage(vt),
                delta_identity_check(vt)};
    throw usage_error("unknown stage: " + stage);
}

bool stage_needs_basis(const std::string& stage) {
    return stage == "arch2" || stage == "ord1" || stage == "ord2" || stage == "ssing" ||
           stage == "all";
}

int cmd_verify(const RunConfig& cfg, const Budget& budget) {
    const VarTable& vt = VarTable::standard();

    std::string path = cfg.basis_path;
    if (path.empty() && std::filesystem::exists("basis.gb")) path = "basis.gb";
    GroebnerBasis gb;
    bool have_basis = false;
    if (!path.empty()) {
        gb = load_basis(path, vt, budget);
        have_basis = true;
    } else if (stage_needs_basis(cfg.stage)) {
        std::cerr << "verify " << cfg.stage
                  << " needs a basis cache; run `qmrel gb` first (or pass --basis)\n";
        return 1;
    }

    RelationContext ctx = make_relation_context(vt);
    StageOptions opt;
    if (have_basis) opt.basis = &gb;
    opt.budget = budget;
    opt.seed = cfg.seed;
    opt.trials = cfg.trials;
    opt.eliminate_t1 = cfg.eliminate_t1;

    std::vector<StageReport> reports = run_stages(cfg.stage, ctx, opt);

    if (cfg.json) {
        if (reports.size() == 1) {
            std::cout << reports[0].to_json() << "\n";
        } else {
            nlohmann::ordered_json arr = nlohmann::ordered_json::array();
            for (const StageReport& rep : reports)
                arr.push_back(nlohmann::ordered_json::parse(rep.to_json()));
            std::cout << arr.dump(2) << "\n";
        }
    } else {
        for (const StageReport& rep : reports) std::cout << rep.to_text() << "\n";
    }

    int rc = 0;
    for (const StageReport& rep : reports)
        for (const StageClaim& c : rep.claims)
            if (!c.implied) {
                std::cerr << "claim failed in stage " << rep.stage << ": " << c.constraint
                          << "\n";
                rc = 2;
            }
    return rc;
}

Integer to_integer(std::int64_t v) { return Integer(static_cast<long>(v)); }

std::array<Rational, 4> parse_alpha(const std::string& text) {
    std::array<Rational, 4> coords;
    std::stringstream in(text);
    std::string item;
    std::size_t n = 0;
    while (std::getline(in, item, ',')) {
        if (n >= 4) throw usage_error("--alpha takes exactly four comma-separated rationals");
        try {
            coords[n] = Rational(item);
        } catch (const std::invalid_argument&) {
            throw usage_error("--alpha component is not a rational: " + item);
        }
        coords[n].canonicalize();
        ++n;
    }
    if (n != 4) throw usage_error("--alpha takes exactly four comma-separated rationals");
    return coords;
}

void emit_quat(const RunConfig& cfg, const nlohmann::ordered_json& j,
               const std::vector<std::string>& lines) {
    if (cfg.json) {
        std::cout << j.dump(2) << "\n";
    } else {
        for (const std::string& line : lines) std::cout << line << "\n";
    }
}

void require_flag(bool present, const std::string& what) {
    if (!present) throw usage_error(what);
}

int cmd_quat(const RunConfig& cfg, const Budget&) {
    if (cfg.quat_sub == "find-q") {
        require_flag(cfg.delta != 0, "find-q needs --delta");
        Integer delta = to_integer(cfg.delta);
        Integer q = find_q(delta);
        nlohmann::ordered_json j;
        j["command"] = "find-q";
        j["delta"] = cfg.delta;
        j["q"] = q.get_str();
        std::vector<std::string> lines = {"q = " + q.get_str()};
        nlohmann::ordered_json conds = nlohmann::ordered_json::object();
        bool mod8 = q % 8 == 5;
        conds["q mod 8 = 5"] = mod8;
        lines.push_back(std::string("  q mod 8 = 5: ") + (mod8 ? "yes" : "no"));
        bool coprime = gcd(q, delta) == 1;
        conds["gcd(q, delta) = 1"] = coprime;
        lines.push_back(std::string("  gcd(q, delta) = 1: ") + (coprime ? "yes" : "no"));
        for (const auto& [prime, mult] : factorize(delta)) {
            (void)mult;
            if (prime == 2) continue;
            bool nonresidue = legendre(q, prime) == -1;
            std::string label = "(q/" + prime.get_str() + ") = -1";
            conds[label] = nonresidue;
            lines.push_back("  " + label + ": " + (nonresidue ? "yes" : "no"));
        }
        j["conditions"] = conds;
        emit_quat(cfg, j, lines);
        return 0;
    }

    if (cfg.quat_sub == "find-mu") {
        require_flag(cfg.q != 0 && cfg.delta != 0 && !cfg.alpha.empty(),
                     "find-mu needs --q, --delta, --lambda and --alpha");
        MuResult res = find_mu(to_integer(cfg.q), to_integer(cfg.delta),
                               lambda_from_name(cfg.lambda), parse_alpha(cfg.alpha));
        Rational mu_sq = quat_mul(res.mu, res.mu).t;
        nlohmann::ordered_json j;
        j["command"] = "find-mu";
        j["q"] = cfg.q;
        j["delta"] = cfg.delta;
        j["lambda"] = lambda_name(res.lambda);
        j["mu"] = res.mu.to_text();
        j["mu_squared"] = mu_sq.get_str();
        j["n"] = res.n.get_str();
        j["checks"] = "verified";
        if (!res.note.empty()) j["note"] = res.note;
        std::vector<std::string> lines = {
            "mu = " + res.mu.to_text(),
            "mu^2 = " + mu_sq.get_str(),
            "n = " + res.n.get_str(),
            "checks: trace zero, moved by the conjugation, non-square square, "
            "unramified at 2, q and the odd primes of delta, not commuting with " +
                lambda_name(res.lambda) + " -> all verified",
        };
        if (!res.note.empty()) lines.push_back("note: " + res.note);
        emit_quat(cfg, j, lines);
        return 0;
    }

    if (cfg.quat_sub == "rosati") {
        require_flag(cfg.q != 0 && cfg.delta != 0 && !cfg.alpha.empty(),
                     "rosati needs --q, --delta and --alpha");
        QuatAlgebra alg{Rational(cfg.q), Rational(cfg.delta)};
        auto coords = parse_alpha(cfg.alpha);
        QuatElement alpha = QuatElement::make(alg, coords[0], coords[1], coords[2], coords[3]);
        LambdaCase witness = rosati_witness(alpha);
        nlohmann::ordered_json j;
        j["command"] = "rosati";
        j["q"] = cfg.q;
        j["delta"] = cfg.delta;
        j["alpha"] = alpha.to_text();
        j["moved_basis_element"] = lambda_name(witness);
        std::vector<std::string> lines = {"alpha = " + alpha.to_text(),
                                          "moved basis element: " + lambda_name(witness)};
        nlohmann::ordered_json images = nlohmann::ordered_json::object();
        bool involution = true;
        for (LambdaCase c : {LambdaCase::i, LambdaCase::j, LambdaCase::k}) {
            QuatElement x = basis_element(alg, c);
            QuatElement once = rosati(x, alpha);
            involution = involution && rosati(once, alpha) == x;
            images[lambda_name(c)] = once.to_text();
            lines.push_back("  " + lambda_name(c) + " -> " + once.to_text());
        }
        j["images"] = images;
        j["involution_on_basis"] = involution;
        lines.push_back(std::string("involution on the basis: ") + (involution ? "yes" : "no"));
        emit_quat(cfg, j, lines);
        return involution ? 0 : 2;
    }

    if (cfg.quat_sub == "check-unramified") {
        require_flag(cfg.p != 0 && cfg.q != 0 && cfg.delta != 0,
                     "check-unramified needs --p, --q and --delta");
        bool ok = unramified_pair_check(to_integer(cfg.p), to_integer(cfg.q),
                                        to_integer(cfg.delta));
        nlohmann::ordered_json j;
        j["command"] = "check-unramified";
        j["p"] = cfg.p;
        j["q"] = cfg.q;
        j["delta"] = cfg.delta;
        j["result"] = ok;
        emit_quat(cfg, j, {ok ? "true" : "false"});
        return 0;
    }

    throw usage_error("unknown quat subcommand: " + cfg.quat_sub);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification toolkit for symplectic relation polynomials"};
    app.require_subcommand(1);
    RunConfig cfg;

    CLI::App* gb = app.add_subcommand("gb", "compute and cache the quadric Groebner basis");
    gb->add_option("--order", cfg.order, "monomial order (lex or degrevlex)")
        ->check(CLI::IsMember({"lex", "degrevlex"}));
    gb->add_option("--out", cfg.out_path, "cache file path (default basis.gb)");

    CLI::App* verify = app.add_subcommand("verify", "run a verification stage");
    verify->add_option("stage", cfg.stage, "one of arch1, arch2, ord1, ord2, ssing, shapes, all")
        ->required()
        ->check(CLI::IsMember({"arch1", "arch2", "ord1", "ord2", "ssing", "shapes", "all"}));
    verify->add_option("--basis", cfg.basis_path, "basis cache path (default: basis.gb if present)");
    verify->add_option("--trials", cfg.trials, "transport samples for ssing")
        ->check(CLI::PositiveNumber);
    verify->add_option("--seed", cfg.seed, "base seed for sampled matrices");
    verify->add_flag("--json", cfg.json, "emit the JSON report instead of text");
    verify->add_flag("--eliminate-t1", cfg.eliminate_t1,
                     "drop t1 from coefficient ideals before implication checks");

    CLI::App* quat = app.add_subcommand("quat", "quaternion-algebra constructions");
    quat->add_option("sub", cfg.quat_sub,
                     "one of find-q, find-mu, rosati, check-unramified")
        ->required()
        ->check(CLI::IsMember({"find-q", "find-mu", "rosati", "check-unramified"}));
    quat->add_option("--delta", cfg.delta, "the algebra's second parameter");
    quat->add_option("--q", cfg.q, "the presentation prime (first parameter)");
    quat->add_option("--lambda", cfg.lambda, "basis element moved by the conjugation")
        ->check(CLI::IsMember({"i", "j", "k"}));
    quat->add_option("--alpha", cfg.alpha, "conjugator coordinates t,y,z,w");
    quat->add_option("--p", cfg.p, "prime to test");
    quat->add_flag("--json", cfg.json, "emit a JSON object instead of text");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        Budget budget = Budget::from_env();
        if (gb->parsed()) return cmd_gb(cfg, budget);
        if (verify->parsed()) return cmd_verify(cfg, budget);
        return cmd_quat(cfg, budget);
    } catch (const budget_error& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return 3;
    } catch (const constructed_value_error& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return 2;
    } catch (const internal_error& e) {
        std::cerr << "internal check failed: " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
