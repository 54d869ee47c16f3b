// Text cache for Groebner bases.
//
//   GBCACHE v1
//   order: degrevlex
//   vars: X11,X12,...
//   gen: <polynomial text>     (one line per generator)
//   b: <polynomial text>       (one line per basis element)
//   sha256: <hex digest of every byte above this line>
//
// Loading re-verifies the digest and the mathematical invariants of a
// reduced basis before handing the basis out.
#include <openssl/evp.h>

#include <fstream>
#include <sstream>

#include "qmrel/errors.hpp"
#include "qmrel/groebner.hpp"

namespace qmrel {

namespace {

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx, data.data(), data.size()) != 1 ||
        EVP_DigestFinal_ex(ctx, digest, &len) != 1) {
        EVP_MD_CTX_free(ctx);
        throw internal_error("sha256 computation failed");
    }
    EVP_MD_CTX_free(ctx);
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xf];
    }
    return out;
}

std::string join_names(const VarTable& vt) {
    std::string s;
    for (std::size_t i = 0; i < vt.size(); ++i) {
        if (i) s += ',';
        s += vt.name(i);
    }
    return s;
}

VarScope default_scope(const VarTable& vt) {
    return vt.matrix_count() > 0 ? scope_matrix(vt) : scope_all(vt);
}

// Reduced-basis invariants: monic leading terms with rational constant
// coefficients, no basis term divisible by another element's leading
// monomial, every generator reducing to zero, and every S-polynomial
// reducing to zero.
void verify_reduced(const GroebnerBasis& gb, const Budget& budget) {
    const VarTable& vt = *gb.vt;
    for (const Polynomial& b : gb.basis)
        if (b.is_zero()) throw cache_error("cached basis contains a zero polynomial");
    struct Lead {
        Monomial m;
        Rational c;
    };
    std::vector<Lead> leads;
    for (const Polynomial& b : gb.basis) {
        const Term* best = &b.terms()[0];
        for (const Term& t : b.terms()) {
            int c = gb.order.compare_in_scope(t.mono, best->mono, vt, gb.scope);
            if (c > 0 || (c == 0 && MonomialOrder::block().compare(t.mono, best->mono, vt) > 0))
                best = &t;
        }
        Monomial ls = best->mono.restricted(gb.scope);
        if (best->mono != ls || best->coeff != 1)
            throw cache_error("cached basis element is not monic with a plain leading term: " +
                              canonical_text(b));
        leads.push_back(Lead{std::move(ls), best->coeff});
    }
    for (std::size_t i = 0; i < gb.basis.size(); ++i)
        for (std::size_t j = 0; j < gb.basis.size(); ++j) {
            if (i == j) continue;
            for (const Term& t : gb.basis[i].terms())
                if (Monomial::divides(leads[j].m, t.mono.restricted(gb.scope)))
                    throw cache_error("cached basis is not reduced: a term of one element is "
                                      "divisible by another leading monomial");
        }
    for (const Polynomial& g : gb.generators)
        if (!member(g, gb, budget))
            throw cache_error("cached generator does not reduce to zero against the basis");
    for (std::size_t i = 0; i < gb.basis.size(); ++i)
        for (std::size_t j = i + 1; j < gb.basis.size(); ++j) {
            if (Monomial::coprime(leads[i].m, leads[j].m)) continue;
            Monomial l = Monomial::lcm(leads[i].m, leads[j].m);
            Polynomial s =
                poly_sub(poly_mul_term(gb.basis[i], Monomial::quotient(l, leads[i].m), 1),
                         poly_mul_term(gb.basis[j], Monomial::quotient(l, leads[j].m), 1));
            if (!divide(s, gb.basis, gb.order, gb.scope, budget).remainder.is_zero())
                throw cache_error("cached basis fails the S-polynomial closure check");
        }
}

}  // namespace

void save_basis(const GroebnerBasis& gb, const std::string& path) {
    std::ostringstream body;
    body << "GBCACHE v1\n";
    body << "order: " << gb.order.name() << "\n";
    body << "vars: " << join_names(*gb.vt) << "\n";
    for (const Polynomial& g : gb.generators) body << "gen: " << canonical_text(g, gb.order) << "\n";
    for (const Polynomial& b : gb.basis) body << "b: " << canonical_text(b, gb.order) << "\n";
    std::string text = body.str();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw cache_error("cannot open cache file for writing: " + path);
    out << text << "sha256: " << sha256_hex(text) << "\n";
    if (!out.good()) throw cache_error("failed while writing cache file: " + path);
}

GroebnerBasis load_basis(const std::string& path, const VarTable& vt, const Budget& budget) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw cache_error("cannot open cache file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();

    std::size_t sha_at = text.rfind("sha256: ");
    if (sha_at == std::string::npos || (sha_at != 0 && text[sha_at - 1] != '\n'))
        throw cache_error("cache file has no checksum line: " + path);
    std::string body = text.substr(0, sha_at);
    std::string sha_line = text.substr(sha_at);
    if (!sha_line.ends_with("\n")) throw cache_error("cache checksum line is not terminated");
    std::string expect = sha_line.substr(8, sha_line.size() - 9);
    if (expect != sha256_hex(body))
        throw cache_error("cache checksum mismatch (file was modified?): " + path);

    GroebnerBasis gb;
    gb.vt = &vt;
    gb.scope = default_scope(vt);

    std::istringstream lines(body);
    std::string line;
    if (!std::getline(lines, line) || line != "GBCACHE v1")
        throw cache_error("unsupported cache header: expected 'GBCACHE v1'");
    if (!std::getline(lines, line) || !line.starts_with("order: "))
        throw cache_error("cache is missing the order line");
    auto ord = MonomialOrder::from_name(line.substr(7));
    if (!ord) throw cache_error("cache names an unknown order: " + line.substr(7));
    gb.order = *ord;
    if (!std::getline(lines, line) || !line.starts_with("vars: "))
        throw cache_error("cache is missing the vars line");
    if (line.substr(6) != join_names(vt))
        throw cache_error("cache variable list does not match the current table");
    while (std::getline(lines, line)) {
        try {
            if (line.starts_with("gen: "))
                gb.generators.push_back(parse_poly(line.substr(5), vt));
            else if (line.starts_with("b: "))
                gb.basis.push_back(parse_poly(line.substr(3), vt));
            else
                throw cache_error("unrecognized cache line: " + line);
        } catch (const parse_error& e) {
            throw cache_error("cache polynomial does not parse: " + std::string(e.what()));
        }
    }
    verify_reduced(gb, budget);
    return gb;
}

}  // namespace qmrel
