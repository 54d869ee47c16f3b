#include "qmrel/vartable.hpp"

#include "qmrel/errors.hpp"

namespace qmrel {

VarTable::VarTable(std::vector<std::string> matrix_vars, std::vector<std::string> param_vars)
    : matrix_count_(matrix_vars.size()) {
    names_ = std::move(matrix_vars);
    names_.insert(names_.end(), param_vars.begin(), param_vars.end());
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i].empty()) throw usage_error("variable names must be non-empty");
        auto [it, fresh] = index_.emplace(names_[i], i);
        (void)it;
        if (!fresh) throw usage_error("duplicate variable name: " + names_[i]);
    }
}

const VarTable& VarTable::standard() {
    static const VarTable table = [] {
        std::vector<std::string> xs;
        for (int r = 1; r <= 4; ++r)
            for (int c = 1; c <= 4; ++c) xs.push_back("X" + std::to_string(r) + std::to_string(c));

        std::vector<std::string> ps;
        auto family = [&ps](const std::string& stem) {
            for (int r = 1; r <= 2; ++r)
                for (int c = 1; c <= 2; ++c)
                    ps.push_back(stem + std::to_string(r) + std::to_string(c));
        };
        family("a");
        family("b");
        family("c");
        family("A");
        family("B");
        family("C");
        ps.push_back("t1");
        for (const char* v : {"l", "m", "n", "p", "q", "r"}) ps.push_back(v);
        family("pi");
        family("d");
        family("e");
        family("D");
        family("E");
        return VarTable(std::move(xs), std::move(ps));
    }();
    return table;
}

std::size_t VarTable::index(std::string_view name) const {
    auto v = find(name);
    if (!v) throw usage_error("unknown variable: " + std::string(name));
    return *v;
}

std::optional<std::size_t> VarTable::find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

bool tables_compatible(const VarTable& a, const VarTable& b) {
    if (&a == &b) return true;
    return a.matrix_count() == b.matrix_count() && a.names() == b.names();
}

VarScope scope_all(const VarTable& vt) { return VarScope(vt.size(), 1); }

VarScope scope_matrix(const VarTable& vt) {
    VarScope s(vt.size(), 0);
    for (std::size_t i = 0; i < vt.matrix_count(); ++i) s[i] = 1;
    return s;
}

VarScope scope_params(const VarTable& vt) {
    VarScope s(vt.size(), 0);
    for (std::size_t i = vt.matrix_count(); i < vt.size(); ++i) s[i] = 1;
    return s;
}

VarScope scope_of(const VarTable& vt, const std::vector<std::string>& names) {
    VarScope s(vt.size(), 0);
    for (const auto& n : names) s[vt.index(n)] = 1;
    return s;
}

VarScope scope_complement(const VarScope& s) {
    VarScope c(s.size(), 0);
    for (std::size_t i = 0; i < s.size(); ++i) c[i] = s[i] ? 0 : 1;
    return c;
}

bool scope_contains(const VarScope& s, std::size_t i) { return i < s.size() && s[i] != 0; }

}  // namespace qmrel
