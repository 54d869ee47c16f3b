// Variable table: the fixed, ordered list of variable names a polynomial
// ring is built over. The first block of entries ("matrix variables") is
// distinguished from the rest ("parameter variables"); monomial orders and
// coefficient extraction use that split.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace qmrel {

class VarTable {
public:
    VarTable(std::vector<std::string> matrix_vars, std::vector<std::string> param_vars);

    // The table used throughout: X11..X44 (row-major) as matrix variables,
    // followed by the parameter variables of the relation polynomials and
    // the period-shape checks. Process-lifetime singleton.
    static const VarTable& standard();

    std::size_t size() const { return names_.size(); }
    std::size_t matrix_count() const { return matrix_count_; }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    const std::vector<std::string>& names() const { return names_; }

    // Index of a known variable; throws usage_error for unknown names.
    std::size_t index(std::string_view name) const;
    std::optional<std::size_t> find(std::string_view name) const;

    bool is_matrix_var(std::size_t i) const { return i < matrix_count_; }

private:
    std::vector<std::string> names_;
    std::size_t matrix_count_;
    std::unordered_map<std::string, std::size_t> index_;
};

// Two tables are compatible when they are the same object or define the
// same variables in the same order with the same split.
bool tables_compatible(const VarTable& a, const VarTable& b);

// A scope selects a subset of the variables of a table (by index).
using VarScope = std::vector<std::uint8_t>;

VarScope scope_all(const VarTable& vt);
VarScope scope_matrix(const VarTable& vt);
VarScope scope_params(const VarTable& vt);
VarScope scope_of(const VarTable& vt, const std::vector<std::string>& names);
VarScope scope_complement(const VarScope& s);
bool scope_contains(const VarScope& s, std::size_t i);

}  // namespace qmrel
