#ifndef UNIFACT_VARIABLE_HPP
#define UNIFACT_VARIABLE_HPP

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

namespace unifact {

// A polynomial variable: either the unipotent parameter z_{row,col,factor}
// or a named free symbol. Odd factors are lower triangular (row > col),
// even factors upper triangular (row < col).
struct VarId {
    int factor = 0; // >= 1 for unipotent parameters, 0 for free symbols
    int row = 0;
    int col = 0;
    std::string name; // nonempty for free symbols only

    bool is_symbol() const { return factor == 0; }

    static VarId param(int factor, int row, int col); // validates parity/shape
    static VarId symbol(std::string name);

    // Ordering is lexicographic on (factor, row, col, name); free symbols
    // (factor 0) sort before parameters so the serialization is deterministic.
    friend bool operator<(const VarId& a, const VarId& b) {
        return std::tie(a.factor, a.row, a.col, a.name) < std::tie(b.factor, b.row, b.col, b.name);
    }
    friend bool operator==(const VarId& a, const VarId& b) {
        return a.factor == b.factor && a.row == b.row && a.col == b.col && a.name == b.name;
    }
    friend bool operator!=(const VarId& a, const VarId& b) { return !(a == b); }

    std::string to_string() const;
};

inline bool factor_is_lower(int factor_index) { return factor_index % 2 == 1; }

// Canonical coordinate order inside one parameter vector: lower factors
// column-major (rows of column 1, then column 2, ...), upper factors
// row-major. The final canonical coordinate is z_{n,n-1} resp. z_{n-1,n}.
std::vector<std::pair<int, int>> triangle_coords(int n, bool lower);

// Canonical variable list for factors 1..K of size n, factor-major.
std::vector<VarId> chain_variables(int n, int K);

} // namespace unifact

#endif
