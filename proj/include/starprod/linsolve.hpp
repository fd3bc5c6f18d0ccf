#pragma once

#include "starprod/rational.hpp"

#include <map>
#include <optional>
#include <vector>

namespace starprod {

// Sparse linear row: column index to nonzero coefficient.
using SparseRow = std::map<int, Rat>;

// Incremental exact Gauss-Jordan elimination. Rows are fed one at a time and
// kept fully reduced: each pivot column has coefficient 1 in its own row and
// 0 in every other row, so dependent rows collapse immediately and solutions
// read off directly. Deterministic for a fixed insertion order.
class LinearSolver {
public:
    explicit LinearSolver(int ncols);

    // Feeds one equation (coefs . x = rhs) and returns its origin id
    // (0-based insertion index). Contradictions are recorded, not thrown.
    int add_row(SparseRow coefs, Rat rhs);

    int ncols() const { return m_ncols; }
    int rank() const { return static_cast<int>(m_rows.size()); }
    bool consistent() const { return !m_witness.has_value(); }
    // Origin id of the first contradictory row, if any.
    std::optional<int> witness_row() const { return m_witness; }

    std::vector<int> pivot_columns() const;
    bool is_pivot(int col) const { return m_pivot_of_col.count(col) > 0; }

    // Solution with all free variables set to zero; throws when inconsistent.
    std::vector<Rat> particular() const;
    // Nullspace basis, one vector per free column in ascending column order.
    std::vector<std::vector<Rat>> nullspace() const;

private:
    struct Row {
        int pivot;
        SparseRow coefs; // includes the pivot entry with coefficient 1
        Rat rhs;
    };

    int m_ncols;
    std::vector<Row> m_rows;
    std::map<int, int> m_pivot_of_col; // pivot column -> index into m_rows
    std::map<int, std::vector<int>> m_rows_with_col; // column -> rows touching it
    std::optional<int> m_witness;
    int m_next_origin = 0;
};

struct LinearSolveResult {
    bool consistent = false;
    std::vector<Rat> particular;            // empty when inconsistent
    std::vector<std::vector<Rat>> nullspace;
    std::vector<int> pivot_columns;
    std::optional<int> witness_row;         // first contradictory equation
};

// Dense convenience wrapper: solves A x = b exactly over the rationals.
LinearSolveResult solve_exact(const std::vector<std::vector<Rat>>& a, const std::vector<Rat>& b);

} // namespace starprod
