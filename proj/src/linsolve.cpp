#include "starprod/linsolve.hpp"

#include <stdexcept>

namespace starprod {

LinearSolver::LinearSolver(int ncols) : m_ncols(ncols) {
    if (ncols < 0) throw std::invalid_argument("negative column count");
}

int LinearSolver::add_row(SparseRow row, Rat rhs) {
    const int origin = m_next_origin++;
    for (auto it = row.begin(); it != row.end();) {
        if (it->second == 0)
            it = row.erase(it);
        else
            ++it;
    }

    // Eliminate every pivot column present in the incoming row.
    while (true) {
        int hit_col = -1;
        int hit_row = -1;
        for (const auto& [c, coef] : row) {
            if (c < 0 || c >= m_ncols) throw std::out_of_range("row column out of range");
            auto it = m_pivot_of_col.find(c);
            if (it != m_pivot_of_col.end()) {
                hit_col = c;
                hit_row = it->second;
                break;
            }
        }
        if (hit_col < 0) break;
        const Row& p = m_rows[static_cast<size_t>(hit_row)];
        const Rat f = row[hit_col];
        for (const auto& [c, pc] : p.coefs) {
            Rat& slot = row[c];
            slot -= f * pc;
            if (slot == 0) row.erase(c);
        }
        rhs -= f * p.rhs;
    }

    if (row.empty()) {
        if (rhs != 0 && !m_witness) m_witness = origin;
        return origin;
    }

    // Normalize so the new pivot has coefficient 1.
    const int pivot = row.begin()->first;
    const Rat inv = Rat(1) / row.begin()->second;
    for (auto& [c, coef] : row) coef *= inv;
    rhs *= inv;

    // Back-substitute into the rows that still mention the new pivot column.
    const int new_index = static_cast<int>(m_rows.size());
    if (auto lit = m_rows_with_col.find(pivot); lit != m_rows_with_col.end()) {
        for (const int ri : lit->second) {
            Row& r = m_rows[static_cast<size_t>(ri)];
            auto cit = r.coefs.find(pivot);
            if (cit == r.coefs.end()) continue;
            const Rat f = cit->second;
            for (const auto& [c, coef] : row) {
                Rat& slot = r.coefs[c];
                slot -= f * coef;
                if (slot == 0) {
                    r.coefs.erase(c);
                } else if (c != pivot) {
                    m_rows_with_col[c].push_back(ri);
                }
            }
            r.rhs -= f * rhs;
        }
    }

    for (const auto& [c, coef] : row) m_rows_with_col[c].push_back(new_index);
    m_pivot_of_col[pivot] = new_index;
    m_rows.push_back({pivot, std::move(row), std::move(rhs)});
    return origin;
}

std::vector<int> LinearSolver::pivot_columns() const {
    std::vector<int> out;
    out.reserve(m_pivot_of_col.size());
    for (const auto& [c, r] : m_pivot_of_col) out.push_back(c);
    return out;
}

std::vector<Rat> LinearSolver::particular() const {
    if (!consistent()) throw std::logic_error("inconsistent system has no solution");
    std::vector<Rat> x(static_cast<size_t>(m_ncols), Rat(0));
    for (const auto& row : m_rows) x[static_cast<size_t>(row.pivot)] = row.rhs;
    return x;
}

std::vector<std::vector<Rat>> LinearSolver::nullspace() const {
    std::vector<std::vector<Rat>> basis;
    for (int f = 0; f < m_ncols; ++f) {
        if (m_pivot_of_col.count(f)) continue;
        std::vector<Rat> v(static_cast<size_t>(m_ncols), Rat(0));
        v[static_cast<size_t>(f)] = 1;
        for (const auto& row : m_rows) {
            auto it = row.coefs.find(f);
            if (it != row.coefs.end()) v[static_cast<size_t>(row.pivot)] = -it->second;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

LinearSolveResult solve_exact(const std::vector<std::vector<Rat>>& a, const std::vector<Rat>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("matrix and rhs size mismatch");
    const int ncols = a.empty() ? 0 : static_cast<int>(a.front().size());
    LinearSolver solver(ncols);
    for (size_t i = 0; i < a.size(); ++i) {
        if (static_cast<int>(a[i].size()) != ncols)
            throw std::invalid_argument("ragged matrix");
        SparseRow row;
        for (int c = 0; c < ncols; ++c)
            if (a[i][static_cast<size_t>(c)] != 0) row[c] = a[i][static_cast<size_t>(c)];
        solver.add_row(std::move(row), b[i]);
    }
    LinearSolveResult out;
    out.consistent = solver.consistent();
    out.pivot_columns = solver.pivot_columns();
    out.witness_row = solver.witness_row();
    if (out.consistent) {
        out.particular = solver.particular();
        out.nullspace = solver.nullspace();
    }
    return out;
}

} // namespace starprod
