#include "pbpois/algebra/matrix.hpp"

#include <algorithm>
#include <numeric>

#include "pbpois/errors.hpp"

namespace pbpois {

namespace {

// out = a*x + b*y, where a or b may be omitted (nullptr means 1).
SparseRow combine(const Scalar* a, const SparseRow& x, const Scalar* b, const SparseRow& y) {
    SparseRow out;
    out.reserve(x.size() + y.size());
    auto scaled = [](const Scalar* f, const Scalar& v) { return f ? *f * v : v; };
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].col < y[j].col)) {
            out.push_back({x[i].col, scaled(a, x[i].value)});
            ++i;
        } else if (i == x.size() || y[j].col < x[i].col) {
            out.push_back({y[j].col, scaled(b, y[j].value)});
            ++j;
        } else {
            Scalar v = scaled(a, x[i].value) + scaled(b, y[j].value);
            if (!v.is_zero()) out.push_back({x[i].col, std::move(v)});
            ++i;
            ++j;
        }
    }
    return out;
}

const Scalar* find_entry(const SparseRow& row, int col) {
    auto it = std::lower_bound(row.begin(), row.end(), col, [](const SparseEntry& e, int c) { return e.col < c; });
    return (it != row.end() && it->col == col) ? &it->value : nullptr;
}

SparseRow to_sparse(const ExactVector& v) {
    SparseRow r;
    for (std::size_t c = 0; c < v.size(); ++c) {
        if (!v[c].is_zero()) r.push_back({static_cast<int>(c), v[c]});
    }
    return r;
}

// Multiplies the row by the lcm of all denominators so every entry is a
// Gaussian integer.
void clear_denominators(SparseRow& row) {
    mpz_class l = 1;
    for (const auto& e : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.value.denominator_lcm().get_mpz_t());
    if (l == 1) return;
    Scalar f{mpq_class(l)};
    for (auto& e : row) e.value *= f;
}

}  // namespace

ExactMatrix::ExactMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows)) {
    if (rows < 0 || cols < 0) throw StructuralError("negative matrix dimension");
}

ExactMatrix ExactMatrix::from_rows(int cols, std::span<const ExactVector> rows) {
    ExactMatrix m(static_cast<int>(rows.size()), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (static_cast<int>(rows[r].size()) != cols) throw StructuralError("row length differs from column count");
        m.data_[r] = to_sparse(rows[r]);
    }
    return m;
}

ExactMatrix ExactMatrix::from_columns(int rows, std::span<const ExactVector> columns) {
    ExactMatrix m(rows, static_cast<int>(columns.size()));
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (static_cast<int>(columns[c].size()) != rows) throw StructuralError("column length differs from row count");
        for (int r = 0; r < rows; ++r) {
            const Scalar& v = columns[c][static_cast<std::size_t>(r)];
            if (!v.is_zero()) m.data_[static_cast<std::size_t>(r)].push_back({static_cast<int>(c), v});
        }
    }
    return m;
}

ExactMatrix ExactMatrix::identity(int n) {
    ExactMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.data_[static_cast<std::size_t>(i)].push_back({i, Scalar(1)});
    return m;
}

ExactMatrix ExactMatrix::vstack(const ExactMatrix& top, const ExactMatrix& bottom) {
    if (top.cols_ != bottom.cols_) throw StructuralError("vstack of matrices with different column counts");
    ExactMatrix m(top.rows_ + bottom.rows_, top.cols_);
    std::copy(top.data_.begin(), top.data_.end(), m.data_.begin());
    std::copy(bottom.data_.begin(), bottom.data_.end(), m.data_.begin() + top.rows_);
    return m;
}

std::size_t ExactMatrix::nonzeros() const {
    std::size_t n = 0;
    for (const auto& r : data_) n += r.size();
    return n;
}

void ExactMatrix::set(int r, int c, const Scalar& value) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw StructuralError("matrix index out of range");
    auto& row = data_[static_cast<std::size_t>(r)];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const SparseEntry& e, int col) { return e.col < col; });
    if (it != row.end() && it->col == c) {
        if (value.is_zero()) {
            row.erase(it);
        } else {
            it->value = value;
        }
    } else if (!value.is_zero()) {
        row.insert(it, {c, value});
    }
}

Scalar ExactMatrix::at(int r, int c) const {
    const Scalar* v = find_entry(data_[static_cast<std::size_t>(r)], c);
    return v ? *v : Scalar();
}

void ExactMatrix::set_row(int r, SparseRow row) {
    std::sort(row.begin(), row.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.col < b.col; });
    std::erase_if(row, [](const SparseEntry& e) { return e.value.is_zero(); });
    for (std::size_t i = 1; i < row.size(); ++i) {
        if (row[i].col == row[i - 1].col) throw StructuralError("duplicate column in sparse row");
    }
    if (!row.empty() && (row.front().col < 0 || row.back().col >= cols_)) throw StructuralError("column out of range");
    data_[static_cast<std::size_t>(r)] = std::move(row);
}

ExactVector ExactMatrix::multiply(const ExactVector& v) const {
    if (static_cast<int>(v.size()) != cols_) throw StructuralError("vector length differs from column count");
    ExactVector out(static_cast<std::size_t>(rows_));
    for (int r = 0; r < rows_; ++r) {
        Scalar acc;
        for (const auto& e : data_[static_cast<std::size_t>(r)]) {
            const Scalar& x = v[static_cast<std::size_t>(e.col)];
            if (!x.is_zero()) acc += e.value * x;
        }
        out[static_cast<std::size_t>(r)] = std::move(acc);
    }
    return out;
}

ExactVector ExactMatrix::column(int c) const {
    ExactVector out(static_cast<std::size_t>(rows_));
    for (int r = 0; r < rows_; ++r) out[static_cast<std::size_t>(r)] = at(r, c);
    return out;
}

ExactMatrix ExactMatrix::permuted_columns(std::span<const int> order) const {
    if (static_cast<int>(order.size()) != cols_) throw StructuralError("column permutation has wrong length");
    std::vector<int> where(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) where[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
    ExactMatrix m(rows_, cols_);
    for (int r = 0; r < rows_; ++r) {
        SparseRow row;
        for (const auto& e : data_[static_cast<std::size_t>(r)]) row.push_back({where[static_cast<std::size_t>(e.col)], e.value});
        m.set_row(r, std::move(row));
    }
    return m;
}

ExactVector Echelon::reduce(ExactVector v) const {
    for (std::size_t i = 0; i < rows.size(); ++i) {
        Scalar f = v[static_cast<std::size_t>(pivot_cols[i])];
        if (f.is_zero()) continue;
        for (const auto& e : rows[i]) v[static_cast<std::size_t>(e.col)] -= f * e.value;
    }
    return v;
}

Echelon row_reduce(const ExactMatrix& m) {
    Echelon ech;
    ech.cols = m.cols();

    // Working rows not yet used as pivots, bucketed by leading column.
    std::vector<SparseRow> work;
    work.reserve(static_cast<std::size_t>(m.rows()));
    for (int r = 0; r < m.rows(); ++r) {
        if (!m.row(r).empty()) work.push_back(m.row(r));
    }
    std::vector<bool> used(work.size(), false);

    for (int col = 0; col < m.cols(); ++col) {
        std::size_t best = work.size();
        for (std::size_t i = 0; i < work.size(); ++i) {
            if (used[i] || work[i].empty() || work[i].front().col != col) continue;
            if (best == work.size() || work[i].size() < work[best].size()) best = i;
        }
        if (best == work.size()) continue;

        SparseRow pivot = std::move(work[best]);
        used[best] = true;
        Scalar inv = Scalar(1) / pivot.front().value;
        for (auto& e : pivot) e.value *= inv;

        for (std::size_t i = 0; i < work.size(); ++i) {
            if (used[i] || work[i].empty() || work[i].front().col != col) continue;
            Scalar f = -work[i].front().value;
            work[i] = combine(nullptr, work[i], &f, pivot);
        }
        for (auto& done : ech.rows) {
            const Scalar* v = find_entry(done, col);
            if (!v) continue;
            Scalar f = -*v;
            done = combine(nullptr, done, &f, pivot);
        }
        ech.pivot_cols.push_back(col);
        ech.rows.push_back(std::move(pivot));
    }
    return ech;
}

int rank(const ExactMatrix& m) { return row_reduce(m).rank(); }

std::vector<ExactVector> kernel_basis(const ExactMatrix& m) {
    const int ncols = m.cols();
    std::vector<SparseRow> active;
    for (int r = 0; r < m.rows(); ++r) {
        if (m.row(r).empty()) continue;
        SparseRow row = m.row(r);
        clear_denominators(row);
        active.push_back(std::move(row));
    }

    // Fraction-free forward elimination: every surviving entry is a minor of
    // the input, so division by the previous pivot is exact.
    std::vector<SparseRow> upper;
    std::vector<int> pivot_cols;
    Scalar prev(1);
    for (int col = 0; col < ncols && !active.empty(); ++col) {
        std::size_t best = active.size();
        for (std::size_t i = 0; i < active.size(); ++i) {
            if (active[i].front().col != col) continue;
            if (best == active.size() || active[i].size() < active[best].size()) best = i;
        }
        if (best == active.size()) continue;

        SparseRow pivot = std::move(active[best]);
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(best));
        const Scalar p = pivot.front().value;
        for (auto& row : active) {
            if (row.front().col == col) {
                Scalar c = -row.front().value;
                row = combine(&p, row, &c, pivot);
            } else {
                for (auto& e : row) e.value *= p;
            }
            if (!prev.is_one()) {
                for (auto& e : row) e.value /= prev;
            }
        }
        std::erase_if(active, [](const SparseRow& r) { return r.empty(); });
        prev = p;
        pivot_cols.push_back(col);
        upper.push_back(std::move(pivot));
    }

    std::vector<bool> is_pivot(static_cast<std::size_t>(ncols), false);
    for (int c : pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;

    std::vector<ExactVector> basis;
    for (int free = 0; free < ncols; ++free) {
        if (is_pivot[static_cast<std::size_t>(free)]) continue;
        ExactVector x(static_cast<std::size_t>(ncols));
        x[static_cast<std::size_t>(free)] = Scalar(1);
        for (std::size_t k = upper.size(); k-- > 0;) {
            const SparseRow& row = upper[k];
            Scalar acc;
            for (std::size_t j = 1; j < row.size(); ++j) {
                const Scalar& xv = x[static_cast<std::size_t>(row[j].col)];
                if (!xv.is_zero()) acc += row[j].value * xv;
            }
            if (!acc.is_zero()) x[static_cast<std::size_t>(row.front().col)] = -acc / row.front().value;
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

std::optional<ExactVector> solve(const ExactMatrix& m, const ExactVector& b) {
    if (static_cast<int>(b.size()) != m.rows()) throw StructuralError("right-hand side length differs from row count");
    ExactMatrix aug(m.rows(), m.cols() + 1);
    for (int r = 0; r < m.rows(); ++r) {
        SparseRow row = m.row(r);
        if (!b[static_cast<std::size_t>(r)].is_zero()) row.push_back({m.cols(), b[static_cast<std::size_t>(r)]});
        aug.set_row(r, std::move(row));
    }
    Echelon ech = row_reduce(aug);
    ExactVector x(static_cast<std::size_t>(m.cols()));
    for (std::size_t i = 0; i < ech.rows.size(); ++i) {
        int pc = ech.pivot_cols[i];
        if (pc == m.cols()) return std::nullopt;
        const Scalar* rhs = find_entry(ech.rows[i], m.cols());
        if (rhs) x[static_cast<std::size_t>(pc)] = *rhs;
    }
    return x;
}

bool span_contains(std::span<const ExactVector> basis, std::span<const ExactVector> vectors, int dim) {
    ExactMatrix a = ExactMatrix::from_rows(dim, basis);
    Echelon ech = row_reduce(a);
    for (const auto& v : vectors) {
        if (static_cast<int>(v.size()) != dim) throw StructuralError("vector dimension mismatch in span test");
        if (!is_zero(ech.reduce(v))) return false;
    }
    return true;
}

ExactVector primitive(ExactVector v) {
    mpz_class l = 1;
    for (const auto& s : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), s.denominator_lcm().get_mpz_t());
    mpz_class g = 0;
    Scalar lead;
    for (auto& s : v) {
        s *= Scalar(mpq_class(l));
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), s.re().get_num_mpz_t());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), s.im().get_num_mpz_t());
        if (lead.is_zero()) lead = s;
    }
    if (g == 0) return v;
    bool flip = sgn(lead.re()) < 0 || (sgn(lead.re()) == 0 && sgn(lead.im()) < 0);
    Scalar f{mpq_class(flip ? mpz_class(-1) : mpz_class(1), g)};
    for (auto& s : v) s *= f;
    return v;
}

bool is_zero(const ExactVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

}  // namespace pbpois
