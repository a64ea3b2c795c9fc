#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pbpois/algebra/scalar.hpp"

namespace pbpois {

using ExactVector = std::vector<Scalar>;

struct SparseEntry {
    int col;
    Scalar value;

    friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

// Sorted by column, no zero values.
using SparseRow = std::vector<SparseEntry>;

// Exact sparse matrix stored row-major; entries iterate in (row, col) order.
class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(int rows, int cols);

    static ExactMatrix from_rows(int cols, std::span<const ExactVector> rows);
    static ExactMatrix from_columns(int rows, std::span<const ExactVector> columns);
    static ExactMatrix identity(int n);
    // [top; bottom], same column count.
    static ExactMatrix vstack(const ExactMatrix& top, const ExactMatrix& bottom);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::size_t nonzeros() const;

    void set(int r, int c, const Scalar& value);
    Scalar at(int r, int c) const;
    const SparseRow& row(int r) const { return data_[static_cast<std::size_t>(r)]; }
    void set_row(int r, SparseRow row);

    ExactVector multiply(const ExactVector& v) const;
    ExactVector column(int c) const;
    ExactMatrix permuted_columns(std::span<const int> order) const;

    friend bool operator==(const ExactMatrix&, const ExactMatrix&) = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<SparseRow> data_;
};

// Reduced row echelon form: pivot entries are 1 and pivot columns are cleared
// in every other row. Pivot columns ascend with the row index.
struct Echelon {
    int cols = 0;
    std::vector<int> pivot_cols;
    std::vector<SparseRow> rows;

    int rank() const { return static_cast<int>(pivot_cols.size()); }
    // Coordinates of `v` reduced modulo the row space (pivot coordinates become 0).
    ExactVector reduce(ExactVector v) const;
};

// Gauss-Jordan over the field, pivot columns taken left to right, pivot row
// chosen by fewest nonzeros (ties: lowest index).
Echelon row_reduce(const ExactMatrix& m);

int rank(const ExactMatrix& m);

// Right null space via fraction-free (Bareiss) elimination. Each basis vector
// has a 1 in its own free column and 0 in the other free columns, so the
// result does not depend on pivot-row choices.
std::vector<ExactVector> kernel_basis(const ExactMatrix& m);

// Some solution of m x = b with every free variable set to zero.
std::optional<ExactVector> solve(const ExactMatrix& m, const ExactVector& b);

// True iff every vector lies in the span of `basis`.
bool span_contains(std::span<const ExactVector> basis, std::span<const ExactVector> vectors, int dim);

// Scales a vector so that its entries are coprime Gaussian integers with the
// first nonzero entry having positive real part (or positive imaginary part).
ExactVector primitive(ExactVector v);

bool is_zero(const ExactVector& v);

}  // namespace pbpois
