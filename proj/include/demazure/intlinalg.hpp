#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "demazure/bigint.hpp"

namespace demazure {

// Dense row-major integer matrix.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {}
    static IntMatrix identity(int n);
    static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows);
    static IntMatrix from_rows(const std::vector<std::vector<int>>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Int& operator()(int i, int j) { return a_[index(i, j)]; }
    const Int& operator()(int i, int j) const { return a_[index(i, j)]; }
    std::vector<Int> row(int i) const;

    IntMatrix transpose() const;
    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    std::vector<Int> apply(std::span<const Int> x) const;
    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

    bool is_diagonal() const;
    std::vector<std::vector<std::string>> to_strings() const;

    void swap_rows(int i, int j);
    void swap_cols(int i, int j);
    // row_i += k * row_j
    void add_row_multiple(int i, int j, const Int& k);
    void add_col_multiple(int i, int j, const Int& k);
    void negate_row(int i);

private:
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(j); }
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Int> a_;
};

struct SmithForm {
    IntMatrix U;  // rows x rows, unimodular
    IntMatrix D;  // rows x cols, diagonal, d_1 | d_2 | ..., d_i >= 0
    IntMatrix V;  // cols x cols, unimodular
    int rank = 0;
    std::vector<Int> invariants() const;  // nonzero diagonal entries
};

// U*A*V = D. Pivots on the smallest absolute entry of the active block.
SmithForm smith_normal_form(const IntMatrix& A);

Int determinant(const IntMatrix& A);

// Square unimodular matrix whose first row is k. Throws Error(NotUnimodular)
// when gcd(k) != 1.
IntMatrix complete_unimodular_row(std::span<const Int> k);

// Inverse of a square matrix with determinant +-1.
IntMatrix unimodular_inverse(const IntMatrix& A);

// |det A|, or nullopt when det A = 0 (infinite index).
std::optional<Int> lattice_index(const IntMatrix& A);

struct LinearSolution {
    bool solvable = false;
    std::vector<Int> x;
    // Least c > 0 with c*b in the image (over Z), or 0 when no multiple of b
    // lies in the image. Equals 1 exactly when solvable.
    Int obstruction;
    std::vector<Int> image_invariants;
};

// A x = b over Z, or over Z/m when modulus is given. The returned x sets every
// free SNF parameter to zero; over Z/m entries are reduced into [0, m).
LinearSolution solve_linear(const IntMatrix& A, std::span<const Int> b, std::optional<Int> modulus = std::nullopt);

}  // namespace demazure
