#include "demazure/intlinalg.hpp"

#include <stdexcept>

#include "demazure/error.hpp"

namespace demazure {

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Int(1);
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rows) {
    if (rows.empty()) return {};
    IntMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int i = 0; i < m.rows(); ++i) {
        if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != m.cols()) throw std::invalid_argument("ragged matrix");
        for (int j = 0; j < m.cols(); ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
    std::vector<std::vector<Int>> big;
    for (const auto& r : rows) big.emplace_back(r.begin(), r.end());
    return from_rows(big);
}

std::vector<Int> IntMatrix::row(int i) const {
    return {a_.begin() + static_cast<std::ptrdiff_t>(index(i, 0)), a_.begin() + static_cast<std::ptrdiff_t>(index(i, 0) + static_cast<std::size_t>(cols_))};
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix dimension mismatch");
    IntMatrix c(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i) {
        for (int k = 0; k < a.cols_; ++k) {
            const Int& x = a(i, k);
            if (x.is_zero()) continue;
            for (int j = 0; j < b.cols_; ++j) {
                if (!b(k, j).is_zero()) c(i, j) += x * b(k, j);
            }
        }
    }
    return c;
}

std::vector<Int> IntMatrix::apply(std::span<const Int> x) const {
    if (static_cast<int>(x.size()) != cols_) throw std::invalid_argument("vector dimension mismatch");
    std::vector<Int> out(static_cast<std::size_t>(rows_));
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) {
            if (!(*this)(i, j).is_zero() && !x[static_cast<std::size_t>(j)].is_zero()) {
                out[static_cast<std::size_t>(i)] += (*this)(i, j) * x[static_cast<std::size_t>(j)];
            }
        }
    }
    return out;
}

bool IntMatrix::is_diagonal() const {
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) {
            if (i != j && !(*this)(i, j).is_zero()) return false;
        }
    }
    return true;
}

std::vector<std::vector<std::string>> IntMatrix::to_strings() const {
    std::vector<std::vector<std::string>> out(static_cast<std::size_t>(rows_));
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) out[static_cast<std::size_t>(i)].push_back((*this)(i, j).to_string());
    }
    return out;
}

void IntMatrix::swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
}

void IntMatrix::swap_cols(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
}

void IntMatrix::add_row_multiple(int i, int j, const Int& k) {
    if (k.is_zero()) return;
    for (int c = 0; c < cols_; ++c) {
        if (!(*this)(j, c).is_zero()) (*this)(i, c) += k * (*this)(j, c);
    }
}

void IntMatrix::add_col_multiple(int i, int j, const Int& k) {
    if (k.is_zero()) return;
    for (int r = 0; r < rows_; ++r) {
        if (!(*this)(r, j).is_zero()) (*this)(r, i) += k * (*this)(r, j);
    }
}

void IntMatrix::negate_row(int i) {
    for (int c = 0; c < cols_; ++c) (*this)(i, c) = -(*this)(i, c);
}

std::vector<Int> SmithForm::invariants() const {
    std::vector<Int> out;
    for (int i = 0; i < rank; ++i) out.push_back(D(i, i));
    return out;
}

namespace {

// Round-to-nearest quotient keeps remainders small during elimination.
Int nearest_quotient(const Int& a, const Int& b) {
    Int q;
    Int r;
    Int::floor_divmod(a, b, q, r);
    if (abs(r + r) > abs(b)) q += Int(1);
    return q;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& A) {
    const int m = A.rows();
    const int n = A.cols();
    IntMatrix D = A;
    IntMatrix U = IntMatrix::identity(m);
    IntMatrix V = IntMatrix::identity(n);
    int t = 0;
    while (t < m && t < n) {
        // Smallest nonzero entry of the active block.
        int pi = -1;
        int pj = -1;
        for (int i = t; i < m; ++i) {
            for (int j = t; j < n; ++j) {
                if (D(i, j).is_zero()) continue;
                if (pi < 0 || abs(D(i, j)) < abs(D(pi, pj))) {
                    pi = i;
                    pj = j;
                }
            }
        }
        if (pi < 0) break;
        D.swap_rows(t, pi);
        U.swap_rows(t, pi);
        D.swap_cols(t, pj);
        V.swap_cols(t, pj);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = t + 1; i < m; ++i) {
                if (D(i, t).is_zero()) continue;
                Int q = nearest_quotient(D(i, t), D(t, t));
                D.add_row_multiple(i, t, -q);
                U.add_row_multiple(i, t, -q);
                if (!D(i, t).is_zero()) {
                    clean = false;
                    if (abs(D(i, t)) < abs(D(t, t))) {
                        D.swap_rows(t, i);
                        U.swap_rows(t, i);
                    }
                }
            }
            for (int j = t + 1; j < n; ++j) {
                if (D(t, j).is_zero()) continue;
                Int q = nearest_quotient(D(t, j), D(t, t));
                D.add_col_multiple(j, t, -q);
                V.add_col_multiple(j, t, -q);
                if (!D(t, j).is_zero()) {
                    clean = false;
                    if (abs(D(t, j)) < abs(D(t, t))) {
                        D.swap_cols(t, j);
                        V.swap_cols(t, j);
                    }
                }
            }
            if (!clean) continue;
            // Divisibility condition: fold an offending row into the pivot row.
            for (int i = t + 1; i < m && clean; ++i) {
                for (int j = t + 1; j < n; ++j) {
                    if (!Int::divides(D(t, t), D(i, j))) {
                        D.add_row_multiple(t, i, Int(1));
                        U.add_row_multiple(t, i, Int(1));
                        clean = false;
                        break;
                    }
                }
            }
        }
        if (D(t, t).sign() < 0) {
            D.negate_row(t);
            U.negate_row(t);
        }
        ++t;
    }
    SmithForm out{std::move(U), std::move(D), std::move(V), t};
    return out;
}

Int determinant(const IntMatrix& A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("determinant of non-square matrix");
    const int n = A.rows();
    if (n == 0) return Int(1);
    // Fraction-free Bareiss elimination.
    IntMatrix M = A;
    Int sign(1);
    Int prev(1);
    for (int k = 0; k < n - 1; ++k) {
        if (M(k, k).is_zero()) {
            int swap = -1;
            for (int i = k + 1; i < n; ++i) {
                if (!M(i, k).is_zero()) {
                    swap = i;
                    break;
                }
            }
            if (swap < 0) return Int(0);
            M.swap_rows(k, swap);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                M(i, j) = Int::divexact(M(i, j) * M(k, k) - M(i, k) * M(k, j), prev);
            }
        }
        prev = M(k, k);
    }
    return sign * M(n - 1, n - 1);
}

IntMatrix complete_unimodular_row(std::span<const Int> k) {
    const int n = static_cast<int>(k.size());
    if (n == 0) throw config_error("NotUnimodular", "empty row");
    IntMatrix row(1, n);
    for (int j = 0; j < n; ++j) row(0, j) = k[static_cast<std::size_t>(j)];
    SmithForm s = smith_normal_form(row);
    if (s.rank == 0 || !s.D(0, 0).is_one()) {
        std::string txt;
        for (const auto& v : k) txt += (txt.empty() ? "" : ",") + v.to_string();
        throw hypothesis_error("NotUnimodular", "row (" + txt + ") has gcd " + (s.rank == 0 ? std::string("0") : s.D(0, 0).to_string()),
                               {{"row", txt}});
    }
    // u*k*V = e_1 with u = +-1, so k = u * (first row of V^{-1}).
    IntMatrix M = unimodular_inverse(s.V);
    if (s.U(0, 0).sign() < 0) M.negate_row(0);
    if (determinant(M).sign() < 0 && n > 1) M.negate_row(n - 1);
    return M;
}

IntMatrix unimodular_inverse(const IntMatrix& A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("inverse of non-square matrix");
    SmithForm s = smith_normal_form(A);
    for (int i = 0; i < A.rows(); ++i) {
        if (i >= s.rank || !s.D(i, i).is_one()) throw hypothesis_error("NotUnimodular", "matrix is not unimodular");
    }
    // U A V = I  =>  A^{-1} = V U.
    return s.V * s.U;
}

std::optional<Int> lattice_index(const IntMatrix& A) {
    Int d = determinant(A);
    if (d.is_zero()) return std::nullopt;
    return abs(d);
}

LinearSolution solve_linear(const IntMatrix& A, std::span<const Int> b, std::optional<Int> modulus) {
    if (static_cast<int>(b.size()) != A.rows()) throw std::invalid_argument("right-hand side dimension mismatch");
    IntMatrix system = A;
    if (modulus) {
        // A x + m z = b over Z.
        system = IntMatrix(A.rows(), A.cols() + A.rows());
        for (int i = 0; i < A.rows(); ++i) {
            for (int j = 0; j < A.cols(); ++j) system(i, j) = A(i, j);
            system(i, A.cols() + i) = *modulus;
        }
    }
    SmithForm s = smith_normal_form(system);
    std::vector<Int> c = s.U.apply(b);
    LinearSolution out;
    out.image_invariants = s.invariants();
    out.obstruction = Int(1);
    std::vector<Int> y(static_cast<std::size_t>(system.cols()));
    bool ok = true;
    for (int i = 0; i < system.rows(); ++i) {
        const Int& ci = c[static_cast<std::size_t>(i)];
        if (i >= s.rank) {
            if (!ci.is_zero()) {
                ok = false;
                out.obstruction = Int(0);
            }
            continue;
        }
        const Int& d = s.D(i, i);
        if (Int::divides(d, ci)) {
            y[static_cast<std::size_t>(i)] = Int::divexact(ci, d);
        } else {
            ok = false;
            if (!out.obstruction.is_zero()) {
                Int need = Int::divexact(d, gcd(d, ci));
                out.obstruction = Int::divexact(out.obstruction * need, gcd(out.obstruction, need));
            }
        }
    }
    out.solvable = ok;
    if (!ok) return out;
    std::vector<Int> x = s.V.apply(y);
    x.resize(static_cast<std::size_t>(A.cols()));
    if (modulus) {
        for (auto& v : x) v = Int::mod(v, *modulus);
    }
    out.x = std::move(x);
    return out;
}

}  // namespace demazure
