#include "hkr/matrix.hpp"

#include <algorithm>

namespace hkr {

ExactMatrix::ExactMatrix(int rows, int cols, BaseRing ring)
    : ring_(ring), rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols, Rat(0)) {}

ExactMatrix ExactMatrix::identity(int n, BaseRing ring) {
    ExactMatrix m(n, n, ring);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

ExactMatrix ExactMatrix::from_rows(const std::vector<std::vector<Rat>>& rows, BaseRing ring) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    ExactMatrix m(r, c, ring);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c) throw MathError("ragged matrix rows");
        for (int j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& o) const {
    if (cols_ != o.rows_ || ring_ != o.ring_) throw MathError("matrix product shape/ring mismatch");
    ExactMatrix r(rows_, o.cols_, ring_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Rat& a = at(i, k);
            if (a == 0) continue;
            for (int j = 0; j < o.cols_; ++j) {
                if (o.at(k, j) == 0) continue;
                r.set(i, j, r.at(i, j) + a * o.at(k, j));
            }
        }
    return r;
}

ExactMatrix ExactMatrix::operator+(const ExactMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || ring_ != o.ring_)
        throw MathError("matrix sum shape/ring mismatch");
    ExactMatrix r(rows_, cols_, ring_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.set(i, j, at(i, j) + o.at(i, j));
    return r;
}

ExactMatrix ExactMatrix::operator-(const ExactMatrix& o) const {
    return *this + o.scaled(Rat(-1));
}

ExactMatrix ExactMatrix::scaled(const Rat& c) const {
    ExactMatrix r(rows_, cols_, ring_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.set(i, j, at(i, j) * c);
    return r;
}

ExactMatrix ExactMatrix::transpose() const {
    ExactMatrix r(cols_, rows_, ring_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.set(j, i, at(i, j));
    return r;
}

bool ExactMatrix::operator==(const ExactMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (!ring_.eq(at(i, j), o.at(i, j))) return false;
    return true;
}

bool ExactMatrix::is_zero() const {
    for (const auto& x : e_)
        if (!ring_.is_zero(x)) return false;
    return true;
}

ExactMatrix ExactMatrix::col(int j) const {
    ExactMatrix r(rows_, 1, ring_);
    for (int i = 0; i < rows_; ++i) r.set(i, 0, at(i, j));
    return r;
}

std::vector<Rat> ExactMatrix::column_vec(int j) const {
    std::vector<Rat> v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = at(i, j);
    return v;
}

ExactMatrix ExactMatrix::hstack(const ExactMatrix& o) const {
    if (rows_ != o.rows_ || ring_ != o.ring_) throw MathError("hstack mismatch");
    ExactMatrix r(rows_, cols_ + o.cols_, ring_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) r.set(i, j, at(i, j));
        for (int j = 0; j < o.cols_; ++j) r.set(i, cols_ + j, o.at(i, j));
    }
    return r;
}

ExactMatrix ExactMatrix::over(BaseRing ring) const {
    ExactMatrix r(rows_, cols_, ring);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.set(i, j, at(i, j));
    return r;
}

void ExactMatrix::swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < cols_; ++c)
        std::swap(e_[static_cast<size_t>(i) * cols_ + c], e_[static_cast<size_t>(j) * cols_ + c]);
}

void ExactMatrix::swap_cols(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < rows_; ++r)
        std::swap(e_[static_cast<size_t>(r) * cols_ + i], e_[static_cast<size_t>(r) * cols_ + j]);
}

// ---------------------------------------------------------------------------
// Smith normal form
// ---------------------------------------------------------------------------

namespace {

// In-place integer row/col operations that mirror into U (rows) / V (cols).
struct SnfWork {
    std::vector<std::vector<Int>> a;  // the matrix
    std::vector<std::vector<Int>> u;  // rows x rows
    std::vector<std::vector<Int>> v;  // cols x cols
    int r, c;

    void row_op(int dst, int src, const Int& q) {  // row dst -= q * row src
        for (int j = 0; j < c; ++j) a[dst][j] -= q * a[src][j];
        for (size_t j = 0; j < u[dst].size(); ++j) u[dst][j] -= q * u[src][j];
    }
    void col_op(int dst, int src, const Int& q) {
        for (int i = 0; i < r; ++i) a[i][dst] -= q * a[i][src];
        for (size_t i = 0; i < v.size(); ++i) v[i][dst] -= q * v[i][src];
    }
    void swap_r(int i, int j) {
        if (i == j) return;
        std::swap(a[i], a[j]);
        std::swap(u[i], u[j]);
    }
    void swap_c(int i, int j) {
        if (i == j) return;
        for (int k = 0; k < r; ++k) std::swap(a[k][i], a[k][j]);
        for (auto& row : v) std::swap(row[i], row[j]);
    }
    void negate_row(int i) {
        for (int j = 0; j < c; ++j) a[i][j] = -a[i][j];
        for (auto& x : u[i]) x = -x;
    }
};

}  // namespace

SmithResult smith_normal_form(const ExactMatrix& M) {
    if (!M.ring().is_integral_like())
        throw MathError("smith_normal_form: integer matrix required");
    const int r = M.rows(), c = M.cols();
    SnfWork w;
    w.r = r;
    w.c = c;
    w.a.assign(r, std::vector<Int>(c));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) w.a[i][j] = M.at(i, j).get_num();
    w.u.assign(r, std::vector<Int>(r));
    w.v.assign(c, std::vector<Int>(c));
    for (int i = 0; i < r; ++i) w.u[i][i] = 1;
    for (int j = 0; j < c; ++j) w.v[j][j] = 1;

    const int n = std::min(r, c);
    int t = 0;
    for (; t < n; ++t) {
        bool all_zero = false;
        while (true) {
            // Move an entry of minimal absolute value in the trailing
            // submatrix into the pivot position. Re-selecting every pass
            // keeps quotients small: each pass below either clears the
            // pivot row and column or leaves a strictly smaller remainder
            // for the next selection.
            int pi = -1, pj = -1;
            for (int i = t; i < r; ++i)
                for (int j = t; j < c; ++j)
                    if (w.a[i][j] != 0 &&
                        (pi < 0 || mpz_cmpabs(w.a[i][j].get_mpz_t(), w.a[pi][pj].get_mpz_t()) < 0))
                        pi = i, pj = j;
            if (pi < 0) {
                all_zero = true;
                break;
            }
            w.swap_r(t, pi);
            w.swap_c(t, pj);

            bool remainder = false;
            for (int i = t + 1; i < r; ++i) {
                if (w.a[i][t] == 0) continue;
                Int q = w.a[i][t] / w.a[t][t];  // truncated division
                w.row_op(i, t, q);
                if (w.a[i][t] != 0) remainder = true;
            }
            for (int j = t + 1; j < c; ++j) {
                if (w.a[t][j] == 0) continue;
                Int q = w.a[t][j] / w.a[t][t];
                w.col_op(j, t, q);
                if (w.a[t][j] != 0) remainder = true;
            }
            if (remainder) continue;

            // Enforce divisibility of the trailing block by the pivot:
            // folding an offending row into row t forces a remainder
            // smaller than the pivot on the next pass.
            bool fixed = false;
            for (int i = t + 1; i < r && !fixed; ++i)
                for (int j = t + 1; j < c && !fixed; ++j)
                    if (w.a[i][j] % w.a[t][t] != 0) {
                        w.row_op(t, i, Int(-1));  // row t += row i
                        fixed = true;
                    }
            if (!fixed) break;
        }
        if (all_zero) break;
        if (w.a[t][t] < 0) w.negate_row(t);
    }

    SmithResult res;
    res.rank = 0;
    auto ring = M.ring();
    res.D = ExactMatrix(r, c, BaseRing::integers());
    for (int i = 0; i < std::min(r, c); ++i) {
        res.D.set(i, i, Rat(w.a[i][i]));
        if (w.a[i][i] != 0) ++res.rank;
    }
    res.U = ExactMatrix(r, r, BaseRing::integers());
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) res.U.set(i, j, Rat(w.u[i][j]));
    res.V = ExactMatrix(c, c, BaseRing::integers());
    for (int i = 0; i < c; ++i)
        for (int j = 0; j < c; ++j) res.V.set(i, j, Rat(w.v[i][j]));
    return res;
}

// ---------------------------------------------------------------------------
// Field linear algebra (also used over Q for integral rings)
// ---------------------------------------------------------------------------

namespace {

BaseRing fraction_field(const BaseRing& ring) {
    if (ring.is_field()) return ring;
    if (ring.is_integral_like()) return BaseRing::rationals();
    throw MathError("no fraction field for " + ring.name());
}

// Row echelon form in place; returns pivot column indices.
std::vector<int> echelon(std::vector<std::vector<Rat>>& a, const BaseRing& f) {
    std::vector<int> pivots;
    int rows = static_cast<int>(a.size());
    int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
    int row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
        int p = -1;
        for (int i = row; i < rows; ++i)
            if (!f.is_zero(a[i][col])) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(a[row], a[p]);
        Rat ip = f.inv(a[row][col]);
        for (int j = col; j < cols; ++j) a[row][j] = f.mul(a[row][j], ip);
        for (int i = 0; i < rows; ++i) {
            if (i == row || f.is_zero(a[i][col])) continue;
            Rat m = a[i][col];
            for (int j = col; j < cols; ++j) a[i][j] = f.sub(a[i][j], f.mul(m, a[row][j]));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::vector<std::vector<Rat>> to_rows(const ExactMatrix& M, const BaseRing& f) {
    std::vector<std::vector<Rat>> a(M.rows(), std::vector<Rat>(M.cols()));
    for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j) a[i][j] = f.reduce(M.at(i, j));
    return a;
}

}  // namespace

int rank(const ExactMatrix& M) {
    BaseRing f = fraction_field(M.ring());
    auto a = to_rows(M, f);
    return static_cast<int>(echelon(a, f).size());
}

std::vector<std::vector<Rat>> kernel_basis(const ExactMatrix& M) {
    if (!M.ring().is_field()) throw MathError("field required");
    const BaseRing& f = M.ring();
    auto a = to_rows(M, f);
    auto pivots = echelon(a, f);
    std::vector<bool> is_pivot(M.cols(), false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<std::vector<Rat>> basis;
    for (int freec = 0; freec < M.cols(); ++freec) {
        if (is_pivot[freec]) continue;
        std::vector<Rat> v(M.cols(), Rat(0));
        v[freec] = 1;
        for (size_t pr = 0; pr < pivots.size(); ++pr)
            v[pivots[pr]] = f.neg(a[pr][freec]);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<std::vector<Rat>> integer_kernel(const ExactMatrix& M) {
    SmithResult s = smith_normal_form(M);
    std::vector<std::vector<Rat>> basis;
    for (int j = s.rank; j < M.cols(); ++j) basis.push_back(s.V.column_vec(j));
    return basis;
}

ExactMatrix inverse(const ExactMatrix& M) {
    if (M.rows() != M.cols()) throw MathError("inverse: square required");
    BaseRing f = fraction_field(M.ring());
    int n = M.rows();
    auto a = to_rows(M, f);
    for (int i = 0; i < n; ++i) {
        a[i].resize(2 * n, Rat(0));
        a[i][n + i] = 1;
    }
    auto pivots = echelon(a, f);
    if (static_cast<int>(pivots.size()) != n) throw MathError("inverse: singular matrix");
    ExactMatrix r(n, n, M.ring());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.set(i, j, a[i][n + j]);  // throws if not in ring
    return r;
}

Rat determinant(const ExactMatrix& M) {
    if (M.rows() != M.cols()) throw MathError("determinant: square required");
    BaseRing f = fraction_field(M.ring());
    auto a = to_rows(M, f);
    int n = M.rows();
    Rat det(1);
    for (int col = 0; col < n; ++col) {
        int p = -1;
        for (int i = col; i < n; ++i)
            if (!f.is_zero(a[i][col])) {
                p = i;
                break;
            }
        if (p < 0) return Rat(0);
        if (p != col) {
            std::swap(a[p], a[col]);
            det = -det;
        }
        det = f.mul(det, a[col][col]);
        Rat ip = f.inv(a[col][col]);
        for (int i = col + 1; i < n; ++i) {
            Rat m = f.mul(a[i][col], ip);
            if (f.is_zero(m)) continue;
            for (int j = col; j < n; ++j) a[i][j] = f.sub(a[i][j], f.mul(m, a[col][j]));
        }
    }
    return det;
}

std::optional<std::vector<Rat>> solve(const ExactMatrix& M, const std::vector<Rat>& b) {
    BaseRing f = fraction_field(M.ring());
    if (static_cast<int>(b.size()) != M.rows()) throw MathError("solve: size mismatch");
    auto a = to_rows(M, f);
    for (int i = 0; i < M.rows(); ++i) a[i].push_back(f.reduce(b[i]));
    auto pivots = echelon(a, f);
    // Inconsistent iff a pivot lands in the augmented column.
    for (size_t pr = 0; pr < pivots.size(); ++pr)
        if (pivots[pr] == M.cols()) return std::nullopt;
    std::vector<Rat> x(M.cols(), Rat(0));
    for (size_t pr = 0; pr < pivots.size(); ++pr) x[pivots[pr]] = a[pr][M.cols()];
    return x;
}

std::vector<std::vector<Rat>> column_space_basis(const ExactMatrix& M) {
    BaseRing f = fraction_field(M.ring());
    auto a = to_rows(M.transpose(), f);
    auto pivots = echelon(a, f);
    std::vector<std::vector<Rat>> basis;
    for (size_t i = 0; i < pivots.size(); ++i) basis.push_back(a[i]);
    return basis;
}

ExactMatrix matrix_from_columns(const std::vector<std::vector<Rat>>& cols, int rows,
                                BaseRing ring) {
    ExactMatrix m(rows, static_cast<int>(cols.size()), ring);
    for (size_t j = 0; j < cols.size(); ++j) {
        if (static_cast<int>(cols[j].size()) != rows) throw MathError("column size mismatch");
        for (int i = 0; i < rows; ++i) m.set(i, static_cast<int>(j), cols[j][i]);
    }
    return m;
}

}  // namespace hkr
