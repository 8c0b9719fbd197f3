#pragma once

#include <optional>
#include <vector>

#include "hkr/ring.hpp"

namespace hkr {

/// Dense exact matrix over a BaseRing. Entries are kept in reduced form.
class ExactMatrix {
public:
    ExactMatrix() : ring_(BaseRing::integers()), rows_(0), cols_(0) {}
    ExactMatrix(int rows, int cols, BaseRing ring);
    static ExactMatrix identity(int n, BaseRing ring);
    static ExactMatrix zero(int rows, int cols, BaseRing ring) {
        return ExactMatrix(rows, cols, ring);
    }
    static ExactMatrix from_rows(const std::vector<std::vector<Rat>>& rows, BaseRing ring);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const BaseRing& ring() const { return ring_; }

    const Rat& at(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }
    void set(int i, int j, const Rat& v) { e_[static_cast<size_t>(i) * cols_ + j] = ring_.reduce(v); }

    ExactMatrix operator*(const ExactMatrix& o) const;
    ExactMatrix operator+(const ExactMatrix& o) const;
    ExactMatrix operator-(const ExactMatrix& o) const;
    ExactMatrix scaled(const Rat& c) const;
    ExactMatrix transpose() const;
    bool operator==(const ExactMatrix& o) const;
    bool is_zero() const;

    ExactMatrix col(int j) const;
    std::vector<Rat> column_vec(int j) const;
    /// Horizontal concatenation [this | o].
    ExactMatrix hstack(const ExactMatrix& o) const;
    /// Reinterpret over another ring (entries rechecked/reduced).
    ExactMatrix over(BaseRing ring) const;

    void swap_rows(int i, int j);
    void swap_cols(int i, int j);

private:
    BaseRing ring_;
    int rows_, cols_;
    std::vector<Rat> e_;
};

struct SmithResult {
    ExactMatrix D;  // diagonal, d_1 | d_2 | ... | d_r, then zeros
    ExactMatrix U;  // unimodular, U*M*V = D
    ExactMatrix V;  // unimodular
    int rank = 0;
};

/// Smith normal form of an integer matrix (Integers or PLocalIntegers,
/// computed integrally). Total; U and V have determinant +-1.
SmithResult smith_normal_form(const ExactMatrix& M);

/// Rank over the fraction field (exact Gaussian elimination over Q for
/// integral rings, modular elimination for prime fields).
int rank(const ExactMatrix& M);

/// Basis of the right kernel over a field. Throws "field required" otherwise.
std::vector<std::vector<Rat>> kernel_basis(const ExactMatrix& M);

/// Basis of the integer right kernel (saturated: a Z-basis of ker over Z).
std::vector<std::vector<Rat>> integer_kernel(const ExactMatrix& M);

/// Inverse over a field, or of a unimodular integer matrix (integrality
/// verified). Throws on singular input.
ExactMatrix inverse(const ExactMatrix& M);

Rat determinant(const ExactMatrix& M);

/// One solution of M x = b over a field, if consistent.
std::optional<std::vector<Rat>> solve(const ExactMatrix& M, const std::vector<Rat>& b);

/// Column-space basis over a field: returns indices-free reduced basis
/// vectors spanning the column space.
std::vector<std::vector<Rat>> column_space_basis(const ExactMatrix& M);

ExactMatrix matrix_from_columns(const std::vector<std::vector<Rat>>& cols, int rows,
                                BaseRing ring);

}  // namespace hkr
