#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "maslov/semiring.hpp"

namespace maslov {

/// Dense row-major matrix over an idempotent (or subtropical) semiring.
class SemiringMatrix {
public:
    /// rows x cols matrix filled with the semiring zero.
    SemiringMatrix(std::size_t rows, std::size_t cols, Semiring spec);
    /// Throws ShapeError if entries.size() != rows * cols.
    SemiringMatrix(std::size_t rows, std::size_t cols, Semiring spec, std::vector<ExtReal> entries);

    static SemiringMatrix zeros(std::size_t rows, std::size_t cols, Semiring spec) {
        return SemiringMatrix(rows, cols, spec);
    }
    static SemiringMatrix identity(std::size_t n, Semiring spec);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const Semiring& spec() const noexcept { return spec_; }

    ExtReal operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
    ExtReal& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

    std::span<const ExtReal> row(std::size_t i) const { return {entries_.data() + i * cols_, cols_}; }
    const std::vector<ExtReal>& entries() const noexcept { return entries_; }

    friend bool operator==(const SemiringMatrix&, const SemiringMatrix&) = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    Semiring spec_;
    std::vector<ExtReal> entries_;
};

SemiringMatrix mat_add(const SemiringMatrix& a, const SemiringMatrix& b);
SemiringMatrix mat_mul(const SemiringMatrix& a, const SemiringMatrix& b);

/// A* = I (+) A (+) A^2 (+) ...  Partial sums P_{k+1} = I (+) A P_k are
/// compared entrywise for exact equality.  If no stabilisation occurs within
/// `max_iter` terms (0 means 2n) one extra term is tried; a change there
/// raises DivergentError.  Non-idempotent semirings raise UnsupportedError.
SemiringMatrix kleene_star(const SemiringMatrix& a, std::size_t max_iter = 0);

enum class BellmanMethod { Jacobi, GaussSeidel };

/// Least solution of X = H X (+) F.  Jacobi iterates X_{k+1} = H X_k (+) F
/// from X_0 = F; Gauss-Seidel updates rows in place in ascending order.
/// Divergence is detected as in kleene_star.
SemiringMatrix solve_bellman(const SemiringMatrix& h, const SemiringMatrix& f,
                             BellmanMethod method = BellmanMethod::Jacobi,
                             std::size_t max_iter = 0);

}  // namespace maslov
