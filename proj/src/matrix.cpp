#include "maslov/matrix.hpp"

#include <algorithm>
#include <string>

#include "maslov/error.hpp"

namespace maslov {

namespace {

void require_same_spec(const SemiringMatrix& a, const SemiringMatrix& b, const char* op) {
    if (!(a.spec() == b.spec())) {
        throw ShapeError(std::string(op) + ": semiring mismatch (" + a.spec().name() + " vs " + b.spec().name() + ")");
    }
}

void require_idempotent(const Semiring& spec, const char* op) {
    if (!spec.is_idempotent()) {
        throw UnsupportedError(std::string(op) + " needs an idempotent semiring, got " + spec.name());
    }
}

// Row i of (H X) (+) F written into out_row; reads X rows through `x`.
void bellman_row(const SemiringMatrix& h, const SemiringMatrix& x, const SemiringMatrix& f, std::size_t i,
                 std::vector<ExtReal>& out_row) {
    const Semiring& s = h.spec();
    const std::size_t m = f.cols();
    for (std::size_t j = 0; j < m; ++j) out_row[j] = f(i, j);
    for (std::size_t k = 0; k < h.cols(); ++k) {
        const ExtReal hik = h(i, k);
        if (s.is_zero(hik)) continue;
        for (std::size_t j = 0; j < m; ++j) out_row[j] = s.add(out_row[j], s.mul(hik, x(k, j)));
    }
}

}  // namespace

SemiringMatrix::SemiringMatrix(std::size_t rows, std::size_t cols, Semiring spec)
    : rows_(rows), cols_(cols), spec_(spec), entries_(rows * cols, spec.zero()) {
    if (rows == 0 || cols == 0) throw ShapeError("matrix dimensions must be positive");
}

SemiringMatrix::SemiringMatrix(std::size_t rows, std::size_t cols, Semiring spec, std::vector<ExtReal> entries)
    : rows_(rows), cols_(cols), spec_(spec), entries_(std::move(entries)) {
    if (rows == 0 || cols == 0) throw ShapeError("matrix dimensions must be positive");
    if (entries_.size() != rows * cols) {
        throw ShapeError("matrix needs " + std::to_string(rows * cols) + " entries, got " +
                         std::to_string(entries_.size()));
    }
    for (ExtReal e : entries_) spec_.validate(e);
}

SemiringMatrix SemiringMatrix::identity(std::size_t n, Semiring spec) {
    SemiringMatrix id(n, n, spec);
    for (std::size_t i = 0; i < n; ++i) id(i, i) = spec.one();
    return id;
}

SemiringMatrix mat_add(const SemiringMatrix& a, const SemiringMatrix& b) {
    require_same_spec(a, b, "mat_add");
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("mat_add: shape mismatch");
    SemiringMatrix c(a.rows(), a.cols(), a.spec());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a.spec().add(a(i, j), b(i, j));
    return c;
}

SemiringMatrix mat_mul(const SemiringMatrix& a, const SemiringMatrix& b) {
    require_same_spec(a, b, "mat_mul");
    if (a.cols() != b.rows()) {
        throw ShapeError("mat_mul: inner dimensions differ (" + std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()) + ")");
    }
    const Semiring& s = a.spec();
    SemiringMatrix c(a.rows(), b.cols(), s);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const ExtReal aik = a(i, k);
            if (s.is_zero(aik)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = s.add(c(i, j), s.mul(aik, b(k, j)));
        }
    }
    return c;
}

SemiringMatrix kleene_star(const SemiringMatrix& a, std::size_t max_iter) {
    if (a.rows() != a.cols()) throw ShapeError("kleene_star: matrix must be square");
    require_idempotent(a.spec(), "kleene_star");
    const std::size_t n = a.rows();
    if (max_iter == 0) max_iter = 2 * n;

    const SemiringMatrix id = SemiringMatrix::identity(n, a.spec());
    SemiringMatrix partial = id;
    // max_iter ordinary terms plus the one-term cycle check
    for (std::size_t it = 0; it <= max_iter; ++it) {
        SemiringMatrix next = mat_add(id, mat_mul(a, partial));
        if (next == partial) return partial;
        partial = std::move(next);
    }
    throw DivergentError("kleene_star: partial sums did not stabilise after " + std::to_string(max_iter) +
                         " terms (" + (a.spec().kind() == SemiringKind::MaxPlus ? "positive" : "negative") +
                         "-weight cycle)");
}

SemiringMatrix solve_bellman(const SemiringMatrix& h, const SemiringMatrix& f, BellmanMethod method,
                             std::size_t max_iter) {
    if (h.rows() != h.cols()) throw ShapeError("solve_bellman: H must be square");
    if (f.rows() != h.rows()) throw ShapeError("solve_bellman: F must have as many rows as H");
    require_same_spec(h, f, "solve_bellman");
    require_idempotent(h.spec(), "solve_bellman");
    const std::size_t n = h.rows();
    if (max_iter == 0) max_iter = 2 * n;

    SemiringMatrix x = f;
    std::vector<ExtReal> row(f.cols());
    for (std::size_t it = 0; it <= max_iter; ++it) {
        bool changed = false;
        if (method == BellmanMethod::Jacobi) {
            SemiringMatrix next = f;
            for (std::size_t i = 0; i < n; ++i) {
                bellman_row(h, x, f, i, row);
                std::copy(row.begin(), row.end(), &next(i, 0));
            }
            changed = !(next == x);
            x = std::move(next);
        } else {
            for (std::size_t i = 0; i < n; ++i) {
                bellman_row(h, x, f, i, row);
                if (!std::equal(row.begin(), row.end(), &x(i, 0))) {
                    changed = true;
                    std::copy(row.begin(), row.end(), &x(i, 0));
                }
            }
        }
        if (!changed) return x;
    }
    throw DivergentError("solve_bellman: iteration did not stabilise after " + std::to_string(max_iter) +
                         " sweeps (" + (h.spec().kind() == SemiringKind::MaxPlus ? "positive" : "negative") +
                         "-weight cycle)");
}

}  // namespace maslov
