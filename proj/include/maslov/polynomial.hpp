#pragma once

#include <complex>
#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <vector>

namespace maslov {

using Exponent = std::vector<int>;
using Complex = std::complex<double>;

struct Term {
    Exponent exp;
    Complex coef;

    friend bool operator==(const Term&, const Term&) = default;
};

/// Laurent-free sparse polynomial in n variables with complex coefficients.
/// Terms are kept sorted by exponent; exponents are distinct, non-negative,
/// of length n, and no stored coefficient is zero.
class SparsePolynomial {
public:
    /// Validates the invariants (ShapeError / ParameterError on violation).
    SparsePolynomial(std::size_t dim, std::vector<Term> terms);

    /// Merges like terms and drops exact zeros instead of rejecting them.
    static SparsePolynomial collect(std::size_t dim, std::vector<Term> terms);

    std::size_t dim() const noexcept { return dim_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    /// f(z) for a complex point z of length dim.
    Complex evaluate(std::span<const Complex> z) const;

    friend bool operator==(const SparsePolynomial&, const SparsePolynomial&) = default;

private:
    std::size_t dim_;
    std::vector<Term> terms_;
};

/// Product and sum with like terms collected.  Coefficients that cancel to
/// exactly zero disappear; for Gaussian-integer inputs of moderate size the
/// double arithmetic is exact.
SparsePolynomial operator*(const SparsePolynomial& f, const SparsePolynomial& g);
SparsePolynomial operator+(const SparsePolynomial& f, const SparsePolynomial& g);

/// `{"dim": n, "terms": [{"exp": [..], "re": r, "im": i}, ...]}`; "im" may
/// be omitted.  Throws ParseError on malformed input.
SparsePolynomial read_polynomial_json(std::istream& in);
void write_polynomial_json(std::ostream& out, const SparsePolynomial& f);

}  // namespace maslov
