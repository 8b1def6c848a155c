#pragma once

#include <cstddef>
#include <span>

#include "maslov/polynomial.hpp"
#include "maslov/polytope.hpp"
#include "maslov/semiring.hpp"

namespace maslov {

struct DequantizedValue {
    ExtReal value;           ///< h log|f(exp(x/h))|, -inf on exact cancellation
    bool cancelled = false;  ///< f(exp(x/h)) summed to exactly zero
};

/// h log|f(exp(x / h))| with the dominant exponential factored out:
/// M + h log|sum_a c_a exp((<a,x> - M) / h)|, M = max_a <a,x>.
DequantizedValue dequantize_at(const SparsePolynomial& f, double h, std::span<const double> x);

/// The h -> 0 limit max_{a in supp f} <a, x>.
double dequantize_limit(const SparsePolynomial& f, std::span<const double> x);

/// (1/s) log|f(e^{s x})|, the numerical route to the same limit.
DequantizedValue dequantize_numeric(const SparsePolynomial& f, double s, std::span<const double> x);

/// Convex hull of the support, exact.  ShapeError for the zero polynomial
/// or more than three variables.
Polytope newton_polytope(const SparsePolynomial& f);

/// Subdifferential of the dequantized function at the origin, rebuilt from
/// its support function: for each sampled unit direction u the exponents
/// maximising <a, u> are recorded, and their hull returned.  Directions are
/// +-1 for n = 1, equally spaced angles for n = 2 and a Fibonacci sphere for
/// n = 3.
Polytope subdifferential_at_origin(const SparsePolynomial& f, std::size_t directions);

}  // namespace maslov
