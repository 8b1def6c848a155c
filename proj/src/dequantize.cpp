#include "maslov/dequantize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "maslov/error.hpp"

namespace maslov {

namespace {

double pairing(const Exponent& a, std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += double(a[i]) * x[i];
    return s;
}

void require_point(const SparsePolynomial& f, std::span<const double> x) {
    if (x.size() != f.dim()) throw ShapeError("point dimension does not match the polynomial");
}

std::vector<std::vector<double>> sample_directions(std::size_t dim, std::size_t count) {
    std::vector<std::vector<double>> dirs;
    if (dim == 1) return {{1.0}, {-1.0}};
    if (count == 0) return dirs;
    if (dim == 2) {
        for (std::size_t k = 0; k < count; ++k) {
            const double t = 2.0 * std::numbers::pi * double(k) / double(count);
            dirs.push_back({std::cos(t), std::sin(t)});
        }
        return dirs;
    }
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (std::size_t k = 0; k < count; ++k) {
        const double z = 1.0 - 2.0 * (double(k) + 0.5) / double(count);
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double t = golden * double(k);
        dirs.push_back({r * std::cos(t), r * std::sin(t), z});
    }
    return dirs;
}

}  // namespace

DequantizedValue dequantize_at(const SparsePolynomial& f, double h, std::span<const double> x) {
    if (!(h > 0.0) || !std::isfinite(h)) throw ParameterError("dequantize_at requires h > 0");
    require_point(f, x);
    if (f.is_zero()) return {kNegInf, true};
    double top = kNegInf;
    for (const Term& t : f.terms()) top = std::max(top, pairing(t.exp, x));
    Complex sum = 0.0;
    for (const Term& t : f.terms()) sum += t.coef * std::exp((pairing(t.exp, x) - top) / h);
    const double mod = std::abs(sum);
    if (mod == 0.0) return {kNegInf, true};
    return {top + h * std::log(mod), false};
}

double dequantize_limit(const SparsePolynomial& f, std::span<const double> x) {
    require_point(f, x);
    double top = kNegInf;
    for (const Term& t : f.terms()) top = std::max(top, pairing(t.exp, x));
    return top;
}

DequantizedValue dequantize_numeric(const SparsePolynomial& f, double s, std::span<const double> x) {
    if (!(s > 0.0)) throw ParameterError("dequantize_numeric requires s > 0");
    return dequantize_at(f, 1.0 / s, x);
}

Polytope newton_polytope(const SparsePolynomial& f) {
    if (f.is_zero()) throw ShapeError("the zero polynomial has no Newton polytope");
    std::vector<LatticePoint> pts;
    for (const Term& t : f.terms()) pts.emplace_back(t.exp.begin(), t.exp.end());
    return Polytope::hull(f.dim(), std::move(pts));
}

Polytope subdifferential_at_origin(const SparsePolynomial& f, std::size_t directions) {
    if (f.is_zero()) throw ShapeError("the zero polynomial has no subdifferential");
    if (f.dim() > 3) throw ShapeError("subdifferential_at_origin supports at most three variables");
    std::vector<LatticePoint> support;
    for (const Term& t : f.terms()) support.emplace_back(t.exp.begin(), t.exp.end());

    std::vector<LatticePoint> recorded;
    std::vector<bool> seen(support.size(), false);
    std::vector<double> value(support.size());
    for (const auto& u : sample_directions(f.dim(), directions)) {
        double top = kNegInf;
        for (std::size_t i = 0; i < support.size(); ++i) {
            value[i] = 0.0;
            for (std::size_t a = 0; a < u.size(); ++a) value[i] += double(support[i][a]) * u[a];
            top = std::max(top, value[i]);
        }
        // near-ties are kept: every recorded exponent lies in the hull anyway
        const double tol = 1e-9 * (1.0 + std::fabs(top));
        for (std::size_t i = 0; i < support.size(); ++i)
            if (value[i] >= top - tol && !seen[i]) {
                seen[i] = true;
                recorded.push_back(support[i]);
            }
    }
    if (recorded.empty()) throw ParameterError("subdifferential_at_origin needs at least one direction");
    return Polytope::hull(f.dim(), std::move(recorded));
}

}  // namespace maslov
