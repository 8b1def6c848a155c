#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "maslov/grid.hpp"

namespace maslov {

/// Max-plus sup of the samples (min-plus: inf).  Throws ShapeError on an
/// empty grid.
ExtReal idempotent_integral(const GridFunction& phi);

/// sup_x (phi(x) + psi(x)) over a shared grid (min-plus: inf).
ExtReal measure_integral(const GridFunction& phi, const GridFunction& psi);

/// Idempotent scalar product <phi, psi>; coincides with measure_integral.
ExtReal scalar_product(const GridFunction& phi, const GridFunction& psi);

/// Kernel K(x, y) sampled on the product grid X x Y.  The first `dim_x`
/// axes belong to X.
class KernelFunction {
public:
    KernelFunction(GridFunction samples, std::size_t dim_x);

    /// Samples k(x, y) on x_domain x y_domain (the two must share
    /// points_per_axis since GridDomain uses one count for every axis).
    static KernelFunction sample(const GridDomain& x_domain, const GridDomain& y_domain,
                                 const std::function<double(std::span<const double>, std::span<const double>)>& k,
                                 Semiring spec = Semiring::max_plus());

    const GridFunction& samples() const noexcept { return samples_; }
    std::size_t dim_x() const noexcept { return dim_x_; }
    GridDomain x_domain() const;
    GridDomain y_domain() const;

private:
    GridFunction samples_;
    std::size_t dim_x_;
};

/// (K phi)(x) = sup_y (K(x, y) + phi(y)) on the X grid (min-plus: inf).
GridFunction kernel_apply(const KernelFunction& kernel, const GridFunction& phi);

/// Same operator with the kernel given as a callable of node indices:
/// k(x_flat, y_flat) where x_flat indexes `x_domain` and y_flat indexes
/// phi's domain.  Used when materialising K would be wasteful.
GridFunction kernel_apply(const GridDomain& x_domain, const GridFunction& phi,
                          const std::function<double(std::size_t, std::size_t)>& k);

/// (phi * psi)(g) = sup_x (phi(x) + psi(g - x)) on the Minkowski-sum grid.
/// 1-D or 2-D; both grids must have the same spacing per axis.
GridFunction sup_convolution(const GridFunction& phi, const GridFunction& psi);

enum class LegendreMode {
    Additive,  ///< sup_x (xi . x + phi(x))
    Fenchel,   ///< sup_x (xi . x - phi(x)), the convex conjugate
};

/// Direct O(N M) scan over the requested xi grid; result is max-plus.
GridFunction legendre_transform(const GridFunction& phi, const GridDomain& xi_domain,
                                LegendreMode mode = LegendreMode::Additive);

// Pointwise semiring operations on a shared grid.
GridFunction pointwise_add(const GridFunction& a, const GridFunction& b);  // (+): max / min
GridFunction pointwise_mul(const GridFunction& a, const GridFunction& b);  // (*): +
GridFunction shift(const GridFunction& a, ExtReal lambda);                 // lambda (*) a

/// Flips max-plus <-> min-plus by negating every value.
GridFunction negate(const GridFunction& a);

/// Comparison tolerance L * sigma against closed forms.
inline double grid_tolerance(const GridDomain& d, double lipschitz = 10.0) { return lipschitz * d.max_spacing(); }

}  // namespace maslov
