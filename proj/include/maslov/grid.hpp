#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <vector>

#include "maslov/semiring.hpp"

namespace maslov {

/// Uniform tensor grid on the box [lower, upper] with the same number of
/// nodes along every axis.  Flat indices are row-major (last axis fastest).
class GridDomain {
public:
    GridDomain(std::vector<double> lower, std::vector<double> upper, std::size_t points_per_axis);

    /// Convenience 1-D constructor.
    static GridDomain line(double lower, double upper, std::size_t points) {
        return GridDomain({lower}, {upper}, points);
    }

    std::size_t dim() const noexcept { return lower_.size(); }
    std::size_t points_per_axis() const noexcept { return n_; }
    std::size_t size() const noexcept { return size_; }
    const std::vector<double>& lower() const noexcept { return lower_; }
    const std::vector<double>& upper() const noexcept { return upper_; }
    double spacing(std::size_t axis) const noexcept { return (upper_[axis] - lower_[axis]) / double(n_ - 1); }
    double max_spacing() const noexcept;

    double coordinate(std::size_t axis, std::size_t i) const noexcept {
        return lower_[axis] + double(i) * spacing(axis);
    }
    /// Per-axis indices of a flat index.
    std::vector<std::size_t> unflatten(std::size_t flat) const;
    std::size_t flatten(std::span<const std::size_t> idx) const;
    /// Coordinates of the node at a flat index.
    std::vector<double> point(std::size_t flat) const;

    friend bool operator==(const GridDomain&, const GridDomain&) = default;

private:
    std::vector<double> lower_;
    std::vector<double> upper_;
    std::size_t n_;
    std::size_t size_;
};

/// Samples of an extended-real function on a GridDomain, tagged with the
/// semiring (max-plus or min-plus) that gives meaning to sup/inf.
class GridFunction {
public:
    GridFunction(GridDomain domain, std::vector<ExtReal> values, Semiring spec = Semiring::max_plus());
    /// Constant function.
    GridFunction(GridDomain domain, ExtReal value, Semiring spec = Semiring::max_plus());

    template <class F>
    static GridFunction sample(const GridDomain& domain, F&& f, Semiring spec = Semiring::max_plus()) {
        std::vector<ExtReal> v(domain.size());
        for (std::size_t k = 0; k < v.size(); ++k) {
            const auto p = domain.point(k);
            v[k] = f(std::span<const double>(p));
        }
        return GridFunction(domain, std::move(v), spec);
    }

    const GridDomain& domain() const noexcept { return domain_; }
    const Semiring& spec() const noexcept { return spec_; }
    std::size_t size() const noexcept { return values_.size(); }
    const std::vector<ExtReal>& values() const noexcept { return values_; }
    std::vector<ExtReal>& values() noexcept { return values_; }
    ExtReal operator[](std::size_t k) const { return values_[k]; }
    ExtReal& operator[](std::size_t k) { return values_[k]; }

    friend bool operator==(const GridFunction&, const GridFunction&) = default;

private:
    GridDomain domain_;
    std::vector<ExtReal> values_;
    Semiring spec_;
};

/// Header `dim,lower...,upper...,points_per_axis`, then one value per line
/// in row-major order; `-inf` / `inf` stand for the infinities.
void write_grid_csv(std::ostream& out, const GridFunction& g, int digits = 17);
GridFunction read_grid_csv(std::istream& in, Semiring spec = Semiring::max_plus());

/// Largest |a - b| over nodes where both are finite; infinity if the
/// infinite nodes differ.  Throws ShapeError on domain mismatch.
double sup_distance(const GridFunction& a, const GridFunction& b);

}  // namespace maslov
