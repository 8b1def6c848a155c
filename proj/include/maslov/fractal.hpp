#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace maslov {

/// Finite point set in R^n stored row-major.  `resolution` is the finest
/// scale the generator resolves (0 when unknown).
struct PointCloud {
    std::size_t dim = 1;
    std::vector<double> coords;
    std::string generator;
    double resolution = 0.0;

    std::size_t size() const noexcept { return dim ? coords.size() / dim : 0; }
    std::span<const double> point(std::size_t i) const { return {coords.data() + i * dim, dim}; }
    void validate() const;  ///< DomainError if empty, ragged or non-finite
};

/// Weighted atoms approximating a measure.
struct SampledMeasure {
    PointCloud atoms;
    std::vector<double> weights;

    void validate() const;  ///< weights non-negative with positive finite total
};

/// Volume Gamma(1/2)^d / Gamma(1 + d/2) rho^d of a d-ball, any real d > 0.
double ball_volume(double d, double rho);

/// Occupied cells of the origin-anchored grid with side 2 rho / sqrt(n),
/// shifted by `offset` cells along every axis.  Each cell fits in a
/// rho-ball, so this bounds the minimal covering number up to a constant.
std::size_t covering_number(const PointCloud& cloud, double rho, double offset = 0.0);

struct DimensionEstimate {
    double slope = 0.0;                  ///< least-squares slope of the fitted log series against s
    double intercept = 0.0;
    std::vector<double> s;
    std::vector<double> log_values;      ///< log N(e^{-s}) or -log mu_x(e^{-s})
    std::vector<double> ratios;          ///< log_values / s, the sequence whose liminf is the dimension
    double shifted_slope = 0.0;          ///< same fit with the grid moved by half a cell
    bool resolution_warning = false;     ///< some e^{-s} is finer than the cloud resolves
};

/// Box-counting estimate of the Hausdorff-Besicovich dimension from
/// N_{e^{-s}} over the given increasing scales (at least 3).
DimensionEstimate hb_dimension(const PointCloud& cloud, std::span<const double> s_values);

/// mu_x(rho) = total weight within distance rho of x.
double ball_measure(const SampledMeasure& mu, std::span<const double> x, double rho);

/// Slope of -log mu_x(e^{-s}) against s.  DomainError if some ball is empty.
DimensionEstimate local_dimension(const SampledMeasure& mu, std::span<const double> x,
                                  std::span<const double> s_values);

// Builtin generators.
PointCloud cantor_set(unsigned depth);          ///< endpoints of the 2^depth intervals of level `depth`
PointCloud segment(std::size_t points);         ///< equally spaced on [0, 1]
PointCloud sierpinski(unsigned depth);          ///< corners of the 3^depth triangles of level `depth`
PointCloud product(const PointCloud& a, const PointCloud& b);
PointCloud scaled(const PointCloud& a, double lambda);
SampledMeasure uniform_measure(PointCloud atoms);

/// Generator by name: "cantor <depth>", "segment <N>", "sierpinski <depth>",
/// "square <N>" (segment x segment).
PointCloud generate_cloud(const std::string& spec);

/// CSV, one point per row.  With `weighted`, the last column is a weight.
SampledMeasure read_points_csv(std::istream& in, bool weighted);
void write_points_csv(std::ostream& out, const PointCloud& cloud, int digits = 12);

/// Evenly spaced values lo, ..., hi (count >= 2).
std::vector<double> linspace(double lo, double hi, std::size_t count);

}  // namespace maslov
