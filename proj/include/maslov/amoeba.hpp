#pragma once

#include <array>
#include <cstddef>
#include <ostream>
#include <span>
#include <vector>

#include "maslov/polynomial.hpp"

namespace maslov {

using Point2 = std::array<double, 2>;

/// Axis-aligned box [xmin, xmax] x [ymin, ymax].
struct Window {
    double xmin, xmax, ymin, ymax;

    bool contains(const Point2& p) const noexcept {
        return p[0] >= xmin && p[0] <= xmax && p[1] >= ymin && p[1] <= ymax;
    }
    void validate() const;  ///< ParameterError unless min < max on both axes
};

/// Tropical polynomial x -> max_a (v_a + <a, x>) in n variables.
struct TropicalTerm {
    Exponent exp;
    double value;
};

struct TropicalPolynomial {
    std::size_t dim = 2;
    std::vector<TropicalTerm> terms;
};

/// Valuations v_a = log|c_a| of a complex polynomial.
TropicalPolynomial valuation_polynomial(const SparsePolynomial& f);

struct Ray {
    std::size_t base;              ///< vertex index
    std::array<long long, 2> dir;  ///< primitive integer direction
};

/// Piecewise-linear planar set: bounded edges plus unbounded rays.
struct PlanarPLSet {
    std::vector<Point2> vertices;
    std::vector<std::array<std::size_t, 2>> edges;
    std::vector<Ray> rays;
};

/// f_h with coefficients (c / |c|) |c|^{1/h}; f_1 = f.
SparsePolynomial deform_polynomial(const SparsePolynomial& f, double h);

struct AmoebaSlice {
    std::vector<Point2> points;
    double max_residual = 0.0;  ///< largest normalised |f(z)| over emitted roots
    bool degenerate = false;    ///< the fibre polynomial vanished identically
};

/// Fixes coordinate `axis` (0 or 1) at modulus e^{x/h} and each of the
/// `angle_samples` phases 2 pi k / angle_samples, solves f for the other
/// coordinate, drops zero roots and returns Log_h of every root.
/// Normalised residual: |f(z)| / sum_a |c_a| |z^a|.
AmoebaSlice amoeba_slice(const SparsePolynomial& f, double h, double x, std::size_t angle_samples,
                         std::size_t axis = 0);

struct AmoebaSample {
    std::vector<Point2> points;
    double h = 1.0;
    Window window{};
    double max_residual = 0.0;
    std::size_t degenerate_slices = 0;
};

/// Slices along both coordinate directions at `slices` evenly spaced
/// positions spanning the window, clipped to the window.  Slices run on up
/// to `jobs` threads; the output order does not depend on `jobs`.
AmoebaSample sample_amoeba(const SparsePolynomial& f, double h, const Window& window, std::size_t slices,
                           std::size_t angle_samples, std::size_t jobs = 1);

/// Corner locus of a planar tropical polynomial: all x where the maximum is
/// attained at least twice.  DomainError for fewer than two terms or n != 2.
PlanarPLSet tropical_variety(const TropicalPolynomial& tf);

/// Hausdorff distance between a point set and a planar PL set, both clipped
/// to the window.  Point-to-segment distances are exact; the PL set is
/// walked at spacing `pitch` for the reverse direction.
double hausdorff_distance(std::span<const Point2> a, const PlanarPLSet& b, const Window& window,
                          double pitch = 1e-3);
/// Hausdorff distance between two point sets clipped to the window.
double hausdorff_distance(std::span<const Point2> a, std::span<const Point2> b, const Window& window);

struct ConvergenceRow {
    double h;
    double distance;
    std::size_t points;
    double max_residual;
};

/// d_H(Log_h(V(f_h)), Tro(V)) for each h, against the corner locus of the
/// valuation polynomial of f.
std::vector<ConvergenceRow> convergence_study(const SparsePolynomial& f, std::span<const double> h_values,
                                              const Window& window, std::size_t slices = 200,
                                              std::size_t angle_samples = 64, std::size_t jobs = 1);

void write_pl_set_json(std::ostream& out, const PlanarPLSet& s, int digits = 12);
void write_amoeba_csv(std::ostream& out, const AmoebaSample& s, int digits = 12);
/// Amoeba points, optional spine and the window frame.
void write_amoeba_svg(std::ostream& out, const AmoebaSample& s, const PlanarPLSet* spine);

}  // namespace maslov
