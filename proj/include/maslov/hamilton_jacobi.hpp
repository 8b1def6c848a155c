#pragma once

#include <cstddef>
#include <functional>
#include <istream>
#include <span>
#include <string>
#include <vector>

#include "maslov/grid.hpp"

namespace maslov {

/// Which idempotent semiring the Hamilton-Jacobi flow is linear over.
///
///  MinPlus: S(x, t+dt) = inf_y [S(y) + sum_i m_i (x_i-y_i)^2 / (2 dt)] + V(x) dt
///  MaxPlus: S(x, t+dt) = sup_y [S(y) - sum_i m_i (x_i-y_i)^2 / (2 dt)] + V(x) dt
enum class Convention { MinPlus, MaxPlus };

using Potential = std::function<double(std::span<const double>)>;

/// Builtin potentials: "zero", "quadratic <k>" (k |x|^2 / 2),
/// "double-well" (sum_i (x_i^2 - 1)^2) and "constant <c>".
Potential builtin_potential(const std::string& spec);

/// Quadratic Hamiltonian H(p, x) = sum_i p_i^2 / (2 m_i) + V(x).
struct MechanicalSystem {
    std::vector<double> masses;  ///< one per axis, all > 0
    Potential potential;         ///< empty means V = 0
    double dt = 0.1;
    std::size_t steps = 1;       ///< horizon T = steps * dt
    Convention convention = Convention::MinPlus;

    double horizon() const noexcept { return dt * double(steps); }
    /// Throws ParameterError on non-positive masses or dt, or a mass count
    /// that does not match `dim`.
    void validate(std::size_t dim) const;
    Semiring semiring() const {
        return convention == Convention::MinPlus ? Semiring::min_plus() : Semiring::max_plus();
    }
};

struct ActionState {
    GridFunction S;  ///< value function; its semiring must match the convention
    double t = 0.0;
};

/// One dynamic-programming step of length sys.dt: the quadratic kinetic
/// kernel applied as an idempotent kernel operator, then + V dt.
/// DomainError if the a priori optimiser radius sqrt(2 dt osc(S) / m) reaches
/// half the box width on any axis.
ActionState lax_oleinik_step(const ActionState& state, const MechanicalSystem& sys);

/// sys.steps consecutive steps.
ActionState lax_oleinik_evolve(ActionState state, const MechanicalSystem& sys);

/// Explicit finite differences for h u_t = sum_i (h^2 / 2 m_i) u_{x_i x_i} + V u
/// up to T = sys.horizon(), with zero-flux (mirror) boundaries.  Internal
/// sub-steps keep sum_i (h / 2 m_i) dt / sigma_i^2 <= 1/2.
/// DomainError if u0 has a non-positive entry or the sub-step count would
/// exceed `max_substeps`.
GridFunction viscous_solve(const GridFunction& u0, const MechanicalSystem& sys, double h,
                           std::size_t max_substeps = 50'000'000);

/// Pointwise S = h log u (max-plus result).  DomainError on u <= 0.
GridFunction dequantize_solution(const GridFunction& u, double h);

/// Trapezoid-rule integral of u over its box.
double trapezoid_mass(const GridFunction& u);

struct SuperpositionReport {
    double defect;                ///< sup-norm of step(S) - combine(step(S1), step(S2))
    GridFunction stepped_combo;   ///< step(lambda1 S1 (+) lambda2 S2)
    GridFunction combined_steps;  ///< lambda1 step(S1) (+) lambda2 step(S2)
};

SuperpositionReport superposition_check(const GridFunction& s1, const GridFunction& s2, ExtReal lambda1,
                                        ExtReal lambda2, const MechanicalSystem& sys);

/// Key-value scenario file (`key = value`, '#' comments):
///   masses = 1[,1...]     potential = zero | quadratic <k> | double-well | constant <c>
///   dt = 0.1              steps = 10
///   convention = min-plus | max-plus
///   h = 0.1               (viscous runs only; stored in `h`)
struct Scenario {
    MechanicalSystem system;
    std::string potential_name = "zero";
    double h = 0.1;
};

Scenario read_scenario(std::istream& in);

}  // namespace maslov
