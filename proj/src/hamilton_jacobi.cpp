#include "maslov/hamilton_jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "maslov/error.hpp"
#include "maslov/idempotent.hpp"

namespace maslov {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<double> sample_potential(const MechanicalSystem& sys, const GridDomain& d) {
    std::vector<double> v(d.size(), 0.0);
    if (!sys.potential) return v;
    for (std::size_t k = 0; k < v.size(); ++k) {
        const auto p = d.point(k);
        v[k] = sys.potential(p);
        if (!std::isfinite(v[k])) throw DomainError("potential is not finite on the grid");
    }
    return v;
}

void require_convention(const GridFunction& s, const MechanicalSystem& sys) {
    if (!(s.spec() == sys.semiring())) {
        throw ShapeError("state semiring " + s.spec().name() + " does not match the system convention " +
                         sys.semiring().name());
    }
}

}  // namespace

Potential builtin_potential(const std::string& spec) {
    std::istringstream in(spec);
    std::string name;
    in >> name;
    if (name == "zero") return {};
    if (name == "quadratic" || name == "constant") {
        double k = 0.0;
        if (!(in >> k) || !std::isfinite(k)) throw ParameterError("potential '" + name + "' needs a numeric argument");
        if (name == "constant") return [k](std::span<const double>) { return k; };
        return [k](std::span<const double> x) {
            double r2 = 0.0;
            for (double xi : x) r2 += xi * xi;
            return 0.5 * k * r2;
        };
    }
    if (name == "double-well") {
        return [](std::span<const double> x) {
            double v = 0.0;
            for (double xi : x) v += (xi * xi - 1.0) * (xi * xi - 1.0);
            return v;
        };
    }
    throw ParameterError("unknown potential '" + spec + "' (zero, quadratic <k>, double-well, constant <c>)");
}

void MechanicalSystem::validate(std::size_t dim) const {
    if (masses.size() != dim) {
        throw ParameterError("system has " + std::to_string(masses.size()) + " masses for a " + std::to_string(dim) +
                             "-dimensional grid");
    }
    for (double m : masses)
        if (!(m > 0.0) || !std::isfinite(m)) throw ParameterError("masses must be positive");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ParameterError("time step must be positive");
}

ActionState lax_oleinik_step(const ActionState& state, const MechanicalSystem& sys) {
    const GridFunction& s = state.S;
    const GridDomain& d = s.domain();
    sys.validate(d.dim());
    require_convention(s, sys);

    double lo = kInf, hi = kNegInf;
    for (double v : s.values()) {
        if (!std::isfinite(v)) continue;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double osc = hi > lo ? hi - lo : 0.0;
    for (std::size_t a = 0; a < d.dim(); ++a) {
        // |x - y*| <= sqrt(2 dt osc / m) for any optimiser y*
        const double radius = std::sqrt(2.0 * sys.dt * osc / sys.masses[a]);
        const double half_width = 0.5 * (d.upper()[a] - d.lower()[a]);
        if (radius >= half_width) {
            throw DomainError("kernel support radius " + format_ext(radius, 6) + " exceeds half the grid width " +
                              format_ext(half_width, 6) + " on axis " + std::to_string(a));
        }
    }

    const std::size_t dim = d.dim();
    std::vector<double> coords(d.size() * dim);
    for (std::size_t k = 0; k < d.size(); ++k) {
        const auto p = d.point(k);
        std::copy(p.begin(), p.end(), coords.begin() + long(k * dim));
    }
    std::vector<double> weight(dim);
    for (std::size_t a = 0; a < dim; ++a) weight[a] = sys.masses[a] / (2.0 * sys.dt);
    const double sign = sys.convention == Convention::MinPlus ? 1.0 : -1.0;

    GridFunction next = kernel_apply(d, s, [&](std::size_t i, std::size_t j) {
        double q = 0.0;
        for (std::size_t a = 0; a < dim; ++a) {
            const double diff = coords[i * dim + a] - coords[j * dim + a];
            q += weight[a] * diff * diff;
        }
        return sign * q;
    });

    if (sys.potential) {
        const auto v = sample_potential(sys, d);
        for (std::size_t k = 0; k < next.size(); ++k)
            if (std::isfinite(next[k])) next[k] += v[k] * sys.dt;
    }
    return {std::move(next), state.t + sys.dt};
}

ActionState lax_oleinik_evolve(ActionState state, const MechanicalSystem& sys) {
    for (std::size_t i = 0; i < sys.steps; ++i) state = lax_oleinik_step(state, sys);
    return state;
}

GridFunction viscous_solve(const GridFunction& u0, const MechanicalSystem& sys, double h, std::size_t max_substeps) {
    if (!(h > 0.0) || !std::isfinite(h)) throw ParameterError("viscous_solve requires h > 0");
    const GridDomain& d = u0.domain();
    sys.validate(d.dim());
    for (double v : u0.values())
        if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("viscous_solve: u0 must be finite and strictly positive");

    const std::size_t dim = d.dim();
    const std::size_t n = d.points_per_axis();
    const auto pot = sample_potential(sys, d);

    // u_t = sum_a D_a u_aa + (V / h) u with D_a = h / (2 m_a)
    std::vector<double> diff(dim);
    double rate = 0.0;
    for (std::size_t a = 0; a < dim; ++a) {
        diff[a] = h / (2.0 * sys.masses[a]);
        rate += diff[a] / (d.spacing(a) * d.spacing(a));
    }
    double vmax = 0.0;
    for (double v : pot) vmax = std::max(vmax, std::fabs(v));
    double stable = 0.5 / rate;
    if (vmax > 0.0) stable = std::min(stable, 0.5 * h / vmax);

    const double horizon = sys.horizon();
    const double substeps_f = std::ceil(horizon / stable);
    if (substeps_f > double(max_substeps)) {
        throw DomainError("viscous_solve: stability needs " + format_ext(substeps_f, 6) + " sub-steps, cap is " +
                          std::to_string(max_substeps));
    }
    const auto substeps = static_cast<std::size_t>(std::max(1.0, substeps_f));
    const double tau = horizon / double(substeps);

    std::vector<std::size_t> stride(dim, 1);
    for (std::size_t a = dim - 1; a-- > 0;) stride[a] = stride[a + 1] * n;

    std::vector<double> u = u0.values(), next(u.size());
    for (std::size_t step = 0; step < substeps; ++step) {
        for (std::size_t k = 0; k < u.size(); ++k) {
            double lap = 0.0;
            std::size_t rem = k;
            for (std::size_t a = 0; a < dim; ++a) {
                const std::size_t i = (rem / stride[a]) % n;
                // mirror ghost nodes give zero flux
                const double left = i == 0 ? u[k + stride[a]] : u[k - stride[a]];
                const double right = i == n - 1 ? u[k - stride[a]] : u[k + stride[a]];
                lap += diff[a] * (left - 2.0 * u[k] + right) / (d.spacing(a) * d.spacing(a));
            }
            next[k] = u[k] + tau * (lap + pot[k] / h * u[k]);
        }
        u.swap(next);
    }
    for (double v : u)
        if (!(v > 0.0)) throw DomainError("viscous_solve: positivity lost (reduce dt or h)");
    return GridFunction(d, std::move(u), Semiring::max_plus());
}

GridFunction dequantize_solution(const GridFunction& u, double h) {
    if (!(h > 0.0)) throw ParameterError("dequantize_solution requires h > 0");
    std::vector<double> s(u.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (!(u[k] > 0.0)) throw DomainError("dequantize_solution: u must be strictly positive");
        s[k] = h * std::log(u[k]);
    }
    return GridFunction(u.domain(), std::move(s), Semiring::max_plus());
}

double trapezoid_mass(const GridFunction& u) {
    const GridDomain& d = u.domain();
    const std::size_t n = d.points_per_axis();
    double cell = 1.0;
    for (std::size_t a = 0; a < d.dim(); ++a) cell *= d.spacing(a);
    double total = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        double w = 1.0;
        std::size_t rem = k;
        for (std::size_t a = 0; a < d.dim(); ++a) {
            const std::size_t i = rem % n;
            rem /= n;
            if (i == 0 || i == n - 1) w *= 0.5;
        }
        total += w * u[k];
    }
    return total * cell;
}

SuperpositionReport superposition_check(const GridFunction& s1, const GridFunction& s2, ExtReal lambda1,
                                        ExtReal lambda2, const MechanicalSystem& sys) {
    if (!(s1.domain() == s2.domain())) throw ShapeError("superposition_check: grids differ");
    const GridFunction combo = pointwise_add(shift(s1, lambda1), shift(s2, lambda2));
    const GridFunction stepped_combo = lax_oleinik_step({combo, 0.0}, sys).S;

    const Semiring ring = sys.semiring();
    // A bottom coefficient drops its branch entirely; stepping an all-bottom
    // state is skipped since it has no finite values to evolve.
    auto branch = [&](const GridFunction& s, ExtReal lambda) -> GridFunction {
        if (ring.is_zero(lambda)) return GridFunction(s.domain(), ring.zero(), ring);
        return shift(lax_oleinik_step({s, 0.0}, sys).S, lambda);
    };
    const GridFunction combined = pointwise_add(branch(s1, lambda1), branch(s2, lambda2));
    return {sup_distance(stepped_combo, combined), stepped_combo, combined};
}

Scenario read_scenario(std::istream& in) {
    Scenario sc;
    std::string line;
    std::size_t lineno = 0;
    auto num = [&](const std::string& v) {
        try {
            return parse_ext(v);
        } catch (const ParseError& e) {
            throw ParseError(e.what(), lineno);
        }
    };
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("expected 'key = value'", lineno);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "masses") {
            sc.system.masses.clear();
            std::istringstream vs(value);
            std::string tok;
            while (std::getline(vs, tok, ',')) sc.system.masses.push_back(num(trim(tok)));
        } else if (key == "potential") {
            try {
                sc.system.potential = builtin_potential(value);
            } catch (const ParameterError& e) {
                throw ParseError(e.what(), lineno);
            }
            sc.potential_name = value;
        } else if (key == "dt") {
            sc.system.dt = num(value);
        } else if (key == "steps") {
            const double s = num(value);
            if (!(s >= 0) || s != std::floor(s)) throw ParseError("steps must be a non-negative integer", lineno);
            sc.system.steps = static_cast<std::size_t>(s);
        } else if (key == "convention") {
            if (value == "min-plus") sc.system.convention = Convention::MinPlus;
            else if (value == "max-plus") sc.system.convention = Convention::MaxPlus;
            else throw ParseError("convention must be min-plus or max-plus", lineno);
        } else if (key == "h") {
            sc.h = num(value);
        } else {
            throw ParseError("unknown key '" + key + "'", lineno);
        }
    }
    if (sc.system.masses.empty()) sc.system.masses = {1.0};
    return sc;
}

}  // namespace maslov
