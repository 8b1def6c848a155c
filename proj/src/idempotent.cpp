#include "maslov/idempotent.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "maslov/error.hpp"

namespace maslov {

namespace {

// max-plus (*) with -inf absorbing
inline double otimes(double a, double b) { return (a == kNegInf || b == kNegInf) ? kNegInf : a + b; }

bool is_min(const GridFunction& g) { return g.spec().kind() == SemiringKind::MinPlus; }

void require_same_grid(const GridFunction& a, const GridFunction& b, const char* op) {
    if (!(a.domain() == b.domain())) throw ShapeError(std::string(op) + ": grids differ");
    if (!(a.spec() == b.spec())) throw ShapeError(std::string(op) + ": semirings differ");
}

std::vector<double> negated(const std::vector<double>& v) {
    std::vector<double> out(v.size());
    std::transform(v.begin(), v.end(), out.begin(), [](double x) { return -x; });
    return out;
}

double max_plus_pairing(const std::vector<double>& a, const std::vector<double>& b) {
    double best = kNegInf;
    for (std::size_t k = 0; k < a.size(); ++k) best = std::max(best, otimes(a[k], b[k]));
    return best;
}

}  // namespace

ExtReal idempotent_integral(const GridFunction& phi) {
    const auto& v = phi.values();
    if (v.empty()) throw ShapeError("idempotent_integral: empty grid");
    return is_min(phi) ? *std::min_element(v.begin(), v.end()) : *std::max_element(v.begin(), v.end());
}

ExtReal measure_integral(const GridFunction& phi, const GridFunction& psi) {
    require_same_grid(phi, psi, "measure_integral");
    if (is_min(phi)) return -max_plus_pairing(negated(phi.values()), negated(psi.values()));
    return max_plus_pairing(phi.values(), psi.values());
}

ExtReal scalar_product(const GridFunction& phi, const GridFunction& psi) { return measure_integral(phi, psi); }

KernelFunction::KernelFunction(GridFunction samples, std::size_t dim_x) : samples_(std::move(samples)), dim_x_(dim_x) {
    if (dim_x_ == 0 || dim_x_ >= samples_.domain().dim()) {
        throw ShapeError("kernel needs 1 <= dim_x < total dimension");
    }
}

KernelFunction KernelFunction::sample(
    const GridDomain& x_domain, const GridDomain& y_domain,
    const std::function<double(std::span<const double>, std::span<const double>)>& k, Semiring spec) {
    if (x_domain.points_per_axis() != y_domain.points_per_axis()) {
        throw ShapeError("kernel grid: X and Y must use the same points_per_axis");
    }
    std::vector<double> lower = x_domain.lower(), upper = x_domain.upper();
    lower.insert(lower.end(), y_domain.lower().begin(), y_domain.lower().end());
    upper.insert(upper.end(), y_domain.upper().begin(), y_domain.upper().end());
    GridDomain product(lower, upper, x_domain.points_per_axis());

    std::vector<double> values(product.size());
    std::size_t flat = 0;
    for (std::size_t i = 0; i < x_domain.size(); ++i) {
        const auto x = x_domain.point(i);
        for (std::size_t j = 0; j < y_domain.size(); ++j) values[flat++] = k(x, y_domain.point(j));
    }
    return KernelFunction(GridFunction(product, std::move(values), spec), x_domain.dim());
}

GridDomain KernelFunction::x_domain() const {
    const GridDomain& d = samples_.domain();
    return GridDomain({d.lower().begin(), d.lower().begin() + long(dim_x_)},
                      {d.upper().begin(), d.upper().begin() + long(dim_x_)}, d.points_per_axis());
}

GridDomain KernelFunction::y_domain() const {
    const GridDomain& d = samples_.domain();
    return GridDomain({d.lower().begin() + long(dim_x_), d.lower().end()},
                      {d.upper().begin() + long(dim_x_), d.upper().end()}, d.points_per_axis());
}

GridFunction kernel_apply(const KernelFunction& kernel, const GridFunction& phi) {
    if (!(kernel.y_domain() == phi.domain())) throw ShapeError("kernel_apply: kernel Y grid does not match phi");
    if (!(kernel.samples().spec() == phi.spec())) throw ShapeError("kernel_apply: semirings differ");
    const std::size_t ny = phi.size();
    const auto& kv = kernel.samples().values();
    return kernel_apply(kernel.x_domain(), phi, [&](std::size_t i, std::size_t j) { return kv[i * ny + j]; });
}

GridFunction kernel_apply(const GridDomain& x_domain, const GridFunction& phi,
                          const std::function<double(std::size_t, std::size_t)>& k) {
    const bool min = is_min(phi);
    const double sign = min ? -1.0 : 1.0;
    const std::vector<double> p = min ? negated(phi.values()) : phi.values();
    std::vector<double> out(x_domain.size(), kNegInf);
    for (std::size_t i = 0; i < out.size(); ++i) {
        double best = kNegInf;
        for (std::size_t j = 0; j < p.size(); ++j) best = std::max(best, otimes(sign * k(i, j), p[j]));
        out[i] = sign * best;
    }
    return GridFunction(x_domain, std::move(out), phi.spec());
}

GridFunction sup_convolution(const GridFunction& phi, const GridFunction& psi) {
    const GridDomain& a = phi.domain();
    const GridDomain& b = psi.domain();
    if (!(phi.spec() == psi.spec())) throw ShapeError("sup_convolution: semirings differ");
    if (a.dim() != b.dim()) throw ShapeError("sup_convolution: dimensions differ");
    if (a.dim() > 2) throw ShapeError("sup_convolution: only 1-D and 2-D grids are supported");
    for (std::size_t ax = 0; ax < a.dim(); ++ax) {
        const double sa = a.spacing(ax), sb = b.spacing(ax);
        if (std::fabs(sa - sb) > 1e-9 * std::max(sa, sb)) {
            throw ShapeError("sup_convolution: spacing mismatch on axis " + std::to_string(ax));
        }
    }
    std::vector<double> lower(a.dim()), upper(a.dim());
    for (std::size_t ax = 0; ax < a.dim(); ++ax) {
        lower[ax] = a.lower()[ax] + b.lower()[ax];
        upper[ax] = a.upper()[ax] + b.upper()[ax];
    }
    const std::size_t na = a.points_per_axis(), nb = b.points_per_axis();
    GridDomain out_domain(lower, upper, na + nb - 1);

    const bool min = is_min(phi);
    const std::vector<double> p = min ? negated(phi.values()) : phi.values();
    const std::vector<double> q = min ? negated(psi.values()) : psi.values();
    std::vector<double> out(out_domain.size(), kNegInf);
    const std::size_t no = out_domain.points_per_axis();

    if (a.dim() == 1) {
        for (std::size_t i = 0; i < na; ++i)
            for (std::size_t j = 0; j < nb; ++j) out[i + j] = std::max(out[i + j], otimes(p[i], q[j]));
    } else {
        for (std::size_t i0 = 0; i0 < na; ++i0)
            for (std::size_t i1 = 0; i1 < na; ++i1) {
                const double pi = p[i0 * na + i1];
                if (pi == kNegInf) continue;
                for (std::size_t j0 = 0; j0 < nb; ++j0)
                    for (std::size_t j1 = 0; j1 < nb; ++j1) {
                        double& o = out[(i0 + j0) * no + (i1 + j1)];
                        o = std::max(o, otimes(pi, q[j0 * nb + j1]));
                    }
            }
    }
    if (min) out = negated(out);
    return GridFunction(out_domain, std::move(out), phi.spec());
}

GridFunction legendre_transform(const GridFunction& phi, const GridDomain& xi_domain, LegendreMode mode) {
    if (phi.spec().kind() != SemiringKind::MaxPlus) throw UnsupportedError("legendre_transform expects a max-plus function");
    const GridDomain& xd = phi.domain();
    if (xi_domain.dim() != xd.dim()) throw ShapeError("legendre_transform: xi grid dimension differs");
    const std::size_t dim = xd.dim();

    std::vector<double> xs(xd.size() * dim);
    for (std::size_t k = 0; k < xd.size(); ++k) {
        const auto p = xd.point(k);
        std::copy(p.begin(), p.end(), xs.begin() + long(k * dim));
    }
    // In Fenchel mode phi = +inf must not win, so work with -phi.
    std::vector<double> term = mode == LegendreMode::Fenchel ? negated(phi.values()) : phi.values();

    std::vector<double> out(xi_domain.size(), kNegInf);
    for (std::size_t m = 0; m < out.size(); ++m) {
        const auto xi = xi_domain.point(m);
        double best = kNegInf;
        for (std::size_t k = 0; k < xd.size(); ++k) {
            if (term[k] == kNegInf) continue;
            double dot = 0.0;
            for (std::size_t a = 0; a < dim; ++a) dot += xi[a] * xs[k * dim + a];
            best = std::max(best, dot + term[k]);
        }
        out[m] = best;
    }
    return GridFunction(xi_domain, std::move(out), Semiring::max_plus());
}

GridFunction pointwise_add(const GridFunction& a, const GridFunction& b) {
    require_same_grid(a, b, "pointwise_add");
    std::vector<double> v(a.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = a.spec().add(a[k], b[k]);
    return GridFunction(a.domain(), std::move(v), a.spec());
}

GridFunction pointwise_mul(const GridFunction& a, const GridFunction& b) {
    require_same_grid(a, b, "pointwise_mul");
    std::vector<double> v(a.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = a.spec().mul(a[k], b[k]);
    return GridFunction(a.domain(), std::move(v), a.spec());
}

GridFunction shift(const GridFunction& a, ExtReal lambda) {
    std::vector<double> v(a.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = a.spec().mul(lambda, a[k]);
    return GridFunction(a.domain(), std::move(v), a.spec());
}

GridFunction negate(const GridFunction& a) {
    return GridFunction(a.domain(), negated(a.values()),
                        is_min(a) ? Semiring::max_plus() : Semiring::min_plus());
}

}  // namespace maslov
