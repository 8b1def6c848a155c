#include "maslov/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "maslov/error.hpp"

namespace maslov {

GridDomain::GridDomain(std::vector<double> lower, std::vector<double> upper, std::size_t points_per_axis)
    : lower_(std::move(lower)), upper_(std::move(upper)), n_(points_per_axis), size_(1) {
    if (lower_.empty()) throw ShapeError("grid dimension must be at least 1");
    if (lower_.size() != upper_.size()) throw ShapeError("grid bounds have different lengths");
    if (n_ < 2) throw ShapeError("grid needs at least 2 points per axis");
    for (std::size_t a = 0; a < lower_.size(); ++a) {
        if (!std::isfinite(lower_[a]) || !std::isfinite(upper_[a]) || !(upper_[a] > lower_[a])) {
            throw ShapeError("grid axis " + std::to_string(a) + " has empty or non-finite extent");
        }
        size_ *= n_;
    }
}

double GridDomain::max_spacing() const noexcept {
    double s = 0.0;
    for (std::size_t a = 0; a < dim(); ++a) s = std::max(s, spacing(a));
    return s;
}

std::vector<std::size_t> GridDomain::unflatten(std::size_t flat) const {
    std::vector<std::size_t> idx(dim());
    for (std::size_t a = dim(); a-- > 0;) {
        idx[a] = flat % n_;
        flat /= n_;
    }
    return idx;
}

std::size_t GridDomain::flatten(std::span<const std::size_t> idx) const {
    std::size_t flat = 0;
    for (std::size_t i : idx) flat = flat * n_ + i;
    return flat;
}

std::vector<double> GridDomain::point(std::size_t flat) const {
    std::vector<double> p(dim());
    for (std::size_t a = dim(); a-- > 0;) {
        p[a] = coordinate(a, flat % n_);
        flat /= n_;
    }
    return p;
}

GridFunction::GridFunction(GridDomain domain, std::vector<ExtReal> values, Semiring spec)
    : domain_(std::move(domain)), values_(std::move(values)), spec_(spec) {
    if (values_.size() != domain_.size()) {
        throw ShapeError("grid function needs " + std::to_string(domain_.size()) + " values, got " +
                         std::to_string(values_.size()));
    }
    if (!spec_.is_idempotent()) throw UnsupportedError("grid functions live in max-plus or min-plus");
    for (ExtReal v : values_) {
        if (std::isnan(v)) throw ParameterError("grid function value is NaN");
    }
}

GridFunction::GridFunction(GridDomain domain, ExtReal value, Semiring spec)
    : GridFunction(domain, std::vector<ExtReal>(domain.size(), value), spec) {}

void write_grid_csv(std::ostream& out, const GridFunction& g, int digits) {
    const GridDomain& d = g.domain();
    out << d.dim();
    for (double l : d.lower()) out << ',' << format_ext(l, digits);
    for (double u : d.upper()) out << ',' << format_ext(u, digits);
    out << ',' << d.points_per_axis() << '\n';
    for (ExtReal v : g.values()) out << format_ext(v, digits) << '\n';
}

GridFunction read_grid_csv(std::istream& in, Semiring spec) {
    std::string line;
    std::size_t lineno = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.find_first_not_of(" \t") != std::string::npos) return true;
        }
        return false;
    };
    if (!next_line()) throw ParseError("grid file is empty", 0);

    std::vector<std::string> fields;
    {
        std::istringstream hs(line);
        std::string f;
        while (std::getline(hs, f, ',')) fields.push_back(f);
    }
    auto number = [&](const std::string& tok) {
        try {
            return parse_ext(tok);
        } catch (const ParseError& e) {
            throw ParseError(e.what(), lineno);
        }
    };
    if (fields.empty()) throw ParseError("missing grid header", lineno);
    const double dim_f = number(fields[0]);
    if (!(dim_f >= 1) || dim_f != std::floor(dim_f) || dim_f > 16) throw ParseError("bad grid dimension", lineno);
    const auto dim = static_cast<std::size_t>(dim_f);
    if (fields.size() != 2 * dim + 2) {
        throw ParseError("header must have 2*dim+2 fields (dim,lower...,upper...,points_per_axis)", lineno);
    }
    std::vector<double> lower(dim), upper(dim);
    for (std::size_t a = 0; a < dim; ++a) {
        lower[a] = number(fields[1 + a]);
        upper[a] = number(fields[1 + dim + a]);
    }
    const double n_f = number(fields.back());
    if (!(n_f >= 2) || n_f != std::floor(n_f)) throw ParseError("points_per_axis must be an integer >= 2", lineno);

    std::size_t header_line = lineno;
    GridDomain domain = [&] {
        try {
            return GridDomain(lower, upper, static_cast<std::size_t>(n_f));
        } catch (const ShapeError& e) {
            throw ParseError(e.what(), header_line);
        }
    }();

    std::vector<ExtReal> values;
    values.reserve(domain.size());
    while (next_line()) {
        if (values.size() == domain.size()) throw ParseError("more values than the header declares", lineno);
        values.push_back(number(line));
    }
    if (values.size() != domain.size()) {
        throw ParseError("expected " + std::to_string(domain.size()) + " values, found " +
                         std::to_string(values.size()), lineno);
    }
    return GridFunction(std::move(domain), std::move(values), spec);
}

double sup_distance(const GridFunction& a, const GridFunction& b) {
    if (!(a.domain() == b.domain())) throw ShapeError("sup_distance: grids differ");
    double d = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double x = a[k], y = b[k];
        if (std::isinf(x) || std::isinf(y)) {
            if (x != y) return kInf;
            continue;
        }
        d = std::max(d, std::fabs(x - y));
    }
    return d;
}

}  // namespace maslov
