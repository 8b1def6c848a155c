#include "maslov/fractal.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "maslov/error.hpp"
#include "maslov/semiring.hpp"

namespace maslov {

namespace {

struct LineFit {
    double slope;
    double intercept;
};

LineFit least_squares(std::span<const double> x, std::span<const double> y) {
    const double n = double(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
    return {slope, my - slope * mx};
}

void check_scales(std::span<const double> s_values) {
    if (s_values.size() < 3) throw ParameterError("dimension fit needs at least 3 scales");
    for (std::size_t i = 0; i < s_values.size(); ++i) {
        if (!(s_values[i] > 0.0) || !std::isfinite(s_values[i])) throw ParameterError("scales s must be positive");
        if (i && !(s_values[i] > s_values[i - 1])) throw ParameterError("scales s must be increasing");
    }
}

std::size_t distinct_points(const PointCloud& cloud) {
    std::set<std::vector<double>> seen;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        auto p = cloud.point(i);
        seen.emplace(p.begin(), p.end());
    }
    return seen.size();
}

}  // namespace

void PointCloud::validate() const {
    if (dim == 0) throw DomainError("point cloud dimension must be positive");
    if (coords.empty()) throw DomainError("point cloud is empty");
    if (coords.size() % dim != 0) throw DomainError("point cloud coordinates are ragged");
    for (double c : coords)
        if (!std::isfinite(c)) throw DomainError("point cloud has a non-finite coordinate");
}

void SampledMeasure::validate() const {
    atoms.validate();
    if (weights.size() != atoms.size()) throw DomainError("measure needs one weight per atom");
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw DomainError("measure weights must be finite and non-negative");
        total += w;
    }
    if (!(total > 0.0) || !std::isfinite(total)) throw DomainError("measure total weight must be positive and finite");
}

double ball_volume(double d, double rho) {
    if (!(d > 0.0) || !(rho > 0.0)) throw ParameterError("ball_volume needs d > 0 and rho > 0");
    return std::pow(std::tgamma(0.5), d) / std::tgamma(1.0 + 0.5 * d) * std::pow(rho, d);
}

std::size_t covering_number(const PointCloud& cloud, double rho, double offset) {
    if (!(rho > 0.0)) throw ParameterError("covering_number needs rho > 0");
    cloud.validate();
    const double side = 2.0 * rho / std::sqrt(double(cloud.dim));
    auto cell = [&](double x) { return static_cast<std::int64_t>(std::floor(x / side + offset)); };

    if (cloud.dim <= 4) {
        std::vector<std::array<std::int64_t, 4>> keys(cloud.size(), {0, 0, 0, 0});
        for (std::size_t i = 0; i < cloud.size(); ++i) {
            auto p = cloud.point(i);
            for (std::size_t a = 0; a < cloud.dim; ++a) keys[i][a] = cell(p[a]);
        }
        std::sort(keys.begin(), keys.end());
        return std::size_t(std::unique(keys.begin(), keys.end()) - keys.begin());
    }
    std::set<std::vector<std::int64_t>> keys;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        auto p = cloud.point(i);
        std::vector<std::int64_t> k(cloud.dim);
        for (std::size_t a = 0; a < cloud.dim; ++a) k[a] = cell(p[a]);
        keys.insert(std::move(k));
    }
    return keys.size();
}

DimensionEstimate hb_dimension(const PointCloud& cloud, std::span<const double> s_values) {
    check_scales(s_values);
    cloud.validate();
    DimensionEstimate est;
    std::vector<double> shifted;
    for (double s : s_values) {
        const double rho = std::exp(-s);
        const double n = double(covering_number(cloud, rho));
        est.s.push_back(s);
        est.log_values.push_back(std::log(n));
        est.ratios.push_back(std::log(n) / s);
        shifted.push_back(std::log(double(covering_number(cloud, rho, 0.5))));
    }
    const LineFit fit = least_squares(est.s, est.log_values);
    est.slope = fit.slope;
    est.intercept = fit.intercept;
    est.shifted_slope = least_squares(est.s, shifted).slope;

    const double finest = std::exp(-s_values.back());
    if (cloud.resolution > 0.0) {
        est.resolution_warning = finest < cloud.resolution;
    } else {
        // unknown resolution: saturation at the finest scale is the symptom
        est.resolution_warning = std::exp(est.log_values.back()) >= double(distinct_points(cloud)) - 0.5;
    }
    return est;
}

double ball_measure(const SampledMeasure& mu, std::span<const double> x, double rho) {
    if (x.size() != mu.atoms.dim) throw ShapeError("ball centre has the wrong dimension");
    const double r2 = rho * rho;
    double total = 0.0;
    for (std::size_t i = 0; i < mu.atoms.size(); ++i) {
        auto p = mu.atoms.point(i);
        double d2 = 0.0;
        for (std::size_t a = 0; a < p.size(); ++a) d2 += (p[a] - x[a]) * (p[a] - x[a]);
        if (d2 <= r2) total += mu.weights[i];
    }
    return total;
}

DimensionEstimate local_dimension(const SampledMeasure& mu, std::span<const double> x,
                                  std::span<const double> s_values) {
    check_scales(s_values);
    mu.validate();
    DimensionEstimate est;
    for (double s : s_values) {
        const double m = ball_measure(mu, x, std::exp(-s));
        if (!(m > 0.0)) {
            throw DomainError("ball of radius e^-" + format_ext(s, 6) + " around the point carries no mass");
        }
        est.s.push_back(s);
        est.log_values.push_back(-std::log(m));
        est.ratios.push_back(-std::log(m) / s);
    }
    const LineFit fit = least_squares(est.s, est.log_values);
    est.slope = fit.slope;
    est.intercept = fit.intercept;
    est.shifted_slope = fit.slope;
    if (mu.atoms.resolution > 0.0) est.resolution_warning = std::exp(-s_values.back()) < mu.atoms.resolution;
    return est;
}

PointCloud cantor_set(unsigned depth) {
    if (depth > 24) throw ParameterError("cantor depth above 24 is not supported");
    PointCloud c;
    c.dim = 1;
    c.generator = "cantor " + std::to_string(depth);
    const double len = std::pow(3.0, -double(depth));
    c.resolution = len;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << depth); ++mask) {
        double left = 0.0, scale = 1.0;
        for (unsigned k = 0; k < depth; ++k) {
            scale /= 3.0;
            if (mask >> (depth - 1 - k) & 1U) left += 2.0 * scale;
        }
        c.coords.push_back(left);
        c.coords.push_back(left + len);
    }
    return c;
}

PointCloud segment(std::size_t points) {
    if (points < 2) throw ParameterError("segment needs at least 2 points");
    PointCloud c;
    c.dim = 1;
    c.generator = "segment " + std::to_string(points);
    c.resolution = 1.0 / double(points - 1);
    c.coords = linspace(0.0, 1.0, points);
    return c;
}

PointCloud sierpinski(unsigned depth) {
    if (depth > 14) throw ParameterError("sierpinski depth above 14 is not supported");
    struct Tri {
        double x, y, side;
    };
    std::vector<Tri> tris{{0.0, 0.0, 1.0}};
    const double h = std::sqrt(3.0) / 2.0;
    for (unsigned d = 0; d < depth; ++d) {
        std::vector<Tri> next;
        next.reserve(tris.size() * 3);
        for (const Tri& t : tris) {
            const double s = t.side / 2.0;
            next.push_back({t.x, t.y, s});
            next.push_back({t.x + s, t.y, s});
            next.push_back({t.x + s / 2.0, t.y + s * h, s});
        }
        tris.swap(next);
    }
    PointCloud c;
    c.dim = 2;
    c.generator = "sierpinski " + std::to_string(depth);
    c.resolution = std::pow(2.0, -double(depth));
    for (const Tri& t : tris) {
        c.coords.insert(c.coords.end(), {t.x, t.y, t.x + t.side, t.y, t.x + t.side / 2.0, t.y + t.side * h});
    }
    return c;
}

PointCloud product(const PointCloud& a, const PointCloud& b) {
    a.validate();
    b.validate();
    PointCloud c;
    c.dim = a.dim + b.dim;
    c.generator = "(" + a.generator + ") x (" + b.generator + ")";
    c.resolution = std::max(a.resolution, b.resolution);
    c.coords.reserve(a.size() * b.size() * c.dim);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) {
            auto p = a.point(i);
            auto q = b.point(j);
            c.coords.insert(c.coords.end(), p.begin(), p.end());
            c.coords.insert(c.coords.end(), q.begin(), q.end());
        }
    return c;
}

PointCloud scaled(const PointCloud& a, double lambda) {
    PointCloud c = a;
    for (double& x : c.coords) x *= lambda;
    c.resolution = a.resolution * std::fabs(lambda);
    return c;
}

SampledMeasure uniform_measure(PointCloud atoms) {
    atoms.validate();
    SampledMeasure mu;
    mu.weights.assign(atoms.size(), 1.0 / double(atoms.size()));
    mu.atoms = std::move(atoms);
    return mu;
}

PointCloud generate_cloud(const std::string& spec) {
    std::istringstream in(spec);
    std::string name;
    double arg = 0.0;
    if (!(in >> name >> arg) || !(arg >= 0) || arg != std::floor(arg)) {
        throw ParameterError("generator must look like '<name> <non-negative integer>', got '" + spec + "'");
    }
    if (name == "cantor") return cantor_set(unsigned(arg));
    if (name == "segment") return segment(std::size_t(arg));
    if (name == "sierpinski") return sierpinski(unsigned(arg));
    if (name == "square") {
        PointCloud sq = product(segment(std::size_t(arg)), segment(std::size_t(arg)));
        sq.generator = "square " + std::to_string(std::size_t(arg));
        return sq;
    }
    throw ParameterError("unknown generator '" + name + "' (cantor, segment, sierpinski, square)");
}

SampledMeasure read_points_csv(std::istream& in, bool weighted) {
    SampledMeasure mu;
    mu.atoms.dim = 0;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos || line[line.find_first_not_of(" \t")] == '#') continue;
        std::vector<double> row;
        std::istringstream ls(line);
        std::string tok;
        while (std::getline(ls, tok, ',')) {
            try {
                row.push_back(parse_ext(tok));
            } catch (const ParseError& e) {
                throw ParseError(e.what(), lineno);
            }
            if (!std::isfinite(row.back())) throw ParseError("coordinates must be finite", lineno);
        }
        const std::size_t cols = row.size() - (weighted ? 1 : 0);
        if (row.size() < (weighted ? 2u : 1u)) throw ParseError("row has too few columns", lineno);
        if (mu.atoms.dim == 0) mu.atoms.dim = cols;
        if (cols != mu.atoms.dim) throw ParseError("row has " + std::to_string(cols) + " coordinates, expected " +
                                                   std::to_string(mu.atoms.dim), lineno);
        mu.atoms.coords.insert(mu.atoms.coords.end(), row.begin(), row.begin() + long(cols));
        mu.weights.push_back(weighted ? row.back() : 1.0);
    }
    if (mu.atoms.dim == 0) throw ParseError("point file is empty", 0);
    if (!weighted) {
        for (double& w : mu.weights) w = 1.0 / double(mu.weights.size());
    }
    mu.atoms.generator = "csv";
    return mu;
}

void write_points_csv(std::ostream& out, const PointCloud& cloud, int digits) {
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        auto p = cloud.point(i);
        for (std::size_t a = 0; a < p.size(); ++a) out << (a ? "," : "") << format_ext(p[a], digits);
        out << '\n';
    }
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
    if (count < 2) throw ParameterError("linspace needs at least 2 values");
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i) v[i] = lo + (hi - lo) * double(i) / double(count - 1);
    return v;
}

}  // namespace maslov
