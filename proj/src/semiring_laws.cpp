#include "maslov/semiring_laws.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace maslov {

namespace {

struct Tally {
    LawResult r;

    void record(double lhs, double rhs, double scale) {
        ++r.trials;
        double err;
        if (lhs == rhs) {
            err = 0.0;
        } else if (!std::isfinite(lhs) || !std::isfinite(rhs)) {
            err = kInf;
        } else {
            err = std::abs(lhs - rhs) / std::max(scale, 1e-300);
        }
        r.max_error = std::max(r.max_error, err);
        if (err > r.tolerance) ++r.violations;
    }
};

double scale_of(std::initializer_list<double> xs) {
    double m = 0.0;
    for (double x : xs)
        if (std::isfinite(x)) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

std::vector<LawResult> check_semiring_laws(const Semiring& s, std::size_t trials, std::uint64_t seed,
                                           double rel_tol) {
    std::mt19937_64 rng(seed);
    // Dyadic values k / 2^20 in [-50, 50]: sums of a few of them are exact in
    // binary floating point, so (+) associativity is not a rounding question.
    constexpr double kScale = 1048576.0;
    std::uniform_int_distribution<std::int64_t> value(-50 * 1048576LL, 50 * 1048576LL);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    auto draw = [&] { return coin(rng) < 0.05 ? s.zero() : static_cast<double>(value(rng)) / kScale; };

    const double tol = s.is_idempotent() ? 0.0 : rel_tol;
    auto make = [&](const char* name) {
        Tally t;
        t.r.law = name;
        t.r.tolerance = tol;
        return t;
    };
    Tally add_assoc = make("add-associative"), mul_assoc = make("mul-associative");
    Tally add_comm = make("add-commutative"), mul_comm = make("mul-commutative");
    Tally left_dist = make("left-distributive"), right_dist = make("right-distributive");
    Tally add_unit = make("add-identity"), mul_unit = make("mul-identity"), absorb = make("zero-absorbing");
    Tally idem = make(s.is_idempotent() ? "idempotent" : "doubling");
    Tally bound = make("deformation-bound");

    const double hlog2 = s.h() * std::numbers::ln2;
    for (std::size_t i = 0; i < trials; ++i) {
        const double x = draw(), y = draw(), z = draw();
        auto chk = [&](Tally& t, double lhs, double rhs, std::initializer_list<double> ops) {
            t.record(lhs, rhs, scale_of(ops));
        };
        double l = s.add(s.add(x, y), z), r = s.add(x, s.add(y, z));
        chk(add_assoc, l, r, {x, y, z, l, r});
        l = s.mul(s.mul(x, y), z);
        r = s.mul(x, s.mul(y, z));
        chk(mul_assoc, l, r, {x, y, z, l, r});
        l = s.add(x, y);
        r = s.add(y, x);
        chk(add_comm, l, r, {x, y, l, r});
        l = s.mul(x, y);
        r = s.mul(y, x);
        chk(mul_comm, l, r, {x, y, l, r});
        l = s.mul(x, s.add(y, z));
        r = s.add(s.mul(x, y), s.mul(x, z));
        chk(left_dist, l, r, {x, y, z, l, r});
        l = s.mul(s.add(x, y), z);
        r = s.add(s.mul(x, z), s.mul(y, z));
        chk(right_dist, l, r, {x, y, z, l, r});
        chk(add_unit, s.add(x, s.zero()), x, {x});
        chk(mul_unit, s.mul(x, s.one()), x, {x});
        chk(absorb, s.mul(x, s.zero()), s.zero(), {x});
        if (s.is_idempotent()) {
            chk(idem, s.add(x, x), x, {x});
        } else {
            const double want = std::isfinite(x) ? x + hlog2 : x;
            chk(idem, s.add(x, x), want, {x, want});
            // max <= u (+) v <= max + h log 2, with a relative slack on both sides
            const double m = std::max(x, y), v = s.add(x, y);
            const double slack = rel_tol * std::max(1.0, scale_of({x, y, v}));
            ++bound.r.trials;
            if (std::isfinite(m)) {
                const double over = std::max(m - v, v - (m + hlog2));
                const double err = std::max(0.0, over) / std::max(1.0, scale_of({x, y, v}));
                bound.r.max_error = std::max(bound.r.max_error, err);
                if (over > slack) ++bound.r.violations;
            } else if (v != m) {
                ++bound.r.violations;
                bound.r.max_error = kInf;
            }
        }
    }
    std::vector<LawResult> out{add_assoc.r, mul_assoc.r, add_comm.r, mul_comm.r, left_dist.r,
                               right_dist.r, add_unit.r, mul_unit.r, absorb.r, idem.r};
    if (!s.is_idempotent()) out.push_back(bound.r);
    return out;
}

}  // namespace maslov
