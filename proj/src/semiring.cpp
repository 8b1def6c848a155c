#include "maslov/semiring.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

#include "maslov/error.hpp"

namespace maslov {

Semiring Semiring::subtropical(double h) {
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw ParameterError("subtropical semiring requires h > 0, got " + format_ext(h));
    }
    return Semiring(SemiringKind::Subtropical, h);
}

void Semiring::validate(ExtReal a) const {
    if (std::isnan(a)) throw ParameterError("NaN is not a semiring element");
    if (std::isinf(a) && a != zero()) {
        throw ParameterError(format_ext(a) + " is not an element of " + name());
    }
}

ExtReal Semiring::add(ExtReal a, ExtReal b) const {
    validate(a);
    validate(b);
    switch (kind_) {
        case SemiringKind::MaxPlus: return std::max(a, b);
        case SemiringKind::MinPlus: return std::min(a, b);
        case SemiringKind::Subtropical: return subtropical_add(a, b, h_);
    }
    return a;  // unreachable
}

ExtReal Semiring::mul(ExtReal a, ExtReal b) const {
    validate(a);
    validate(b);
    if (is_zero(a) || is_zero(b)) return zero();
    return a + b;
}

bool Semiring::leq(ExtReal a, ExtReal b) const {
    if (!is_idempotent()) throw UnsupportedError("standard order needs an idempotent semiring, got " + name());
    return add(a, b) == b;
}

std::string Semiring::name() const {
    switch (kind_) {
        case SemiringKind::MaxPlus: return "max-plus";
        case SemiringKind::MinPlus: return "min-plus";
        case SemiringKind::Subtropical: return "subtropical(h=" + format_ext(h_, 12) + ")";
    }
    return "?";
}

ExtReal tropical_add(ExtReal a, ExtReal b, const Semiring& spec) { return spec.add(a, b); }
ExtReal tropical_mul(ExtReal a, ExtReal b, const Semiring& spec) { return spec.mul(a, b); }

ExtReal subtropical_add(ExtReal u, ExtReal v, double h) {
    if (!(h > 0.0)) throw ParameterError("subtropical addition requires h > 0, got " + format_ext(h));
    if (std::isnan(u) || std::isnan(v) || u == kInf || v == kInf) {
        throw ParameterError("subtropical addition operands must lie in [-inf, inf)");
    }
    if (u == kNegInf) return v;
    if (v == kNegInf) return u;
    const double hi = std::max(u, v);
    return hi + h * std::log1p(std::exp(-std::fabs(u - v) / h));
}

bool standard_order_leq(ExtReal a, ExtReal b, const Semiring& spec) { return spec.leq(a, b); }

std::string format_ext(ExtReal x, int digits) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

ExtReal parse_ext(std::string_view token) {
    while (!token.empty() && std::isspace(static_cast<unsigned char>(token.front()))) token.remove_prefix(1);
    while (!token.empty() && std::isspace(static_cast<unsigned char>(token.back()))) token.remove_suffix(1);
    std::string lower(token);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "inf" || lower == "+inf" || lower == "infinity") return kInf;
    if (lower == "-inf" || lower == "-infinity") return kNegInf;
    if (lower.empty()) throw ParseError("empty numeric field", 0);
    // from_chars rejects a leading '+'
    std::string_view body = lower;
    if (body.front() == '+') body.remove_prefix(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
    if (ec != std::errc() || ptr != body.data() + body.size() || std::isnan(value)) {
        throw ParseError("not a number: '" + std::string(token) + "'", 0);
    }
    return value;
}

}  // namespace maslov
