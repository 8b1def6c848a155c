#pragma once

#include <limits>
#include <string>
#include <string_view>

namespace maslov {

/// Extended real scalar.  The bottom element of a semiring is a genuine IEEE
/// infinity (-inf for max-plus and subtropical, +inf for min-plus).
using ExtReal = double;

inline constexpr ExtReal kInf = std::numeric_limits<double>::infinity();
inline constexpr ExtReal kNegInf = -std::numeric_limits<double>::infinity();

enum class SemiringKind { MaxPlus, MinPlus, Subtropical };

/// Descriptor of one of the three concrete semirings over extended reals.
///
///   MaxPlus      a (+) b = max(a, b)              zero = -inf, one = 0
///   MinPlus      a (+) b = min(a, b)              zero = +inf, one = 0
///   Subtropical  a (+) b = h log(e^{a/h}+e^{b/h}) zero = -inf, one = 0
///
/// In all three, a (*) b = a + b with zero absorbing.  Operands equal to the
/// opposite infinity (or NaN) are rejected with ParameterError.
class Semiring {
public:
    static Semiring max_plus() { return Semiring(SemiringKind::MaxPlus, 0.0); }
    static Semiring min_plus() { return Semiring(SemiringKind::MinPlus, 0.0); }
    /// Throws ParameterError unless h > 0.
    static Semiring subtropical(double h);

    SemiringKind kind() const noexcept { return kind_; }
    double h() const noexcept { return h_; }
    bool is_idempotent() const noexcept { return kind_ != SemiringKind::Subtropical; }

    ExtReal zero() const noexcept { return kind_ == SemiringKind::MinPlus ? kInf : kNegInf; }
    ExtReal one() const noexcept { return 0.0; }
    bool is_zero(ExtReal a) const noexcept { return a == zero(); }

    /// Throws ParameterError if `a` is NaN or the infinity opposite to zero().
    void validate(ExtReal a) const;

    ExtReal add(ExtReal a, ExtReal b) const;
    ExtReal mul(ExtReal a, ExtReal b) const;

    /// Standard order: a <= b iff a (+) b == b.  UnsupportedError when the
    /// semiring is not idempotent.
    bool leq(ExtReal a, ExtReal b) const;

    std::string name() const;

    friend bool operator==(const Semiring&, const Semiring&) = default;

private:
    Semiring(SemiringKind kind, double h) : kind_(kind), h_(h) {}

    SemiringKind kind_;
    double h_;
};

ExtReal tropical_add(ExtReal a, ExtReal b, const Semiring& spec);
ExtReal tropical_mul(ExtReal a, ExtReal b, const Semiring& spec);

/// u (+)_h v = h log(e^{u/h} + e^{v/h}), evaluated as
/// max(u,v) + h log1p(e^{-|u-v|/h}).  -inf is neutral.
ExtReal subtropical_add(ExtReal u, ExtReal v, double h);

bool standard_order_leq(ExtReal a, ExtReal b, const Semiring& spec);

/// Text form of an extended real: "-inf", "inf" or a decimal with the given
/// number of significant digits (17 round-trips every finite double).
std::string format_ext(ExtReal x, int digits = 17);

/// Inverse of format_ext.  Accepts "inf", "+inf", "-inf" (any case) and
/// ordinary decimal literals.  Throws ParseError (line 0) on junk.
ExtReal parse_ext(std::string_view token);

}  // namespace maslov
