#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "maslov/semiring.hpp"

namespace maslov {

struct LawResult {
    std::string law;
    std::size_t trials = 0;
    std::size_t violations = 0;
    double max_error = 0.0;  ///< largest |lhs - rhs| / operand scale seen
    double tolerance = 0.0;  ///< 0 means exact equality is required
};

/// Randomised check of the semiring axioms on `trials` triples drawn from
/// [-50, 50] with occasional zero elements.  Idempotent semirings must hold
/// exactly; the subtropical one within `rel_tol` of the operand scale
/// max(|x|, |y|, |z|, |lhs|, |rhs|).  For the subtropical semiring the
/// report also covers x (+) x = x + h log 2 and the deformation bound
/// max(u,v) <= u (+)_h v <= max(u,v) + h log 2.
std::vector<LawResult> check_semiring_laws(const Semiring& s, std::size_t trials, std::uint64_t seed,
                                           double rel_tol = 1e-12);

}  // namespace maslov
