#pragma once

namespace groklab {

// Real lower branch W_{-1}(x) on the domain [-1/e, 0).
//
// Seed: the branch-point series w = -1 - u - u^2/3 - (11/72) u^3 with
// u = sqrt(2 (1 + e x)) near x = -1/e, and the asymptotic form
// w = ln(-x) - ln(-ln(-x)) towards x -> 0-. The seed is then polished with
// Halley steps on w e^w = x until the update falls below 1e-12 relative,
// which leaves the result accurate to better than 1e-10 relative.
//
// Throws std::domain_error outside [-1/e, 0).
double lambert_w_minus1(double x);

}  // namespace groklab
