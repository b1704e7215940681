#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "groklab/matrix.hpp"

namespace groklab {

// Table of the p complex roots of unity, exp(2*pi*i*k/p) for k in [0, p).
// All character products are reduced to a single table entry through the
// exponent (k*x mod p), which keeps algebraic identities exact in floating
// point: the same product of residues always hits the same table slot.
struct UnitRoots {
    std::uint32_t p;
    std::vector<std::complex<double>> w;

    explicit UnitRoots(std::uint32_t modulus);

    // omega^(e mod p)
    const std::complex<double>& pow(std::uint64_t e) const { return w[e % p]; }
};

// chi_k(x) = exp(2*pi*i*k*x/p), computed from the reduced angle.
std::complex<double> character(std::uint32_t k, std::uint32_t x, std::uint32_t p);

// Length-p character vector [chi_0(x), ..., chi_{p-1}(x)].
std::vector<std::complex<double>> character_vector(std::uint32_t x, std::uint32_t p);

// Rank-1 grid chi_k(u) * chi_l(v) over all (k, l).
CMat spectral_input(std::uint32_t u, std::uint32_t v, std::uint32_t p);

// h = sum_{k,l} W_kl chi_k(u) chi_l(v). Skips exact zeros, so the cost is
// proportional to the support size.
std::complex<double> evaluate(const CMat& W, std::uint32_t u, std::uint32_t v);

// Regression target chi_1(y): a unit phasor marking the answer class.
std::complex<double> encode_target(std::uint32_t y, std::uint32_t p);

// logit_c = Re(h * conj(chi_1(c)))
std::vector<double> logits(std::complex<double> h, std::uint32_t p);

// argmax over logits; exact ties go to the smallest class index.
std::uint32_t decode(std::complex<double> h, std::uint32_t p);

// Discrete-log relabeling of Z_p^x by the smallest primitive root g:
// x = g^j  maps to  j. Multiplication mod p becomes addition mod p-1.
struct DlogTable {
    std::uint32_t p = 2;
    std::uint32_t g = 1;
    std::vector<std::uint32_t> log;  // log[x] defined for x in [1, p)

    std::uint32_t log_of(std::uint32_t x) const;
    std::uint32_t pow_of(std::uint32_t j) const;  // g^j mod p
};

DlogTable discrete_log_reindex(std::uint32_t p);

// Prediction grid H[u][v] = h(u, v; W).
CMat prediction_grid(const CMat& W, std::uint32_t p);

}  // namespace groklab
