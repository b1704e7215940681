#include "groklab/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace groklab {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

UnitRoots::UnitRoots(std::uint32_t modulus) : p(modulus), w(modulus) {
    if (modulus == 0) throw std::invalid_argument("UnitRoots: modulus must be positive");
    for (std::uint32_t k = 0; k < modulus; ++k) {
        const double a = kTwoPi * static_cast<double>(k) / static_cast<double>(modulus);
        w[k] = {std::cos(a), std::sin(a)};
    }
}

std::complex<double> character(std::uint32_t k, std::uint32_t x, std::uint32_t p) {
    if (k >= p || x >= p) throw std::invalid_argument("character: index out of range");
    // Reduce k*x mod p before the trig call to avoid large-argument error.
    const std::uint64_t e = (static_cast<std::uint64_t>(k) * x) % p;
    const double a = kTwoPi * static_cast<double>(e) / static_cast<double>(p);
    return {std::cos(a), std::sin(a)};
}

std::vector<std::complex<double>> character_vector(std::uint32_t x, std::uint32_t p) {
    std::vector<std::complex<double>> out(p);
    const UnitRoots roots(p);
    for (std::uint32_t k = 0; k < p; ++k)
        out[k] = roots.pow(static_cast<std::uint64_t>(k) * x);
    return out;
}

CMat spectral_input(std::uint32_t u, std::uint32_t v, std::uint32_t p) {
    if (u >= p || v >= p) throw std::invalid_argument("spectral_input: operand out of range");
    CMat grid(p, p);
    const UnitRoots roots(p);
    for (std::uint32_t k = 0; k < p; ++k)
        for (std::uint32_t l = 0; l < p; ++l)
            grid(k, l) = roots.pow(static_cast<std::uint64_t>(k) * u +
                                   static_cast<std::uint64_t>(l) * v);
    return grid;
}

std::complex<double> evaluate(const CMat& W, std::uint32_t u, std::uint32_t v) {
    const auto p = static_cast<std::uint32_t>(W.rows);
    if (W.rows != W.cols) throw std::invalid_argument("evaluate: W must be square");
    const UnitRoots roots(p);
    std::complex<double> h = 0.0;
    for (std::uint32_t k = 0; k < p; ++k)
        for (std::uint32_t l = 0; l < p; ++l) {
            const auto& c = W(k, l);
            if (c.real() == 0.0 && c.imag() == 0.0) continue;
            h += c * roots.pow(static_cast<std::uint64_t>(k) * u +
                               static_cast<std::uint64_t>(l) * v);
        }
    return h;
}

std::complex<double> encode_target(std::uint32_t y, std::uint32_t p) {
    return character(1 % p, y, p);
}

std::vector<double> logits(std::complex<double> h, std::uint32_t p) {
    // Re(h * conj(omega^c)) == Re(h)*cos + Im(h)*sin, evaluated per class.
    std::vector<double> out(p);
    const UnitRoots roots(p);
    for (std::uint32_t c = 0; c < p; ++c) {
        const auto& w = roots.pow(c);
        out[c] = h.real() * w.real() + h.imag() * w.imag();
    }
    return out;
}

std::uint32_t decode(std::complex<double> h, std::uint32_t p) {
    const UnitRoots roots(p);
    std::uint32_t best = 0;
    double best_logit = h.real();  // class 0: omega^0 = 1
    for (std::uint32_t c = 1; c < p; ++c) {
        const auto& w = roots.pow(c);
        const double logit = h.real() * w.real() + h.imag() * w.imag();
        if (logit > best_logit) {
            best_logit = logit;
            best = c;
        }
    }
    return best;
}

std::uint32_t DlogTable::log_of(std::uint32_t x) const {
    if (x == 0 || x >= p) throw std::invalid_argument("DlogTable: x must be in [1, p)");
    return log[x];
}

std::uint32_t DlogTable::pow_of(std::uint32_t j) const {
    std::uint64_t acc = 1;
    j %= (p - 1);
    for (std::uint32_t i = 0; i < j; ++i) acc = (acc * g) % p;
    return static_cast<std::uint32_t>(acc);
}

DlogTable discrete_log_reindex(std::uint32_t p) {
    DlogTable t;
    t.p = p;
    if (p == 2) {
        t.g = 1;
        t.log = {0, 0};  // only x = 1; trivial permutation
        return t;
    }
    // Smallest primitive root by brute force: g generates all of Z_p^x iff
    // the powers g^0..g^{p-2} are pairwise distinct.
    for (std::uint32_t g = 2; g < p; ++g) {
        std::vector<std::uint32_t> log(p, UINT32_MAX);
        std::uint64_t x = 1;
        std::uint32_t j = 0;
        bool ok = true;
        for (; j < p - 1; ++j) {
            if (log[x] != UINT32_MAX) {
                ok = false;
                break;
            }
            log[static_cast<std::uint32_t>(x)] = j;
            x = (x * g) % p;
        }
        if (ok && x == 1) {
            t.g = g;
            t.log = std::move(log);
            return t;
        }
    }
    throw std::logic_error("discrete_log_reindex: no primitive root found (p not prime?)");
}

CMat prediction_grid(const CMat& W, std::uint32_t p) {
    CMat h(p, p);
    const UnitRoots roots(p);
    // Gather the support once; each grid entry is a support-sized sum.
    std::vector<std::uint32_t> ks, ls;
    std::vector<std::complex<double>> cs;
    for (std::uint32_t k = 0; k < p; ++k)
        for (std::uint32_t l = 0; l < p; ++l) {
            const auto& c = W(k, l);
            if (c.real() != 0.0 || c.imag() != 0.0) {
                ks.push_back(k);
                ls.push_back(l);
                cs.push_back(c);
            }
        }
    for (std::uint32_t u = 0; u < p; ++u)
        for (std::uint32_t v = 0; v < p; ++v) {
            std::complex<double> acc = 0.0;
            for (std::size_t i = 0; i < cs.size(); ++i)
                acc += cs[i] * roots.pow(static_cast<std::uint64_t>(ks[i]) * u +
                                         static_cast<std::uint64_t>(ls[i]) * v);
            h(u, v) = acc;
        }
    return h;
}

}  // namespace groklab
