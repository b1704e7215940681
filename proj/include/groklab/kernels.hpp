#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "groklab/matrix.hpp"
#include "groklab/spectral.hpp"
#include "groklab/taskgen.hpp"

namespace groklab::kernels {

// Thread-local switch so fan-out workers (one training run per worker) can
// force the serial path without fighting over global OpenMP state.
bool parallel_enabled();
void set_parallel(bool enabled);

// Sparse view of a weight matrix: the nonzero coordinates in row-major order.
struct Support {
    std::vector<std::uint32_t> k, l;
    std::vector<std::complex<double>> c;
    std::size_t size() const { return c.size(); }
};
Support gather_support(const CMat& W);

// delta_i = encode_target(y_i) - h(u_i, v_i; W) for every example.
// Parallel over examples; per-example arithmetic is identical to the serial
// path, so results are bitwise equal for any thread count.
void residuals(const Support& sup, const std::vector<ExamplePair>& data,
               const UnitRoots& roots, std::vector<std::complex<double>>& out);

// W_kl += (eta / n) * sum_i delta_i * conj(chi_k(u_i) chi_l(v_i)).
// Parallel over modes (k, l); the inner sum over examples runs in a fixed
// order, so the update is deterministic.
void drift_accumulate(CMat& W, const std::vector<ExamplePair>& data,
                      const std::vector<std::complex<double>>& delta, double eta,
                      double n, const UnitRoots& roots);

// Fraction of examples with decode(h) == y. Integer reduction.
double decode_accuracy(const Support& sup, const std::vector<ExamplePair>& data,
                       const UnitRoots& roots);

// (1/2) sum_i |delta_i|^2, summed serially in index order.
double fit_loss(const std::vector<std::complex<double>>& delta);

// Unnormalized 2-D DFT, factored into row then column passes:
// F[k,l] = sum_{v,d} M[v,d] exp(-2*pi*i*(k*v/V + l*d/D)).
CMat dft2(const CMat& M);
CMat dft2(const RMat& M);

// Symmetric Euclidean distance matrix for rows-as-points.
RMat pairwise_distances(const RMat& cloud);

namespace serial {
void residuals(const Support& sup, const std::vector<ExamplePair>& data,
               const UnitRoots& roots, std::vector<std::complex<double>>& out);
void drift_accumulate(CMat& W, const std::vector<ExamplePair>& data,
                      const std::vector<std::complex<double>>& delta, double eta,
                      double n, const UnitRoots& roots);
double decode_accuracy(const Support& sup, const std::vector<ExamplePair>& data,
                       const UnitRoots& roots);
// Direct quadratic-cost evaluation of the 2-D DFT definition. Reference for
// the factored path; agreement is within rounding, not bitwise.
CMat dft2_direct(const CMat& M);
CMat dft2_direct(const RMat& M);
RMat pairwise_distances(const RMat& cloud);
}  // namespace serial

}  // namespace groklab::kernels
