#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "groklab/matrix.hpp"

namespace groklab {

struct SymbolMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::uint32_t q = 2;
    std::vector<std::uint8_t> sym;

    std::uint8_t operator()(std::size_t r, std::size_t c) const { return sym[r * cols + c]; }
};

// Per-matrix q-quantile edges (linear-interpolation quantiles); value x maps
// to the number of edges it strictly exceeds. Constant matrices map to
// symbol 0. Throws on NaN entries.
SymbolMatrix quantile_binning(const RMat& M, std::uint32_t q);

// Lookup table of small-block complexity values keyed by (block side,
// alphabet, row-major symbol string). CSV format: header "b,q,block,ctm".
class CtmTable {
  public:
    static CtmTable load_csv(const std::filesystem::path& path);

    void insert(std::uint32_t b, std::uint32_t q, const std::string& block, double value);
    std::optional<double> lookup(std::uint32_t b, std::uint32_t q,
                                 std::string_view block) const;
    std::size_t size() const { return values_.size(); }

  private:
    std::map<std::string, double> values_;  // key = "b|q|block"
};

struct CtmValue {
    double value = 0.0;
    bool from_table = false;
};

// Table value when present; otherwise the deterministic fallback
// 1 + b^2 * H(block), with H the per-symbol Shannon entropy in bits.
CtmValue ctm(std::string_view block, std::uint32_t b, std::uint32_t q,
             const CtmTable* table = nullptr);

struct BdmResult {
    double value = 0.0;
    double coverage = 1.0;        // fraction of entries inside full b x b tiles
    std::size_t blocks = 0;       // tiles counted
    std::size_t unique_blocks = 0;
    std::size_t fallback_blocks = 0;  // unique blocks priced by the fallback
};

// Quantile-bin M, tile into non-overlapping b x b blocks (trailing remainder
// dropped), group identical blocks, and sum CTM(block) + log2(multiplicity).
BdmResult bdm(const RMat& M, std::uint32_t q, std::uint32_t b,
              const CtmTable* table = nullptr);

// Shannon entropy (bits) of the distribution over distinct quantized blocks.
double block_entropy(const RMat& M, std::uint32_t q, std::uint32_t b);

// G = sum_{i,j} |s_i - s_j| / (2 N sum_k s_k), via the sorted form.
double gini(std::span<const double> s);

// P = sum s_i^4 / (sum s_i^2)^2
double ipr(std::span<const double> s);

// S[k,l] = |sum_{v,d} M[v,d] exp(-2 pi i (k v / V + l d / D))|^2
RMat spectral_density(const RMat& M);
RMat spectral_density(const CMat& M);

// C_geo = 1 - H(D) / log|D| for a discrete distribution D.
double geo_complexity(std::span<const double> probs);

// Top two eigenvalues of the Gram matrix of M, rescaled to sum to one.
// Computed from singular values: eig(M^T M) = sigma^2.
std::pair<double, double> eig_concentration(const RMat& M);

struct MatrixNorms {
    double nuclear = 0.0;
    double stable_rank = 0.0;
    double effective_rank = 0.0;
    double spectral_entropy = 0.0;  // natural log, of sigma_i / sum(sigma)
};

// All four norms from a full one-sided Jacobi SVD (tolerance 1e-10, at most
// 200 sweeps). effective_rank = exp(spectral_entropy).
MatrixNorms matrix_norms(const RMat& M);

// Singular values of A in descending order (one-sided Jacobi).
std::vector<double> singular_values(RMat A, double tol = 1e-10, int max_sweeps = 200);

// Interleaves real and imaginary parts column-wise: complex entry (r, c)
// lands in columns 2c (real) and 2c+1 (imaginary) of a rows x 2 cols matrix.
RMat realify(const CMat& W);

}  // namespace groklab
