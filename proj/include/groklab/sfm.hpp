#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "groklab/matrix.hpp"
#include "groklab/taskgen.hpp"

namespace groklab {

struct SfmConfig {
    std::uint32_t p = 29;
    ModOp op = ModOp::Add;
    double beta = 3e-4;        // sparsity pressure; 0 disables the gate
    double eta = 0.7;          // drift rate (stable for eta <= 1 on half splits)
    std::uint64_t max_steps = 4000;
    std::uint64_t batch_size = 8;  // effective-sample-size growth per step
    double eps_gen = 1.0;      // transient residue used only by the predictor
    std::uint64_t record_every = 1;
    double init_scale = 0.0;   // 0 = zero start; > 0 = complex Gaussian init
    std::uint64_t init_seed = 0;
    bool reindex = false;      // discrete-log relabeling for mul/div
    double c_float = 64.0;     // bits per retained coefficient in the code length

    void validate() const;
};

struct TraceRow {
    std::uint64_t step = 0;
    double n_eff = 1.0;
    double tau = 0.0;
    double train_loss = 0.0;
    double train_acc = 0.0;
    double test_acc = 0.0;
    double lambda_proxy = 0.0;
    double kc_sfm = 0.0;
    std::uint64_t support_size = 0;
};

struct TrainTrace {
    std::vector<TraceRow> rows;
};

struct TrainResult {
    TrainTrace trace;
    CMat W;
    std::uint32_t model_modulus = 0;  // p, or p-1 after discrete-log reindexing
};

// J(W) = (1/2) sum_i |encode_target(y_i) - h_i|^2 + beta * ln(n) * ||W||_0
double objective(const CMat& W, const std::vector<ExamplePair>& data, double beta,
                 double n, std::uint32_t p);

// One drift update with the averaging denominator n = |data|.
CMat drift_step(const CMat& W, const std::vector<ExamplePair>& data, double eta,
                std::uint32_t p);

// tau = sqrt(2 beta ln(n) / n)
double threshold(double beta, double n);

// Hard threshold: keep entries with |W_kl| > tau, zero the rest. In place.
void occam_gate(CMat& W, double tau);

// n_eff = max(1, step * batch)
double n_eff_schedule(std::uint64_t step, std::uint64_t batch);

std::size_t support_size(const CMat& W);

// lambda = ||W||_0 / 2
double rlct_proxy(const CMat& W);

// Code length: ||W||_0 * log2(p^2) + ||W||_0 * c_float  (O(1) term dropped).
double kc_sfm(const CMat& W, double c_float, std::uint32_t p);

// (F_mem, F_gen) = (beta ln(n) p^2,  n eps + beta ln(n) p)
std::pair<double, double> free_energy_surrogates(double n, std::uint32_t p, double beta,
                                                 double eps_gen);

// Predicted crossover n* = -(beta (p^2 - p) / eps) * W_{-1}(-eps / (beta (p^2 - p))).
// Throws std::domain_error when eps / (beta (p^2 - p)) >= 1/e (no crossover).
double predict_crossover(double beta, std::uint32_t p, double eps_gen);

// Seeded complex Gaussian start: entries scale * (g1 + i g2) / sqrt(2).
CMat gaussian_init(std::uint32_t p, double scale, std::uint64_t seed);

// Discrete-log relabeling for mul/div: operands and labels move to exponent
// space, where the task becomes add/sub over Z_{p-1}. Pairs touching 0 are
// dropped for mul (0 has no logarithm).
DatasetSplit reindex_split(const DatasetSplit& split, std::uint32_t p, ModOp op);

// Full training loop: W <- occam_gate(drift(W), threshold(beta, n_eff(t))).
// Records a trace row at step 0 and then every record_every steps. Aborts
// with std::runtime_error if any |W_kl| exceeds 1e6.
TrainResult train(const SfmConfig& config, const DatasetSplit& split);

}  // namespace groklab
