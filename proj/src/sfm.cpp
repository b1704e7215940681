#include "groklab/sfm.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "groklab/kernels.hpp"
#include "groklab/lambertw.hpp"
#include "groklab/prng.hpp"
#include "groklab/spectral.hpp"

namespace groklab {

void SfmConfig::validate() const {
    if (!is_prime(p)) throw std::invalid_argument("SfmConfig: p must be prime");
    if (beta < 0.0) throw std::invalid_argument("SfmConfig: beta must be >= 0");
    if (!(eta > 0.0)) throw std::invalid_argument("SfmConfig: eta must be > 0");
    if (batch_size == 0) throw std::invalid_argument("SfmConfig: batch_size must be >= 1");
    if (record_every == 0) throw std::invalid_argument("SfmConfig: record_every must be >= 1");
    if (!(eps_gen > 0.0)) throw std::invalid_argument("SfmConfig: eps_gen must be > 0");
    if (init_scale < 0.0) throw std::invalid_argument("SfmConfig: init_scale must be >= 0");
}

double objective(const CMat& W, const std::vector<ExamplePair>& data, double beta,
                 double n, std::uint32_t p) {
    if (n < 1.0) throw std::invalid_argument("objective: n must be >= 1");
    const UnitRoots roots(p);
    const auto sup = kernels::gather_support(W);
    std::vector<std::complex<double>> delta;
    kernels::residuals(sup, data, roots, delta);
    return kernels::fit_loss(delta) +
           beta * std::log(n) * static_cast<double>(sup.size());
}

CMat drift_step(const CMat& W, const std::vector<ExamplePair>& data, double eta,
                std::uint32_t p) {
    if (data.empty()) throw std::invalid_argument("drift_step: empty data");
    const UnitRoots roots(p);
    const auto sup = kernels::gather_support(W);
    std::vector<std::complex<double>> delta;
    kernels::residuals(sup, data, roots, delta);
    CMat out = W;
    kernels::drift_accumulate(out, data, delta, eta, static_cast<double>(data.size()),
                              roots);
    return out;
}

double threshold(double beta, double n) {
    if (n < 1.0) throw std::invalid_argument("threshold: n must be >= 1");
    return std::sqrt(2.0 * beta * std::log(n) / n);
}

void occam_gate(CMat& W, double tau) {
    if (tau < 0.0) throw std::invalid_argument("occam_gate: tau must be >= 0");
    for (auto& c : W.data)
        if (std::abs(c) <= tau) c = 0.0;
}

double n_eff_schedule(std::uint64_t step, std::uint64_t batch) {
    const double n = static_cast<double>(step) * static_cast<double>(batch);
    return n < 1.0 ? 1.0 : n;
}

std::size_t support_size(const CMat& W) {
    std::size_t n = 0;
    for (const auto& c : W.data)
        if (c.real() != 0.0 || c.imag() != 0.0) ++n;
    return n;
}

double rlct_proxy(const CMat& W) { return 0.5 * static_cast<double>(support_size(W)); }

double kc_sfm(const CMat& W, double c_float, std::uint32_t p) {
    if (!(c_float > 0.0)) throw std::invalid_argument("kc_sfm: c_float must be > 0");
    const auto s = static_cast<double>(support_size(W));
    return s * std::log2(static_cast<double>(p) * p) + s * c_float;
}

std::pair<double, double> free_energy_surrogates(double n, std::uint32_t p, double beta,
                                                 double eps_gen) {
    if (n < 1.0) throw std::invalid_argument("free_energy_surrogates: n must be >= 1");
    const double pd = static_cast<double>(p);
    const double f_mem = beta * std::log(n) * pd * pd;
    const double f_gen = n * eps_gen + beta * std::log(n) * pd;
    return {f_mem, f_gen};
}

double predict_crossover(double beta, std::uint32_t p, double eps_gen) {
    const double pd = static_cast<double>(p);
    const double gap = beta * (pd * pd - pd);
    if (!(gap > 0.0)) throw std::invalid_argument("predict_crossover: beta (p^2 - p) must be > 0");
    if (!(eps_gen > 0.0)) throw std::invalid_argument("predict_crossover: eps_gen must be > 0");
    const double arg = -eps_gen / gap;
    constexpr double kInvE = 0.36787944117144232159552377016146;
    if (arg <= -kInvE) {
        throw std::domain_error(
            "predict_crossover: no crossover, eps_gen/(beta (p^2-p)) = " +
            std::to_string(eps_gen / gap) + " is not below 1/e");
    }
    return -(gap / eps_gen) * lambert_w_minus1(arg);
}

CMat gaussian_init(std::uint32_t p, double scale, std::uint64_t seed) {
    CMat W(p, p);
    SplitMix64 rng(seed);
    const double s = scale / std::sqrt(2.0);
    for (auto& c : W.data) {
        const double re = rng.next_gaussian();
        const double im = rng.next_gaussian();
        c = {s * re, s * im};
    }
    return W;
}

namespace {

ExamplePair reindex_pair(const ExamplePair& e, const DlogTable& t, bool subtract) {
    const std::uint32_t m = t.p - 1;
    const std::uint32_t lu = t.log_of(e.u);
    const std::uint32_t lv = t.log_of(e.v);
    const std::uint32_t ly = t.log_of(e.y);
    // Consistency: log(u*v) = log u + log v, log(u/v) = log u - log v (mod p-1).
    const std::uint32_t expect = subtract ? (lu + m - lv) % m : (lu + lv) % m;
    if (expect != ly)
        throw std::logic_error("reindex_split: discrete-log relabeling is inconsistent");
    return {lu, lv, ly};
}

}  // namespace

DatasetSplit reindex_split(const DatasetSplit& split, std::uint32_t p, ModOp op) {
    if (op != ModOp::Mul && op != ModOp::Div)
        throw std::invalid_argument("reindex_split: only mul and div are reindexed");
    const DlogTable t = discrete_log_reindex(p);
    const bool subtract = (op == ModOp::Div);
    DatasetSplit out;
    auto convert = [&](const std::vector<ExamplePair>& in, std::vector<ExamplePair>& dst) {
        dst.reserve(in.size());
        for (const auto& e : in) {
            if (e.u == 0 || e.v == 0 || e.y == 0) continue;  // 0 has no logarithm
            dst.push_back(reindex_pair(e, t, subtract));
        }
    };
    convert(split.train, out.train);
    convert(split.test, out.test);
    return out;
}

TrainResult train(const SfmConfig& config, const DatasetSplit& split) {
    config.validate();
    if (split.train.empty()) throw std::invalid_argument("train: empty train split");

    DatasetSplit working;
    std::uint32_t modulus = config.p;
    const bool wants_reindex =
        config.reindex && (config.op == ModOp::Mul || config.op == ModOp::Div);
    if (wants_reindex) {
        working = reindex_split(split, config.p, config.op);
        modulus = config.p - 1;
        if (working.train.empty())
            throw std::invalid_argument("train: reindexed train split is empty");
    } else {
        working = split;
    }

    const UnitRoots roots(modulus);
    const double n_train = static_cast<double>(working.train.size());

    CMat W = (config.init_scale > 0.0)
                 ? gaussian_init(modulus, config.init_scale, config.init_seed)
                 : CMat(modulus, modulus);

    TrainResult result;
    result.model_modulus = modulus;

    std::vector<std::complex<double>> delta;
    auto record = [&](std::uint64_t step) {
        const auto sup = kernels::gather_support(W);
        kernels::residuals(sup, working.train, roots, delta);
        TraceRow row;
        row.step = step;
        row.n_eff = n_eff_schedule(step, config.batch_size);
        row.tau = threshold(config.beta, row.n_eff);
        row.train_loss = kernels::fit_loss(delta) / n_train;
        row.train_acc = kernels::decode_accuracy(sup, working.train, roots);
        row.test_acc = kernels::decode_accuracy(sup, working.test, roots);
        row.support_size = sup.size();
        row.lambda_proxy = 0.5 * static_cast<double>(sup.size());
        row.kc_sfm = kc_sfm(W, config.c_float, modulus);
        result.trace.rows.push_back(row);
    };

    record(0);
    for (std::uint64_t step = 1; step <= config.max_steps; ++step) {
        const auto sup = kernels::gather_support(W);
        kernels::residuals(sup, working.train, roots, delta);
        kernels::drift_accumulate(W, working.train, delta, config.eta, n_train, roots);
        occam_gate(W, threshold(config.beta, n_eff_schedule(step, config.batch_size)));

        for (const auto& c : W.data) {
            if (!(std::abs(c) <= 1e6)) {
                throw std::runtime_error("train: divergence at step " + std::to_string(step) +
                                         ", |W| exceeded 1e6 (eta too large?)");
            }
        }
        if (step % config.record_every == 0 || step == config.max_steps) record(step);
    }

    result.W = std::move(W);
    return result;
}

}  // namespace groklab
