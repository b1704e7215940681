#include "groklab/kernels.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace groklab::kernels {

namespace {

thread_local bool g_parallel = true;

constexpr double kTwoPi = 6.283185307179586476925286766559;

inline std::complex<double> eval_point(const Support& sup, const UnitRoots& roots,
                                       std::uint32_t u, std::uint32_t v) {
    std::complex<double> h = 0.0;
    const std::size_t m = sup.size();
    for (std::size_t i = 0; i < m; ++i)
        h += sup.c[i] * roots.pow(static_cast<std::uint64_t>(sup.k[i]) * u +
                                  static_cast<std::uint64_t>(sup.l[i]) * v);
    return h;
}

inline std::uint32_t decode_fast(std::complex<double> h, const UnitRoots& roots) {
    std::uint32_t best = 0;
    double best_logit = h.real();
    for (std::uint32_t c = 1; c < roots.p; ++c) {
        const auto& w = roots.w[c];
        const double logit = h.real() * w.real() + h.imag() * w.imag();
        if (logit > best_logit) {
            best_logit = logit;
            best = c;
        }
    }
    return best;
}

}  // namespace

bool parallel_enabled() { return g_parallel; }
void set_parallel(bool enabled) { g_parallel = enabled; }

Support gather_support(const CMat& W) {
    Support sup;
    const auto p = static_cast<std::uint32_t>(W.rows);
    for (std::uint32_t k = 0; k < p; ++k)
        for (std::uint32_t l = 0; l < static_cast<std::uint32_t>(W.cols); ++l) {
            const auto& c = W(k, l);
            if (c.real() != 0.0 || c.imag() != 0.0) {
                sup.k.push_back(k);
                sup.l.push_back(l);
                sup.c.push_back(c);
            }
        }
    return sup;
}

void residuals(const Support& sup, const std::vector<ExamplePair>& data,
               const UnitRoots& roots, std::vector<std::complex<double>>& out) {
    out.resize(data.size());
    const auto n = static_cast<std::int64_t>(data.size());
#pragma omp parallel for schedule(static) if (g_parallel)
    for (std::int64_t i = 0; i < n; ++i) {
        const auto& e = data[static_cast<std::size_t>(i)];
        out[static_cast<std::size_t>(i)] =
            roots.pow(e.y) - eval_point(sup, roots, e.u, e.v);
    }
}

void drift_accumulate(CMat& W, const std::vector<ExamplePair>& data,
                      const std::vector<std::complex<double>>& delta, double eta,
                      double n, const UnitRoots& roots) {
    if (data.size() != delta.size())
        throw std::invalid_argument("drift_accumulate: residual count mismatch");
    const auto p = static_cast<std::uint32_t>(W.rows);
    const double scale = eta / n;
    const auto modes = static_cast<std::int64_t>(W.rows * W.cols);
#pragma omp parallel for schedule(static) if (g_parallel)
    for (std::int64_t m = 0; m < modes; ++m) {
        const auto k = static_cast<std::uint32_t>(m / p);
        const auto l = static_cast<std::uint32_t>(m % p);
        std::complex<double> acc = 0.0;
        for (std::size_t i = 0; i < data.size(); ++i) {
            const auto& e = data[i];
            // conj(omega^e) = omega^(p - e mod p)
            const std::uint64_t ex = (static_cast<std::uint64_t>(k) * e.u +
                                      static_cast<std::uint64_t>(l) * e.v) % p;
            acc += delta[i] * roots.w[ex == 0 ? 0 : p - ex];
        }
        W.data[static_cast<std::size_t>(m)] += scale * acc;
    }
}

double decode_accuracy(const Support& sup, const std::vector<ExamplePair>& data,
                       const UnitRoots& roots) {
    if (data.empty()) return 0.0;
    const auto n = static_cast<std::int64_t>(data.size());
    std::int64_t hits = 0;
#pragma omp parallel for schedule(static) reduction(+ : hits) if (g_parallel)
    for (std::int64_t i = 0; i < n; ++i) {
        const auto& e = data[static_cast<std::size_t>(i)];
        if (decode_fast(eval_point(sup, roots, e.u, e.v), roots) == e.y) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(n);
}

double fit_loss(const std::vector<std::complex<double>>& delta) {
    double s = 0.0;
    for (const auto& d : delta) s += std::norm(d);
    return 0.5 * s;
}

namespace {

// One DFT pass along the rows of M (length-C transforms), then the caller
// runs it again on the transpose for the full 2-D transform.
CMat dft_rows(const CMat& M) {
    const std::size_t R = M.rows, C = M.cols;
    CMat out(R, C);
    std::vector<std::complex<double>> tw(C);
    for (std::size_t l = 0; l < C; ++l) {
        const double a = -kTwoPi * static_cast<double>(l) / static_cast<double>(C);
        tw[l] = {std::cos(a), std::sin(a)};
    }
    const auto rows = static_cast<std::int64_t>(R);
#pragma omp parallel for schedule(static) if (g_parallel)
    for (std::int64_t r = 0; r < rows; ++r) {
        for (std::size_t l = 0; l < C; ++l) {
            std::complex<double> acc = 0.0;
            for (std::size_t d = 0; d < C; ++d)
                acc += M(static_cast<std::size_t>(r), d) * tw[(l * d) % C];
            out(static_cast<std::size_t>(r), l) = acc;
        }
    }
    return out;
}

CMat transpose(const CMat& M) {
    CMat out(M.cols, M.rows);
    for (std::size_t r = 0; r < M.rows; ++r)
        for (std::size_t c = 0; c < M.cols; ++c) out(c, r) = M(r, c);
    return out;
}

}  // namespace

CMat dft2(const CMat& M) {
    if (M.empty()) throw std::invalid_argument("dft2: empty matrix");
    // Columns first, then rows: F = DFT_rows(DFT_cols(M)).
    return dft_rows(transpose(dft_rows(transpose(M))));
}

CMat dft2(const RMat& M) {
    CMat c(M.rows, M.cols);
    for (std::size_t i = 0; i < M.data.size(); ++i) c.data[i] = M.data[i];
    return dft2(c);
}

RMat pairwise_distances(const RMat& cloud) {
    const std::size_t n = cloud.rows, d = cloud.cols;
    RMat dist(n, n);
    const auto nn = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static) if (g_parallel)
    for (std::int64_t i = 0; i < nn; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t c = 0; c < d; ++c) {
                const double diff = cloud(static_cast<std::size_t>(i), c) - cloud(j, c);
                s += diff * diff;
            }
            dist(static_cast<std::size_t>(i), j) = std::sqrt(s);
        }
    }
    return dist;
}

namespace serial {

void residuals(const Support& sup, const std::vector<ExamplePair>& data,
               const UnitRoots& roots, std::vector<std::complex<double>>& out) {
    out.resize(data.size());
    for (std::size_t i = 0; i < data.size(); ++i)
        out[i] = roots.pow(data[i].y) - eval_point(sup, roots, data[i].u, data[i].v);
}

void drift_accumulate(CMat& W, const std::vector<ExamplePair>& data,
                      const std::vector<std::complex<double>>& delta, double eta,
                      double n, const UnitRoots& roots) {
    if (data.size() != delta.size())
        throw std::invalid_argument("drift_accumulate: residual count mismatch");
    const auto p = static_cast<std::uint32_t>(W.rows);
    const double scale = eta / n;
    for (std::uint32_t k = 0; k < p; ++k)
        for (std::uint32_t l = 0; l < p; ++l) {
            std::complex<double> acc = 0.0;
            for (std::size_t i = 0; i < data.size(); ++i) {
                const auto& e = data[i];
                const std::uint64_t ex = (static_cast<std::uint64_t>(k) * e.u +
                                          static_cast<std::uint64_t>(l) * e.v) % p;
                acc += delta[i] * roots.w[ex == 0 ? 0 : p - ex];
            }
            W(k, l) += scale * acc;
        }
}

double decode_accuracy(const Support& sup, const std::vector<ExamplePair>& data,
                       const UnitRoots& roots) {
    if (data.empty()) return 0.0;
    std::int64_t hits = 0;
    for (const auto& e : data)
        if (decode_fast(eval_point(sup, roots, e.u, e.v), roots) == e.y) ++hits;
    return static_cast<double>(hits) / static_cast<double>(data.size());
}

CMat dft2_direct(const CMat& M) {
    if (M.empty()) throw std::invalid_argument("dft2_direct: empty matrix");
    const std::size_t V = M.rows, D = M.cols;
    CMat out(V, D);
    for (std::size_t k = 0; k < V; ++k)
        for (std::size_t l = 0; l < D; ++l) {
            std::complex<double> acc = 0.0;
            for (std::size_t v = 0; v < V; ++v)
                for (std::size_t d = 0; d < D; ++d) {
                    const double a = -kTwoPi * (static_cast<double>(k * v) / static_cast<double>(V) +
                                                static_cast<double>(l * d) / static_cast<double>(D));
                    acc += M(v, d) * std::complex<double>{std::cos(a), std::sin(a)};
                }
            out(k, l) = acc;
        }
    return out;
}

CMat dft2_direct(const RMat& M) {
    CMat c(M.rows, M.cols);
    for (std::size_t i = 0; i < M.data.size(); ++i) c.data[i] = M.data[i];
    return dft2_direct(c);
}

RMat pairwise_distances(const RMat& cloud) {
    const std::size_t n = cloud.rows, d = cloud.cols;
    RMat dist(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t c = 0; c < d; ++c) {
                const double diff = cloud(i, c) - cloud(j, c);
                s += diff * diff;
            }
            dist(i, j) = std::sqrt(s);
        }
    return dist;
}

}  // namespace serial

}  // namespace groklab::kernels
