#include "groklab/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "groklab/kernels.hpp"

namespace groklab {

SymbolMatrix quantile_binning(const RMat& M, std::uint32_t q) {
    if (M.empty()) throw std::invalid_argument("quantile_binning: empty matrix");
    if (q < 2) throw std::invalid_argument("quantile_binning: alphabet must be >= 2");
    for (double v : M.data)
        if (std::isnan(v)) throw std::invalid_argument("quantile_binning: NaN entry");

    std::vector<double> sorted = M.data;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();

    // Linear-interpolation quantiles at j/q, j = 1..q-1.
    std::vector<double> edges(q - 1);
    for (std::uint32_t j = 1; j < q; ++j) {
        const double h = static_cast<double>(j) / q * static_cast<double>(n - 1);
        const auto lo = static_cast<std::size_t>(std::floor(h));
        const std::size_t hi = std::min(lo + 1, n - 1);
        edges[j - 1] = sorted[lo] + (h - std::floor(h)) * (sorted[hi] - sorted[lo]);
    }

    SymbolMatrix out;
    out.rows = M.rows;
    out.cols = M.cols;
    out.q = q;
    out.sym.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        // Symbol = number of edges strictly exceeded; constant matrices have
        // all edges equal to the value, so everything lands on 0.
        std::uint8_t s = 0;
        for (std::uint32_t j = 0; j < q - 1; ++j)
            if (M.data[i] > edges[j]) s = static_cast<std::uint8_t>(j + 1);
        out.sym[i] = s;
    }
    return out;
}

CtmTable CtmTable::load_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("CtmTable: cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != "b,q,block,ctm")
        throw std::runtime_error("CtmTable: bad header in " + path.string());
    CtmTable t;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string bs, qs, block, vs;
        if (!std::getline(ls, bs, ',') || !std::getline(ls, qs, ',') ||
            !std::getline(ls, block, ',') || !std::getline(ls, vs))
            throw std::runtime_error("CtmTable: bad row at line " + std::to_string(lineno));
        const auto b = static_cast<std::uint32_t>(std::stoul(bs));
        const auto q = static_cast<std::uint32_t>(std::stoul(qs));
        const double v = std::stod(vs);
        if (v < 0.0)
            throw std::runtime_error("CtmTable: negative value at line " + std::to_string(lineno));
        if (block.size() != static_cast<std::size_t>(b) * b)
            throw std::runtime_error("CtmTable: block length mismatch at line " +
                                     std::to_string(lineno));
        t.insert(b, q, block, v);
    }
    return t;
}

void CtmTable::insert(std::uint32_t b, std::uint32_t q, const std::string& block,
                      double value) {
    values_[std::to_string(b) + "|" + std::to_string(q) + "|" + block] = value;
}

std::optional<double> CtmTable::lookup(std::uint32_t b, std::uint32_t q,
                                       std::string_view block) const {
    std::string key = std::to_string(b) + "|" + std::to_string(q) + "|";
    key.append(block);
    const auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

CtmValue ctm(std::string_view block, std::uint32_t b, std::uint32_t q,
             const CtmTable* table) {
    if (block.size() != static_cast<std::size_t>(b) * b)
        throw std::invalid_argument("ctm: block length must be b^2");
    if (table) {
        if (auto v = table->lookup(b, q, block)) return {*v, true};
    }
    // Fallback proxy: base cost 1 plus b^2 times the per-symbol entropy.
    std::array<std::size_t, 256> counts{};
    for (char c : block) counts[static_cast<unsigned char>(c)]++;
    const double n = static_cast<double>(block.size());
    double h = 0.0;
    for (std::size_t c : counts) {
        if (c == 0) continue;
        const double pr = static_cast<double>(c) / n;
        h -= pr * std::log2(pr);
    }
    return {1.0 + n * h, false};
}

namespace {

std::string block_string(const SymbolMatrix& sm, std::size_t r0, std::size_t c0,
                         std::uint32_t b) {
    std::string s;
    s.reserve(static_cast<std::size_t>(b) * b);
    for (std::uint32_t r = 0; r < b; ++r)
        for (std::uint32_t c = 0; c < b; ++c)
            s.push_back(static_cast<char>('0' + sm(r0 + r, c0 + c)));
    return s;
}

void check_block_args(const RMat& M, std::uint32_t q, std::uint32_t b) {
    if (b < 2) throw std::invalid_argument("block decomposition: block side must be >= 2");
    if (M.rows < b || M.cols < b)
        throw std::invalid_argument("block decomposition: matrix smaller than one block");
    if (q < 2) throw std::invalid_argument("block decomposition: alphabet must be >= 2");
}

std::unordered_map<std::string, std::size_t> block_histogram(const RMat& M,
                                                             std::uint32_t q,
                                                             std::uint32_t b,
                                                             std::size_t& total) {
    const SymbolMatrix sm = quantile_binning(M, q);
    std::unordered_map<std::string, std::size_t> hist;
    total = 0;
    for (std::size_t r = 0; r + b <= sm.rows; r += b)
        for (std::size_t c = 0; c + b <= sm.cols; c += b) {
            hist[block_string(sm, r, c, b)]++;
            ++total;
        }
    return hist;
}

}  // namespace

BdmResult bdm(const RMat& M, std::uint32_t q, std::uint32_t b, const CtmTable* table) {
    check_block_args(M, q, b);
    std::size_t total = 0;
    const auto hist = block_histogram(M, q, b, total);

    BdmResult res;
    res.blocks = total;
    res.unique_blocks = hist.size();
    const std::size_t covered = (M.rows / b) * b * ((M.cols / b) * b);
    res.coverage = static_cast<double>(covered) / static_cast<double>(M.rows * M.cols);
    // Deterministic summation order: sort the unique blocks.
    std::vector<const std::pair<const std::string, std::size_t>*> items;
    items.reserve(hist.size());
    for (const auto& kv : hist) items.push_back(&kv);
    std::sort(items.begin(), items.end(),
              [](auto* a, auto* b2) { return a->first < b2->first; });
    for (const auto* kv : items) {
        const CtmValue cv = ctm(kv->first, b, q, table);
        if (!cv.from_table) ++res.fallback_blocks;
        res.value += cv.value + std::log2(static_cast<double>(kv->second));
    }
    return res;
}

double block_entropy(const RMat& M, std::uint32_t q, std::uint32_t b) {
    check_block_args(M, q, b);
    std::size_t total = 0;
    const auto hist = block_histogram(M, q, b, total);
    double h = 0.0;
    for (const auto& [_, count] : hist) {
        const double pr = static_cast<double>(count) / static_cast<double>(total);
        h -= pr * std::log2(pr);
    }
    return h;
}

double gini(std::span<const double> s) {
    const std::size_t n = s.size();
    if (n == 0) throw std::invalid_argument("gini: empty vector");
    std::vector<double> sorted(s.begin(), s.end());
    for (double v : sorted)
        if (v < 0.0) throw std::invalid_argument("gini: negative entry");
    std::sort(sorted.begin(), sorted.end());
    double sum = 0.0, weighted = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sum += sorted[i];
        weighted += static_cast<double>(i + 1) * sorted[i];
    }
    if (sum <= 0.0) throw std::invalid_argument("gini: vector sums to zero");
    // sum_{i,j} |s_i - s_j| = 2 (2 sum_i i s_(i) - (n+1) sum s) for sorted s.
    const double nd = static_cast<double>(n);
    return (2.0 * weighted - (nd + 1.0) * sum) / (nd * sum);
}

double ipr(std::span<const double> s) {
    if (s.empty()) throw std::invalid_argument("ipr: empty vector");
    double s2 = 0.0, s4 = 0.0;
    for (double v : s) {
        const double v2 = v * v;
        s2 += v2;
        s4 += v2 * v2;
    }
    if (s2 <= 0.0) throw std::invalid_argument("ipr: zero vector");
    return s4 / (s2 * s2);
}

RMat spectral_density(const CMat& M) {
    const CMat F = kernels::dft2(M);
    RMat S(F.rows, F.cols);
    for (std::size_t i = 0; i < F.data.size(); ++i) S.data[i] = std::norm(F.data[i]);
    return S;
}

RMat spectral_density(const RMat& M) {
    CMat c(M.rows, M.cols);
    for (std::size_t i = 0; i < M.data.size(); ++i) c.data[i] = M.data[i];
    return spectral_density(c);
}

double geo_complexity(std::span<const double> probs) {
    if (probs.size() < 2) throw std::invalid_argument("geo_complexity: need |D| >= 2");
    double sum = 0.0;
    for (double pr : probs) {
        if (pr < 0.0) throw std::invalid_argument("geo_complexity: negative mass");
        sum += pr;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("geo_complexity: probabilities must sum to 1");
    double h = 0.0;
    for (double pr : probs)
        if (pr > 0.0) h -= pr * std::log(pr);
    return 1.0 - h / std::log(static_cast<double>(probs.size()));
}

std::vector<double> singular_values(RMat A, double tol, int max_sweeps) {
    if (A.empty()) throw std::invalid_argument("singular_values: empty matrix");
    // Work on the tall orientation; singular values are shared.
    if (A.rows < A.cols) {
        RMat T(A.cols, A.rows);
        for (std::size_t r = 0; r < A.rows; ++r)
            for (std::size_t c = 0; c < A.cols; ++c) T(c, r) = A(r, c);
        A = std::move(T);
    }
    const std::size_t m = A.rows, n = A.cols;

    // One-sided Jacobi: rotate column pairs until all are mutually orthogonal
    // relative to tol; column norms are then the singular values.
    auto col_dot = [&](std::size_t i, std::size_t j) {
        double s = 0.0;
        for (std::size_t r = 0; r < m; ++r) s += A(r, i) * A(r, j);
        return s;
    };

    bool converged = false;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        converged = true;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const double aij = col_dot(i, j);
                const double aii = col_dot(i, i);
                const double ajj = col_dot(j, j);
                if (std::abs(aij) <= tol * std::sqrt(aii * ajj)) continue;
                converged = false;
                const double zeta = (ajj - aii) / (2.0 * aij);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t r = 0; r < m; ++r) {
                    const double x = A(r, i), y = A(r, j);
                    A(r, i) = c * x - s * y;
                    A(r, j) = s * x + c * y;
                }
            }
        }
    }
    if (!converged)
        throw std::runtime_error("singular_values: Jacobi sweeps did not converge");

    std::vector<double> sv(n);
    for (std::size_t j = 0; j < n; ++j) sv[j] = std::sqrt(col_dot(j, j));
    std::sort(sv.begin(), sv.end(), std::greater<>());
    return sv;
}

std::pair<double, double> eig_concentration(const RMat& M) {
    if (M.empty()) throw std::invalid_argument("eig_concentration: empty matrix");
    const auto sv = singular_values(M);
    double total = 0.0;
    for (double s : sv) total += s * s;
    if (total <= 0.0) throw std::invalid_argument("eig_concentration: zero matrix");
    const double l1 = sv[0] * sv[0] / total;
    const double l2 = sv.size() > 1 ? sv[1] * sv[1] / total : 0.0;
    return {l1, l2};
}

MatrixNorms matrix_norms(const RMat& M) {
    if (M.empty()) throw std::invalid_argument("matrix_norms: empty matrix");
    const auto sv = singular_values(M);
    MatrixNorms out;
    double fro2 = 0.0;
    for (double s : sv) {
        out.nuclear += s;
        fro2 += s * s;
    }
    if (out.nuclear <= 0.0 || fro2 <= 0.0)
        throw std::invalid_argument("matrix_norms: zero matrix");
    out.stable_rank = fro2 / (sv[0] * sv[0]);
    for (double s : sv) {
        if (s <= 0.0) continue;
        const double pr = s / out.nuclear;
        out.spectral_entropy -= pr * std::log(pr);
    }
    out.effective_rank = std::exp(out.spectral_entropy);
    return out;
}

RMat realify(const CMat& W) {
    RMat out(W.rows, 2 * W.cols);
    for (std::size_t r = 0; r < W.rows; ++r)
        for (std::size_t c = 0; c < W.cols; ++c) {
            out(r, 2 * c) = W(r, c).real();
            out(r, 2 * c + 1) = W(r, c).imag();
        }
    return out;
}

}  // namespace groklab
