#include "groklab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "groklab/complexity.hpp"
#include "groklab/ioutil.hpp"
#include "groklab/kernels.hpp"
#include "groklab/prng.hpp"
#include "groklab/spectral.hpp"

namespace groklab {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

PcaResult pca_project(const PointCloud& cloud, std::size_t k) {
    const std::size_t n = cloud.rows, d = cloud.cols;
    if (n == 0 || d == 0) throw std::invalid_argument("pca_project: empty cloud");
    if (k == 0 || k > std::min(n, d))
        throw std::invalid_argument("pca_project: k must be in [1, min(n, d)]");

    PcaResult res;
    res.mean.assign(d, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < d; ++c) res.mean[c] += cloud(i, c);
    for (double& m : res.mean) m /= static_cast<double>(n);

    RMat X(n, d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < d; ++c) X(i, c) = cloud(i, c) - res.mean[c];

    // Covariance with the 1/n convention.
    RMat C(d, d);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = a; b < d; ++b) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += X(i, a) * X(i, b);
            s /= static_cast<double>(n);
            C(a, b) = s;
            C(b, a) = s;
        }
    double trace = 0.0;
    for (std::size_t a = 0; a < d; ++a) trace += C(a, a);
    if (trace <= 0.0) throw std::invalid_argument("pca_project: zero-variance cloud");

    res.components = RMat(k, d);
    res.explained_variance.assign(k, 0.0);

    constexpr double kTol = 1e-10;
    constexpr int kMaxIter = 10000;
    std::vector<double> v(d), w(d);
    for (std::size_t comp = 0; comp < k; ++comp) {
        SplitMix64 rng(0x9E0C0FFEEULL + comp);
        double norm = 0.0;
        for (auto& x : v) {
            x = rng.next_gaussian();
            norm += x * x;
        }
        norm = std::sqrt(norm);
        for (auto& x : v) x /= norm;

        double lambda = 0.0;
        for (int it = 0; it < kMaxIter; ++it) {
            for (std::size_t a = 0; a < d; ++a) {
                double s = 0.0;
                for (std::size_t b = 0; b < d; ++b) s += C(a, b) * v[b];
                w[a] = s;
            }
            double wn = 0.0;
            for (double x : w) wn += x * x;
            wn = std::sqrt(wn);
            if (wn <= trace * 1e-15) {
                // Remaining directions carry no variance.
                lambda = 0.0;
                break;
            }
            double diff = 0.0;
            for (std::size_t a = 0; a < d; ++a) {
                w[a] /= wn;
                diff += std::abs(w[a] - v[a]);
            }
            std::swap(v, w);
            lambda = wn;
            if (diff < kTol) break;
        }

        // Sign convention: first coordinate with magnitude above 1e-12 positive.
        for (std::size_t a = 0; a < d; ++a) {
            if (std::abs(v[a]) > 1e-12) {
                if (v[a] < 0.0)
                    for (auto& x : v) x = -x;
                break;
            }
        }
        for (std::size_t a = 0; a < d; ++a) res.components(comp, a) = v[a];
        res.explained_variance[comp] = lambda;
        // Deflate.
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b) C(a, b) -= lambda * v[a] * v[b];
    }

    res.projected = RMat(n, k);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t comp = 0; comp < k; ++comp) {
            double s = 0.0;
            for (std::size_t a = 0; a < d; ++a) s += X(i, a) * res.components(comp, a);
            res.projected(i, comp) = s;
        }
    return res;
}

double circular_correlation(std::span<const double> angles, std::uint32_t p) {
    const std::size_t n = angles.size();
    if (n != p) throw std::invalid_argument("circular_correlation: need one angle per element");
    if (n < 3) throw std::invalid_argument("circular_correlation: need at least 3 points");
    double num = 0.0, da = 0.0, db = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double sa = std::sin(angles[i] - angles[j]);
            const double sb = std::sin(kTwoPi * (static_cast<double>(i) - static_cast<double>(j)) /
                                       static_cast<double>(p));
            num += sa * sb;
            da += sa * sa;
            db += sb * sb;
        }
    if (da <= 0.0 || db <= 0.0)
        throw std::invalid_argument("circular_correlation: degenerate angle set");
    return std::abs(num) / std::sqrt(da * db);
}

double homomorphism_error(std::span<const std::complex<double>> embed, std::uint32_t p) {
    if (embed.size() != p)
        throw std::invalid_argument("homomorphism_error: need one value per element");
    std::vector<std::complex<double>> psi(p);
    for (std::uint32_t x = 0; x < p; ++x) {
        const double m = std::abs(embed[x]);
        if (m == 0.0) throw std::invalid_argument("homomorphism_error: zero embedding value");
        psi[x] = embed[x] / m;
    }
    double total = 0.0;
    for (std::uint32_t a = 0; a < p; ++a)
        for (std::uint32_t b = 0; b < p; ++b)
            total += std::abs(psi[(a + b) % p] - psi[a] * psi[b]);
    return total / (static_cast<double>(p) * static_cast<double>(p));
}

namespace {

struct Simplex {
    double diam;
    std::uint8_t dim;
    std::uint32_t a, b, c;  // vertex ids; unused slots = UINT32_MAX
};

}  // namespace

Barcode vietoris_rips_persistence(const PointCloud& cloud, std::size_t cap) {
    const std::size_t n = cloud.rows;
    if (n == 0) throw std::invalid_argument("vietoris_rips_persistence: empty cloud");
    if (n > cap)
        throw std::invalid_argument(
            "vietoris_rips_persistence: cloud exceeds the point cap (" +
            std::to_string(cap) + "); subsample first (farthest_point_subsample)");

    const RMat dist = kernels::pairwise_distances(cloud);

    std::vector<Simplex> simplices;
    simplices.reserve(n + n * n / 2 + n * n * n / 6);
    const std::uint32_t none = UINT32_MAX;
    for (std::uint32_t i = 0; i < n; ++i) simplices.push_back({0.0, 0, i, none, none});
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j)
            simplices.push_back({dist(i, j), 1, i, j, none});
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j)
            for (std::uint32_t k = j + 1; k < n; ++k) {
                const double d = std::max({dist(i, j), dist(i, k), dist(j, k)});
                simplices.push_back({d, 2, i, j, k});
            }

    // Filtration order: by diameter, then dimension (faces precede cofaces at
    // equal value), then vertex tuple for determinism.
    std::sort(simplices.begin(), simplices.end(), [](const Simplex& x, const Simplex& y) {
        if (x.diam != y.diam) return x.diam < y.diam;
        if (x.dim != y.dim) return x.dim < y.dim;
        if (x.a != y.a) return x.a < y.a;
        if (x.b != y.b) return x.b < y.b;
        return x.c < y.c;
    });

    const std::size_t total = simplices.size();
    // Locate edges by vertex pair for triangle boundaries.
    std::vector<std::uint32_t> edge_index(n * n, 0);
    for (std::size_t s = 0; s < total; ++s)
        if (simplices[s].dim == 1)
            edge_index[simplices[s].a * n + simplices[s].b] = static_cast<std::uint32_t>(s);

    // Standard persistence reduction over Z/2. Columns hold facet indices.
    std::vector<std::vector<std::uint32_t>> cols(total);
    for (std::size_t s = 0; s < total; ++s) {
        const Simplex& sx = simplices[s];
        if (sx.dim == 1) {
            cols[s] = {sx.a, sx.b};  // vertices sort first, index == position
        } else if (sx.dim == 2) {
            cols[s] = {edge_index[sx.a * n + sx.b], edge_index[sx.a * n + sx.c],
                       edge_index[sx.b * n + sx.c]};
        }
        std::sort(cols[s].begin(), cols[s].end());
    }
    // Vertices occupy the first n filtration slots (diam 0, dim 0).

    std::vector<std::int64_t> pivot(total, -1);
    std::vector<std::uint32_t> tmp;
    for (std::size_t j = 0; j < total; ++j) {
        auto& col = cols[j];
        while (!col.empty()) {
            const std::uint32_t low = col.back();
            const std::int64_t other = pivot[low];
            if (other < 0) break;
            // Symmetric difference with the column that owns this pivot.
            const auto& oc = cols[static_cast<std::size_t>(other)];
            tmp.clear();
            std::set_symmetric_difference(col.begin(), col.end(), oc.begin(), oc.end(),
                                          std::back_inserter(tmp));
            col.swap(tmp);
        }
        if (!col.empty()) pivot[col.back()] = static_cast<std::int64_t>(j);
    }

    Barcode bars;
    std::vector<bool> destroyed(total, false);
    for (std::size_t j = 0; j < total; ++j) {
        if (cols[j].empty()) continue;
        const std::uint32_t low = cols[j].back();
        destroyed[low] = true;
        const double birth = simplices[low].diam;
        const double death = simplices[j].diam;
        if (death > birth) bars.push_back({simplices[low].dim, birth, death});
    }
    // Creators never destroyed carry infinite bars (H0 components; an H1
    // cycle cannot survive past the full clique, so only dims 0..1 matter).
    for (std::size_t s = 0; s < total; ++s) {
        if (!cols[s].empty()) continue;      // only creators
        if (destroyed[s]) continue;
        if (simplices[s].dim >= 2) continue; // 2-cycles out of scope
        bars.push_back({simplices[s].dim, simplices[s].diam,
                        std::numeric_limits<double>::infinity()});
    }

    std::sort(bars.begin(), bars.end(), [](const Bar& x, const Bar& y) {
        const bool xi = std::isinf(x.death), yi = std::isinf(y.death);
        if (xi != yi) return xi;
        if (x.lifetime() != y.lifetime()) return x.lifetime() > y.lifetime();
        return x.birth < y.birth;
    });
    return bars;
}

double betti1_max_lifetime(const PointCloud& cloud, std::size_t cap) {
    const Barcode bars = vietoris_rips_persistence(cloud, cap);
    double best = 0.0;
    for (const Bar& b : bars)
        if (b.dim == 1 && !std::isinf(b.death)) best = std::max(best, b.lifetime());
    return best;
}

PointCloud farthest_point_subsample(const PointCloud& cloud, std::size_t m,
                                    std::uint64_t seed) {
    const std::size_t n = cloud.rows;
    if (m == 0 || n == 0) throw std::invalid_argument("farthest_point_subsample: empty request");
    if (m >= n) return cloud;
    SplitMix64 rng(seed);
    std::vector<std::size_t> chosen{static_cast<std::size_t>(rng.next_below(n))};
    std::vector<double> mind(n, std::numeric_limits<double>::infinity());
    auto sqdist = [&](std::size_t i, std::size_t j) {
        double s = 0.0;
        for (std::size_t c = 0; c < cloud.cols; ++c) {
            const double diff = cloud(i, c) - cloud(j, c);
            s += diff * diff;
        }
        return s;
    };
    while (chosen.size() < m) {
        const std::size_t last = chosen.back();
        std::size_t far = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            mind[i] = std::min(mind[i], sqdist(i, last));
            if (mind[i] > best) {
                best = mind[i];
                far = i;
            }
        }
        chosen.push_back(far);
    }
    PointCloud out(m, cloud.cols);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < cloud.cols; ++c) out(r, c) = cloud(chosen[r], c);
    return out;
}

void write_barcode_csv(const std::filesystem::path& path, const Barcode& bars) {
    std::ostringstream os;
    os << "dim,birth,death\n";
    for (const Bar& b : bars) {
        os << b.dim << ',' << format_double(b.birth) << ',';
        if (std::isinf(b.death))
            os << "inf";
        else
            os << format_double(b.death);
        os << '\n';
    }
    write_file_atomic(path, os.str());
}

PointCloud embedding_cloud(const CMat& W, std::uint32_t p) {
    return realify(prediction_grid(W, p));
}

std::vector<double> embedding_angles(const CMat& W, std::uint32_t p) {
    const auto e = embedding_map(W, p);
    std::vector<double> out(p);
    for (std::uint32_t x = 0; x < p; ++x) out[x] = std::arg(e[x]);
    return out;
}

std::vector<std::complex<double>> embedding_map(const CMat& W, std::uint32_t p) {
    std::vector<std::complex<double>> out(p);
    for (std::uint32_t x = 0; x < p; ++x) out[x] = evaluate(W, x, 0);
    return out;
}

}  // namespace groklab
