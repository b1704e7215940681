#include "groklab/interventions.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "groklab/ioutil.hpp"
#include "groklab/kernels.hpp"
#include "groklab/prng.hpp"
#include "groklab/spectral.hpp"

namespace groklab {

namespace {

double logit_at(std::complex<double> h, std::uint32_t cls, const UnitRoots& roots) {
    const auto& w = roots.pow(cls);
    return h.real() * w.real() + h.imag() * w.imag();
}

std::set<std::pair<std::uint32_t, std::uint32_t>> as_set(const ModeSet& modes,
                                                         std::uint32_t p) {
    std::set<std::pair<std::uint32_t, std::uint32_t>> s;
    for (const auto& m : modes) {
        if (m.first >= p || m.second >= p)
            throw std::invalid_argument("mode set: coordinate out of range");
        s.insert(m);
    }
    return s;
}

}  // namespace

CmsResult cms_patch(const CMat& W, const Context& s1, const Context& s2,
                    const ModeSet& modes, std::uint32_t p) {
    if (W.rows != p || W.cols != p)
        throw std::invalid_argument("cms_patch: W must be p x p");
    const UnitRoots roots(p);
    const auto mode_set = as_set(modes, p);

    const std::complex<double> h1 = evaluate(W, s1.u, s1.v);
    // Grafting: h_patched = h(s1) + sum_{modes} (a_kl(s2) - a_kl(s1)).
    std::complex<double> hp = h1;
    for (const auto& [k, l] : mode_set) {
        const auto& c = W(k, l);
        if (c.real() == 0.0 && c.imag() == 0.0) continue;
        const auto a1 = c * roots.pow(static_cast<std::uint64_t>(k) * s1.u +
                                      static_cast<std::uint64_t>(l) * s1.v);
        const auto a2 = c * roots.pow(static_cast<std::uint64_t>(k) * s2.u +
                                      static_cast<std::uint64_t>(l) * s2.v);
        hp += a2 - a1;
    }

    CmsResult res;
    res.degenerate_targets = (s1.y == s2.y);
    const double patched = logit_at(hp, s2.y, roots) - logit_at(hp, s1.y, roots);
    const double base = logit_at(h1, s2.y, roots) - logit_at(h1, s1.y, roots);
    res.score = patched - base;
    return res;
}

AblationResult ablate_support(const CMat& W, const ModeSet& modes,
                              const DatasetSplit& split, std::uint32_t p) {
    if (W.rows != p || W.cols != p)
        throw std::invalid_argument("ablate_support: W must be p x p");
    const UnitRoots roots(p);
    AblationResult res;
    const auto before = kernels::gather_support(W);
    res.acc_before = kernels::decode_accuracy(before, split.test, roots);

    CMat ablated = W;
    for (const auto& [k, l] : as_set(modes, p)) ablated(k, l) = 0.0;
    const auto after = kernels::gather_support(ablated);
    res.acc_after = kernels::decode_accuracy(after, split.test, roots);
    return res;
}

CMat shuffle_weights(const CMat& W, std::uint64_t seed) {
    CMat out = W;
    SplitMix64 rng(seed);
    shuffle(out.data, rng);
    return out;
}

void write_cms_sweep_csv(const std::filesystem::path& path, const CMat& W,
                         std::uint32_t p, ModOp op, std::size_t n_contexts,
                         std::uint64_t seed) {
    if (n_contexts < 2)
        throw std::invalid_argument("write_cms_sweep_csv: need at least 2 context pairs");
    // Seeded sample of context pairs with distinct answers.
    SplitMix64 rng(seed);
    std::vector<std::pair<Context, Context>> pairs;
    pairs.reserve(n_contexts);
    while (pairs.size() < n_contexts) {
        const auto pick = [&]() -> Context {
            while (true) {
                const auto u = static_cast<std::uint32_t>(rng.next_below(p));
                const auto v = static_cast<std::uint32_t>(rng.next_below(p));
                if (op == ModOp::Div && v == 0) continue;
                return {u, v, eval_mod_op(u, v, op, p)};
            }
        };
        const Context a = pick(), b = pick();
        if (a.y == b.y) continue;
        pairs.emplace_back(a, b);
    }

    std::ostringstream os;
    os << "k,l,cms_mean,cms_std\n";
    for (std::uint32_t k = 0; k < p; ++k)
        for (std::uint32_t l = 0; l < p; ++l) {
            const ModeSet single{{k, l}};
            double sum = 0.0, sum2 = 0.0;
            for (const auto& [a, b] : pairs) {
                const double s = cms_patch(W, a, b, single, p).score;
                sum += s;
                sum2 += s * s;
            }
            const double n = static_cast<double>(pairs.size());
            const double mean = sum / n;
            const double var = std::max(0.0, sum2 / n - mean * mean);
            os << k << ',' << l << ',' << format_double(mean) << ','
               << format_double(std::sqrt(var)) << '\n';
        }
    write_file_atomic(path, os.str());
}

}  // namespace groklab
