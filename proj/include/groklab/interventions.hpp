#pragma once

#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

#include "groklab/matrix.hpp"
#include "groklab/taskgen.hpp"

namespace groklab {

struct Context {
    std::uint32_t u = 0;
    std::uint32_t v = 0;
    std::uint32_t y = 0;
};

// Set of (k, l) frequency coordinates; duplicates are ignored.
using ModeSet = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

struct CmsResult {
    double score = 0.0;
    // y1 == y2 makes the logit bracket insensitive to the target distinction;
    // the score is still defined, but flagged.
    bool degenerate_targets = false;
};

// Per-mode activation grafting: a_kl(ctx) = W_kl chi_k(u) chi_l(v); the
// patched output replaces a_kl(s1) by a_kl(s2) on the given modes, and the
// score is the patched-minus-base logit difference for (y2, y1).
CmsResult cms_patch(const CMat& W, const Context& s1, const Context& s2,
                    const ModeSet& modes, std::uint32_t p);

struct AblationResult {
    double acc_before = 0.0;
    double acc_after = 0.0;
};

// Decode accuracy on the split's test set before and after zeroing W on the
// given modes. W itself is not modified.
AblationResult ablate_support(const CMat& W, const ModeSet& modes,
                              const DatasetSplit& split, std::uint32_t p);

// Seeded uniform permutation of all p^2 entries; value multiset preserved.
CMat shuffle_weights(const CMat& W, std::uint64_t seed);

// Single-mode CMS statistics over a seeded sample of context pairs, written
// as CSV "k,l,cms_mean,cms_std".
void write_cms_sweep_csv(const std::filesystem::path& path, const CMat& W,
                         std::uint32_t p, ModOp op, std::size_t n_contexts,
                         std::uint64_t seed);

}  // namespace groklab
