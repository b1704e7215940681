#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace groklab {

enum class ModOp { Add, Sub, Mul, Div };

const char* op_name(ModOp op);
ModOp parse_op(const std::string& name);

bool is_prime(std::uint32_t n);

// Modular inverse by extended Euclid. Requires gcd(v, p) = 1.
std::uint32_t mod_inverse(std::uint32_t v, std::uint32_t p);

// phi(u, v) mod p for the four operations. Division uses the modular inverse
// of v and rejects v = 0.
std::uint32_t eval_mod_op(std::uint32_t u, std::uint32_t v, ModOp op, std::uint32_t p);

struct TaskSpec {
    std::uint32_t p = 97;
    ModOp op = ModOp::Add;
    double split_fraction = 0.5;
    std::uint64_t split_seed = 0;

    // Throws std::invalid_argument on non-prime p or out-of-range fraction.
    void validate() const;
};

struct ExamplePair {
    std::uint32_t u = 0;
    std::uint32_t v = 0;
    std::uint32_t y = 0;

    bool operator==(const ExamplePair&) const = default;
};

struct DatasetSplit {
    std::vector<ExamplePair> train;
    std::vector<ExamplePair> test;
};

// All valid input pairs in lexicographic order (u ascending, then v).
// p^2 pairs for add/sub/mul, p(p-1) for div (v = 0 excluded).
std::vector<ExamplePair> enumerate_pairs(const TaskSpec& spec);

// Seeded Fisher-Yates shuffle; the first floor(fraction * N) pairs become
// the train set, the remainder the test set.
DatasetSplit split_dataset(const std::vector<ExamplePair>& pairs, double fraction,
                           std::uint64_t seed);

// Replaces every label with a seeded uniform draw from Z_p. Inputs unchanged.
std::vector<ExamplePair> random_label_dataset(const std::vector<ExamplePair>& pairs,
                                              std::uint32_t p, std::uint64_t seed);

// CSV with header "u,v,y"; the sidecar is a JSON file recording the TaskSpec
// and split seed next to it.
void write_dataset_csv(const std::filesystem::path& path,
                       const std::vector<ExamplePair>& pairs);
void write_dataset_sidecar(const std::filesystem::path& path, const TaskSpec& spec,
                           std::size_t total, std::size_t train_count,
                           std::size_t test_count);
std::vector<ExamplePair> read_dataset_csv(const std::filesystem::path& path);

}  // namespace groklab
