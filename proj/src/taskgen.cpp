#include "groklab/taskgen.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "groklab/ioutil.hpp"
#include "groklab/prng.hpp"

#include <json.hpp>

namespace groklab {

const char* op_name(ModOp op) {
    switch (op) {
        case ModOp::Add: return "add";
        case ModOp::Sub: return "sub";
        case ModOp::Mul: return "mul";
        case ModOp::Div: return "div";
    }
    return "?";
}

ModOp parse_op(const std::string& name) {
    if (name == "add") return ModOp::Add;
    if (name == "sub") return ModOp::Sub;
    if (name == "mul") return ModOp::Mul;
    if (name == "div") return ModOp::Div;
    throw std::invalid_argument("unknown operation '" + name + "' (expected add|sub|mul|div)");
}

bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::uint32_t mod_inverse(std::uint32_t v, std::uint32_t p) {
    // Extended Euclid on (v, p); exact integer arithmetic throughout.
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = p, new_r = v % p;
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::int64_t tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw std::invalid_argument("mod_inverse: argument not invertible");
    if (t < 0) t += p;
    return static_cast<std::uint32_t>(t);
}

std::uint32_t eval_mod_op(std::uint32_t u, std::uint32_t v, ModOp op, std::uint32_t p) {
    if (u >= p || v >= p) throw std::invalid_argument("eval_mod_op: operand out of range");
    const std::uint64_t a = u, b = v;
    switch (op) {
        case ModOp::Add: return static_cast<std::uint32_t>((a + b) % p);
        case ModOp::Sub: return static_cast<std::uint32_t>((a + p - b) % p);
        case ModOp::Mul: return static_cast<std::uint32_t>((a * b) % p);
        case ModOp::Div:
            if (v == 0) throw std::invalid_argument("eval_mod_op: division by zero");
            return static_cast<std::uint32_t>((a * mod_inverse(v, p)) % p);
    }
    throw std::invalid_argument("eval_mod_op: bad op");
}

void TaskSpec::validate() const {
    if (!is_prime(p)) throw std::invalid_argument("TaskSpec: p must be prime");
    if (!(split_fraction > 0.0 && split_fraction <= 1.0))
        throw std::invalid_argument("TaskSpec: split_fraction must be in (0, 1]");
}

std::vector<ExamplePair> enumerate_pairs(const TaskSpec& spec) {
    spec.validate();
    std::vector<ExamplePair> out;
    const std::uint32_t v0 = (spec.op == ModOp::Div) ? 1 : 0;
    out.reserve(static_cast<std::size_t>(spec.p) * (spec.p - v0));
    for (std::uint32_t u = 0; u < spec.p; ++u)
        for (std::uint32_t v = v0; v < spec.p; ++v)
            out.push_back({u, v, eval_mod_op(u, v, spec.op, spec.p)});
    return out;
}

DatasetSplit split_dataset(const std::vector<ExamplePair>& pairs, double fraction,
                           std::uint64_t seed) {
    if (pairs.empty()) throw std::invalid_argument("split_dataset: empty pair list");
    if (!(fraction > 0.0 && fraction <= 1.0))
        throw std::invalid_argument("split_dataset: fraction must be in (0, 1]");
    std::vector<ExamplePair> shuffled = pairs;
    SplitMix64 rng(seed);
    shuffle(shuffled, rng);
    // floor rule: remainder goes to test.
    const auto n_train = static_cast<std::size_t>(
        std::floor(fraction * static_cast<double>(shuffled.size())));
    DatasetSplit split;
    split.train.assign(shuffled.begin(), shuffled.begin() + n_train);
    split.test.assign(shuffled.begin() + n_train, shuffled.end());
    return split;
}

std::vector<ExamplePair> random_label_dataset(const std::vector<ExamplePair>& pairs,
                                              std::uint32_t p, std::uint64_t seed) {
    if (pairs.empty()) throw std::invalid_argument("random_label_dataset: empty pair list");
    std::vector<ExamplePair> out = pairs;
    SplitMix64 rng(seed);
    for (auto& e : out) e.y = static_cast<std::uint32_t>(rng.next_below(p));
    return out;
}

void write_dataset_csv(const std::filesystem::path& path,
                       const std::vector<ExamplePair>& pairs) {
    std::ostringstream os;
    os << "u,v,y\n";
    for (const auto& e : pairs) os << e.u << ',' << e.v << ',' << e.y << '\n';
    write_file_atomic(path, os.str());
}

void write_dataset_sidecar(const std::filesystem::path& path, const TaskSpec& spec,
                           std::size_t total, std::size_t train_count,
                           std::size_t test_count) {
    nlohmann::json j;
    j["p"] = spec.p;
    j["op"] = op_name(spec.op);
    j["split_fraction"] = spec.split_fraction;
    j["split_seed"] = spec.split_seed;
    j["total_pairs"] = total;
    j["train_count"] = train_count;
    j["test_count"] = test_count;
    write_file_atomic(path, j.dump(2) + "\n");
}

std::vector<ExamplePair> read_dataset_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != "u,v,y")
        throw std::runtime_error("dataset csv: bad header in " + path.string());
    std::vector<ExamplePair> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ExamplePair e;
        char c1, c2;
        std::istringstream ls(line);
        if (!(ls >> e.u >> c1 >> e.v >> c2 >> e.y) || c1 != ',' || c2 != ',')
            throw std::runtime_error("dataset csv: bad row '" + line + "'");
        out.push_back(e);
    }
    return out;
}

}  // namespace groklab
