#include "groklab/trace.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "groklab/ioutil.hpp"

namespace groklab {

namespace {
constexpr const char* kHeader =
    "step,n_eff,tau,train_loss,train_acc,test_acc,lambda_proxy,kc_sfm,support_size";
}

void write_trace(const TrainTrace& trace, const std::filesystem::path& path) {
    std::ostringstream os;
    os << kHeader << '\n';
    for (const auto& r : trace.rows) {
        os << r.step << ',' << format_double(r.n_eff) << ',' << format_double(r.tau) << ','
           << format_double(r.train_loss) << ',' << format_double(r.train_acc) << ','
           << format_double(r.test_acc) << ',' << format_double(r.lambda_proxy) << ','
           << format_double(r.kc_sfm) << ',' << r.support_size << '\n';
    }
    write_file_atomic(path, os.str());
}

TrainTrace read_trace(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_trace: cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != kHeader)
        throw std::runtime_error("read_trace: header mismatch in " + path.string());
    TrainTrace t;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string f;
        std::vector<std::string> fields;
        while (std::getline(ls, f, ',')) fields.push_back(f);
        if (fields.size() != 9)
            throw std::runtime_error("read_trace: bad row at line " + std::to_string(lineno));
        TraceRow r;
        r.step = std::stoull(fields[0]);
        r.n_eff = std::stod(fields[1]);
        r.tau = std::stod(fields[2]);
        r.train_loss = std::stod(fields[3]);
        r.train_acc = std::stod(fields[4]);
        r.test_acc = std::stod(fields[5]);
        r.lambda_proxy = std::stod(fields[6]);
        r.kc_sfm = std::stod(fields[7]);
        r.support_size = std::stoull(fields[8]);
        t.rows.push_back(r);
    }
    return t;
}

}  // namespace groklab
