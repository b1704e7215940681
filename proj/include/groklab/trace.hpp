#pragma once

#include <filesystem>

#include "groklab/sfm.hpp"

namespace groklab {

// CSV with the exact header
// step,n_eff,tau,train_loss,train_acc,test_acc,lambda_proxy,kc_sfm,support_size
// and floats at 17 significant digits, so round trips are lossless.
void write_trace(const TrainTrace& trace, const std::filesystem::path& path);
TrainTrace read_trace(const std::filesystem::path& path);

}  // namespace groklab
