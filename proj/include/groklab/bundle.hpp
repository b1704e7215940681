#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "groklab/matrix.hpp"

namespace groklab {

// One named matrix inside a bundle file. Payload values are row-major 64-bit
// floats; complex matrices interleave re,im per entry.
struct BundleEntry {
    std::string name;
    std::uint64_t rows = 0;
    std::uint64_t cols = 0;
    bool is_complex = false;
    std::vector<double> payload;

    static BundleEntry from_real(std::string name, const RMat& m);
    static BundleEntry from_complex(std::string name, const CMat& m);
    RMat to_real() const;
    CMat to_complex() const;
};

// Bundle file layout (all integers little-endian):
//   magic "GLAB", version byte 1,
//   u32 entry count,
//   per entry: u16 name length, name bytes, u64 rows, u64 cols,
//              u8 is_complex, u64 payload byte offset,
//   u64 payload byte size, payload bytes (64-bit IEEE doubles).
// Offsets are relative to the payload section start.
void write_bundle(const std::filesystem::path& path,
                  const std::vector<BundleEntry>& entries);
std::vector<BundleEntry> read_bundle(const std::filesystem::path& path);

}  // namespace groklab
