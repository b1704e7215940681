#include "groklab/bundle.hpp"

#include <bit>
#include <cstring>
#include <set>
#include <stdexcept>

#include "groklab/ioutil.hpp"

namespace groklab {

namespace {

constexpr char kMagic[4] = {'G', 'L', 'A', 'B'};
constexpr std::uint8_t kVersion = 1;

void put_u16(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xFF));
    out.push_back(static_cast<char>((v >> 8) & 0xFF));
}
void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}
void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}
void put_f64(std::string& out, double d) {
    std::uint64_t bits;
    std::memcpy(&bits, &d, 8);
    put_u64(out, bits);
}

struct Reader {
    const std::string& buf;
    std::size_t pos = 0;
    const std::string where;

    void need(std::size_t n) const {
        if (pos + n > buf.size())
            throw std::runtime_error("bundle: truncated file " + where);
    }
    std::uint16_t u16() {
        need(2);
        std::uint16_t v = 0;
        for (int i = 0; i < 2; ++i)
            v |= static_cast<std::uint16_t>(static_cast<unsigned char>(buf[pos + i])) << (8 * i);
        pos += 2;
        return v;
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i)
            v |= static_cast<std::uint32_t>(static_cast<unsigned char>(buf[pos + i])) << (8 * i);
        pos += 4;
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i)
            v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[pos + i])) << (8 * i);
        pos += 8;
        return v;
    }
    std::string bytes(std::size_t n) {
        need(n);
        std::string s = buf.substr(pos, n);
        pos += n;
        return s;
    }
};

std::size_t value_count(const BundleEntry& e) {
    return static_cast<std::size_t>(e.rows) * e.cols * (e.is_complex ? 2 : 1);
}

}  // namespace

BundleEntry BundleEntry::from_real(std::string name, const RMat& m) {
    BundleEntry e;
    e.name = std::move(name);
    e.rows = m.rows;
    e.cols = m.cols;
    e.is_complex = false;
    e.payload = m.data;
    return e;
}

BundleEntry BundleEntry::from_complex(std::string name, const CMat& m) {
    BundleEntry e;
    e.name = std::move(name);
    e.rows = m.rows;
    e.cols = m.cols;
    e.is_complex = true;
    e.payload.reserve(m.data.size() * 2);
    for (const auto& c : m.data) {
        e.payload.push_back(c.real());
        e.payload.push_back(c.imag());
    }
    return e;
}

RMat BundleEntry::to_real() const {
    if (is_complex) throw std::runtime_error("bundle entry '" + name + "' is complex");
    RMat m(rows, cols);
    m.data = payload;
    return m;
}

CMat BundleEntry::to_complex() const {
    if (!is_complex) throw std::runtime_error("bundle entry '" + name + "' is real");
    CMat m(rows, cols);
    for (std::size_t i = 0; i < m.data.size(); ++i)
        m.data[i] = {payload[2 * i], payload[2 * i + 1]};
    return m;
}

void write_bundle(const std::filesystem::path& path,
                  const std::vector<BundleEntry>& entries) {
    std::set<std::string> names;
    for (const auto& e : entries) {
        if (e.payload.size() != value_count(e))
            throw std::invalid_argument("bundle entry '" + e.name + "': payload size mismatch");
        if (e.name.empty() || e.name.size() > UINT16_MAX)
            throw std::invalid_argument("bundle entry name length out of range");
        if (!names.insert(e.name).second)
            throw std::invalid_argument("bundle: duplicate entry name '" + e.name + "'");
    }

    std::string out;
    out.append(kMagic, 4);
    out.push_back(static_cast<char>(kVersion));
    put_u32(out, static_cast<std::uint32_t>(entries.size()));
    std::uint64_t offset = 0;
    for (const auto& e : entries) {
        put_u16(out, static_cast<std::uint16_t>(e.name.size()));
        out.append(e.name);
        put_u64(out, e.rows);
        put_u64(out, e.cols);
        out.push_back(e.is_complex ? 1 : 0);
        put_u64(out, offset);
        offset += e.payload.size() * 8;
    }
    put_u64(out, offset);
    for (const auto& e : entries)
        for (double d : e.payload) put_f64(out, d);
    write_file_atomic(path, out);
}

std::vector<BundleEntry> read_bundle(const std::filesystem::path& path) {
    const std::string buf = read_file(path);
    Reader r{buf, 0, path.string()};
    if (r.bytes(4) != std::string(kMagic, 4))
        throw std::runtime_error("bundle: bad magic in " + path.string());
    const auto version = static_cast<std::uint8_t>(r.bytes(1)[0]);
    if (version != kVersion)
        throw std::runtime_error("bundle: unsupported version " + std::to_string(version));
    const std::uint32_t count = r.u32();

    struct RawEntry {
        BundleEntry e;
        std::uint64_t offset;
    };
    std::vector<RawEntry> raw(count);
    std::set<std::string> names;
    for (auto& re : raw) {
        const std::uint16_t len = r.u16();
        re.e.name = r.bytes(len);
        re.e.rows = r.u64();
        re.e.cols = r.u64();
        re.e.is_complex = r.bytes(1)[0] != 0;
        re.offset = r.u64();
        if (!names.insert(re.e.name).second)
            throw std::runtime_error("bundle: duplicate entry name '" + re.e.name + "'");
    }
    const std::uint64_t payload_size = r.u64();
    const std::size_t payload_start = r.pos;
    if (payload_start + payload_size > buf.size())
        throw std::runtime_error("bundle: truncated payload in " + path.string());

    // Offsets must be in bounds and non-overlapping.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges;
    for (auto& re : raw) {
        const std::uint64_t bytes = static_cast<std::uint64_t>(value_count(re.e)) * 8;
        if (re.offset + bytes > payload_size)
            throw std::runtime_error("bundle: entry '" + re.e.name + "' out of bounds");
        ranges.emplace_back(re.offset, re.offset + bytes);
    }
    std::sort(ranges.begin(), ranges.end());
    for (std::size_t i = 1; i < ranges.size(); ++i)
        if (ranges[i].first < ranges[i - 1].second)
            throw std::runtime_error("bundle: overlapping payload ranges");

    std::vector<BundleEntry> out;
    out.reserve(count);
    for (auto& re : raw) {
        const std::size_t n = value_count(re.e);
        re.e.payload.resize(n);
        std::size_t pos = payload_start + re.offset;
        for (std::size_t i = 0; i < n; ++i) {
            std::uint64_t bits = 0;
            for (int b = 0; b < 8; ++b)
                bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[pos + 8 * i + b]))
                        << (8 * b);
            double d;
            std::memcpy(&d, &bits, 8);
            re.e.payload[i] = d;
        }
        out.push_back(std::move(re.e));
    }
    return out;
}

}  // namespace groklab
