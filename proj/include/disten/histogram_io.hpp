// Histogram persistence: a little-endian binary cache file and CSV export.
//
// Cache layout (all integers little-endian):
//   bytes 0..3   magic "DENH"
//   u32          format/backend version
//   u8           kind (0 disk, 1 grid)
//   u64          scale N
//   u64          zero_count
//   u64          length L = max_sq_dist + 1
//   L x u64      counts
//
// Files are written atomically (temp file + rename). The version is part of
// the file name and of the header; a mismatch on read reports a miss so the
// caller recomputes instead of silently reusing stale data.

#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>

#include "intx.hpp"
#include "lattice.hpp"
#include "version.hpp"

namespace disten {

namespace detail {

inline void put_u32(std::ostream& os, std::uint32_t v) {
    char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    os.write(b, 4);
}

inline void put_u64(std::ostream& os, u64 v) {
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    os.write(b, 8);
}

inline bool get_u32(std::istream& is, std::uint32_t& v) {
    unsigned char b[4];
    if (!is.read(reinterpret_cast<char*>(b), 4)) return false;
    v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
    return true;
}

inline bool get_u64(std::istream& is, u64& v) {
    unsigned char b[8];
    if (!is.read(reinterpret_cast<char*>(b), 8)) return false;
    v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
    return true;
}

} // namespace detail

inline std::filesystem::path histogram_cache_path(const std::filesystem::path& cache_dir,
                                                  SetKind kind, u64 N) {
    return cache_dir / (std::string(to_cstring(kind)) + "-" + std::to_string(N) + "-v" +
                        std::to_string(histogram_cache_version) + ".dhist");
}

inline void write_histogram_file(const DistanceHistogram& h,
                                 const std::filesystem::path& path) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        os.write("DENH", 4);
        detail::put_u32(os, histogram_cache_version);
        char kind_byte = static_cast<char>(h.kind);
        os.write(&kind_byte, 1);
        detail::put_u64(os, h.scale);
        detail::put_u64(os, h.zero_count);
        detail::put_u64(os, h.counts.size());
        for (u64 c : h.counts) detail::put_u64(os, c);
        if (!os) throw std::runtime_error("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

// nullopt on any miss: absent file, bad magic, version or key mismatch.
inline std::optional<DistanceHistogram>
read_histogram_file(const std::filesystem::path& path, SetKind kind, u64 N) {
    std::ifstream is(path, std::ios::binary);
    if (!is) return std::nullopt;
    char magic[4];
    if (!is.read(magic, 4) || std::string(magic, 4) != "DENH") return std::nullopt;
    std::uint32_t version;
    if (!detail::get_u32(is, version) || version != histogram_cache_version) return std::nullopt;
    char kind_byte;
    if (!is.read(&kind_byte, 1)) return std::nullopt;
    DistanceHistogram h;
    h.kind = static_cast<SetKind>(kind_byte);
    u64 length;
    if (!detail::get_u64(is, h.scale) || !detail::get_u64(is, h.zero_count) ||
        !detail::get_u64(is, length))
        return std::nullopt;
    if (h.kind != kind || h.scale != N) return std::nullopt;
    h.counts.resize(length);
    for (u64 i = 0; i < length; ++i)
        if (!detail::get_u64(is, h.counts[i])) return std::nullopt;
    return h;
}

// CSV export of the nonzero rows, ascending in n. Identical histograms
// always serialize to identical bytes.
inline void export_histogram_csv(const DistanceHistogram& h, std::ostream& os) {
    os << "n,R\n";
    for (u64 n = 1; n < h.counts.size(); ++n)
        if (h.counts[n] != 0) os << n << ',' << h.counts[n] << '\n';
}

} // namespace disten
