#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <set>

#include "ltavg/curves.hpp"

namespace ltavg::cache {

// Persistent per-prime trace data. Layout under the cache directory:
//   p_<p>.bin  - u32 p, u32 rmax, (2*rmax+1) i64 histogram entries,
//                then bit-packed p*p membership tables appended per r
//   index.tsv  - tab-separated rows: p, r, flags, byte offset
//                (flags "hist" for the histogram, "bits" for a table;
//                 the histogram row carries r = 0)
// Files are little-endian. A corrupt or truncated file is rebuilt.
class TraceCache {
 public:
  // Empty path keeps everything in memory only.
  explicit TraceCache(std::filesystem::path dir);

  // Distribution for p, with the membership table for r when requested.
  // Builds (and persists) on miss; one writer per (p, r).
  curves::TraceDistribution get(std::int64_t p,
                                std::optional<std::int64_t> membership_for);

  void clear_memory();

 private:
  struct FileEntry {
    bool has_histogram = false;
    std::map<std::int64_t, std::uint64_t> bitset_offsets;  // r -> offset
  };

  std::filesystem::path file_path(std::int64_t p) const;
  void load_index();
  std::optional<curves::TraceDistribution> load(std::int64_t p,
                                                std::optional<std::int64_t> r);
  void persist(const curves::TraceDistribution& dist);

  std::filesystem::path dir_;
  std::mutex mu_;
  std::map<std::int64_t, FileEntry> index_;
  std::map<std::pair<std::int64_t, std::int64_t>, curves::TraceDistribution> memory_;
};

}  // namespace ltavg::cache
