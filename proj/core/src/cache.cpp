#include "ltavg/cache.hpp"

#include <fstream>

namespace ltavg::cache {

namespace fs = std::filesystem;

TraceCache::TraceCache(fs::path dir) : dir_(std::move(dir)) {
  if (!dir_.empty()) {
    fs::create_directories(dir_);
    load_index();
  }
}

fs::path TraceCache::file_path(std::int64_t p) const {
  return dir_ / ("p_" + std::to_string(p) + ".bin");
}

void TraceCache::load_index() {
  std::ifstream in(dir_ / "index.tsv");
  if (!in) return;
  std::int64_t p, r;
  std::string flags;
  std::uint64_t offset;
  while (in >> p >> r >> flags >> offset) {
    if (flags == "hist")
      index_[p].has_histogram = true;
    else if (flags == "bits")
      index_[p].bitset_offsets[r] = offset;
  }
}

std::optional<curves::TraceDistribution> TraceCache::load(
    std::int64_t p, std::optional<std::int64_t> r) {
  auto it = index_.find(p);
  if (it == index_.end() || !it->second.has_histogram) return std::nullopt;
  if (r && !it->second.bitset_offsets.count(*r)) return std::nullopt;
  std::ifstream in(file_path(p), std::ios::binary);
  if (!in) return std::nullopt;
  std::uint32_t file_p = 0, rmax = 0;
  in.read(reinterpret_cast<char*>(&file_p), sizeof file_p);
  in.read(reinterpret_cast<char*>(&rmax), sizeof rmax);
  if (!in || file_p != static_cast<std::uint32_t>(p)) return std::nullopt;
  curves::TraceDistribution dist;
  dist.p = p;
  dist.rmax = rmax;
  dist.counts.resize(static_cast<std::size_t>(2 * rmax + 1));
  in.read(reinterpret_cast<char*>(dist.counts.data()),
          static_cast<std::streamsize>(dist.counts.size() * sizeof(std::int64_t)));
  if (!in) return std::nullopt;
  if (r) {
    std::size_t bits = static_cast<std::size_t>(p) * static_cast<std::size_t>(p);
    dist.membership_r = *r;
    dist.membership.resize((bits + 63) / 64);
    in.seekg(static_cast<std::streamoff>(it->second.bitset_offsets.at(*r)));
    in.read(reinterpret_cast<char*>(dist.membership.data()),
            static_cast<std::streamsize>(dist.membership.size() * sizeof(std::uint64_t)));
    if (!in) return std::nullopt;
  }
  return dist;
}

void TraceCache::persist(const curves::TraceDistribution& dist) {
  if (dir_.empty()) return;
  FileEntry& entry = index_[dist.p];
  fs::path path = file_path(dist.p);
  std::ofstream index_out(dir_ / "index.tsv", std::ios::app);
  if (!entry.has_histogram) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    auto p32 = static_cast<std::uint32_t>(dist.p);
    auto rmax32 = static_cast<std::uint32_t>(dist.rmax);
    out.write(reinterpret_cast<const char*>(&p32), sizeof p32);
    out.write(reinterpret_cast<const char*>(&rmax32), sizeof rmax32);
    out.write(reinterpret_cast<const char*>(dist.counts.data()),
              static_cast<std::streamsize>(dist.counts.size() * sizeof(std::int64_t)));
    entry.has_histogram = true;
    index_out << dist.p << '\t' << 0 << '\t' << "hist" << '\t' << 8 << '\n';
  }
  if (dist.membership_r && !entry.bitset_offsets.count(*dist.membership_r)) {
    std::uint64_t offset = fs::file_size(path);
    std::ofstream out(path, std::ios::binary | std::ios::app);
    out.write(reinterpret_cast<const char*>(dist.membership.data()),
              static_cast<std::streamsize>(dist.membership.size() * sizeof(std::uint64_t)));
    entry.bitset_offsets[*dist.membership_r] = offset;
    index_out << dist.p << '\t' << *dist.membership_r << '\t' << "bits" << '\t'
              << offset << '\n';
  }
}

curves::TraceDistribution TraceCache::get(std::int64_t p,
                                          std::optional<std::int64_t> membership_for) {
  std::int64_t rkey = membership_for ? *membership_for : std::numeric_limits<std::int64_t>::min();
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memory_.find({p, rkey});
    if (it != memory_.end()) return it->second;
    if (!dir_.empty()) {
      if (auto loaded = load(p, membership_for)) {
        memory_.emplace(std::make_pair(p, rkey), *loaded);
        return *loaded;
      }
    }
  }
  curves::TraceDistribution dist = curves::trace_distribution(p, membership_for);
  std::lock_guard<std::mutex> lock(mu_);
  if (!dir_.empty()) persist(dist);
  memory_.emplace(std::make_pair(p, rkey), dist);
  return dist;
}

void TraceCache::clear_memory() {
  std::lock_guard<std::mutex> lock(mu_);
  memory_.clear();
}

}  // namespace ltavg::cache
