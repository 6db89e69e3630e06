#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace algperm {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

/// A deterministic random stream keyed by (master_seed, path). Two streams
/// with equal keys produce identical sequences, independent of when or on
/// which thread they are created. Substreams extend the path.
///
/// A stream is single-owner; share keys, not streams, across threads.
class RngStream {
 public:
  using engine_type = std::mt19937_64;

  explicit RngStream(std::uint64_t master_seed, std::vector<std::uint64_t> path = {})
      : master_seed_(master_seed), path_(std::move(path)), engine_(derive_key()) {}

  std::uint64_t master_seed() const { return master_seed_; }
  const std::vector<std::uint64_t>& path() const { return path_; }

  RngStream substream(std::uint64_t index) const {
    std::vector<std::uint64_t> child = path_;
    child.push_back(index);
    return RngStream(master_seed_, std::move(child));
  }

  RngStream substream(std::initializer_list<std::uint64_t> indices) const {
    std::vector<std::uint64_t> child = path_;
    child.insert(child.end(), indices);
    return RngStream(master_seed_, std::move(child));
  }

  engine_type& engine() { return engine_; }

  double normal(double stddev) {
    return std::normal_distribution<double>(0.0, stddev)(engine_);
  }

  double uniform01() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
  }

 private:
  std::uint64_t derive_key() const {
    std::uint64_t key = detail::splitmix64(master_seed_);
    for (std::uint64_t p : path_) key = detail::splitmix64(key ^ detail::splitmix64(p + 1));
    return detail::splitmix64(key ^ path_.size());
  }

  std::uint64_t master_seed_;
  std::vector<std::uint64_t> path_;
  engine_type engine_;
};

}  // namespace algperm
