#pragma once

#include <cstdint>
#include <random>

namespace lqg {

/// Identifies one reproducible random stream. Parallel replicas take distinct stream_ids.
struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  RngStream substream(std::uint64_t k) const { return {seed, stream_id * 0x9E3779B97F4A7C15ULL + k + 1}; }
};

/// Engine plus the few variates the samplers need. Bitwise reproducible for a given RngStream
/// on a given standard library.
class Rng {
 public:
  explicit Rng(RngStream s) : engine_(seed_engine(s)) {}

  double normal() { return normal_(engine_); }
  /// Uniform on the open interval (0,1).
  double uniform() {
    double u;
    do {
      u = uniform_(engine_);
    } while (u <= 0.0);
    return u;
  }
  /// Gamma(shape, scale 1) variate (Marsaglia-Tsang squeeze in libstdc++).
  double gamma(double shape) { return std::gamma_distribution<double>(shape, 1.0)(engine_); }
  std::uint64_t poisson(double mean) {
    return mean <= 0 ? 0 : std::poisson_distribution<std::uint64_t>(mean)(engine_);
  }
  std::uint64_t index(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_); }

  std::mt19937_64& engine() { return engine_; }

 private:
  static std::mt19937_64 seed_engine(RngStream s) {
    std::seed_seq seq{static_cast<std::uint32_t>(s.seed), static_cast<std::uint32_t>(s.seed >> 32),
                      static_cast<std::uint32_t>(s.stream_id),
                      static_cast<std::uint32_t>(s.stream_id >> 32)};
    return std::mt19937_64(seq);
  }

  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace lqg
