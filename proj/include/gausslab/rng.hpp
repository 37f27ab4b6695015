#pragma once

#include "gausslab/linalg.hpp"

#include <cstdint>
#include <random>
#include <stdexcept>

namespace gausslab {

// splitmix64 finalizer; used both as a seed mixer and a stream splitter.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream_id) {
  return splitmix64(splitmix64(seed) ^ (0x9e3779b97f4a7c15ULL * (stream_id + 1)));
}

// Standard normal stream.  Generator algorithm (documented so results are
// reproducible from (seed, stream_id) alone): mt19937_64 seeded with
// mix_seed(seed, stream_id); uniforms are (x >> 11) * 2^-53 mapped to (0,1];
// normals come from Box-Muller pairs, consumed cos-part first.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed, std::uint64_t stream_id = 0)
      : engine_(mix_seed(seed, stream_id)) {}

  double uniform01() {
    // in (0,1]: never returns 0, safe for log()
    return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
  }

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * 3.141592653589793238462643383279502884 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  Vec vector(int n) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = next();
    return v;
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// mu_{R^n, h}: centered Gaussian with covariance h * I.
struct GaussianMeasureSpec {
  int dim;
  double variance;  // h > 0

  GaussianMeasureSpec(int dim_, double h) : dim(dim_), variance(h) {
    if (dim < 1) throw std::invalid_argument("dim must be >= 1");
    if (!(h > 0.0)) throw std::invalid_argument("variance must be positive");
  }
};

// Deterministic i.i.d. N(0, h I) draws.  Rows are filled in shards of
// kShardRows rows; shard s uses stream_id s, rows within a shard are filled
// row-major.  Merging shards in index order reproduces the serial result.
struct SampleBatch {
  static constexpr int kShardRows = 8192;

  GaussianMeasureSpec spec;
  std::uint64_t seed;
  int count;
  Mat samples;  // count x dim
};

inline SampleBatch gaussian_sample(const GaussianMeasureSpec& spec,
                                   std::uint64_t seed, int count) {
  if (count < 1) throw std::invalid_argument("count must be >= 1");
  SampleBatch batch{spec, seed, count, Mat(count, spec.dim)};
  double scale = std::sqrt(spec.variance);
  for (int shard = 0; shard * SampleBatch::kShardRows < count; ++shard) {
    NormalStream stream(seed, static_cast<std::uint64_t>(shard));
    int begin = shard * SampleBatch::kShardRows;
    int end = std::min(count, begin + SampleBatch::kShardRows);
    for (int i = begin; i < end; ++i)
      for (int j = 0; j < spec.dim; ++j)
        batch.samples(i, j) = scale * stream.next();
  }
  return batch;
}

// Monte Carlo estimate with standard error s / sqrt(n).
struct McEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
};

inline McEstimate mc_mean(const Vec& values) {
  int n = static_cast<int>(values.size());
  double mean = values.mean();
  double ss = (values.array() - mean).square().sum();
  double sd = n > 1 ? std::sqrt(ss / (n - 1)) : 0.0;
  return {mean, sd / std::sqrt(static_cast<double>(n))};
}

}  // namespace gausslab
