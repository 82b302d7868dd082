#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <random>

namespace ganlab {

/// Seedable RNG with independent streams: (seed, stream) pairs are mixed
/// into the generator state, so replicate k of a Monte-Carlo run draws from
/// stream (seed, k) and is reproducible regardless of scheduling order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  double uniform();                       // [0,1)
  double normal();                        // N(0,1)
  int uniform_int(int lo, int hi);        // inclusive bounds
  Eigen::VectorXd normal_vector(int d);
  Eigen::MatrixXd normal_matrix(int rows, int cols);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// splitmix64 finalizer used for seed/stream mixing.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace ganlab
