#include "ganlab/rng.hpp"

namespace ganlab {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) : engine_(mix_seed(seed, stream)) {}

double Rng::uniform() { return uniform_(engine_); }

double Rng::normal() { return normal_(engine_); }

int Rng::uniform_int(int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(engine_);
}

Eigen::VectorXd Rng::normal_vector(int d) {
  Eigen::VectorXd v(d);
  for (int i = 0; i < d; ++i) v(i) = normal();
  return v;
}

Eigen::MatrixXd Rng::normal_matrix(int rows, int cols) {
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = normal();
  return m;
}

}  // namespace ganlab
