#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "rpia/bspline.hpp"
#include "rpia/types.hpp"

namespace rpia {

// Disjoint index blocks covering {0, ..., universe_size-1}. All blocks
// except possibly the last hold exactly nominal_size indices.
struct BlockPartition {
  std::vector<std::vector<Index>> blocks;
  Index universe_size = 0;
  int nominal_size = 0;

  Index block_count() const { return static_cast<Index>(blocks.size()); }
};

// Contiguous blocks {0..tau-1}, {tau..2tau-1}, ..., trailing remainder.
BlockPartition uniform_partition(Index count, int tau);

// Probability of block b: squared Frobenius norm of the columns indexed by
// b over the squared Frobenius norm of the whole matrix.
Vector block_probabilities(const CollocationMatrix& a,
                           const BlockPartition& part);

// Categorical sampler over the blocks of a partition. The generator is
// std::mt19937_64 (seeded, bit-reproducible across platforms); draws map
// the raw 64-bit output to [0,1) with 53-bit resolution and invert the
// cumulative distribution.
class BlockSampler {
 public:
  BlockSampler(BlockPartition part, Vector probabilities, std::uint64_t seed);

  static BlockSampler from_collocation(const CollocationMatrix& a,
                                       BlockPartition part,
                                       std::uint64_t seed);

  // Returns a block index with the stored probability; advances the rng.
  int sample();

  const BlockPartition& partition() const { return part_; }
  const Vector& probabilities() const { return prob_; }
  std::uint64_t seed() const { return seed_; }

  // Blocks whose columns all have zero norm; they are never sampled.
  const std::vector<int>& zero_probability_blocks() const {
    return zero_blocks_;
  }

 private:
  BlockPartition part_;
  Vector prob_;
  std::vector<double> cumulative_;
  std::vector<int> zero_blocks_;
  int last_positive_ = 0;
  std::uint64_t seed_ = 0;
  std::mt19937_64 rng_;
};

}  // namespace rpia
