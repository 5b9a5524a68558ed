#include "rpia/partition.hpp"

#include <algorithm>
#include <cmath>

#include "rpia/errors.hpp"

namespace rpia {

BlockPartition uniform_partition(Index count, int tau) {
  if (tau <= 0) throw ArgumentError("block size must be positive");
  if (count <= 0) throw ArgumentError("universe must be nonempty");
  BlockPartition part;
  part.universe_size = count;
  part.nominal_size = tau;
  for (Index start = 0; start < count; start += tau) {
    const Index end = std::min<Index>(start + tau, count);
    std::vector<Index> block(end - start);
    for (Index k = start; k < end; ++k) block[k - start] = k;
    part.blocks.push_back(std::move(block));
  }
  return part;
}

Vector block_probabilities(const CollocationMatrix& a,
                           const BlockPartition& part) {
  if (part.universe_size != a.cols()) {
    throw ArgumentError("partition universe must match the column count");
  }
  Vector prob(part.block_count());
  for (Index b = 0; b < part.block_count(); ++b) {
    double mass = 0.0;
    for (Index i : part.blocks[b]) mass += a.col_sq_norm(i);
    prob[b] = mass / a.total_sq_norm();
  }
  return prob;
}

BlockSampler::BlockSampler(BlockPartition part, Vector probabilities,
                           std::uint64_t seed)
    : part_(std::move(part)),
      prob_(std::move(probabilities)),
      seed_(seed),
      rng_(seed) {
  if (prob_.size() != part_.block_count()) {
    throw ArgumentError("one probability per block required");
  }
  cumulative_.resize(prob_.size());
  double acc = 0.0;
  for (Index b = 0; b < prob_.size(); ++b) {
    if (prob_[b] < 0.0) throw ArgumentError("negative block probability");
    if (prob_[b] == 0.0) {
      zero_blocks_.push_back(static_cast<int>(b));
    } else {
      last_positive_ = static_cast<int>(b);
    }
    acc += prob_[b];
    cumulative_[b] = acc;
  }
  if (acc <= 0.0) throw ArgumentError("all block probabilities are zero");
}

BlockSampler BlockSampler::from_collocation(const CollocationMatrix& a,
                                            BlockPartition part,
                                            std::uint64_t seed) {
  Vector prob = block_probabilities(a, part);
  return BlockSampler(std::move(part), std::move(prob), seed);
}

int BlockSampler::sample() {
  // 53-bit mantissa draw in [0,1); mt19937_64 output is fully specified by
  // the standard, which keeps sequences identical across platforms.
  const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  const double target = u * cumulative_.back();
  const auto it =
      std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
  int b = static_cast<int>(it - cumulative_.begin());
  // Zero-probability blocks own empty intervals and are never hit; the
  // clamp covers the u -> 1 rounding edge.
  if (b > last_positive_) b = last_positive_;
  return b;
}

}  // namespace rpia
