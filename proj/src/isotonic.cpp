#include "madcdf/isotonic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "madcdf/error.hpp"

namespace madcdf {

std::vector<double> bounded_isotonic(const IsotonicProblem& p) {
  if (p.w.size() != p.y.size()) throw Error(ErrorCode::BadWeights, "weights and targets differ in length");
  if (!(p.lo <= p.hi)) throw Error(ErrorCode::BoundsInverted, "lower bound exceeds upper bound");
  for (std::size_t i = 0; i < p.w.size(); ++i) {
    if (!(p.w[i] > 0.0) || !std::isfinite(p.w[i])) {
      throw Error(ErrorCode::BadWeights, "weight at index " + std::to_string(i) + " is not positive");
    }
    if (!std::isfinite(p.y[i])) throw Error(ErrorCode::BadWeights, "target at index " + std::to_string(i) + " is not finite");
  }

  struct Block {
    double mean;
    double weight;
    std::size_t count;
  };
  std::vector<Block> blocks;
  blocks.reserve(p.y.size());
  for (std::size_t i = 0; i < p.y.size(); ++i) {
    blocks.push_back({p.y[i], p.w[i], 1});
    while (blocks.size() > 1 && blocks[blocks.size() - 2].mean > blocks.back().mean) {
      const Block top = blocks.back();
      blocks.pop_back();
      Block& prev = blocks.back();
      const double weight = prev.weight + top.weight;
      prev.mean = (prev.weight * prev.mean + top.weight * top.mean) / weight;
      prev.weight = weight;
      prev.count += top.count;
    }
  }

  std::vector<double> out;
  out.reserve(p.y.size());
  for (const Block& b : blocks) out.insert(out.end(), b.count, std::clamp(b.mean, p.lo, p.hi));
  return out;
}

std::vector<double> bounded_isotonic(std::span<const double> y, double lo, double hi) {
  return bounded_isotonic(IsotonicProblem{{y.begin(), y.end()}, std::vector<double>(y.size(), 1.0), lo, hi});
}

}  // namespace madcdf
