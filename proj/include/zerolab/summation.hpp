#pragma once

#include <cstddef>
#include <span>

namespace zerolab {

// Recursive pairwise summation. The split points depend only on the length,
// so the result is reproducible for a fixed input order.
inline double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kBlock = 16;
  if (values.size() <= kBlock) {
    double acc = 0.0;
    for (double v : values) acc += v;
    return acc;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace zerolab
