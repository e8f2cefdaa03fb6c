#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "lagint/numerics.hpp"
#include "lagint/stats.hpp"

namespace lagint::testing {

inline constexpr std::uint64_t kSeed = 20240917;

/// n scalar draws from one stream.
inline EmpiricalSample draw_scalars(std::size_t n, std::uint64_t stream,
                                    const std::function<double(RngStream&)>& draw) {
  RngStream rng(kSeed, stream);
  std::vector<double> v(n);
  for (auto& x : v) x = draw(rng);
  return EmpiricalSample(std::move(v));
}

/// Sample mean within 4 standard errors of `mean`.
inline bool mean_within_4_sigma(const EmpiricalSample& s, double mean, double var) {
  return moment_compare(s, mean, var).pass;
}

}  // namespace lagint::testing
