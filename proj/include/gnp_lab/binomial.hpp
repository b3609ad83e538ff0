// Copyright 2026 The gnp_lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>

#include "gnp_lab/rng.hpp"

namespace gnp_lab {

/// Bin(trials, success_prob).
struct BinomialSpec {
  std::uint64_t trials = 0;
  double success_prob = 0.0;

  /// Throws std::invalid_argument unless 0 <= success_prob <= 1.
  void validate() const;
};

/// Below this mean the sampler counts successes by geometric skipping;
/// at or above it, it inverts the pmf outward from the mode.
inline constexpr double kSkipSamplingMeanThreshold = 10.0;

/// ln[C(N,k) p^k (1-p)^(N-k)], computed with Loader's saddle-point
/// expansion (Stirling remainders plus deviance terms), so the result keeps
/// ~1e-13 relative accuracy on the pmf even for N around 1e9, where a plain
/// lgamma difference loses six digits to cancellation.
///
/// Returns -infinity for impossible outcomes (k < 0, k > N, or k away from
/// the point mass when p is 0 or 1).
double log_binom_pmf(std::int64_t k, const BinomialSpec& spec);

/// Exact Bin(N,p) draw. Expected cost O(1 + min(Np, sqrt(Np(1-p)))).
std::uint64_t sample_binomial(RngStream& stream, const BinomialSpec& spec);

/// Bin(N, p) sampler for a fixed p and varying N; caches log(1 - p) for the
/// skip path. Draws are identical to sample_binomial for the same stream.
class BinomialSampler {
 public:
  explicit BinomialSampler(double success_prob);

  std::uint64_t operator()(RngStream& stream, std::uint64_t trials) const;

  double success_prob() const { return p_; }

 private:
  double p_;
  double small_p_;     // min(p, 1 - p)
  double log_fail_;    // log(1 - small_p_)
  bool complemented_;  // p > 0.5
};

namespace detail {

/// ln(n!) - ln(sqrt(2 pi n) (n/e)^n).
double stirling_error(double n);

/// x ln(x/np) + np - x, evaluated without cancellation.
double deviance_term(double x, double np);

}  // namespace detail

}  // namespace gnp_lab
