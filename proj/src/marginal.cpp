// Copyright 2026 The fh2lab developers
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

#include "fh2/marginal.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "fh2/bitslice.hpp"
#include "fh2/errors.hpp"
#include "fh2/parallel.hpp"
#include "fh2/pathsum.hpp"
#include "fh2/rng.hpp"

namespace fh2 {

namespace {

constexpr std::int64_t kBatchesPerChunk = 512;

void require_hadamard_classical(const CircuitModel& model) {
  if (model.family != Family::Hc1q && model.family != Family::Hcmq) {
    throw std::invalid_argument("marginal sampling is defined for hc1q/hcmq circuits");
  }
  model.validate();
}

void check_k(const CircuitModel& model, int k, int cap) {
  if (k < 1 || k > model.hadamard_width()) {
    throw std::invalid_argument("measured-qubit count must be in [1, Hadamard block]");
  }
  if (k > cap) {
    throw ResourceError("matching-set construction needs k <= " + std::to_string(cap) +
                        ", got " + std::to_string(k));
  }
}

// parity of z . alpha where alpha is a k-bit index
inline bool index_dot(std::uint64_t z, std::uint64_t alpha) {
  return std::popcount(z & alpha) & 1;
}

}  // namespace

std::vector<BitString> build_matching_set(const CircuitModel& model, const BitString& x, int k,
                                          int cap) {
  require_hadamard_classical(model);
  check_k(model, k, cap);
  const int n_h = model.hadamard_width();
  if (x.width() != n_h) throw std::invalid_argument("x must span the Hadamard block");
  const ReversibleCircuit core = model.core();

  const BitString image = core.apply(x.concat(BitString(model.fixed)));
  const BitString suffix = image.slice(k + 1, model.width);
  const BitString zeros_fixed(model.fixed);

  std::vector<BitString> set;
  for (std::uint64_t alpha = 0; alpha < (std::uint64_t{1} << k); ++alpha) {
    const BitString candidate = BitString::from_index(k, alpha).concat(suffix);
    const BitString preimage = core.apply_inverse(candidate);
    if (preimage.slice(n_h + 1, model.width) == zeros_fixed) {
      set.push_back(preimage.slice(1, n_h));
    }
  }
  return set;
}

double marginal_f(const CircuitModel& model, const BitString& x, const BitString& z, int cap) {
  require_hadamard_classical(model);
  const int k = z.width();
  check_k(model, k, cap);
  const ReversibleCircuit core = model.core();
  const BitString prefix_x = core.apply(x.concat(BitString(model.fixed))).slice(1, k);

  std::int64_t acc = 0;
  for (const BitString& y : build_matching_set(model, x, k, cap)) {
    const BitString prefix_y = core.apply(y.concat(BitString(model.fixed))).slice(1, k);
    const bool sign = z.dot(prefix_x) != z.dot(prefix_y);
    acc += sign ? -1 : 1;
  }
  return static_cast<double>(acc) / std::ldexp(1.0, k);
}

namespace {

// One entry's estimator, fused and lane-parallel. For each sampled x the sum
// over S is folded into the alpha loop: the preimage of alpha||suffix(x) has
// prefix alpha by construction, so the per-member sign is (-1)^{z.alpha} and
// only the fixed-block zero test needs the inverse evaluation.
std::int64_t estimate_entry_numerator(const CircuitModel& model, std::uint64_t z_index, int k,
                                      std::int64_t samples, std::uint64_t seed,
                                      std::uint64_t stream_index, int threads) {
  const int n_h = model.hadamard_width();
  const int width = model.width;
  const std::int64_t batches = (samples + 63) / 64;
  const std::int64_t chunks = (batches + kBatchesPerChunk - 1) / kBatchesPerChunk;
  const std::int64_t words_per_batch = n_h;
  BitString z_mask(width);
  for (int j = 1; j <= k; ++j) z_mask.set_bit(j, (z_index >> (k - j)) & 1);

  std::vector<std::int64_t> partial(static_cast<std::size_t>(chunks), 0);
  for_each_chunk(chunks, threads, [&](std::int64_t chunk) {
    Prng rng(seed, "marginal", stream_index);
    rng.seek_word(static_cast<std::uint64_t>(chunk * kBatchesPerChunk * words_per_batch));
    const std::int64_t first = chunk * kBatchesPerChunk;
    const std::int64_t last = std::min(first + kBatchesPerChunk, batches);
    LaneBlock x(width), pre(width);
    std::int64_t acc = 0;
    for (std::int64_t b = first; b < last; ++b) {
      fill_random(x, n_h, rng);
      apply_lanes(model.gates, x);
      const std::uint64_t live = lane_mask(samples - b * 64);
      const std::uint64_t sign_x = parity_word(x, z_mask);
      for (std::uint64_t alpha = 0; alpha < (std::uint64_t{1} << k); ++alpha) {
        for (int p = 1; p <= k; ++p) {
          pre.col(p) = ((alpha >> (k - p)) & 1) ? ~std::uint64_t{0} : 0;
        }
        for (int p = k + 1; p <= width; ++p) pre.col(p) = x.col(p);
        apply_lanes_inverse(model.gates, pre);
        std::uint64_t ok = live;
        for (int p = n_h + 1; p <= width; ++p) ok &= ~pre.col(p);
        const std::uint64_t sign =
            sign_x ^ (index_dot(z_index, alpha) ? ~std::uint64_t{0} : 0);
        acc += std::popcount(ok & ~sign) - std::popcount(ok & sign);
      }
    }
    partial[static_cast<std::size_t>(chunk)] = acc;
  });

  std::int64_t total = 0;
  for (std::int64_t p : partial) total += p;
  return total;
}

CircuitModel permute_hadamard_block(const CircuitModel& model, const std::vector<int>& positions) {
  const int n_h = model.hadamard_width();
  const int k = static_cast<int>(positions.size());
  std::vector<int> map(static_cast<std::size_t>(model.width) + 1, 0);
  for (int i = 0; i < k; ++i) {
    const int p = positions[static_cast<std::size_t>(i)];
    if (p < 1 || p > n_h) {
      throw std::invalid_argument("measured positions must lie in the Hadamard block");
    }
    if (map[static_cast<std::size_t>(p)] != 0) {
      throw std::invalid_argument("measured positions must be distinct");
    }
    map[static_cast<std::size_t>(p)] = i + 1;
  }
  int next = k;
  for (int p = 1; p <= n_h; ++p) {
    if (map[static_cast<std::size_t>(p)] == 0) map[static_cast<std::size_t>(p)] = ++next;
  }
  for (int p = n_h + 1; p <= model.width; ++p) map[static_cast<std::size_t>(p)] = p;

  CircuitModel out = model;
  for (Gate& g : out.gates) {
    for (int& q : g.qubits) q = map[static_cast<std::size_t>(q)];
  }
  return out;
}

}  // namespace

MarginalEstimate estimate_marginals(const CircuitModel& model, const std::vector<int>& positions,
                                    int r, std::uint64_t seed, const MarginalOptions& options) {
  require_hadamard_classical(model);
  if (positions.empty()) throw std::invalid_argument("need at least one measured position");
  if (r < 1) throw std::invalid_argument("r must be a positive integer");
  if (!(options.delta > 0.0 && options.delta < 1.0)) {
    throw std::invalid_argument("delta must be in (0,1)");
  }
  const int k = static_cast<int>(positions.size());
  const CircuitModel permuted = permute_hadamard_block(model, positions);
  check_k(permuted, k, options.cap);

  const double epsilon = 1.0 / (5.0 * std::ldexp(1.0, 2 * k) * r);
  const double per_entry_delta = options.delta / std::ldexp(1.0, k);
  const ChernoffPlan plan = chernoff_plan(epsilon, per_entry_delta);
  if (plan.samples > (options.budget >> k)) {
    const double work = static_cast<double>(plan.samples) * std::ldexp(1.0, k);
    throw ResourceError("marginal estimation needs a budget of " +
                        std::to_string(static_cast<long long>(std::ceil(work))) +
                        " matching-set evaluations per entry, configured " +
                        std::to_string(options.budget));
  }

  MarginalEstimate out;
  out.positions = positions;
  out.k = k;
  out.epsilon = epsilon;
  out.r = r;
  out.samples = plan.samples;
  out.delta = options.delta;
  out.seed = seed;
  out.table.resize(std::size_t{1} << k);
  const double denom = static_cast<double>(plan.samples) * std::ldexp(1.0, k);
  for (std::uint64_t z = 0; z < out.table.size(); ++z) {
    const std::int64_t numerator =
        estimate_entry_numerator(permuted, z, k, plan.samples, seed, z, options.threads);
    out.table[z] = static_cast<double>(numerator) / denom;
  }
  return out;
}

MarginalEstimate estimate_marginals(const CircuitModel& model, int k, int r, std::uint64_t seed,
                                    const MarginalOptions& options) {
  std::vector<int> positions(static_cast<std::size_t>(std::max(k, 0)));
  for (int i = 0; i < k; ++i) positions[static_cast<std::size_t>(i)] = i + 1;
  return estimate_marginals(model, positions, r, seed, options);
}

NormalizedMarginal normalize(const MarginalEstimate& estimate) {
  long double total = 0.0L;
  for (double p : estimate.table) total += std::fabs(p);
  if (total <= 0.0L) {
    throw std::runtime_error("all-zero marginal table; estimation failed");
  }
  NormalizedMarginal out;
  out.k = estimate.k;
  out.table.resize(estimate.table.size());
  for (std::size_t i = 0; i < out.table.size(); ++i) {
    out.table[i] = static_cast<double>(std::fabs(estimate.table[i]) / total);
  }
  return out;
}

BitString pick_outcome(const NormalizedMarginal& q, long double value) {
  long double cum = 0.0L;
  const std::uint64_t last = q.table.size() - 1;
  for (std::uint64_t z = 0; z <= last; ++z) {
    cum += q.table[z];
    if (value < cum) return BitString::from_index(q.k, z);
  }
  return BitString::from_index(q.k, last);  // truncation edge
}

BitString sample_from(const NormalizedMarginal& q, int precision_bits, std::uint64_t seed,
                      std::uint64_t index) {
  if (precision_bits < 1) throw std::invalid_argument("need at least one bit of precision");
  Prng rng(seed, "sample", index);
  long double value = 0.0L;
  long double scale = 0x1.0p-64L;
  int remaining = precision_bits;
  while (remaining > 0) {
    std::uint64_t word = rng.next_u64();
    if (remaining < 64) word &= ~std::uint64_t{0} << (64 - remaining);
    value += scale * static_cast<long double>(word);
    scale *= 0x1.0p-64L;
    remaining -= 64;
  }
  return pick_outcome(q, value);
}

std::vector<BitString> sample_marginal(const CircuitModel& model, int k, int r,
                                       std::int64_t n_samples, std::uint64_t seed,
                                       const MarginalOptions& options, int precision_bits) {
  const NormalizedMarginal q = normalize(estimate_marginals(model, k, r, seed, options));
  std::vector<BitString> out;
  out.reserve(static_cast<std::size_t>(n_samples));
  for (std::int64_t i = 0; i < n_samples; ++i) {
    out.push_back(sample_from(q, precision_bits, seed, static_cast<std::uint64_t>(i)));
  }
  return out;
}

}  // namespace fh2
