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

#include "fh2/pathsum.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "fh2/bitslice.hpp"
#include "fh2/errors.hpp"
#include "fh2/parallel.hpp"
#include "fh2/rng.hpp"

namespace fh2 {

namespace {

constexpr std::int64_t kBatchesPerChunk = 1024;  // 65536 samples per work unit

std::int64_t signed_popcount(std::uint64_t live, std::uint64_t sign) {
  return std::popcount(live & ~sign) - std::popcount(live & sign);
}

/// Pairwise (tree-order) sum; bounds float error for long term lists.
std::complex<double> pairwise_sum(std::vector<std::complex<double>>& terms) {
  if (terms.empty()) return 0.0;
  std::size_t n = terms.size();
  while (n > 1) {
    const std::size_t half = n / 2;
    for (std::size_t i = 0; i < half; ++i) terms[i] += terms[n - 1 - i];
    n -= half;
  }
  return terms[0];
}

void check_exact_cap(int width, int cap) {
  if (width > cap) {
    throw ResourceError("exact path sum needs width <= " + std::to_string(cap) + ", got " +
                        std::to_string(width));
  }
}

void require_family(const CircuitModel& model, Family family) {
  if (model.family != family) {
    throw std::invalid_argument(std::string("expected a ") + std::string(family_name(family)) +
                                " circuit, got " + std::string(family_name(model.family)));
  }
  model.validate();
}

// Shared hc1q/hcmq core. The outcome z = (s, t) splits at the Hadamard block
// boundary; the amplitude is 2^{-(N-m)} sum_x (-1)^{prefix(C(x 0^m)) . s} [suffix = t].
double hadamard_classical_exact(const CircuitModel& model, const BitString& z, int cap) {
  if (z.width() != model.width) throw std::invalid_argument("outcome width mismatch");
  check_exact_cap(model.width, cap);
  const int n_h = model.hadamard_width();
  const BitString s = z.slice(1, n_h);
  const BitString t = z.slice(n_h + 1, model.width);

  const std::uint64_t total = std::uint64_t{1} << n_h;
  LaneBlock lanes(model.width);
  std::int64_t acc = 0;
  for (std::uint64_t base = 0; base < total; base += 64) {
    fill_counter(lanes, n_h, base);
    apply_lanes(model.gates, lanes);
    const std::uint64_t sign = parity_word(lanes, s);
    const std::uint64_t ok =
        match_word(lanes, n_h + 1, model.width, t) & lane_mask(static_cast<std::int64_t>(total - base));
    acc += signed_popcount(ok, sign);
  }
  const double amp = static_cast<double>(acc) / static_cast<double>(total);
  return amp * amp;
}

struct HadamardClassicalEstimator {
  const CircuitModel& model;
  BitString s, t;
  int n_h;

  HadamardClassicalEstimator(const CircuitModel& m, const BitString& z) : model(m) {
    if (z.width() != m.width) throw std::invalid_argument("outcome width mismatch");
    n_h = m.hadamard_width();
    s = z.slice(1, n_h);
    t = z.slice(n_h + 1, m.width);
  }

  // per-batch words drawn from the stream: n_h for the x lanes, n_h for y
  std::int64_t words_per_batch() const { return 2 * static_cast<std::int64_t>(n_h); }

  std::int64_t run_batch(Prng& rng, std::uint64_t live) const {
    LaneBlock x(model.width), y(model.width);
    fill_random(x, n_h, rng);
    fill_random(y, n_h, rng);
    apply_lanes(model.gates, x);
    apply_lanes(model.gates, y);
    const std::uint64_t sign = parity_word(x, s) ^ parity_word(y, s);
    const std::uint64_t ok = match_word(x, n_h + 1, model.width, t) &
                             match_word(y, n_h + 1, model.width, t) & live;
    return signed_popcount(ok, sign);
  }
};

// d(x) for diagonal gate lists without RZ reduces to a sign; RZ contributes
// per-lane angles handled separately.
std::uint64_t diagonal_sign_word(const std::vector<Gate>& gates, const LaneBlock& lanes) {
  std::uint64_t sign = 0;
  for (const Gate& g : gates) {
    switch (g.kind) {
      case GateKind::Z:
        sign ^= lanes.col(g.qubits[0]);
        break;
      case GateKind::Cz:
        sign ^= lanes.col(g.qubits[0]) & lanes.col(g.qubits[1]);
        break;
      case GateKind::Ccz:
        sign ^= lanes.col(g.qubits[0]) & lanes.col(g.qubits[1]) & lanes.col(g.qubits[2]);
        break;
      default:
        break;
    }
  }
  return sign;
}

bool has_rz(const std::vector<Gate>& gates) {
  for (const Gate& g : gates) {
    if (g.kind == GateKind::Rz) return true;
  }
  return false;
}

// per-lane RZ phase angles: sum of theta * (1 - 2 x_i) over RZ gates
void rz_angles(const std::vector<Gate>& gates, const LaneBlock& lanes, double* angles) {
  for (int l = 0; l < 64; ++l) angles[l] = 0.0;
  for (const Gate& g : gates) {
    if (g.kind != GateKind::Rz) continue;
    const std::uint64_t c = lanes.col(g.qubits[0]);
    for (int l = 0; l < 64; ++l) angles[l] += ((c >> l) & 1) ? -g.angle : g.angle;
  }
}

}  // namespace

ChernoffPlan chernoff_plan(double epsilon, double delta) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  // delta in [1, 2) makes the tail bound vacuous but T is still well defined;
  // values at the boundary (delta = 2 e^{-1/2} with epsilon = 1 giving T = 1)
  // stay accepted
  if (!(delta > 0.0 && delta < 2.0)) throw std::invalid_argument("delta must be in (0,2)");
  const double raw = 2.0 * std::log(2.0 / delta) / (epsilon * epsilon);
  if (!(raw < 4.0e18)) throw ResourceError("required sample count overflows");
  const auto satisfied = [&](std::int64_t t) {
    return 2.0 * std::exp(-0.5 * static_cast<double>(t) * epsilon * epsilon) <= delta;
  };
  std::int64_t t = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(raw)));
  while (!satisfied(t)) ++t;
  while (t > 1 && satisfied(t - 1)) --t;
  return {epsilon, delta, t};
}

double hc1q_prob_exact(const CircuitModel& model, const BitString& z, const ExactOptions& options) {
  require_family(model, Family::Hc1q);
  return hadamard_classical_exact(model, z, options.width_cap);
}

double hcmq_prob_exact(const CircuitModel& model, const BitString& z, const ExactOptions& options) {
  require_family(model, Family::Hcmq);
  return hadamard_classical_exact(model, z, options.width_cap);
}

double iqp_prob_exact(const CircuitModel& model, const BitString& z, const ExactOptions& options) {
  require_family(model, Family::Iqp);
  if (z.width() != model.width) throw std::invalid_argument("outcome width mismatch");
  check_exact_cap(model.width, options.width_cap);
  const int n = model.width;
  const std::uint64_t total = std::uint64_t{1} << n;
  LaneBlock lanes(n);

  if (!has_rz(model.gates)) {
    std::int64_t acc = 0;
    for (std::uint64_t base = 0; base < total; base += 64) {
      fill_counter(lanes, n, base);
      const std::uint64_t sign = diagonal_sign_word(model.gates, lanes) ^ parity_word(lanes, z);
      acc += signed_popcount(lane_mask(static_cast<std::int64_t>(total - base)), sign);
    }
    const double amp = static_cast<double>(acc) / static_cast<double>(total);
    return amp * amp;
  }

  std::vector<std::complex<double>> batch_sums;
  batch_sums.reserve((total + 63) / 64);
  double angles[64];
  for (std::uint64_t base = 0; base < total; base += 64) {
    fill_counter(lanes, n, base);
    const std::uint64_t sign = diagonal_sign_word(model.gates, lanes) ^ parity_word(lanes, z);
    rz_angles(model.gates, lanes, angles);
    const std::uint64_t live = lane_mask(static_cast<std::int64_t>(total - base));
    std::complex<double> sum = 0.0;
    for (int l = 0; l < 64; ++l) {
      if (!((live >> l) & 1)) continue;
      const double mag = ((sign >> l) & 1) ? -1.0 : 1.0;
      sum += mag * std::polar(1.0, angles[l]);
    }
    batch_sums.push_back(sum);
  }
  const std::complex<double> amp = pairwise_sum(batch_sums) / static_cast<double>(total);
  return std::norm(amp);
}

double prob_exact(const CircuitModel& model, const BitString& z, const ExactOptions& options) {
  switch (model.family) {
    case Family::Hc1q: return hc1q_prob_exact(model, z, options);
    case Family::Hcmq: return hcmq_prob_exact(model, z, options);
    case Family::Iqp: return iqp_prob_exact(model, z, options);
    default:
      throw std::invalid_argument("exact path sum is defined for hc1q/hcmq/iqp circuits");
  }
}

ProbEstimate hcmq_prob_estimate(const CircuitModel& model, const BitString& z,
                                const ChernoffPlan& plan, std::uint64_t seed,
                                const EstimateOptions& options) {
  if (model.family != Family::Hc1q && model.family != Family::Hcmq) {
    throw std::invalid_argument("expected an hc1q/hcmq circuit");
  }
  model.validate();
  if (plan.samples < 1) throw std::invalid_argument("plan needs at least one sample");

  const HadamardClassicalEstimator est(model, z);
  const std::int64_t batches = (plan.samples + 63) / 64;
  const std::int64_t chunks = (batches + kBatchesPerChunk - 1) / kBatchesPerChunk;
  std::vector<std::int64_t> partial(static_cast<std::size_t>(chunks), 0);

  for_each_chunk(chunks, options.threads, [&](std::int64_t chunk) {
    Prng rng(seed, "estimate", options.stream_index);
    rng.seek_word(static_cast<std::uint64_t>(chunk * kBatchesPerChunk * est.words_per_batch()));
    const std::int64_t first = chunk * kBatchesPerChunk;
    const std::int64_t last = std::min(first + kBatchesPerChunk, batches);
    std::int64_t acc = 0;
    for (std::int64_t b = first; b < last; ++b) {
      acc += est.run_batch(rng, lane_mask(plan.samples - b * 64));
    }
    partial[static_cast<std::size_t>(chunk)] = acc;
  });

  std::int64_t total = 0;
  for (std::int64_t p : partial) total += p;
  return {static_cast<double>(total) / static_cast<double>(plan.samples), plan.epsilon,
          1.0 - plan.delta, plan.samples, seed};
}

ProbEstimate hc1q_prob_estimate(const CircuitModel& model, const BitString& z,
                                const ChernoffPlan& plan, std::uint64_t seed,
                                const EstimateOptions& options) {
  require_family(model, Family::Hc1q);
  return hcmq_prob_estimate(model, z, plan, seed, options);
}

ProbEstimate iqp_prob_estimate(const CircuitModel& model, const BitString& z,
                               const ChernoffPlan& plan, std::uint64_t seed,
                               const EstimateOptions& options) {
  require_family(model, Family::Iqp);
  if (z.width() != model.width) throw std::invalid_argument("outcome width mismatch");
  if (plan.samples < 1) throw std::invalid_argument("plan needs at least one sample");

  const int n = model.width;
  const std::int64_t samples = 2 * plan.samples;  // covers Re and Im jointly
  const std::int64_t batches = (samples + 63) / 64;
  const std::int64_t chunks = (batches + kBatchesPerChunk - 1) / kBatchesPerChunk;
  const std::int64_t words_per_batch = 2 * n;
  const bool complex_terms = has_rz(model.gates);

  std::vector<std::int64_t> partial_int;
  std::vector<std::complex<double>> partial_cplx;
  if (complex_terms) {
    partial_cplx.assign(static_cast<std::size_t>(chunks), 0.0);
  } else {
    partial_int.assign(static_cast<std::size_t>(chunks), 0);
  }

  for_each_chunk(chunks, options.threads, [&](std::int64_t chunk) {
    Prng rng(seed, "estimate", options.stream_index);
    rng.seek_word(static_cast<std::uint64_t>(chunk * kBatchesPerChunk * words_per_batch));
    const std::int64_t first = chunk * kBatchesPerChunk;
    const std::int64_t last = std::min(first + kBatchesPerChunk, batches);
    LaneBlock x(n), y(n);
    std::int64_t acc_int = 0;
    std::complex<double> acc_cplx = 0.0;
    double ax[64], ay[64];
    for (std::int64_t b = first; b < last; ++b) {
      fill_random(x, n, rng);
      fill_random(y, n, rng);
      const std::uint64_t live = lane_mask(samples - b * 64);
      const std::uint64_t sign = parity_word(x, z) ^ parity_word(y, z) ^
                                 diagonal_sign_word(model.gates, x) ^
                                 diagonal_sign_word(model.gates, y);
      if (!complex_terms) {
        acc_int += signed_popcount(live, sign);
        continue;
      }
      rz_angles(model.gates, x, ax);
      rz_angles(model.gates, y, ay);
      for (int l = 0; l < 64; ++l) {
        if (!((live >> l) & 1)) continue;
        const double mag = ((sign >> l) & 1) ? -1.0 : 1.0;
        acc_cplx += mag * std::polar(1.0, ax[l] - ay[l]);  // d(x) * conj(d(y))
      }
    }
    if (complex_terms) {
      partial_cplx[static_cast<std::size_t>(chunk)] = acc_cplx;
    } else {
      partial_int[static_cast<std::size_t>(chunk)] = acc_int;
    }
  });

  double value;
  if (complex_terms) {
    const std::complex<double> total = pairwise_sum(partial_cplx);
    value = total.real() / static_cast<double>(samples);
  } else {
    std::int64_t total = 0;
    for (std::int64_t p : partial_int) total += p;
    value = static_cast<double>(total) / static_cast<double>(samples);
  }
  return {value, plan.epsilon, 1.0 - plan.delta, samples, seed};
}

ProbEstimate prob_estimate(const CircuitModel& model, const BitString& z, const ChernoffPlan& plan,
                           std::uint64_t seed, const EstimateOptions& options) {
  switch (model.family) {
    case Family::Hc1q: return hc1q_prob_estimate(model, z, plan, seed, options);
    case Family::Hcmq: return hcmq_prob_estimate(model, z, plan, seed, options);
    case Family::Iqp: return iqp_prob_estimate(model, z, plan, seed, options);
    default:
      throw std::invalid_argument("Monte-Carlo estimation is defined for hc1q/hcmq/iqp circuits");
  }
}

}  // namespace fh2
