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

#include "fh2/pddmax.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "fh2/errors.hpp"
#include "fh2/rng.hpp"
#include "fh2/statevector.hpp"

namespace fh2 {

namespace {

bool classically_estimable(const CircuitModel& model) {
  return model.family == Family::Hc1q || model.family == Family::Hcmq ||
         model.family == Family::Iqp;
}

Gate inverted(const Gate& g) {
  Gate inv = g;
  if (g.kind == GateKind::Rz) inv.angle = -g.angle;  // every other kind is self-inverse
  return inv;
}

}  // namespace

PddMaxInstance make_instance(CircuitModel u1, CircuitModel u2, double a, double b,
                             double min_gap) {
  u1.validate();
  u2.validate();
  if (u1.width != u2.width) throw std::invalid_argument("instance circuits must share a width");
  if (!(0.0 <= b && b < a && a <= 1.0)) {
    throw std::invalid_argument("thresholds must satisfy 0 <= b < a <= 1");
  }
  if (a - b < min_gap) throw std::invalid_argument("threshold gap below the declared bound");
  return {std::move(u1), std::move(u2), a, b};
}

std::int64_t protocol_samples(double a, double b, int k) {
  if (k < 1) throw std::invalid_argument("exponent k must be positive");
  return static_cast<std::int64_t>(std::ceil(128.0 * k / ((a - b) * (a - b))));
}

double completeness_bound(double a, int k) {
  const double good = 1.0 - 2.0 * std::exp(-k);
  return 0.5 * a * good * good;
}

double soundness_bound(int k) {
  return 4.0 * std::exp(-k) - 4.0 * std::exp(-2.0 * k);
}

MerlinMessage honest_merlin(const PddMaxInstance& instance, std::uint64_t seed, int width_cap) {
  Prng coin_rng(seed, "merlin-coin");
  const bool coin = coin_rng.next_bool();
  const StateVector state = simulate(coin ? instance.u2 : instance.u1, {width_cap});
  return {sample_measurement(state, seed, 0, "merlin-measure"), coin};
}

MaOutcome arthur_verify(const PddMaxInstance& instance, const BitString& z, int k,
                        std::uint64_t seed, int threads) {
  if (!classically_estimable(instance.u1) || !classically_estimable(instance.u2)) {
    throw std::invalid_argument(
        "verifier estimates need hc1q/hcmq/iqp circuits; general circuits are not estimable");
  }
  if (z.width() != instance.u1.width) throw std::invalid_argument("witness width mismatch");

  const double gap = instance.a - instance.b;
  const std::int64_t samples = protocol_samples(instance.a, instance.b, k);
  const ChernoffPlan plan{gap / 8.0, 2.0 * std::exp(-k), samples};

  MaOutcome out;
  out.witness = z;
  out.p_estimate = prob_estimate(instance.u1, z, plan, seed, {threads, 0});
  out.q_estimate = prob_estimate(instance.u2, z, plan, seed, {threads, 1});
  out.threshold = instance.a - gap / 4.0;
  out.samples = samples;
  out.k = k;
  out.seed = seed;
  out.method = "pathsum";
  out.accepted = std::abs(out.p_estimate.value - out.q_estimate.value) >= out.threshold;
  return out;
}

MaOutcome run_ma(const PddMaxInstance& instance, int k, std::uint64_t seed, int threads,
                 int width_cap) {
  const MerlinMessage message = honest_merlin(instance, seed, width_cap);
  MaOutcome out = arthur_verify(instance, message.z, k, seed, threads);
  out.coin = message.coin;
  return out;
}

MaOutcome bqp_decider(const PddMaxInstance& instance, int k, std::uint64_t seed, int width_cap) {
  const double gap = instance.a - instance.b;
  const std::int64_t samples = protocol_samples(instance.a, instance.b, k);

  Prng coin_rng(seed, "decide-coin");
  const bool coin = coin_rng.next_bool();
  const StateVector state1 = simulate(instance.u1, {width_cap});
  const StateVector state2 = simulate(instance.u2, {width_cap});
  const BitString z = sample_measurement(coin ? state2 : state1, seed, 0, "decide-candidate");

  const auto frequency = [&](const StateVector& state, std::string_view label) {
    std::int64_t hits = 0;
    for (std::int64_t i = 0; i < samples; ++i) {
      hits += sample_measurement(state, seed, static_cast<std::uint64_t>(i), label) == z;
    }
    return static_cast<double>(hits) / static_cast<double>(samples);
  };
  const double confidence = 1.0 - 2.0 * std::exp(-k);

  MaOutcome out;
  out.witness = z;
  out.p_estimate = {frequency(state1, "decide-p"), gap / 8.0, confidence, samples, seed};
  out.q_estimate = {frequency(state2, "decide-q"), gap / 8.0, confidence, samples, seed};
  out.threshold = instance.a - gap / 4.0;
  out.samples = samples;
  out.k = k;
  out.seed = seed;
  out.method = "oracle-frequency";
  out.coin = coin;
  out.accepted = std::abs(out.p_estimate.value - out.q_estimate.value) >= out.threshold;
  return out;
}

ReductionResult bqp_reduction(const CircuitModel& v, int r, int m) {
  v.validate();
  if (v.family != Family::General) {
    throw std::invalid_argument("reduction expects a general decision circuit");
  }
  if (r < 1 || m < 1) throw std::invalid_argument("r and m must be positive");

  const int n = v.width;
  const int width = n + m + 1;
  const double a = std::pow(1.0 - std::ldexp(1.0, -r), 2) - std::ldexp(1.0, -width);
  const double b =
      std::max(std::ldexp(1.0, -m), std::ldexp(1.0, -r)) + std::ldexp(1.0, -width);
  if (a <= b) {
    throw std::invalid_argument("reduction thresholds collapse (a <= b) for these n, m, r");
  }

  // layout: flag at 1, ancillas at 2..m+1, the register block at m+2..n+m+1
  const int reg = m + 2;
  std::vector<Gate> gates;
  for (const Gate& g : v.gates) {
    Gate shifted = g;
    for (int& q : shifted.qubits) q += reg - 1;
    gates.push_back(std::move(shifted));
  }
  gates.push_back(Gate::cnot(reg, 1));
  for (int anc = 2; anc <= m + 1; ++anc) gates.push_back(Gate::ch(1, anc));
  for (auto it = v.gates.rbegin(); it != v.gates.rend(); ++it) {
    Gate shifted = inverted(*it);
    for (int& q : shifted.qubits) q += reg - 1;
    gates.push_back(std::move(shifted));
  }
  CircuitModel u1 = make_general(width, std::move(gates));

  std::vector<Gate> all_h;
  for (int q = 1; q <= width; ++q) all_h.push_back(Gate::h(q));
  CircuitModel u2 = make_general(width, std::move(all_h));

  return {make_instance(std::move(u1), std::move(u2), a, b), n, m, r};
}

PddMaxInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open instance file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  for (const char* field : {"u1", "u2", "a", "b"}) {
    if (!doc.contains(field)) throw ParseError(path + ": missing field '" + field + "'");
  }
  const auto base = std::filesystem::path(path).parent_path();
  const auto resolve = [&](const std::string& p) {
    const std::filesystem::path fp(p);
    return fp.is_absolute() ? fp.string() : (base / fp).string();
  };
  return make_instance(load_circuit(resolve(doc["u1"].get<std::string>())),
                       load_circuit(resolve(doc["u2"].get<std::string>())),
                       doc["a"].get<double>(), doc["b"].get<double>());
}

void save_instance(const std::string& path, const std::string& u1_path,
                   const std::string& u2_path, double a, double b) {
  nlohmann::json doc{{"u1", u1_path}, {"u2", u2_path}, {"a", a}, {"b", b}};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write instance file '" + path + "'");
  out << doc.dump(2) << "\n";
}

}  // namespace fh2
