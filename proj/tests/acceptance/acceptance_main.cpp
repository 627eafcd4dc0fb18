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
//
// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
// the process exits nonzero if any executed criterion fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fh2/bitstring.hpp"
#include "fh2/circuit.hpp"
#include "fh2/compiler.hpp"
#include "fh2/marginal.hpp"
#include "fh2/pathsum.hpp"
#include "fh2/pddmax.hpp"
#include "fh2/rng.hpp"
#include "fh2/statevector.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace fh2;

namespace {

std::string g_cli;

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string command = g_cli + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  return {WEXITSTATUS(pclose(pipe)), out};
}

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool condition, const std::string& message) {
    if (!condition && ok) {
      ok = false;
      detail = message;
    }
  }
};

// --- shared generators (deterministic in the trial index) -------------------

CircuitModel random_hc1q_model(int width, int gate_count, std::uint64_t seed) {
  return make_hc1q(width, random_reversible(width, gate_count, seed).gates());
}

CircuitModel random_h_classical(int width, int classical_count, int h_count, std::uint64_t seed) {
  Prng rng(seed, "acc-h-classical");
  const auto classical = random_reversible(width, classical_count, seed).gates();
  std::vector<Gate> gates;
  std::size_t next_classical = 0;
  int remaining_h = h_count;
  while (next_classical < classical.size() || remaining_h > 0) {
    const std::int64_t total =
        static_cast<std::int64_t>(classical.size() - next_classical) + remaining_h;
    if (static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(total))) <
        remaining_h) {
      gates.push_back(Gate::h(1 + static_cast<int>(rng.next_below(width))));
      --remaining_h;
    } else {
      gates.push_back(classical[next_classical++]);
    }
  }
  return make_general(width, std::move(gates));
}

CircuitModel random_general_model(int width, int gate_count, std::uint64_t seed) {
  Prng rng(seed, "acc-general");
  std::vector<Gate> gates;
  for (int i = 0; i < gate_count; ++i) {
    const int q = 1 + static_cast<int>(rng.next_below(width));
    int q2 = q;
    if (width > 1) {
      while (q2 == q) q2 = 1 + static_cast<int>(rng.next_below(width));
    }
    switch (rng.next_below(width > 1 ? 6 : 3)) {
      case 0: gates.push_back(Gate::h(q)); break;
      case 1: gates.push_back(Gate::x(q)); break;
      case 2: gates.push_back(Gate::rz(rng.next_double() * 6.283185307179586, q)); break;
      case 3: gates.push_back(Gate::cnot(q, q2)); break;
      case 4: gates.push_back(Gate::cz(q, q2)); break;
      default: gates.push_back(Gate::ch(q, q2)); break;
    }
  }
  return make_general(width, std::move(gates));
}

std::vector<double> oracle_marginal(const CircuitModel& model, int k) {
  const auto probs = probabilities(simulate(model));
  std::vector<double> out(std::size_t{1} << k, 0.0);
  const int shift = model.width - k;
  for (std::size_t i = 0; i < probs.size(); ++i) out[i >> shift] += probs[i];
  return out;
}

// --- criterion 1: worked-example branch traces and state reconstruction -----

bool criterion_1() {
  Check check;
  const fs::path dir = fs::temp_directory_path() / "fh2lab-acceptance";
  fs::create_directories(dir);
  const fs::path circuit = dir / "appendixA.gen";
  {
    std::ofstream out(circuit);
    out << "model general\nqubits 2\nx 1\nh 1\nh 2\n";
  }
  const struct {
    const char* y;
    int sign;
    const char* reg;
  } expected[] = {{"00", 0, "00"}, {"01", 0, "01"}, {"10", 1, "10"}, {"11", 1, "11"}};
  for (const auto& row : expected) {
    const RunResult res =
        run_cli("paths --circuit " + circuit.string() + " --y " + row.y + " --deterministic");
    check.expect(res.exit_code == 0, std::string("paths --y ") + row.y + " failed");
    if (res.exit_code != 0) break;
    const json doc = json::parse(res.out);
    check.expect(doc["result"]["s"] == row.sign && doc["result"]["z"] == row.reg,
                 std::string("branch ") + row.y + " trace mismatch");
  }

  const CircuitModel uprime =
      make_general(2, {Gate::x(1), Gate::h(1), Gate::h(2)});
  const StateVector psi = reconstruct_state(uprime);
  const double expected_amp[4] = {0.5, 0.5, -0.5, -0.5};
  for (std::uint64_t i = 0; i < 4; ++i) {
    check.expect(std::abs(psi.amplitude(i) - expected_amp[i]) <= 1e-12,
                 "reconstructed amplitude " + std::to_string(i) + " off");
  }
  return check.ok || (std::cerr << "    " << check.detail << "\n", false);
}

// --- criterion 2: compiler soundness over 200 random circuits ---------------

bool criterion_2() {
  Check check;
  for (std::uint64_t i = 0; i < 200 && check.ok; ++i) {
    const int n = 1 + static_cast<int>(i % 5);
    const int extra_h = static_cast<int>(i % (10 - n + 1));  // h = extra_h + n <= 10
    const int classical = static_cast<int>((i * 7) % 9);
    const CircuitModel u = random_h_classical(n, classical, extra_h, i);
    const Compilation comp = compile_to_hc1q(u);
    check.expect(comp.hadamards <= 10, "h exceeded the advertised bound");

    const double fid = fidelity(compiled_output_state(comp), simulate(u));
    check.expect(fid >= 1.0 - 1e-10,
                 "fidelity " + std::to_string(fid) + " at trial " + std::to_string(i));

    const double success = postselect(simulate(comp.circuit), comp.postselect).probability;
    const double analytic = std::ldexp(1.0, -(comp.hadamards + n + 2));
    check.expect(std::abs(success - analytic) <= 1e-12,
                 "success probability off at trial " + std::to_string(i));
  }
  return check.ok || (std::cerr << "    " << check.detail << "\n", false);
}

// --- criterion 3: path-sum identities against the oracle --------------------

bool criterion_3() {
  Check check;
  for (std::uint64_t i = 0; i < 100 && check.ok; ++i) {
    const int width = 3 + static_cast<int>(i % 8);  // N <= 10
    const CircuitModel m = random_hc1q_model(width, 3 * width, i + 3000);
    const ReversibleCircuit core = m.core();
    const auto probs = probabilities(simulate(m));

    // exact path sum vs oracle, every z
    for (std::uint64_t z = 0; z < probs.size() && check.ok; ++z) {
      const double p = hc1q_prob_exact(m, BitString::from_index(width, z));
      check.expect(std::abs(p - probs[z]) <= 1e-10,
                   "path sum vs oracle off at trial " + std::to_string(i));
    }

    // full pair average of f(x,y), memoized per x, for four outcomes
    const std::uint64_t half = std::uint64_t{1} << (width - 1);
    Prng zpick(i, "acc-z");
    for (int zi = 0; zi < 4 && check.ok; ++zi) {
      const BitString z = zi == 0 ? BitString(width) : zpick.next_bits(width);
      std::vector<int> g(half);
      for (std::uint64_t x = 0; x < half; ++x) {
        const BitString cx = core.apply(BitString::from_index(width - 1, x).concat(BitString(1)));
        if (cx.bit(width) != z.bit(width)) {
          g[x] = 0;
        } else {
          g[x] = z.slice(1, width - 1).dot(cx.slice(1, width - 1)) ? -1 : 1;
        }
      }
      std::int64_t acc = 0;
      for (std::uint64_t x = 0; x < half; ++x) {
        for (std::uint64_t y = 0; y < half; ++y) acc += g[x] * g[y];
      }
      const double mean = static_cast<double>(acc) / (static_cast<double>(half) * half);
      check.expect(std::abs(mean - hc1q_prob_exact(m, z)) <= 1e-12,
                   "pair average off at trial " + std::to_string(i));
    }

    // full x average of the marginal estimator f(x), k in {1, 2}, every z
    for (int k = 1; k <= 2 && check.ok; ++k) {
      const auto marginal = oracle_marginal(m, k);
      for (std::uint64_t z = 0; z < (std::uint64_t{1} << k) && check.ok; ++z) {
        const BitString zb = BitString::from_index(k, z);
        double total = 0.0;
        for (std::uint64_t x = 0; x < half; ++x) {
          total += marginal_f(m, BitString::from_index(width - 1, x), zb);
        }
        check.expect(std::abs(total / static_cast<double>(half) - marginal[z]) <= 1e-12,
                     "marginal average off at trial " + std::to_string(i));
      }
    }
  }
  return check.ok || (std::cerr << "    " << check.detail << "\n", false);
}

// --- criterion 4: Chernoff concentration of the hc1q estimator --------------

bool criterion_4() {
  Check check;
  const CircuitModel m = make_hc1q(3, {Gate::toffoli(1, 2, 3)});
  const BitString z = BitString::from_string("000");
  const ChernoffPlan plan = chernoff_plan(0.02, 0.01);
  int failures = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const ProbEstimate est = hc1q_prob_estimate(m, z, plan, seed);
    failures += std::abs(est.value - 9.0 / 16.0) > 0.02;
  }
  check.expect(failures <= 0.03 * 500,
               "failure rate " + std::to_string(failures / 500.0) + " exceeds 0.03");
  return check.ok || (std::cerr << "    " << check.detail << "\n", false);
}

// --- criterion 5: Theorem-3 sampler accuracy --------------------------------

bool criterion_5() {
  Check check;
  int within = 0;
  const int runs = 50, r = 10;
  for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(runs); ++i) {
    const int k = 1 + static_cast<int>(i % 3);
    const int width = 6 + static_cast<int>((i * 5) % 11);  // N in [6, 16]
    const CircuitModel m = random_hc1q_model(width, 24, i + 5000);
    const NormalizedMarginal q = normalize(estimate_marginals(m, k, r, i));
    const auto want = oracle_marginal(m, k);
    double l1 = 0.0;
    for (std::size_t zi = 0; zi < want.size(); ++zi) l1 += std::abs(q.table[zi] - want[zi]);
    within += l1 <= 1.0 / r;

    if (i < 3) {  // one end-to-end draw per k value
      std::vector<double> counts(want.size(), 0.0);
      const int n_draws = 100000;
      for (int d = 0; d < n_draws; ++d) {
        counts[sample_from(q, 64, i, static_cast<std::uint64_t>(d)).to_index()] += 1.0;
      }
      double draw_l1 = 0.0;
      for (std::size_t zi = 0; zi < want.size(); ++zi) {
        draw_l1 += std::abs(counts[zi] / n_draws - want[zi]);
      }
      check.expect(draw_l1 <= 0.12,
                   "drawn distribution L1 " + std::to_string(draw_l1) + " exceeds 0.12");
    }
  }
  check.expect(within >= static_cast<int>(0.95 * runs),
               "only " + std::to_string(within) + "/50 runs within L1 0.1");
  return check.ok || (std::cerr << "    " << check.detail << "\n", false);
}

// --- criterion 6: removing the fixed qubit trivializes the model ------------

bool criterion_6() {
  Check check;
  for (std::uint64_t i = 0; i < 100 && check.ok; ++i) {
    const int width = 3 + static_cast<int>(i % 9);  // N-1 <= 11
    const ReversibleCircuit cprime = random_reversible(width, 4 * width, i + 6000);
    std::vector<Gate> gates;
    for (int q = 1; q <= width; ++q) gates.push_back(Gate::h(q));
    gates.insert(gates.end(), cprime.gates().begin(), cprime.gates().end());
    for (int q = 1; q <= width; ++q) gates.push_back(Gate::h(q));
    const double p = output_probability(simulate(make_general(width, std::move(gates))),
                                        BitString(width));
    check.expect(std::abs(p - 1.0) <= 1e-12, "trial " + std::to_string(i) + " p=" +
                                                 std::to_string(p));
  }
  return check.ok || (std::cerr << "    " << check.detail << "\n", false);
}

// --- criterion 7: protocol completeness and soundness ------------------------

bool criterion_7() {
  Check check;
  const double alpha = completeness_bound(0.9, 5);
  const double beta = soundness_bound(5);
  check.expect(std::abs(alpha - 0.4380) < 1e-3, "alpha is not 0.4380");
  check.expect(std::abs(beta - 0.0268) < 1e-3, "beta is not 0.0268");

  const PddMaxInstance yes =
      make_instance(make_hc1q(4, {}), make_hc1q(4, {Gate::x(4)}), 0.9, 0.1);
  int yes_accepts = 0;
  for (std::uint64_t trial = 0; trial < 400; ++trial) {
    const MaOutcome out = run_ma(yes, 5, 70000 + trial);
    if (trial == 0) check.expect(out.samples == 1000, "T is not 1000");
    yes_accepts += out.accepted;
  }
  check.expect(yes_accepts / 400.0 >= alpha - 0.05,
               "YES acceptance " + std::to_string(yes_accepts / 400.0) + " below alpha - 0.05");

  const CircuitModel shared = random_hc1q_model(6, 18, 7777);
  const PddMaxInstance no = make_instance(shared, shared, 0.9, 0.1);
  int no_accepts = 0;
  for (std::uint64_t trial = 0; trial < 400; ++trial) {
    no_accepts += run_ma(no, 5, 80000 + trial).accepted;
  }
  check.expect(no_accepts / 400.0 <= beta + 0.05,
               "NO acceptance " + std::to_string(no_accepts / 400.0) + " above beta + 0.05");

  // adversary: take the worst witness for Arthur's very sample set
  int adversary_accepts = 0;
  for (std::uint64_t trial = 0; trial < 400; ++trial) {
    bool any = false;
    for (std::uint64_t z = 0; z < 64 && !any; ++z) {
      any = arthur_verify(no, BitString::from_index(6, z), 5, 90000 + trial).accepted;
    }
    adversary_accepts += any;
  }
  check.expect(adversary_accepts / 400.0 <= beta + 0.05,
               "adversarial acceptance " + std::to_string(adversary_accepts / 400.0) +
                   " above beta + 0.05");
  return check.ok || (std::cerr << "    " << check.detail << "\n", false);
}

// --- criterion 8: the reduction's branch decomposition and thresholds -------

bool criterion_8() {
  Check check;
  const int m = 3, r = 3;
  for (std::uint64_t i = 0; i < 22 && check.ok; ++i) {
    const int n = 2 + static_cast<int>(i % 3);  // n <= 4
    CircuitModel v = make_general(n, {});
    if (i == 1) {
      v = make_general(n, {Gate::x(1)});
    } else if (i >= 2) {
      v = random_general_model(n, 8, i + 8000);
    }
    const ReductionResult red = bqp_reduction(v, r, m);
    const int width = n + m + 1;

    // two-branch decomposition, assembled from oracle pieces
    const StateVector phi = simulate(v);
    std::vector<std::complex<double>> a0(phi.size(), 0.0), a1(phi.size(), 0.0);
    double alpha = 0.0;
    for (std::uint64_t idx = 0; idx < phi.size(); ++idx) {
      if ((idx >> (n - 1)) & 1) {
        a1[idx] = phi.amplitude(idx);
      } else {
        a0[idx] = phi.amplitude(idx);
        alpha += std::norm(phi.amplitude(idx));
      }
    }
    StateVector branch0(n, std::move(a0)), branch1(n, std::move(a1));
    for (auto it = v.gates.rbegin(); it != v.gates.rend(); ++it) {
      Gate inv = *it;
      if (inv.kind == GateKind::Rz) inv.angle = -inv.angle;
      branch0.apply(inv);
      branch1.apply(inv);
    }
    std::vector<std::complex<double>> expect(std::size_t{1} << width, 0.0);
    const double anc = std::pow(0.5, 0.5 * m);
    for (std::uint64_t reg = 0; reg < (std::uint64_t{1} << n); ++reg) {
      expect[reg] += branch0.amplitude(reg);
      for (std::uint64_t ancilla = 0; ancilla < (std::uint64_t{1} << m); ++ancilla) {
        expect[(std::uint64_t{1} << (width - 1)) | (ancilla << n) | reg] +=
            anc * branch1.amplitude(reg);
      }
    }
    const StateVector u1_state = simulate(red.instance.u1);
    check.expect(fidelity(StateVector(width, std::move(expect)), u1_state) >= 1.0 - 1e-10,
                 "branch decomposition off at trial " + std::to_string(i));

    // threshold inequalities against the oracle distributions
    const auto p = probabilities(u1_state);
    const auto q = probabilities(simulate(red.instance.u2));
    const double uniform = std::ldexp(1.0, -width);
    check.expect(std::abs(p[0] - alpha * alpha) <= 1e-10, "p at 0^N is not alpha^2");
    double max_gap = 0.0;
    for (std::size_t z = 0; z < p.size(); ++z) {
      check.expect(std::abs(q[z] - uniform) <= 1e-12, "q is not uniform");
      const bool flag_set = z >> (width - 1);
      check.expect(p[z] <= (flag_set ? std::ldexp(1.0, -m) : alpha) + 1e-10,
                   "branch probability bound violated");
      max_gap = std::max(max_gap, std::abs(p[z] - q[z]));
    }
    if (alpha >= 1.0 - std::ldexp(1.0, -r)) {
      check.expect(max_gap >= red.instance.a, "YES-side gap below a");
    }
    if (alpha <= std::ldexp(1.0, -r)) {
      check.expect(max_gap <= red.instance.b, "NO-side gap above b");
    }
  }
  return check.ok || (std::cerr << "    " << check.detail << "\n", false);
}

// --- criterion 9: CLI determinism -------------------------------------------

bool criterion_9() {
  Check check;
  const fs::path dir = fs::temp_directory_path() / "fh2lab-acceptance";
  fs::create_directories(dir);
  const fs::path hc1q = dir / "det.hc1q";
  {
    std::ofstream out(hc1q);
    out << "model hc1q\nqubits 4\ntoffoli 1 2 3\ncnot 2 4\nx 1\n";
  }
  const fs::path gen = dir / "det.gen";
  {
    std::ofstream out(gen);
    out << "model general\nqubits 2\nx 1\nh 1\nh 2\n";
  }
  const fs::path inst = dir / "det-inst.json";
  {
    std::ofstream u1(dir / "det-u1.hc1q"), u2(dir / "det-u2.hc1q");
    u1 << "model hc1q\nqubits 3\n";
    u2 << "model hc1q\nqubits 3\nx 3\n";
  }
  run_cli("pdd-make --u1 " + (dir / "det-u1.hc1q").string() + " --u2 " +
          (dir / "det-u2.hc1q").string() + " --a 0.9 --b 0.1 --out " + inst.string());

  const std::vector<std::string> invocations = {
      "sim --circuit " + hc1q.string() + " --samples 5 --seed 11 --deterministic",
      "prob --circuit " + hc1q.string() + " --z 0100 --deterministic",
      "estimate --circuit " + hc1q.string() +
          " --z 0100 --epsilon 0.02 --delta 0.05 --seed 42 --deterministic",
      "marginal --circuit " + hc1q.string() +
          " --k 2 --r 10 --samples 8 --seed 9 --table --deterministic",
      "marginal --circuit " + hc1q.string() + " --k 2 --r 10 --samples 8 --seed 9",
      "compile --circuit " + gen.string() + " --deterministic",
      "paths --circuit " + gen.string() + " --y 10 --deterministic",
      "pdd-run --instance " + inst.string() + " --k 5 --seed 3 --deterministic",
      "pdd-decide --instance " + inst.string() + " --k 5 --seed 3 --deterministic",
  };
  for (const std::string& args : invocations) {
    const RunResult first = run_cli(args);
    const RunResult second = run_cli(args);
    check.expect(first.exit_code == 0, "exit code " + std::to_string(first.exit_code) +
                                           " from: " + args);
    check.expect(!first.out.empty() && first.out == second.out,
                 "output differs between runs of: " + args);
  }
  return check.ok || (std::cerr << "    " << check.detail << "\n", false);
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--cli" && i + 1 < argc) {
      g_cli = argv[++i];
    } else {
      selected.push_back(std::atoi(arg.c_str()));
    }
  }
  if (g_cli.empty()) {
    std::cerr << "usage: fh2_acceptance --cli <path-to-fh2lab> [criterion...]\n";
    return 2;
  }

  const struct {
    int id;
    const char* name;
    std::function<bool()> fn;
  } criteria[] = {
      {1, "worked-example branch traces and state reconstruction", criterion_1},
      {2, "compiler soundness and postselection probability (200 circuits)", criterion_2},
      {3, "path-sum identities against the oracle (100 circuits)", criterion_3},
      {4, "Chernoff concentration of the hc1q estimator (500 seeds)", criterion_4},
      {5, "marginal sampler L1 accuracy (50 runs + 1e5 draws)", criterion_5},
      {6, "fixed-qubit removal trivializes the model (100 circuits)", criterion_6},
      {7, "protocol completeness, soundness, and the exhaustive adversary", criterion_7},
      {8, "reduction branch decomposition and thresholds", criterion_8},
      {9, "CLI determinism under --deterministic", criterion_9},
  };

  bool all_ok = true;
  for (const auto& c : criteria) {
    if (!selected.empty() &&
        std::find(selected.begin(), selected.end(), c.id) == selected.end()) {
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    const bool ok = c.fn();
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %d: %s  %s (%.1fs)\n", c.id, ok ? "PASS" : "FAIL", c.name, secs);
    std::fflush(stdout);
    all_ok = all_ok && ok;
  }
  return all_ok ? 0 : 1;
}
