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

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fh2/circuit.hpp"
#include "fh2/compiler.hpp"
#include "fh2/errors.hpp"
#include "fh2/marginal.hpp"
#include "fh2/pathsum.hpp"
#include "fh2/pddmax.hpp"
#include "fh2/rng.hpp"
#include "fh2/statevector.hpp"
#include "fh2/version.hpp"

namespace {

using nlohmann::json;

struct GlobalFlags {
  std::uint64_t seed = 0;
  bool deterministic = false;
  int threads = 0;
};

void emit(const std::string& command, const GlobalFlags& flags, json params, json result) {
  json doc;
  doc["tool"] = fh2::kToolName;
  doc["version"] = fh2::kVersion;
  doc["generator"] = fh2::kGeneratorId;
  doc["command"] = command;
  doc["seed"] = flags.seed;
  doc["threads"] = flags.threads;
  doc["params"] = std::move(params);
  doc["result"] = std::move(result);
  if (!flags.deterministic) {
    doc["timestamp"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::system_clock::now().time_since_epoch())
            .count();
  }
  std::cout << doc.dump(2) << "\n";
}

json estimate_json(const fh2::ProbEstimate& est) {
  return {{"value", est.value},
          {"epsilon", est.epsilon},
          {"confidence", est.confidence},
          {"T", est.samples},
          {"seed", est.seed}};
}

json outcome_json(const fh2::MaOutcome& out, const fh2::PddMaxInstance& instance) {
  json doc{{"accepted", out.accepted},
           {"z", out.witness.str()},
           {"p_estimate", estimate_json(out.p_estimate)},
           {"q_estimate", estimate_json(out.q_estimate)},
           {"threshold", out.threshold},
           {"T", out.samples},
           {"k", out.k},
           {"seed", out.seed},
           {"method", out.method},
           {"a", instance.a},
           {"b", instance.b}};
  if (out.coin >= 0) doc["coin"] = out.coin;
  return doc;
}

fh2::BitString parse_outcome(const std::string& bits, int width) {
  const fh2::BitString z = fh2::BitString::from_string(bits);
  if (z.width() != width) {
    throw std::invalid_argument("outcome has " + std::to_string(z.width()) + " bits, circuit has " +
                                std::to_string(width) + " qubits");
  }
  return z;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

int run(int argc, char** argv) {
  CLI::App app{"Exact and Monte-Carlo output probabilities, postselection compilation,\n"
               "log-width marginal sampling, and the PDD-Max protocol suite for\n"
               "Hadamard-classical and IQP circuits."};
  app.require_subcommand(1);
  app.set_version_flag("--version", fh2::kVersion);
  app.fallthrough();  // global flags may follow the subcommand

  GlobalFlags flags;
  app.add_option("--seed", flags.seed, "stream seed (default 0)")->capture_default_str();
  app.add_flag("--deterministic", flags.deterministic, "suppress the timestamp field");
  app.add_option("--threads", flags.threads,
                 "worker threads (0 = FH2LAB_THREADS or hardware); results do not depend on this");

  // ---- sim ----------------------------------------------------------------
  auto* sim = app.add_subcommand("sim", "exact statevector simulation (oracle)");
  std::string sim_circuit, sim_z;
  std::int64_t sim_samples = 0;
  bool sim_state = false;
  int sim_cap = 22;
  sim->add_option("--circuit", sim_circuit, "circuit file")->required();
  sim->add_option("--z", sim_z, "single outcome to evaluate");
  sim->add_option("--samples", sim_samples, "draw measurement samples");
  sim->add_flag("--state", sim_state, "emit the amplitude vector");
  sim->add_option("--cap", sim_cap, "statevector width cap")->capture_default_str();

  // ---- prob ---------------------------------------------------------------
  auto* prob = app.add_subcommand("prob", "exact path-sum output probability");
  std::string prob_circuit, prob_z;
  int prob_cap = 24;
  prob->add_option("--circuit", prob_circuit, "hc1q/hcmq/iqp circuit file")->required();
  prob->add_option("--z", prob_z, "outcome bits")->required();
  prob->add_option("--cap", prob_cap, "exact-sum width cap")->capture_default_str();

  // ---- estimate -----------------------------------------------------------
  auto* estimate = app.add_subcommand("estimate", "Monte-Carlo output probability");
  std::string est_circuit, est_z;
  double est_epsilon = 0.0, est_delta = 0.0;
  estimate->add_option("--circuit", est_circuit, "hc1q/hcmq/iqp circuit file")->required();
  estimate->add_option("--z", est_z, "outcome bits")->required();
  estimate->add_option("--epsilon", est_epsilon, "target additive error")->required();
  estimate->add_option("--delta", est_delta, "failure probability")->required();

  // ---- marginal -----------------------------------------------------------
  auto* marginal = app.add_subcommand("marginal", "classical sampler for low-width marginals");
  std::string mar_circuit;
  int mar_k = 1, mar_r = 10, mar_mbits = 64;
  std::int64_t mar_samples = 1, mar_budget = 4'000'000'000;
  double mar_delta = 0.05;
  std::vector<int> mar_positions;
  bool mar_table = false;
  marginal->add_option("--circuit", mar_circuit, "hc1q/hcmq circuit file")->required();
  marginal->add_option("--k", mar_k, "measure the first k qubits")->capture_default_str();
  marginal->add_option("--positions", mar_positions,
                       "measured positions (overrides --k; Hadamard block only)");
  marginal->add_option("--r", mar_r, "L1-error denominator (error <= 1/r)")->capture_default_str();
  marginal->add_option("--samples", mar_samples, "samples to draw")->capture_default_str();
  marginal->add_option("--delta", mar_delta, "all-entries failure budget")->capture_default_str();
  marginal->add_option("--budget", mar_budget, "per-entry work cap")->capture_default_str();
  marginal->add_option("--m-bits", mar_mbits, "binary precision of each draw")->capture_default_str();
  marginal->add_flag("--table", mar_table, "emit the q-table as JSON instead of raw sample lines");

  // ---- compile ------------------------------------------------------------
  auto* compile = app.add_subcommand("compile", "postselection compiler (H+classical -> hc1q)");
  std::string comp_circuit, comp_out_circuit, comp_out_post;
  compile->add_option("--circuit", comp_circuit, "general circuit of H and classical gates")
      ->required();
  compile->add_option("--out-circuit", comp_out_circuit, "write the hc1q circuit here");
  compile->add_option("--out-post", comp_out_post, "write the postselection sidecar here");

  // ---- paths --------------------------------------------------------------
  auto* paths = app.add_subcommand("paths", "nondeterministic branch traces");
  std::string paths_circuit, paths_y;
  bool paths_state = false;
  int paths_cap = 20;
  paths->add_option("--circuit", paths_circuit, "general circuit of H and classical gates")
      ->required();
  paths->add_option("--y", paths_y, "branch label (one bit per H gate)");
  paths->add_flag("--state", paths_state, "accumulate all branches into a state");
  paths->add_option("--cap", paths_cap, "H-count cap for --state")->capture_default_str();

  // ---- pdd-* --------------------------------------------------------------
  auto* pdd_make = app.add_subcommand("pdd-make", "assemble and validate an instance file");
  std::string mk_u1, mk_u2, mk_out;
  double mk_a = 0.0, mk_b = 0.0;
  pdd_make->add_option("--u1", mk_u1, "first circuit file")->required();
  pdd_make->add_option("--u2", mk_u2, "second circuit file")->required();
  pdd_make->add_option("--a", mk_a, "YES threshold")->required();
  pdd_make->add_option("--b", mk_b, "NO threshold")->required();
  pdd_make->add_option("--out", mk_out, "instance file to write")->required();

  auto* pdd_merlin = app.add_subcommand("pdd-merlin", "honest prover message");
  auto* pdd_arthur = app.add_subcommand("pdd-arthur", "classical verifier on a witness");
  auto* pdd_run = app.add_subcommand("pdd-run", "full single-message protocol");
  auto* pdd_decide = app.add_subcommand("pdd-decide", "decision algorithm (oracle sampling)");
  std::string inst_path, arthur_z;
  int pdd_k = 5, pdd_cap = 22;
  for (auto* cmd : {pdd_merlin, pdd_arthur, pdd_run, pdd_decide}) {
    cmd->add_option("--instance", inst_path, "instance file")->required();
  }
  pdd_arthur->add_option("--z", arthur_z, "witness bits")->required();
  for (auto* cmd : {pdd_arthur, pdd_run, pdd_decide}) {
    cmd->add_option("--k", pdd_k, "protocol exponent")->capture_default_str();
  }
  for (auto* cmd : {pdd_merlin, pdd_run, pdd_decide}) {
    cmd->add_option("--cap", pdd_cap, "statevector width cap")->capture_default_str();
  }

  auto* pdd_reduce = app.add_subcommand("pdd-reduce", "decision circuit -> instance");
  std::string red_circuit, red_u1, red_u2, red_out;
  int red_r = 3, red_m = 3;
  pdd_reduce->add_option("--circuit", red_circuit, "general decision circuit")->required();
  pdd_reduce->add_option("--r", red_r, "error exponent")->capture_default_str();
  pdd_reduce->add_option("--m", red_m, "padding ancillas")->capture_default_str();
  pdd_reduce->add_option("--out-u1", red_u1, "write u1 here")->required();
  pdd_reduce->add_option("--out-u2", red_u2, "write u2 here")->required();
  pdd_reduce->add_option("--out", red_out, "instance file to write")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (sim->parsed()) {
    const fh2::CircuitModel model = fh2::load_circuit(sim_circuit);
    json params{{"circuit", sim_circuit}, {"cap", sim_cap}};
    const fh2::StateVector state = fh2::simulate(model, {sim_cap});
    json result;
    if (!sim_z.empty()) {
      params["z"] = sim_z;
      result["p"] = fh2::output_probability(state, parse_outcome(sim_z, model.width));
    } else if (sim_samples > 0) {
      params["samples"] = sim_samples;
      json list = json::array();
      for (std::int64_t i = 0; i < sim_samples; ++i) {
        list.push_back(
            fh2::sample_measurement(state, flags.seed, static_cast<std::uint64_t>(i)).str());
      }
      result["samples"] = std::move(list);
    } else if (sim_state) {
      json amps = json::array();
      for (std::size_t i = 0; i < state.size(); ++i) {
        amps.push_back({state.amplitude(i).real(), state.amplitude(i).imag()});
      }
      result["amplitudes"] = std::move(amps);
      result["width"] = model.width;
    } else {
      if (model.width > 16) {
        throw fh2::ResourceError("full probability table needs width <= 16; use --z or --samples");
      }
      json table;
      const auto probs = fh2::probabilities(state);
      for (std::size_t i = 0; i < probs.size(); ++i) {
        table[fh2::BitString::from_index(model.width, i).str()] = probs[i];
      }
      result["probabilities"] = std::move(table);
    }
    emit("sim", flags, std::move(params), std::move(result));
    return 0;
  }

  if (prob->parsed()) {
    const fh2::CircuitModel model = fh2::load_circuit(prob_circuit);
    const double p = fh2::prob_exact(model, parse_outcome(prob_z, model.width), {prob_cap});
    emit("prob", flags, {{"circuit", prob_circuit}, {"z", prob_z}, {"cap", prob_cap}},
         {{"p", p}});
    return 0;
  }

  if (estimate->parsed()) {
    const fh2::CircuitModel model = fh2::load_circuit(est_circuit);
    const fh2::ChernoffPlan plan = fh2::chernoff_plan(est_epsilon, est_delta);
    const fh2::ProbEstimate est = fh2::prob_estimate(
        model, parse_outcome(est_z, model.width), plan, flags.seed, {flags.threads, 0});
    emit("estimate", flags,
         {{"circuit", est_circuit}, {"z", est_z}, {"epsilon", est_epsilon}, {"delta", est_delta}},
         {{"estimate", estimate_json(est)}});
    return 0;
  }

  if (marginal->parsed()) {
    const fh2::CircuitModel model = fh2::load_circuit(mar_circuit);
    fh2::MarginalOptions options;
    options.delta = mar_delta;
    options.budget = mar_budget;
    options.threads = flags.threads;
    if (mar_positions.empty()) {
      for (int i = 1; i <= mar_k; ++i) mar_positions.push_back(i);
    }
    const fh2::MarginalEstimate est =
        fh2::estimate_marginals(model, mar_positions, mar_r, flags.seed, options);
    const fh2::NormalizedMarginal q = fh2::normalize(est);
    std::vector<std::string> samples;
    for (std::int64_t i = 0; i < mar_samples; ++i) {
      samples.push_back(
          fh2::sample_from(q, mar_mbits, flags.seed, static_cast<std::uint64_t>(i)).str());
    }
    if (!mar_table) {
      for (const auto& s : samples) std::cout << s << "\n";
      return 0;
    }
    json table;
    for (std::size_t i = 0; i < q.table.size(); ++i) {
      table[fh2::BitString::from_index(est.k, i).str()] = q.table[i];
    }
    emit("marginal", flags,
         {{"circuit", mar_circuit},
          {"positions", est.positions},
          {"r", mar_r},
          {"delta", mar_delta},
          {"samples", mar_samples},
          {"m_bits", mar_mbits}},
         {{"table", std::move(table)},
          {"samples", samples},
          {"epsilon", est.epsilon},
          {"T", est.samples}});
    return 0;
  }

  if (compile->parsed()) {
    const fh2::CircuitModel model = fh2::load_circuit(comp_circuit);
    const fh2::Compilation comp = fh2::compile_to_hc1q(model);
    const std::string circuit_text = fh2::serialize_circuit(comp.circuit);
    const std::string sidecar = fh2::sidecar_text(comp);
    if (!comp_out_circuit.empty()) write_file(comp_out_circuit, circuit_text);
    if (!comp_out_post.empty()) write_file(comp_out_post, sidecar);
    json postselect;
    for (const auto& [position, bit] : comp.postselect) {
      postselect[std::to_string(position)] = static_cast<int>(bit);
    }
    emit("compile", flags, {{"circuit", comp_circuit}},
         {{"width", comp.circuit.width},
          {"h", comp.hadamards},
          {"n", comp.source_width},
          {"outputs", comp.outputs},
          {"postselect", std::move(postselect)},
          {"success_probability", fh2::postselection_probability(comp)},
          {"circuit", circuit_text},
          {"sidecar", sidecar}});
    return 0;
  }

  if (paths->parsed()) {
    const fh2::CircuitModel model = fh2::load_circuit(paths_circuit);
    json params{{"circuit", paths_circuit}};
    json result;
    if (paths_state) {
      const fh2::StateVector state = fh2::reconstruct_state(model, paths_cap);
      json amps = json::array();
      for (std::size_t i = 0; i < state.size(); ++i) {
        amps.push_back({state.amplitude(i).real(), state.amplitude(i).imag()});
      }
      result["amplitudes"] = std::move(amps);
      result["width"] = model.width;
      result["h"] = fh2::hadamard_count(model);
    } else {
      if (paths_y.empty()) throw std::invalid_argument("paths needs --y or --state");
      params["y"] = paths_y;
      const fh2::PathOutcome outcome =
          fh2::enumerate_path(model, fh2::BitString::from_string(paths_y));
      result["s"] = static_cast<int>(outcome.sign);
      result["z"] = outcome.reg.str();
    }
    emit("paths", flags, std::move(params), std::move(result));
    return 0;
  }

  if (pdd_make->parsed()) {
    const fh2::PddMaxInstance instance =
        fh2::make_instance(fh2::load_circuit(mk_u1), fh2::load_circuit(mk_u2), mk_a, mk_b);
    fh2::save_instance(mk_out, mk_u1, mk_u2, mk_a, mk_b);
    emit("pdd-make", flags,
         {{"u1", mk_u1}, {"u2", mk_u2}, {"a", mk_a}, {"b", mk_b}, {"out", mk_out}},
         {{"width", instance.u1.width},
          {"u1_family", std::string(fh2::family_name(instance.u1.family))},
          {"u2_family", std::string(fh2::family_name(instance.u2.family))}});
    return 0;
  }

  if (pdd_merlin->parsed()) {
    const fh2::PddMaxInstance instance = fh2::load_instance(inst_path);
    const fh2::MerlinMessage message = fh2::honest_merlin(instance, flags.seed, pdd_cap);
    emit("pdd-merlin", flags, {{"instance", inst_path}, {"cap", pdd_cap}},
         {{"z", message.z.str()}, {"coin", static_cast<int>(message.coin)}});
    return 0;
  }

  if (pdd_arthur->parsed()) {
    const fh2::PddMaxInstance instance = fh2::load_instance(inst_path);
    const fh2::MaOutcome outcome =
        fh2::arthur_verify(instance, parse_outcome(arthur_z, instance.u1.width), pdd_k,
                           flags.seed, flags.threads);
    emit("pdd-arthur", flags, {{"instance", inst_path}, {"z", arthur_z}, {"k", pdd_k}},
         outcome_json(outcome, instance));
    return 0;
  }

  if (pdd_run->parsed()) {
    const fh2::PddMaxInstance instance = fh2::load_instance(inst_path);
    const fh2::MaOutcome outcome =
        fh2::run_ma(instance, pdd_k, flags.seed, flags.threads, pdd_cap);
    emit("pdd-run", flags, {{"instance", inst_path}, {"k", pdd_k}, {"cap", pdd_cap}},
         outcome_json(outcome, instance));
    return 0;
  }

  if (pdd_decide->parsed()) {
    const fh2::PddMaxInstance instance = fh2::load_instance(inst_path);
    const fh2::MaOutcome outcome = fh2::bqp_decider(instance, pdd_k, flags.seed, pdd_cap);
    emit("pdd-decide", flags, {{"instance", inst_path}, {"k", pdd_k}, {"cap", pdd_cap}},
         outcome_json(outcome, instance));
    return 0;
  }

  if (pdd_reduce->parsed()) {
    const fh2::CircuitModel v = fh2::load_circuit(red_circuit);
    const fh2::ReductionResult red = fh2::bqp_reduction(v, red_r, red_m);
    write_file(red_u1, fh2::serialize_circuit(red.instance.u1));
    write_file(red_u2, fh2::serialize_circuit(red.instance.u2));
    fh2::save_instance(red_out, red_u1, red_u2, red.instance.a, red.instance.b);
    emit("pdd-reduce", flags,
         {{"circuit", red_circuit},
          {"r", red_r},
          {"m", red_m},
          {"out_u1", red_u1},
          {"out_u2", red_u2},
          {"out", red_out}},
         {{"a", red.instance.a},
          {"b", red.instance.b},
          {"n", red.source_width},
          {"width", red.instance.u1.width}});
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const fh2::ResourceError& e) {
    std::cerr << "fh2lab: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "fh2lab: " << e.what() << "\n";
    return 2;
  }
}
