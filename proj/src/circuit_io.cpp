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

#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "fh2/circuit.hpp"
#include "fh2/errors.hpp"

namespace fh2 {

namespace {

std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

int parse_position(const std::string& tok, int line_no) {
  int value = 0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size() || value < 1) {
    throw ParseError("expected a positive qubit position, got '" + tok + "'", line_no);
  }
  return value;
}

double parse_angle(const std::string& tok, int line_no) {
  try {
    std::size_t used = 0;
    const double value = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument("");
    return value;
  } catch (const std::exception&) {
    throw ParseError("expected an angle in radians, got '" + tok + "'", line_no);
  }
}

/// Renders a double with the shortest decimal form that round-trips exactly.
std::string render_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

Gate parse_gate_line(const std::string& kind, const std::vector<std::string>& tokens, int line_no) {
  auto positions = [&](std::size_t count) {
    if (tokens.size() != count + 1) {
      throw ParseError(kind + " expects " + std::to_string(count) + " position(s)", line_no);
    }
    std::vector<int> out;
    for (std::size_t i = 1; i < tokens.size(); ++i) out.push_back(parse_position(tokens[i], line_no));
    return out;
  };
  if (kind == "x") return {GateKind::X, positions(1)};
  if (kind == "cnot") return {GateKind::Cnot, positions(2)};
  if (kind == "toffoli") return {GateKind::Toffoli, positions(3)};
  if (kind == "z") return {GateKind::Z, positions(1)};
  if (kind == "cz") return {GateKind::Cz, positions(2)};
  if (kind == "ccz") return {GateKind::Ccz, positions(3)};
  if (kind == "h") return {GateKind::H, positions(1)};
  if (kind == "ch") return {GateKind::Ch, positions(2)};
  if (kind == "rz") {
    if (tokens.size() != 3) throw ParseError("rz expects an angle and a position", line_no);
    Gate g{GateKind::Rz, {parse_position(tokens[2], line_no)}};
    g.angle = parse_angle(tokens[1], line_no);
    return g;
  }
  if (kind == "ncx") {
    // signed controls, unsigned target last: ncx +1 -2 3
    if (tokens.size() < 3) throw ParseError("ncx expects controls and a target", line_no);
    std::vector<int> qubits;
    std::uint64_t negative = 0;
    for (std::size_t i = 1; i + 1 < tokens.size(); ++i) {
      const std::string& tok = tokens[i];
      if (tok.size() < 2 || (tok[0] != '+' && tok[0] != '-')) {
        throw ParseError("ncx control must be signed (+p or -p), got '" + tok + "'", line_no);
      }
      if (tok[0] == '-') negative |= std::uint64_t{1} << (i - 1);
      qubits.push_back(parse_position(tok.substr(1), line_no));
    }
    qubits.push_back(parse_position(tokens.back(), line_no));
    return Gate::ncx(std::move(qubits), negative);
  }
  throw ParseError("unknown gate '" + kind + "'", line_no);
}

}  // namespace

CircuitModel parse_circuit(std::istream& in) {
  std::string line;
  int line_no = 0;
  bool have_model = false, have_qubits = false, have_fixed = false;
  CircuitModel model;
  std::vector<std::pair<Gate, int>> pending;  // gate + line for error reporting

  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split_tokens(line);
    if (tokens.empty() || tokens[0][0] == '#') continue;
    const std::string& head = tokens[0];
    if (head == "model") {
      if (have_model) throw ParseError("duplicate model line", line_no);
      if (tokens.size() != 2) throw ParseError("model expects one argument", line_no);
      if (tokens[1] == "hc1q") {
        model.family = Family::Hc1q;
        model.fixed = 1;
      } else if (tokens[1] == "hcmq") {
        model.family = Family::Hcmq;
      } else if (tokens[1] == "iqp") {
        model.family = Family::Iqp;
      } else if (tokens[1] == "general") {
        model.family = Family::General;
      } else {
        throw ParseError("unknown model '" + tokens[1] + "'", line_no);
      }
      have_model = true;
    } else if (head == "qubits") {
      if (!have_model) throw ParseError("model line must come first", line_no);
      if (have_qubits) throw ParseError("duplicate qubits line", line_no);
      if (tokens.size() != 2) throw ParseError("qubits expects one argument", line_no);
      model.width = parse_position(tokens[1], line_no);
      have_qubits = true;
    } else if (head == "fixed") {
      if (model.family != Family::Hcmq) throw ParseError("fixed is valid for hcmq only", line_no);
      if (have_fixed) throw ParseError("duplicate fixed line", line_no);
      if (tokens.size() != 2) throw ParseError("fixed expects one argument", line_no);
      model.fixed = parse_position(tokens[1], line_no);
      have_fixed = true;
    } else {
      if (!have_model || !have_qubits) {
        throw ParseError("gate before model/qubits header", line_no);
      }
      pending.emplace_back(parse_gate_line(head, tokens, line_no), line_no);
    }
  }
  if (!have_model) throw ParseError("missing model line");
  if (!have_qubits) throw ParseError("missing qubits line");
  if (model.family == Family::Hcmq && !have_fixed) throw ParseError("hcmq requires a fixed line");

  for (auto& [gate, gate_line] : pending) {
    try {
      validate_gate(gate, model.width);
      const bool ok = (model.family == Family::Hc1q || model.family == Family::Hcmq)
                          ? is_classical(gate.kind)
                      : model.family == Family::Iqp ? is_diagonal(gate.kind)
                                                    : true;
      if (!ok) {
        throw std::invalid_argument(std::string(gate_name(gate.kind)) + " not allowed in " +
                                    std::string(family_name(model.family)) + " family");
      }
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), gate_line);
    }
    model.gates.push_back(std::move(gate));
  }
  model.validate();
  return model;
}

CircuitModel parse_circuit(const std::string& text) {
  std::istringstream in(text);
  return parse_circuit(in);
}

CircuitModel load_circuit(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open circuit file '" + path + "'");
  try {
    return parse_circuit(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string serialize_circuit(const CircuitModel& model) {
  model.validate();
  std::string out = "model " + std::string(family_name(model.family)) + "\n";
  out += "qubits " + std::to_string(model.width) + "\n";
  if (model.family == Family::Hcmq) out += "fixed " + std::to_string(model.fixed) + "\n";
  for (const Gate& g : model.gates) {
    out += gate_name(g.kind);
    if (g.kind == GateKind::Rz) out += " " + render_double(g.angle);
    if (g.kind == GateKind::Ncx) {
      for (std::size_t i = 0; i + 1 < g.qubits.size(); ++i) {
        out += ((g.negative >> i) & 1) ? " -" : " +";
        out += std::to_string(g.qubits[i]);
      }
      out += " " + std::to_string(g.qubits.back());
    } else {
      for (int q : g.qubits) out += " " + std::to_string(q);
    }
    out += "\n";
  }
  return out;
}

}  // namespace fh2
