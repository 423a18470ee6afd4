// Copyright 2026 The vpurify Authors
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

#include "vpurify/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace vpurify {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> tokens(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

double parse_double(const std::string& s) {
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("bad number: " + s);
  return v;
}

long parse_long(const std::string& s) {
  std::size_t pos = 0;
  const long v = std::stol(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("bad integer: " + s);
  return v;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

NoiseSpec parse_noise_spec(const std::vector<std::string>& toks, const std::string& key) {
  if (toks.empty()) throw std::invalid_argument("noise spec for " + key + " is empty");
  NoiseSpec spec;
  spec.family = noise_family_from_string(toks[0]);
  if (spec.family == NoiseFamily::pauli_table) {
    if (toks.size() != 5)
      throw std::invalid_argument(key + ": pauli table needs 4 probabilities");
    for (int i = 0; i < 4; ++i) spec.pauli_probs.push_back(parse_double(toks[1 + i]));
  } else {
    if (toks.size() != 2) throw std::invalid_argument(key + ": expected 'family rate'");
    spec.rate = parse_double(toks[1]);
  }
  return spec;
}

std::string noise_spec_text(const NoiseSpec& spec) {
  if (spec.family == NoiseFamily::pauli_table) {
    std::string out = to_string(spec.family);
    for (double p : spec.pauli_probs) out += " " + fmt(p);
    return out;
  }
  return to_string(spec.family) + " " + fmt(spec.rate);
}

std::string to_string(AncillaRefreshMode m) {
  return m == AncillaRefreshMode::exact_mixed ? "exact-mixed" : "sampled-pauli";
}

AncillaRefreshMode refresh_from_string(const std::string& s) {
  if (s == "exact-mixed") return AncillaRefreshMode::exact_mixed;
  if (s == "sampled-pauli") return AncillaRefreshMode::sampled_pauli;
  throw std::invalid_argument("unknown ancilla refresh mode: " + s);
}

std::string to_string(PecMode m) {
  switch (m) {
    case PecMode::off: return "off";
    case PecMode::exact_branch_sum: return "exact-branch-sum";
    case PecMode::monte_carlo: return "monte-carlo";
  }
  return "?";
}

PecMode pec_mode_from_string(const std::string& s) {
  if (s == "off") return PecMode::off;
  if (s == "exact-branch-sum") return PecMode::exact_branch_sum;
  if (s == "monte-carlo") return PecMode::monte_carlo;
  throw std::invalid_argument("unknown pec mode: " + s);
}

}  // namespace

std::string to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

OutputFormat output_format_from_string(const std::string& s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  throw std::invalid_argument("unknown output format: " + s);
}

RunConfig parse_config(const std::string& text) {
  RunConfig config;
  bool schema_seen = false;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;

  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("config line " + std::to_string(line_no) + ": " + msg);
  };

  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail("unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "task" && section != "noise" && section != "mitigation" &&
          section != "run" && section != "output" && section != "scan")
        fail("unknown section [" + section + "]");
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto toks = tokens(value);
    if (toks.empty()) fail("empty value for " + key);

    try {
      if (section.empty()) {
        if (key == "schema") {
          if (parse_long(value) != 1) fail("unsupported schema version");
          schema_seen = true;
        } else {
          fail("unknown top-level key: " + key);
        }
      } else if (section == "task") {
        auto& task = config.spec.task;
        if (key == "kind") task.kind = task_kind_from_string(value);
        else if (key == "params") {
          task.true_params.clear();
          for (const auto& t : toks) task.true_params.push_back(parse_double(t));
        } else if (key == "N") task.encoding_count = static_cast<int>(parse_long(value));
        else if (key == "t") task.evolution_time = parse_double(value);
        else if (key == "measurement") task.measurement = measurement_basis_from_string(value);
        else fail("unknown [task] key: " + key);
      } else if (section == "noise") {
        auto& noise = config.spec.noise;
        if (key == "single-qubit") noise.single_qubit = parse_noise_spec(toks, key);
        else if (key == "two-qubit") noise.two_qubit = parse_noise_spec(toks, key);
        else if (key == "cswap") {
          if (toks.size() < 2 || toks.size() > 3) fail("cswap: 'family local [global]'");
          noise.cswap.family = noise_family_from_string(toks[0]);
          noise.cswap.local_rate = parse_double(toks[1]);
          if (toks.size() == 3) noise.cswap.global_rate = parse_double(toks[2]);
          else noise.cswap.global_rate.reset();
        } else fail("unknown [noise] key: " + key);
      } else if (section == "mitigation") {
        auto& mit = config.spec.mitigation;
        if (key == "method") mit.method = purification_method_from_string(value);
        else if (key == "m") mit.order = static_cast<int>(parse_long(value));
        else if (key == "layers") mit.layers = static_cast<int>(parse_long(value));
        else if (key == "ancilla-refresh") mit.ancilla_refresh = refresh_from_string(value);
        else if (key == "pec-mode") mit.pec_mode = pec_mode_from_string(value);
        else fail("unknown [mitigation] key: " + key);
      } else if (section == "run") {
        auto& spec = config.spec;
        if (key == "shots") {
          if (value == "exact") spec.shots.reset();
          else spec.shots = parse_long(value);
        } else if (key == "trials") spec.trials = static_cast<int>(parse_long(value));
        else if (key == "seed") spec.master_seed = std::stoull(value);
        else if (key == "iterations")
          spec.feedback_iterations = static_cast<int>(parse_long(value));
        else if (key == "pec-assumed") {
          if (value == "none") spec.pec_assumed_noise.reset();
          else spec.pec_assumed_noise = parse_noise_spec(toks, key);
        } else fail("unknown [run] key: " + key);
      } else if (section == "output") {
        if (key == "path") config.out_path = value;
        else if (key == "format") config.format = output_format_from_string(value);
        else fail("unknown [output] key: " + key);
      } else if (section == "scan") {
        auto& scan = config.scan;
        if (key == "N") {
          scan.n_values.clear();
          for (const auto& t : toks) scan.n_values.push_back(static_cast<int>(parse_long(t)));
        } else if (key == "p") {
          scan.rates.clear();
          for (const auto& t : toks) scan.rates.push_back(parse_double(t));
        } else if (key == "methods") scan.methods = toks;
        else if (key == "regions") {
          scan.regions.clear();
          for (const auto& t : toks) scan.regions.push_back(static_cast<int>(parse_long(t)));
        } else fail("unknown [scan] key: " + key);
      }
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception& e) {
      fail(e.what());
    }
  }
  if (!schema_seen) throw std::invalid_argument("config: missing 'schema = 1'");

  config.spec.task.validate();
  config.spec.noise.validate();
  if (config.spec.mitigation.method != PurificationMethod::none)
    config.spec.mitigation.validate();
  if (config.spec.trials < 1) throw std::invalid_argument("config: trials must be >= 1");
  if (config.spec.shots && *config.spec.shots < 1)
    throw std::invalid_argument("config: shots must be >= 1");
  for (const auto& m : config.scan.methods) purification_method_from_string(m);
  for (int r : config.scan.regions)
    if (r < 1 || r > 4) throw std::invalid_argument("config: scan regions must be 1..4");
  for (double r : config.scan.rates)
    if (r < 0.0 || r > 1.0) throw std::invalid_argument("config: scan rates must be in [0, 1]");
  for (int n : config.scan.n_values)
    if (n < 1) throw std::invalid_argument("config: scan N values must be >= 1");
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string to_text(const RunConfig& config) {
  std::ostringstream out;
  out << "schema = 1\n\n";

  const auto& task = config.spec.task;
  out << "[task]\n";
  out << "kind = " << to_string(task.kind) << "\n";
  out << "params =";
  for (double p : task.true_params) out << " " << fmt(p);
  out << "\n";
  out << "N = " << task.encoding_count << "\n";
  out << "t = " << fmt(task.evolution_time) << "\n";
  out << "measurement = " << to_string(task.measurement) << "\n\n";

  const auto& noise = config.spec.noise;
  out << "[noise]\n";
  out << "single-qubit = " << noise_spec_text(noise.single_qubit) << "\n";
  out << "two-qubit = " << noise_spec_text(noise.two_qubit) << "\n";
  out << "cswap = " << to_string(noise.cswap.family) << " " << fmt(noise.cswap.local_rate);
  if (noise.cswap.global_rate) out << " " << fmt(*noise.cswap.global_rate);
  out << "\n\n";

  const auto& mit = config.spec.mitigation;
  out << "[mitigation]\n";
  out << "method = " << to_string(mit.method) << "\n";
  out << "m = " << mit.order << "\n";
  out << "layers = " << mit.layers << "\n";
  out << "ancilla-refresh = " << to_string(mit.ancilla_refresh) << "\n";
  out << "pec-mode = " << to_string(mit.pec_mode) << "\n\n";

  out << "[run]\n";
  out << "shots = ";
  if (config.spec.shots) out << *config.spec.shots;
  else out << "exact";
  out << "\n";
  out << "trials = " << config.spec.trials << "\n";
  out << "seed = " << config.spec.master_seed << "\n";
  out << "iterations = " << config.spec.feedback_iterations << "\n";
  out << "pec-assumed = ";
  if (config.spec.pec_assumed_noise) out << noise_spec_text(*config.spec.pec_assumed_noise);
  else out << "none";
  out << "\n\n";

  out << "[output]\n";
  out << "path = " << config.out_path << "\n";
  out << "format = " << to_string(config.format) << "\n";

  const auto& scan = config.scan;
  if (!scan.n_values.empty() || !scan.rates.empty() || !scan.methods.empty() ||
      !scan.regions.empty()) {
    out << "\n[scan]\n";
    if (!scan.n_values.empty()) {
      out << "N =";
      for (int n : scan.n_values) out << " " << n;
      out << "\n";
    }
    if (!scan.rates.empty()) {
      out << "p =";
      for (double r : scan.rates) out << " " << fmt(r);
      out << "\n";
    }
    if (!scan.methods.empty()) {
      out << "methods =";
      for (const auto& m : scan.methods) out << " " << m;
      out << "\n";
    }
    if (!scan.regions.empty()) {
      out << "regions =";
      for (int r : scan.regions) out << " " << r;
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace vpurify
