// Copyright 2026 The qheat Authors
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

// JSON form of a Scenario. Layout:
//
//   {
//     "system": {
//       "frequency_ghz": 4.0,                       (optional, enables kelvin)
//       "a": [{"label": "A1", "omega": 2.0, "kelvin": 1.0}, ...],
//       "b": [{"label": "B", "omega": 1.0}],
//       "b_kelvin": 1.2
//     },
//     "hamiltonian": {"inter": [term...], "intra": [...], "perturb": [...],
//                     "declared_htc_violation": false},
//     "initial_state": {"coherence": [term...], "correlations": [...]},
//     "run": {"name": "fig1b", "t_max": 2000, "t_steps": 2000,
//             "expected_mechanism": "temperature-inhomogeneity"}
//   }
//
// Without frequency_ghz, qubits give "beta" and the system gives "beta_b"
// in units of 1/omega_0. A term is
//   {"coeff": [re, im], "ops": [["A1", "+"], ["B", "-"]], "hc": true}
// with ops from {x, y, z, +, -}; "hc" appends the Hermitian conjugate.

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qheat/scenarios.hpp"

namespace qheat {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

const json& require(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path, std::string("missing key '") + key + "'");
  return *it;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

std::string text(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

void reject_unknown(const json& obj, std::initializer_list<const char*> keys,
                    const std::string& path) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known |= it.key() == k;
    if (!known) fail(path, "unknown key '" + it.key() + "'");
  }
}

PauliSum parse_terms(const json& arr, const std::string& path) {
  if (!arr.is_array()) fail(path, "expected an array of terms");
  PauliSum out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    const json& t = arr[i];
    if (!t.is_object()) fail(p, "expected an object");
    reject_unknown(t, {"coeff", "ops", "hc"}, p);
    const json& c = require(t, "coeff", p);
    Complex coeff;
    if (c.is_number()) {
      coeff = c.get<double>();
    } else if (c.is_array() && c.size() == 2 && c[0].is_number() && c[1].is_number()) {
      coeff = {c[0].get<double>(), c[1].get<double>()};
    } else {
      fail(p + ".coeff", "expected a number or [re, im]");
    }
    const json& ops = require(t, "ops", p);
    if (!ops.is_array() || ops.empty()) fail(p + ".ops", "expected a non-empty array");
    std::vector<PauliFactor> factors;
    for (std::size_t k = 0; k < ops.size(); ++k) {
      const std::string q = p + ".ops[" + std::to_string(k) + "]";
      const json& f = ops[k];
      if (!f.is_array() || f.size() != 2 || !f[0].is_string() || !f[1].is_string()) {
        fail(q, "expected [label, op]");
      }
      const std::string op = f[1].get<std::string>();
      if (op.size() != 1) fail(q, "operator must be one of x, y, z, +, -");
      try {
        factors.push_back({f[0].get<std::string>(), pauli_op_from_char(op[0])});
      } catch (const std::invalid_argument& e) {
        fail(q, e.what());
      }
    }
    bool hc = false;
    if (auto it = t.find("hc"); it != t.end()) {
      if (!it->is_boolean()) fail(p + ".hc", "expected a boolean");
      hc = it->get<bool>();
    }
    try {
      PauliTerm term(coeff, std::move(factors));
      out += term;
      if (hc) out += term.adjoint();
    } catch (const std::invalid_argument& e) {
      fail(p, e.what());
    }
  }
  return out;
}

PauliSum optional_terms(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) return {};
  return parse_terms(*it, path + "." + key);
}

json terms_to_json(const PauliSum& h) {
  json arr = json::array();
  for (const auto& t : h.terms()) {
    json ops = json::array();
    for (const auto& f : t.factors()) ops.push_back({f.label, std::string(1, to_char(f.op))});
    arr.push_back({{"coeff", {t.coeff().real(), t.coeff().imag()}}, {"ops", ops}});
  }
  return arr;
}

SystemSpec parse_system(const json& sys, std::optional<SiSource>& si) {
  const std::string path = "system";
  if (!sys.is_object()) fail(path, "expected an object");
  reject_unknown(sys, {"frequency_ghz", "a", "b", "b_kelvin", "beta_b"}, path);
  const bool kelvin = sys.contains("frequency_ghz");
  double f_hz = 0.0;
  if (kelvin) {
    si.emplace();
    si->frequency_ghz = number(sys["frequency_ghz"], path + ".frequency_ghz");
    f_hz = si->frequency_ghz * 1e9;
    if (!(f_hz > 0.0)) fail(path + ".frequency_ghz", "must be positive");
  }
  auto beta_of = [&](const json& obj, const char* k_key, const char* b_key,
                     const std::string& p) {
    if (kelvin) {
      const double t = number(require(obj, k_key, p), p + "." + k_key);
      try {
        return std::pair{beta_omega_si(t, f_hz), t};
      } catch (const std::invalid_argument& e) {
        fail(p + "." + k_key, e.what());
      }
    }
    return std::pair{number(require(obj, b_key, p), p + "." + b_key), 0.0};
  };

  const json& a = require(sys, "a", path);
  if (!a.is_array()) fail(path + ".a", "expected an array");
  std::vector<ASubsystem> as;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::string p = path + ".a[" + std::to_string(i) + "]";
    reject_unknown(a[i], {"label", "omega", "kelvin", "beta"}, p);
    const auto [beta, t] = beta_of(a[i], "kelvin", "beta", p);
    as.push_back({text(require(a[i], "label", p), p + ".label"),
                  number(require(a[i], "omega", p), p + ".omega"), beta});
    if (kelvin) si->a_kelvin.push_back(t);
  }
  const json& b = require(sys, "b", path);
  if (!b.is_array()) fail(path + ".b", "expected an array");
  std::vector<BQubit> bs;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const std::string p = path + ".b[" + std::to_string(i) + "]";
    reject_unknown(b[i], {"label", "omega"}, p);
    bs.push_back({text(require(b[i], "label", p), p + ".label"),
                  number(require(b[i], "omega", p), p + ".omega")});
  }
  const auto [beta_b, tb] = beta_of(sys, "b_kelvin", "beta_b", path);
  if (kelvin) si->b_kelvin = tb;
  try {
    return SystemSpec(std::move(as), std::move(bs), beta_b);
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

}  // namespace

Scenario scenario_from_json(std::string_view doc) {
  json root;
  try {
    root = json::parse(doc);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) fail("config", "expected a JSON object");
  reject_unknown(root, {"system", "hamiltonian", "initial_state", "run"}, "config");

  std::optional<SiSource> si;
  Scenario s{"config", parse_system(require(root, "system", "config"), si)};
  s.si = std::move(si);

  const json& h = require(root, "hamiltonian", "config");
  if (!h.is_object()) fail("hamiltonian", "expected an object");
  reject_unknown(h, {"inter", "intra", "perturb", "declared_htc_violation"}, "hamiltonian");
  s.h_inter = optional_terms(h, "inter", "hamiltonian");
  s.h_intra = optional_terms(h, "intra", "hamiltonian");
  s.h_perturb = optional_terms(h, "perturb", "hamiltonian");
  if (auto it = h.find("declared_htc_violation"); it != h.end()) {
    if (!it->is_boolean()) fail("hamiltonian.declared_htc_violation", "expected a boolean");
    s.declared_htc_violation = it->get<bool>();
  }

  if (auto it = root.find("initial_state"); it != root.end()) {
    if (!it->is_object()) fail("initial_state", "expected an object");
    reject_unknown(*it, {"coherence", "correlations"}, "initial_state");
    s.initial.coherence = optional_terms(*it, "coherence", "initial_state");
    s.initial.correlations = optional_terms(*it, "correlations", "initial_state");
  }

  if (auto it = root.find("run"); it != root.end()) {
    const json& r = *it;
    if (!r.is_object()) fail("run", "expected an object");
    reject_unknown(r, {"name", "t_max", "t_steps", "expected_mechanism", "notes"}, "run");
    if (r.contains("name")) s.name = text(r["name"], "run.name");
    if (r.contains("t_max")) {
      s.run.t_max = number(r["t_max"], "run.t_max");
      if (!(s.run.t_max >= 0.0)) fail("run.t_max", "must be >= 0");
    }
    if (r.contains("t_steps")) {
      if (!r["t_steps"].is_number_unsigned()) fail("run.t_steps", "expected a count");
      s.run.t_steps = r["t_steps"].get<std::size_t>();
    }
    if (r.contains("expected_mechanism")) {
      try {
        s.expected_mechanism =
            mechanism_from_string(text(r["expected_mechanism"], "run.expected_mechanism"));
      } catch (const std::invalid_argument& e) {
        fail("run.expected_mechanism", e.what());
      }
    }
    if (r.contains("notes")) {
      if (!r["notes"].is_array()) fail("run.notes", "expected an array of strings");
      for (const auto& n : r["notes"]) s.notes.push_back(text(n, "run.notes"));
    }
  }

  // Resolve labels now so a typo is reported as a config problem.
  for (const PauliSum* sum : {&s.h_inter, &s.h_intra, &s.h_perturb, &s.initial.coherence,
                              &s.initial.correlations}) {
    for (const auto& t : sum->terms()) {
      for (const auto& f : t.factors()) {
        if (!s.spec.find(f.label)) fail("hamiltonian", "unknown qubit label '" + f.label + "'");
      }
    }
  }
  return s;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return scenario_from_json(buf.str());
}

std::string scenario_to_json(const Scenario& s) {
  json sys;
  json a = json::array();
  const auto a_idx = s.spec.a_indices();
  for (std::size_t k = 0; k < a_idx.size(); ++k) {
    const Qubit& q = s.spec.qubit(a_idx[k]);
    json e = {{"label", q.label}, {"omega", q.omega}};
    if (s.si) {
      e["kelvin"] = s.si->a_kelvin.at(k);
    } else {
      e["beta"] = q.beta;
    }
    a.push_back(e);
  }
  json b = json::array();
  for (std::size_t i : s.spec.b_indices()) {
    b.push_back({{"label", s.spec.qubit(i).label}, {"omega", s.spec.qubit(i).omega}});
  }
  sys["a"] = a;
  sys["b"] = b;
  if (s.si) {
    sys["frequency_ghz"] = s.si->frequency_ghz;
    sys["b_kelvin"] = s.si->b_kelvin;
  } else {
    sys["beta_b"] = s.spec.beta_b();
  }

  json h = {{"inter", terms_to_json(s.h_inter)},
            {"intra", terms_to_json(s.h_intra)},
            {"perturb", terms_to_json(s.h_perturb)},
            {"declared_htc_violation", s.declared_htc_violation}};
  json init = {{"coherence", terms_to_json(s.initial.coherence)},
               {"correlations", terms_to_json(s.initial.correlations)}};
  json run = {{"name", s.name}, {"t_max", s.run.t_max}, {"t_steps", s.run.t_steps}};
  if (s.expected_mechanism) {
    run["expected_mechanism"] = std::string(to_string(*s.expected_mechanism));
  }
  if (!s.notes.empty()) run["notes"] = s.notes;
  json root = {{"system", sys}, {"hamiltonian", h}, {"initial_state", init}, {"run", run}};
  return root.dump(2) + "\n";
}

}  // namespace qheat
