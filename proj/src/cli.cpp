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

#include "qheat/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "qheat/scenarios.hpp"

namespace qheat::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_short(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6e", v);
  return buf;
}

struct Common {
  std::string scenario;
  std::string config;
  std::string out;
  std::uint64_t seed = 0;
};

Scenario load(const Common& c) {
  if (c.scenario.empty() == c.config.empty()) {
    throw UsageError("exactly one of --scenario or --config is required");
  }
  if (!c.scenario.empty()) {
    try {
      return scenario(c.scenario, c.seed);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  try {
    return load_scenario_file(c.config);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
}

// Writes to --out when set, otherwise to the fallback stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw UsageError("cannot open output file '" + path + "'");
      os_ = &file_;
    }
  }
  std::ostream& operator*() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

std::string pair_name(const SystemSpec& spec, const PairRef& p) {
  return spec.qubit(p.a).label + "-" + spec.qubit(p.b).label;
}

std::string_view kind_name(ConvexityTermKind k) {
  switch (k) {
    case ConvexityTermKind::Pair:
      return "pair";
    case ConvexityTermKind::IntraCoherence:
      return "intra-coherence";
    case ConvexityTermKind::CrossCoherence:
      return "cross-coherence";
  }
  return "?";
}

// ---------------------------------------------------------------------------

int cmd_validate(const Common& c, std::ostream& out) {
  const Scenario s = load(c);
  bool ok = true;
  out << "scenario: " << s.name << "\n";

  const HtcReport htc = s.htc();
  out << "heat transfer condition: residual " << fmt_short(htc.residual);
  if (htc.holds) {
    out << " (holds)\n";
  } else if (s.declared_htc_violation) {
    out << " (violated, declared by the scenario)\n";
  } else {
    out << " (VIOLATED)\n";
    ok = false;
  }

  // Informational only: a sum of individually off-resonant Pauli terms may
  // still commute with the free Hamiltonian.
  out << "per-term frequency matching (informational):\n";
  std::size_t idx = 0;
  for (const PauliSum* sum : {&s.h_inter, &s.h_perturb}) {
    for (const auto& t : sum->terms()) {
      const bool match = frequency_match_check(t, s.spec);
      out << "  term " << idx++ << " " << t.to_string() << ": frequencies "
          << (match ? "matched" : "unmatched") << "\n";
    }
  }

  try {
    const DensityMatrix rho = s.initial_state();
    out << "initial state: valid, min eigenvalue "
        << fmt_short(rho.eigenvalues().front()) << "\n";
    try {
      LedgerBuilder(rho, s.spec, s.parts());
      out << "local equilibrium: yes\n";
    } catch (const NotLocalEquilibriumError& e) {
      out << "local equilibrium: NO (" << e.what() << ")\n";
      ok = false;
    }
    const Theorem1Witness w = theorem1_witness(rho, s.spec);
    std::size_t coherent = 0;
    for (const auto& t : w.triplets) coherent += !t.diagonal;
    for (const auto& d : w.doublets) coherent += !d.diagonal;
    out << "coherent triplets/doublets: " << coherent << " (no-coherence theorem "
        << (w.theorem_applies ? "applies" : "does not apply") << ")\n";
  } catch (const InvalidStateError& e) {
    out << "initial state: INVALID (" << e.what() << ")\n";
    ok = false;
  }
  out << (ok ? "result: ok\n" : "result: FAILED\n");
  return ok ? kOk : kValidationFailure;
}

struct RunWindow {
  std::optional<double> t_max;
  std::optional<std::size_t> t_steps;
};

std::vector<double> window(const Scenario& s, const RunWindow& w) {
  const double t_max = w.t_max.value_or(s.run.t_max);
  const std::size_t steps = w.t_steps.value_or(s.run.t_steps);
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw UsageError("--t-max must be >= 0");
  return uniform_times(t_max, steps);
}

// Ledger time series, or nullopt after reporting why it cannot be built.
std::optional<TimeSeries> run_series(const Scenario& s, const RunWindow& w,
                                     std::ostream& err) {
  const auto times = window(s, w);
  try {
    const DensityMatrix rho = s.initial_state();
    return ledger_series(rho, s.h_total(), s.parts(), s.spec, times);
  } catch (const InvalidStateError& e) {
    err << "initial state rejected: " << e.what() << "\n";
  } catch (const NotLocalEquilibriumError& e) {
    err << e.what() << "\n";
  }
  return std::nullopt;
}

int cmd_evolve(const Common& c, const RunWindow& w, std::ostream& out, std::ostream& err) {
  const Scenario s = load(c);
  const auto ts = run_series(s, w, err);
  if (!ts) return kValidationFailure;
  Sink sink(c.out, out);
  std::ostream& os = *sink;
  os << "t,q,lhs";
  for (std::size_t k = 1; k <= s.spec.num_a(); ++k) os << ",relA_" << k;
  os << ",relB,dI_AB,dI_A,dI_A:B,dT_A,dJ_A,mechanism\n";
  for (std::size_t i = 0; i < ts->times.size(); ++i) {
    const HeatLedger& L = ts->ledgers[i];
    os << fmt(ts->times[i]) << ',' << fmt(ts->q[i]) << ',' << fmt(ts->lhs[i]);
    for (double r : L.rel_entropy_a) os << ',' << fmt(r);
    os << ',' << fmt(L.rel_entropy_b) << ',' << fmt(L.delta_mutual_ab) << ','
       << fmt(L.delta_mutual_intra) << ',' << fmt(L.delta_mutual_cross) << ','
       << fmt(L.delta_temp_inhom) << ',' << fmt(L.delta_interaction) << ','
       << to_string(ts->mechanisms[i]) << '\n';
  }
  return kOk;
}

int cmd_ledger(const Common& c, const RunWindow& w, std::ostream& out, std::ostream& err) {
  const Scenario s = load(c);
  const auto ts = run_series(s, w, err);
  if (!ts) return kValidationFailure;
  const auto it = std::min_element(ts->lhs.begin(), ts->lhs.end());
  const std::size_t i = static_cast<std::size_t>(it - ts->lhs.begin());
  const HeatLedger& L = ts->ledgers[i];
  double worst = 0.0;
  for (const auto& l : ts->ledgers) worst = std::max(worst, l.identity_residual());

  Sink sink(c.out, out);
  std::ostream& os = *sink;
  os << "scenario: " << s.name << "\n";
  for (const auto& n : s.notes) os << "note: " << n << "\n";
  os << "window: " << ts->times.size() << " points on [0, " << fmt(ts->times.back())
     << "]\n";
  os << "most negative lhs at t = " << fmt(ts->times[i]) << "\n";
  auto row = [&](const std::string& label, double v) {
    os << std::left << std::setw(25) << label << std::right << fmt_short(v) << "\n";
  };
  row("  Q", L.q);
  row("  (beta_B - beta_A) Q", L.lhs);
  for (std::size_t k = 0; k < L.rel_entropy_a.size(); ++k) {
    const std::string a = "A" + std::to_string(k + 1);
    row("  S(" + a + "'||" + a + ")", L.rel_entropy_a[k]);
  }
  row("  S(B'||B)", L.rel_entropy_b);
  row("  dI_AB", L.delta_mutual_ab);
  row("    dI_A", L.delta_mutual_intra);
  row("    dI_A:B", L.delta_mutual_cross);
  row("  dT_A", L.delta_temp_inhom);
  row("  dJ_A", L.delta_interaction);
  row("  energy balance", L.energy_balance());
  os << "mechanism: " << to_string(ts->mechanisms[i]) << "\n";
  if (s.expected_mechanism) {
    os << "expected mechanism: " << to_string(*s.expected_mechanism)
       << (ts->mechanisms[i] == *s.expected_mechanism ? " (match)" : " (MISMATCH)")
       << "\n";
  }
  os << "worst identity residual over window: " << fmt_short(worst)
     << (s.htc().holds ? "" : " (heat transfer condition violated, identity not expected)")
     << "\n";
  return kOk;
}

int cmd_derivs(const Common& c, int order, std::ostream& out) {
  if (order < 1 || order > 6) throw UsageError("--order must lie in 1..6");
  const Scenario s = load(c);
  const DensityMatrix rho = s.initial_state();
  const PauliSum hb = free_hamiltonian_b(s.spec);
  Sink sink(c.out, out);
  std::ostream& os = *sink;
  os << "n,value,imag_residue\n";
  for (int n = 1; n <= order; ++n) {
    const DerivativeReport r = q_derivative(rho, s.h_total(), hb, s.spec, n);
    os << n << ',' << fmt(r.value) << ',' << fmt(r.imaginary_residue) << '\n';
  }
  const bool two_body = s.h_intra.empty() && s.h_perturb.empty() &&
                        !s.h_inter.empty() && split_flip_flop_pairs(s.h_inter, s.spec);
  if (order >= 2 && two_body) {
    const DerivativeReport r = convexity_decomposition(rho, s.h_inter, s.spec);
    os << "\nkind,first,second,value\n";
    for (const auto& t : r.decomposition->terms) {
      os << kind_name(t.kind) << ',' << pair_name(s.spec, t.first) << ','
         << pair_name(s.spec, t.second) << ',' << fmt(t.value) << '\n';
    }
    os << "pair-total,,," << fmt(r.decomposition->pair_total) << '\n';
    os << "intra-total,,," << fmt(r.decomposition->intra_total) << '\n';
    os << "cross-total,,," << fmt(r.decomposition->cross_total) << '\n';
  }
  return kOk;
}

struct ScanFlags {
  std::optional<double> a;
  std::optional<double> j_over_c;
  std::string grid = "201";
  bool oracle = false;
  std::string boundary_out;
};

GridAxis parse_axis_count(const std::string& s) {
  std::size_t pos = 0;
  unsigned long n = 0;
  try {
    n = std::stoul(s, &pos);
  } catch (const std::exception&) {
    throw UsageError("bad --grid value '" + s + "'");
  }
  if (pos != s.size() || n < 2 || n > 100000) {
    throw UsageError("bad --grid value '" + s + "'");
  }
  GridAxis ax;
  ax.points = n;
  return ax;
}

int cmd_phase_scan(const Common& c, const ScanFlags& f, std::ostream& out,
                   std::ostream& err) {
  ScanOptions o;
  const auto x = f.grid.find('x');
  o.ratio1 = parse_axis_count(f.grid.substr(0, x));
  o.ratio2 = x == std::string::npos ? o.ratio1 : parse_axis_count(f.grid.substr(x + 1));

  // A scenario or config with the tripartite layout supplies a, beta_B omega_B
  // and the perturbation ratio; explicit flags override.
  if (!c.scenario.empty() || !c.config.empty()) {
    const Scenario s = load(c);
    if (s.spec.num_a() != 2 || s.spec.num_b() != 1) {
      throw UsageError("phase-scan needs a scenario with qubits A1, A2 and B");
    }
    o.a = s.spec.qubit(1).omega / s.spec.qubit(2).omega;
    o.beta_b_omega_b = s.spec.beta_b() * s.spec.qubit(2).omega;
    if (!s.h_perturb.empty() && !s.h_inter.empty()) {
      o.j_over_c = std::abs(s.h_perturb.terms().front().coeff()) /
                   std::abs(s.h_inter.terms().front().coeff());
    }
  }
  if (f.a) o.a = *f.a;
  if (f.j_over_c) o.j_over_c = *f.j_over_c;
  o.oracle = f.oracle;
  if (!(o.a > 0.0)) throw UsageError("--a must be positive");
  if (o.j_over_c < 0.0) throw UsageError("--j-over-c must be >= 0");

  const ScanResult r = phase_scan(o);
  const SystemSpec ref = tripartite_spec(o.a, 1.0, o.beta_b_omega_b,
                                         phase_boundary(o.a, 3.0) + 0.5, 3.0);
  const CalibrationResult cal = calibrate_convention(ref, 1.0, o.j_over_c);

  {
    Sink sink(c.out, out);
    std::ostream& os = *sink;
    os << "beta_a1_rel,beta_a2_rel,a,j_over_c,convexity,aht\n";
    for (const auto& p : r.points) {
      os << fmt(p.beta_a1_over_beta_b) << ',' << fmt(p.beta_a2_over_beta_b) << ','
         << fmt(p.a) << ',' << fmt(p.j_over_c) << ',' << fmt(p.convexity) << ','
         << (p.aht ? 1 : 0) << '\n';
    }
  }
  if (!f.boundary_out.empty()) {
    Sink sink(f.boundary_out, out);
    std::ostream& os = *sink;
    os << "beta_a1_rel,beta_a2_rel,convexity\n";
    for (const auto& b : r.boundary) {
      os << fmt(b.beta_a1_over_beta_b) << ',' << fmt(b.beta_a2_over_beta_b) << ','
         << fmt(b.convexity) << '\n';
    }
  }
  std::ostream& meta = c.out.empty() ? err : out;
  meta << "mode: " << (o.oracle ? "oracle (nested commutator)" : "closed form") << "\n"
       << "exponent convention: " << to_string(r.convention)
       << " (relative error vs oracle: linear " << fmt_short(cal.linear_rel_err)
       << ", doubled " << fmt_short(cal.doubled_rel_err) << ")\n"
       << "grid: " << o.ratio1.points << " x " << o.ratio2.points
       << ", beta_B omega_B = " << fmt(o.beta_b_omega_b) << "\n"
       << "AHT cells: " << r.aht_cells << ", boundary points: " << r.boundary.size()
       << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Heat-flow simulation for locally equilibrated qubit systems", "qheat"};
  app.require_subcommand(1);

  Common common;
  RunWindow win;
  int order = 2;
  ScanFlags scan;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--scenario", common.scenario, "built-in scenario name");
    sub->add_option("--config", common.config, "JSON config file");
    sub->add_option("--seed", common.seed, "seed for randomized scenarios");
    sub->add_option("--out", common.out, "output file (default stdout)");
  };
  auto add_window = [&](CLI::App* sub) {
    sub->add_option("--t-max", win.t_max, "end of the time window (1/omega_0)");
    sub->add_option("--t-steps", win.t_steps, "number of time steps");
  };

  CLI::App* validate = app.add_subcommand("validate", "check Hamiltonian and initial state");
  add_common(validate);
  CLI::App* evolve = app.add_subcommand("evolve", "ledger time series as CSV");
  add_common(evolve);
  add_window(evolve);
  CLI::App* derivs = app.add_subcommand("derivs", "heat derivatives at t = 0");
  add_common(derivs);
  derivs->add_option("--order", order, "highest derivative order (1..6)");
  CLI::App* ledger = app.add_subcommand("ledger", "ledger summary at the most anomalous time");
  add_common(ledger);
  add_window(ledger);
  CLI::App* scan_cmd = app.add_subcommand("phase-scan", "initial convexity over A temperatures");
  add_common(scan_cmd);
  scan_cmd->add_option("--a", scan.a, "frequency ratio omega_A2 / omega_B");
  scan_cmd->add_option("--j-over-c", scan.j_over_c, "perturbation strength J / |c|");
  scan_cmd->add_option("--grid", scan.grid, "points per axis, N or NxM");
  scan_cmd->add_flag("--oracle", scan.oracle, "evaluate nodes by nested commutators");
  scan_cmd->add_option("--boundary-out", scan.boundary_out, "boundary CSV file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(common, out);
    if (evolve->parsed()) return cmd_evolve(common, win, out, err);
    if (derivs->parsed()) return cmd_derivs(common, order, out);
    if (ledger->parsed()) return cmd_ledger(common, win, out, err);
    if (scan_cmd->parsed()) return cmd_phase_scan(common, scan, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidStateError& e) {
    err << "invalid state: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kValidationFailure;
  }
  return kUsage;
}

}  // namespace qheat::cli
