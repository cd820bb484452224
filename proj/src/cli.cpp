#include "tfgp/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "tfgp/constants.hpp"
#include "tfgp/corrections.hpp"
#include "tfgp/errors.hpp"
#include "tfgp/gp_solver.hpp"
#include "tfgp/io.hpp"
#include "tfgp/lemma.hpp"
#include "tfgp/painleve.hpp"

namespace tfgp {

namespace {

const char* const kCommands[] = {"solve-painleve", "corrections", "constants",
                                 "ground-state",   "verify",      "lemma-check"};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::vector<int> parse_dimensions(const std::string& s) {
  if (s == "all") return {1, 2, 3};
  std::vector<int> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part != "1" && part != "2" && part != "3") {
      throw std::invalid_argument("--d: expected 1, 2, 3, a comma list of them, or all; got '" +
                                  s + "'");
    }
    out.push_back(part[0] - '0');
  }
  if (out.empty()) throw std::invalid_argument("--d: empty dimension list");
  return out;
}

std::vector<EnergyKind> parse_kinds(const std::string& s) {
  if (s == "all") return {EnergyKind::total, EnergyKind::potential, EnergyKind::kinetic};
  if (s == "total") return {EnergyKind::total};
  if (s == "potential") return {EnergyKind::potential};
  if (s == "kinetic") return {EnergyKind::kinetic};
  throw std::invalid_argument("--kind: expected total, potential, kinetic or all");
}

/// Tracks which module is running so solver errors carry context.
struct Stage {
  std::string name = "cli";
};

class Runner {
 public:
  Runner(const RunConfig& c, std::ostream& out) : c_(c), out_(out) {}

  int dispatch(Stage& stage) {
    std::filesystem::create_directories(c_.output_dir);
    if (c_.command == "lemma-check") return lemma_check(stage);
    stage.name = "painleve";
    PainleveOptions po;
    po.window = {c_.window_left, c_.window_right};
    po.nodes_per_unit = c_.nodes_per_unit;
    po.tol = c_.tol;
    const HastingsMcLeod nu0 = solve_hastings_mcleod(po);
    if (c_.command == "solve-painleve") return solve_painleve(nu0);
    if (c_.command == "corrections") return corrections(nu0, stage);
    if (c_.command == "constants") return constants(nu0, stage);
    if (c_.command == "ground-state") return ground_state(nu0, stage);
    return verify(nu0, stage);
  }

 private:
  std::string path(const std::string& stem) const {
    return (std::filesystem::path(c_.output_dir) / (stem + "." + c_.format)).string();
  }

  Header base_header() const {
    return {{"tool", std::string("tfgp ") + kVersion},
            {"command", c_.command},
            {"config_hash", c_.hash()}};
  }

  Header with_base(const Header& h) const {
    Header out = base_header();
    out.insert(out.end(), h.begin(), h.end());
    return out;
  }

  int solve_painleve(const HastingsMcLeod& nu0) {
    const std::string p = path("nu0");
    save_hastings_mcleod(p, nu0,
                         with_base({{"error_budget_painleve_residual",
                                     format_double(painleve_residual(nu0.grid(), nu0.values()))}}),
                         c_.delimiter());
    out_ << "nu0: " << nu0.grid().size() << " nodes on [" << -c_.window_left << ", "
         << c_.window_right << "], " << nu0.iterations() << " Newton iterations\n"
         << "  residual_norm = " << fmt("%.3e", nu0.residual_norm()) << "\n"
         << "  nu0(0) = " << fmt("%.12f", nu0(0.0)) << "\n"
         << "  wrote " << p << "\n";
    return 0;
  }

  int corrections(const HastingsMcLeod& nu0, Stage& stage) {
    for (int d : c_.dimensions) {
      stage.name = "corrections";
      const auto cs = solve_corrections(c_.n_max, d, nu0);
      for (const auto& cf : cs) {
        const std::string p = path("nu" + std::to_string(cf.order) + "_d" + std::to_string(d));
        save_correction(p, cf, with_base({{"error_budget_residual", format_double(cf.residual_norm)}}),
                        c_.delimiter());
        out_ << "d=" << d << " n=" << cf.order << ": nu(0) = " << fmt("%.9f", cf(0.0))
             << ", residual = " << fmt("%.2e", cf.residual_norm);
        if (cf.order == 1) {
          const TailFit fit = correction_tail_fit(cf);
          out_ << ", tail fit " << fmt("%.4f", fit.coefficient) << " y^"
               << fmt("%.4f", fit.exponent);
        }
        out_ << "\n  wrote " << p << "\n";
      }
    }
    return 0;
  }

  static void add_coeffs(Header& h, const std::string& prefix, const ExpansionCoefficients& e) {
    h.emplace_back(prefix + ".c_const", format_double(e.c_const));
    h.emplace_back(prefix + ".c_log", format_double(e.c_log));
    h.emplace_back(prefix + ".c_eps2", format_double(e.c_eps2));
    h.emplace_back(prefix + ".c_eps83", format_double(e.c_eps83));
    h.emplace_back(prefix + ".budget_eps2", format_double(e.budget_eps2));
    h.emplace_back(prefix + ".budget_eps83", format_double(e.budget_eps83));
  }

  static void add_integral(Header& h, const std::string& key, const IntegralValue& v) {
    h.emplace_back(key, format_double(v.value));
    h.emplace_back(key + ".budget", format_double(v.budget()));
  }

  int constants(const HastingsMcLeod& nu0, Stage& stage) {
    Header entries;
    double worst_budget = 0;
    out_ << "  d  energy     c_const            c_log              c_eps2             c_eps83\n";
    for (int d : c_.dimensions) {
      stage.name = "corrections";
      const auto nu1 = solve_corrections(1, d, nu0);
      stage.name = "constants";
      const LayerIntegrals li = layer_integrals(d, nu0, nu1[0]);
      const auto total = energy_expansion_coeffs(d, li);
      const auto pot = potential_expansion_coeffs(d, li);
      const auto kin = kinetic_expansion_coeffs(total, pot);
      const std::string p = "d" + std::to_string(d);
      entries.emplace_back(p + ".beta", format_double(li.beta));
      entries.emplace_back(p + ".eta0_quartic", format_double(li.eta4));
      add_integral(entries, p + ".G0", li.g0);
      add_integral(entries, p + ".YG0", li.y_g0);
      add_integral(entries, p + ".G1", li.g1);
      add_integral(entries, p + ".G2", li.g2);
      add_integral(entries, p + ".YG2", li.y_g2);
      add_integral(entries, p + ".G3", li.g3);
      for (const auto* v : {&li.g0, &li.y_g0, &li.g1, &li.g2, &li.y_g2, &li.g3}) {
        worst_budget = std::max(worst_budget, v->budget());
      }
      for (const auto* e : {&total, &pot, &kin}) {
        add_coeffs(entries, p + "." + to_string(e->kind), *e);
        out_ << "  " << d << "  " << to_string(e->kind)
             << std::string(11 - to_string(e->kind).size(), ' ') << fmt("%-19.12f", e->c_const)
             << fmt("%-19.12f", e->c_log) << fmt("%-19.12f", e->c_eps2)
             << fmt("%.12f", e->c_eps83) << "\n";
      }
    }
    stage.name = "constants";
    const VirialCheck vc = virial_identity_check(nu0);
    const DpsConstant C = dps_constant_C(nu0);
    entries.emplace_back("virial.lhs", format_double(vc.lhs));
    entries.emplace_back("virial.rhs", format_double(vc.rhs));
    entries.emplace_back("virial.budget", format_double(vc.budget));
    entries.emplace_back("dps.C", format_double(C.C));
    entries.emplace_back("dps.C_tail", format_double(C.C_tail));
    entries.emplace_back("dps.C.error", format_double(C.error));
    entries.emplace_back("dps.phi_residual", format_double(dps_phi_residual(nu0)));

    Header comments = base_header();
    comments.emplace_back("version", kVersion);
    comments.emplace_back("error_budget_integrals", format_double(worst_budget));
    comments.emplace_back("error_budget_nu0_residual", format_double(nu0.residual_norm()));
    const std::string p = (std::filesystem::path(c_.output_dir) / "constants.txt").string();
    write_report(p, comments, entries);
    out_ << "virial: " << fmt("%.12f", vc.lhs) << " vs " << fmt("%.12f", vc.rhs) << "\n"
         << "C = " << fmt("%.10f", C.C) << " (+/- " << fmt("%.1e", C.error) << ")\n"
         << "wrote " << p << "\n";
    return 0;
  }

  int ground_state(const HastingsMcLeod& nu0, Stage& stage) {
    GroundStateOptions go;
    go.n_nodes = c_.n_nodes;
    go.layer_step = c_.layer_step;
    stage.name = "gp_solver";
    for (int d : c_.dimensions) {
      for (double eps : c_.eps_list) {
        const GroundState s = solve_ground_state(eps, d, nu0, go);
        const auto r = s.profile.grid().nodes();
        Table t;
        t.header = with_base({{"d", std::to_string(d)},
                              {"epsilon", format_double(eps)},
                              {"R_max", format_double(s.R_max)},
                              {"n_nodes", std::to_string(r.size())},
                              {"E_total", format_double(s.E_total)},
                              {"E_potential", format_double(s.E_potential)},
                              {"E_kinetic", format_double(s.E_kinetic)},
                              {"quartic", format_double(s.quartic)},
                              {"newton_iterations", std::to_string(s.newton_iterations)},
                              {"error_budget_residual", format_double(s.residual_norm)},
                              {"error_budget_quadrature", format_double(s.quadrature_error)}});
        t.names = {"r", "eta", "eta_d1"};
        t.columns = {{r.begin(), r.end()},
                     {s.profile.values().begin(), s.profile.values().end()},
                     {s.profile.first_derivative().begin(), s.profile.first_derivative().end()}};
        const std::string p =
            path("ground_state_d" + std::to_string(d) + "_eps" + format_double(eps));
        write_table(p, t, c_.delimiter());
        out_ << "d=" << d << " eps=" << eps << ": E=" << fmt("%.12f", s.E_total)
             << " E_p=" << fmt("%.12f", s.E_potential) << " E_k=" << fmt("%.12f", s.E_kinetic)
             << " (" << r.size() << " nodes, " << s.newton_iterations << " iterations)\n"
             << "  wrote " << p << "\n";
      }
    }
    return 0;
  }

  int verify(const HastingsMcLeod& nu0, Stage& stage) {
    const auto kinds = parse_kinds(c_.kind);
    GroundStateOptions go;
    go.n_nodes = c_.n_nodes;
    go.layer_step = c_.layer_step;
    bool all_pass = true;
    for (int d : c_.dimensions) {
      stage.name = "corrections";
      const auto nu1 = solve_corrections(1, d, nu0);
      stage.name = "constants";
      const LayerIntegrals li = layer_integrals(d, nu0, nu1[0]);
      const auto total = energy_expansion_coeffs(d, li);
      const auto pot = potential_expansion_coeffs(d, li);
      const auto kin = kinetic_expansion_coeffs(total, pot);

      stage.name = "gp_solver";
      std::vector<GroundState> states;
      std::vector<std::string> failures(c_.eps_list.size());
      for (std::size_t i = 0; i < c_.eps_list.size(); ++i) {
        try {
          states.push_back(solve_ground_state(c_.eps_list[i], d, nu0, go));
        } catch (const Error& e) {
          failures[i] = e.what();
        }
      }

      Table t;
      Header h = {{"d", std::to_string(d)}, {"threshold", format_double(c_.threshold)}};
      t.names = {"epsilon"};
      t.columns = {c_.eps_list};
      double worst_budget = 0;
      for (EnergyKind k : kinds) {
        const ExpansionCoefficients& co =
            k == EnergyKind::total ? total : k == EnergyKind::potential ? pot : kin;
        worst_budget = std::max({worst_budget, co.budget_eps2, co.budget_eps83});
        VerificationReport rep = verify_expansion(states, co, c_.threshold);
        std::vector<double> numeric, predicted, delta;
        std::size_t j = 0;
        for (std::size_t i = 0; i < c_.eps_list.size(); ++i) {
          predicted.push_back(co.evaluate(c_.eps_list[i]));
          if (failures[i].empty()) {
            numeric.push_back(rep.rows[j].numeric);
            delta.push_back(rep.rows[j].delta);
            ++j;
          } else {
            numeric.push_back(NAN);
            delta.push_back(NAN);
          }
        }
        const bool pass = rep.pass && j == c_.eps_list.size();
        all_pass = all_pass && pass;
        const std::string name = to_string(k);
        t.names.insert(t.names.end(), {"E_" + name, "predicted_" + name, "delta_" + name});
        t.columns.insert(t.columns.end(), {numeric, predicted, delta});
        h.emplace_back("slope_" + name, format_double(rep.slope));
        h.emplace_back("pass_" + name, pass ? "true" : "false");
        out_ << "d=" << d << " " << name << std::string(10 - name.size(), ' ')
             << "slope = " << fmt("%.3f", rep.slope) << " (threshold " << c_.threshold << ") "
             << (pass ? "PASS" : "FAIL") << "\n";
      }
      for (std::size_t i = 0; i < failures.size(); ++i) {
        if (!failures[i].empty()) {
          h.emplace_back("failure_eps" + format_double(c_.eps_list[i]), failures[i]);
          out_ << "  eps=" << c_.eps_list[i] << " failed: " << failures[i] << "\n";
        }
      }
      h.emplace_back("error_budget_coefficients", format_double(worst_budget));
      t.header = with_base(h);
      const std::string p = path("verify_d" + std::to_string(d));
      write_table(p, t, c_.delimiter());
      out_ << "  wrote " << p << "\n";
    }
    return all_pass ? 0 : 2;
  }

  int lemma_check(Stage& stage) {
    stage.name = "lemma";
    const auto rows = lemma_order_table();
    Table t;
    t.names = {"case", "d", "alpha", "k", "c", "left_only", "bound_only",
               "slope", "expected", "ratio_max", "ratio_min", "pass"};
    t.columns.assign(t.names.size(), {});
    int failed = 0;
    out_ << "case d alpha   k   c  slope    expected  result\n";
    for (const auto& r : rows) {
      const bool case1 = r.lemma_case == 1;
      const double vals[] = {double(r.lemma_case), double(r.dimension), r.g.alpha, r.g.k, r.g.c,
                             double(r.g.left_only), double(r.bound_only), r.slope, r.expected,
                             case1 ? r.bound_ratio_max : NAN, case1 ? r.bound_ratio_min : NAN,
                             double(r.pass)};
      for (std::size_t i = 0; i < t.names.size(); ++i) t.columns[i].push_back(vals[i]);
      failed += !r.pass;
      char line[160];
      std::snprintf(line, sizeof line, "%4d %d %5s %3.0f %3.0f  %-8.4f %-9.4f %s%s\n",
                    r.lemma_case, r.dimension,
                    r.g.left_only ? "left" : fmt("%.1f", r.g.alpha).c_str(), r.g.k, r.g.c,
                    r.slope, r.expected, r.bound_only ? ">= " : "", r.pass ? "PASS" : "FAIL");
      out_ << line;
    }
    t.header = with_base({{"eps", "1e-2 .. 1e-4, 5 geometric points"},
                          {"error_budget_quadrature", "1e-12 relative"},
                          {"failed_rows", std::to_string(failed)}});
    const std::string p = path("lemma_check");
    write_table(p, t, c_.delimiter());
    out_ << failed << " of " << rows.size() << " rows failed\nwrote " << p << "\n";
    return failed ? 2 : 0;
  }

  const RunConfig& c_;
  std::ostream& out_;
};

}  // namespace

std::string RunConfig::canonical() const {
  std::string s = "command=" + command + ";d=";
  for (int d : dimensions) s += std::to_string(d) + ",";
  s += ";window=" + format_double(window_left) + "," + format_double(window_right);
  s += ";nodes_per_unit=" + std::to_string(nodes_per_unit);
  s += ";n_nodes=" + std::to_string(n_nodes);
  s += ";layer_step=" + format_double(layer_step);
  s += ";tol=" + format_double(tol);
  s += ";eps=";
  for (double e : eps_list) s += format_double(e) + ",";
  s += ";n_max=" + std::to_string(n_max);
  s += ";kind=" + kind;
  s += ";threshold=" + format_double(threshold);
  s += ";format=" + format;
  s += ";version=" + std::string(kVersion);
  return s;
}

std::string RunConfig::hash() const { return hex64(fnv1a(canonical())); }

void validate(const RunConfig& c) {
  if (std::find(std::begin(kCommands), std::end(kCommands), c.command) == std::end(kCommands)) {
    throw std::invalid_argument("unknown command '" + c.command + "'");
  }
  if (!(c.window_left > 0 && c.window_right > 0)) {
    throw std::invalid_argument("--window: both ends must be positive");
  }
  if (c.nodes_per_unit <= 0) throw std::invalid_argument("--nodes-per-unit must be positive");
  if (!(c.layer_step > 0)) throw std::invalid_argument("--layer-step must be positive");
  if (!(c.tol > 0)) throw std::invalid_argument("--tol must be positive");
  if (!(c.threshold > 0)) throw std::invalid_argument("--threshold must be positive");
  if (c.n_max < 1 || c.n_max > 3) throw std::invalid_argument("--n-max must be 1, 2 or 3");
  if (c.format != "csv" && c.format != "tsv") throw std::invalid_argument("--format: csv or tsv");
  if (c.dimensions.empty()) throw std::invalid_argument("--d: no dimensions");
  if (c.eps_list.empty()) throw std::invalid_argument("--eps: empty list");
  for (std::size_t i = 0; i < c.eps_list.size(); ++i) {
    if (!(c.eps_list[i] > 0 && c.eps_list[i] <= 0.2)) {
      throw std::invalid_argument("--eps: values must lie in (0, 0.2]");
    }
    if (i > 0 && !(c.eps_list[i] < c.eps_list[i - 1])) {
      throw std::invalid_argument("--eps: list must be strictly decreasing");
    }
  }
  if (c.command == "verify" && c.eps_list.size() < 3) {
    throw std::invalid_argument("--eps: verify needs at least 3 values");
  }
  parse_kinds(c.kind);
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate(config);
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::usage);
  }
  Stage stage;
  try {
    Runner r(config, out);
    return r.dispatch(stage);
  } catch (const std::exception& e) {
    err << stage.name << ": " << e.what() << "\n";
    return static_cast<int>(ExitCode::solver_error);
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Thomas-Fermi boundary-layer expansion toolkit", "tfgp"};
  app.set_version_flag("--version", std::string(kVersion));
  app.set_config("--config", "", "TOML or INI file with option defaults");
  app.require_subcommand(1, 1);

  RunConfig c;
  std::string dims = "1";
  std::vector<double> window{c.window_left, c.window_right};
  app.add_option("--d", dims, "Dimension: 1, 2, 3, a comma list, or all")->capture_default_str();
  app.add_option("--window", window, "Layer window L-,L+")
      ->delimiter(',')
      ->expected(2)
      ->capture_default_str();
  app.add_option("--nodes-per-unit", c.nodes_per_unit, "Layer grid nodes per unit of y")
      ->capture_default_str();
  app.add_option("--n-nodes", c.n_nodes, "Radial nodes for ground states (0: automatic)")
      ->capture_default_str();
  app.add_option("--layer-step", c.layer_step, "Radial spacing in layer units")
      ->capture_default_str();
  app.add_option("--tol", c.tol, "Painleve Newton tolerance")->capture_default_str();
  app.add_option("--eps", c.eps_list, "Decreasing eps list")->delimiter(',')->capture_default_str();
  app.add_option("--n-max", c.n_max, "Highest correction order")->capture_default_str();
  app.add_option("--kind", c.kind, "Energy for verify: total, potential, kinetic, all")
      ->capture_default_str();
  app.add_option("--threshold", c.threshold, "Minimum remainder slope")->capture_default_str();
  app.add_option("--output-dir,-o", c.output_dir, "Directory for output files")
      ->envname("TFGP_OUTPUT_DIR")
      ->capture_default_str();
  app.add_option("--format", c.format, "csv or tsv")
      ->check(CLI::IsMember({"csv", "tsv"}))
      ->capture_default_str();

  for (const char* name : kCommands) {
    app.add_subcommand(name)->fallthrough();
  }

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(args);
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return static_cast<int>(ExitCode::usage);
  }
  try {
    c.dimensions = parse_dimensions(dims);
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::usage);
  }
  c.window_left = window.at(0);
  c.window_right = window.at(1);
  c.command = app.get_subcommands().front()->get_name();
  return run(c, out, err);
}

}  // namespace tfgp
