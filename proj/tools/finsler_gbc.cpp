// finsler_gbc: run checks and Gauss-Bonnet-Chern verifications on scenarios.
// Exit codes: 0 all checks pass, 2 a tolerance check failed, 1 bad input.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "fgbc/checks.hpp"
#include "fgbc/gbc.hpp"
#include "fgbc/metrics.hpp"
#include "fgbc/report.hpp"
#include "json.hpp"

namespace {

using namespace fgbc;

struct Options {
  std::string scenario_path;
  std::string builtin;
  std::string out = "out";
  std::optional<int> mesh;
  std::string eps;
  std::optional<std::uint64_t> seed;
  int threads = 0;
  std::optional<double> tolerance;
  int points = 11;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Scenario load(const Options& o) {
  Scenario s;
  try {
    if (!o.scenario_path.empty()) {
      if (!std::filesystem::exists(o.scenario_path)) throw InputError("scenario file not found: " + o.scenario_path);
      s = load_scenario(o.scenario_path);
    } else if (!o.builtin.empty()) {
      s = builtin_scenario(o.builtin);
    } else {
      throw InputError("no scenario given (use --scenario <file> or --builtin <name>)");
    }
    if (o.mesh) s.mesh = *o.mesh;
    if (!o.eps.empty()) {
      std::istringstream text(scenario_text(s) + "eps = " + o.eps + "\n");
      s = parse_scenario(text, "--eps");
    }
    if (o.seed) s.seed = *o.seed;
    if (o.tolerance) s.tolerance = *o.tolerance;
    validate(s);
  } catch (const DomainError& e) {
    throw InputError(e.what());
  }
  return s;
}

std::string path(const Options& o, const std::string& file) { return (std::filesystem::path(o.out) / file).string(); }

void status(bool ok, const std::string& what) { std::cout << (ok ? "PASS " : "FAIL ") << what << "\n"; }

bool run_check_metric(const Options& o, const Scenario& s) {
  const auto m = scenario_metric(s);
  const int charts = scenario_manifold(s).chart_count();
  const auto c = check_metric(*m, 100, s.seed, charts, o.tolerance.value_or(1e-9));
  Table t{{"identity", "label", "max_residual"}, {}};
  nlohmann::ordered_json j = {{"metric", c.metric}, {"samples", c.samples}, {"tolerance", c.tolerance}};
  for (int i = 0; i < kHomogeneityIdentities; ++i) {
    t.add({std::to_string(i + 1), std::string("\"") + homogeneity_labels()[static_cast<std::size_t>(i)] + "\"",
           num(c.max_residual[static_cast<std::size_t>(i)])});
    j["residuals"].push_back({{"label", homogeneity_labels()[static_cast<std::size_t>(i)]},
                              {"max", c.max_residual[static_cast<std::size_t>(i)]}});
  }
  j["cartan_norm"] = {{"min", c.cartan_min}, {"max", c.cartan_max}};
  j["pseudoconvexity"] = {{"min_eigenvalue", c.scan.min_eigenvalue},
                          {"samples", c.scan.samples},
                          {"skipped_on_locus", c.scan.skipped_on_locus},
                          {"locus", m->locus_description()}};
  j["passed"] = c.passed;
  write_file(path(o, "metric_check.json"), j.dump(2) + "\n");
  write_file(path(o, "homogeneity.csv"), t.csv());
  std::cout << "metric " << c.metric << ": worst homogeneity residual " << c.worst << " over " << c.samples
            << " samples, cartan norm in [" << c.cartan_min << ", " << c.cartan_max << "], min eigenvalue "
            << c.scan.min_eigenvalue << "\n";
  status(c.passed, "check-metric");
  return c.passed;
}

bool run_structure(const Options& o, const Scenario& s) {
  const auto m = scenario_metric(s);
  const auto c = check_structure(*m, 20, s.seed, scenario_manifold(s).chart_count(), o.tolerance.value_or(1e-6));
  nlohmann::ordered_json j = {{"metric", c.metric},      {"samples", c.samples},     {"del_residual", c.max_del},
                              {"dbar_residual", c.max_dbar}, {"tolerance", c.tolerance}, {"passed", c.passed}};
  write_file(path(o, "structure.json"), j.dump(2) + "\n");
  std::cout << "structure equations: del " << c.max_del << ", dbar " << c.max_dbar << "\n";
  status(c.passed, "structure");
  return c.passed;
}

bool run_volume(const Options& o, const Scenario& s) {
  const auto m = scenario_metric(s);
  const int n = m->dim();
  const auto sweep = volume_sweep(*m, o.points, SphereRule::standard(n));
  Table t{{"re_z1", "im_z1", "re_z2", "im_z2", "vol", "error"}, {}};
  for (const auto& v : sweep) {
    const cplx z2 = n > 1 ? v.z(1) : cplx(0.0);
    t.add({num(v.z(0).real()), num(v.z(0).imag()), num(z2.real()), num(z2.imag()), num(v.value.vol),
           num(v.value.error)});
  }
  write_file(path(o, "volume.csv"), t.csv());
  write_file(path(o, "volume.dat"), t.dat());
  const auto f = m->flags();
  const double spread = volume_spread(sweep);
  bool ok = true;
  std::string rule = "positive";
  if (f.hermitian) {
    rule = "reference volume";
    for (const auto& v : sweep) ok = ok && within(v.value.vol, reference_volume(n), o.tolerance.value_or(1e-6));
  } else if (f.berwald) {
    rule = "constant";
    ok = spread <= o.tolerance.value_or(1e-8);
  }
  for (const auto& v : sweep) ok = ok && v.value.vol > 0.0;
  std::cout << "volume of " << m->name() << ": " << sweep.front().value.vol << " (" << sweep.front().value.rule
            << "), spread " << spread << ", reference " << reference_volume(n) << "\n";
  status(ok, "volume (" + rule + ")");
  return ok;
}

bool run_degree(const Options& o, const Scenario& s) {
  const auto tables = degree_tables(s);
  write_file(path(o, "degree.csv"), zero_table(tables).csv());
  write_file(path(o, "degree.dat"), zero_table(tables).dat());
  write_file(path(o, "degree.json"), to_json(tables));
  const double target = 1.0 / reference_volume(scenario_manifold(s).n);
  bool ok = true;
  for (const auto& t : tables) {
    const bool z = within(t.extrapolated.value, target, s.tolerance);
    ok = ok && z;
    std::cout << "zero " << format_point(t.zero.point) << " chart " << t.zero.chart << ": " << t.extrapolated.value
              << " +- " << t.extrapolated.error << " (target " << target << ")\n";
  }
  status(ok, "degree");
  return ok;
}

bool run_gbc(const Options& o, const Scenario& s) {
  GbcReport r;
  try {
    r = gbc_verify(s);
  } catch (const DegeneracyError& e) {
    std::cout << e.what() << "\n";
    status(false, "gbc");
    return false;
  }
  write_file(path(o, "gbc.json"), to_json(r));
  write_file(path(o, "gbc_lhs.csv"), lhs_table(r).csv());
  write_file(path(o, "degree.csv"), zero_table(r.zeros).csv());
  nlohmann::ordered_json timing = {{"lhs_seconds", r.seconds_lhs}, {"rhs_seconds", r.seconds_rhs}};
  write_file(path(o, "timing.json"), timing.dump(2) + "\n");
  std::cout << "scenario " << r.scenario << ": lhs " << r.lhs.value << " +- " << r.lhs.error << ", rhs "
            << r.rhs.value << " +- " << r.rhs.error << ", target " << r.target << " (chi " << r.chi << ", vol "
            << r.volume_mode << ", " << r.lhs_detail.nodes << " nodes, " << r.seconds_lhs + r.seconds_rhs << " s)\n";
  status(r.passed, "gbc");
  return r.passed;
}

bool run_corollary(const Options& o, const Scenario& s) {
  const auto r = riemann_surface_check(s);
  write_file(path(o, "corollary.json"), to_json(r));
  std::cout << "scenario " << r.scenario << ": " << r.value.value << " +- " << r.value.error << " (chi " << r.chi
            << ")\n";
  status(r.passed, "corollary");
  return r.passed;
}

bool run_suite(const Options& o, const Scenario& s) {
  bool ok = run_check_metric(o, s);
  ok = run_structure(o, s) && ok;
  ok = run_volume(o, s) && ok;
  const auto hopf = hopf_check(s);
  write_file(path(o, "hopf.json"), to_json(hopf));
  status(hopf.ok, "hopf: " + hopf.message);
  ok = ok && hopf.ok;
  if (hopf.ok) {
    const auto p = pointwise_checks(s);
    write_file(path(o, "pointwise.json"), to_json(p));
    write_file(path(o, "pointwise.csv"), pointwise_table(p).csv());
    const double tol = o.tolerance.value_or(1e-5);
    const bool pw = p.max_lemma <= tol && p.max_identity <= tol && p.quadratic_decay;
    std::cout << "transgression residuals: lemma " << p.max_lemma << ", identity " << p.max_identity
              << (p.quadratic_decay ? ", quadratic decay" : ", no quadratic decay") << "\n";
    status(pw, "pointwise");
    ok = pw && ok;
    if (!hopf.determinants.empty()) ok = run_degree(o, s) && ok;
    if (scenario_manifold(s).n == 1) ok = run_corollary(o, s) && ok;
    ok = run_gbc(o, s) && ok;
  }
  return ok;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--scenario", o.scenario_path, "scenario file (key = value)");
  sub->add_option("--builtin", o.builtin, "built-in scenario: a..f or its name");
  sub->add_option("--out", o.out, "output directory")->capture_default_str();
  sub->add_option("--mesh", o.mesh, "mesh level override");
  sub->add_option("--eps", o.eps, "excision radii, comma separated, decreasing");
  sub->add_option("--seed", o.seed, "seed override");
  sub->add_option("--threads", o.threads, "worker threads (0: default)");
  sub->add_option("--tolerance", o.tolerance, "replace every pass threshold");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Complex Finsler Gauss-Bonnet-Chern workbench"};
  app.require_subcommand(1);
  Options o;
  std::vector<std::pair<CLI::App*, bool (*)(const Options&, const Scenario&)>> commands = {
      {app.add_subcommand("check-metric", "homogeneity identities, Cartan norm, pseudoconvexity"), run_check_metric},
      {app.add_subcommand("volume", "indicatrix volume along a base sweep"), run_volume},
      {app.add_subcommand("structure", "structure equation residuals"), run_structure},
      {app.add_subcommand("degree", "boundary integrals around the zeros"), run_degree},
      {app.add_subcommand("gbc", "direct integral versus boundary sum versus chi"), run_gbc},
      {app.add_subcommand("corollary", "Riemann surface check (n = 1)"), run_corollary},
      {app.add_subcommand("suite", "everything above"), run_suite}};
  for (auto& [sub, fn] : commands) add_common(sub, o);
  commands[1].first->add_option("--points", o.points, "sweep points")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  try {
    set_thread_count(o.threads);
    const Scenario s = load(o);
    for (auto& [sub, fn] : commands)
      if (sub->parsed()) {
        std::filesystem::create_directories(o.out);
        write_file(path(o, "scenario.txt"), scenario_text(s));
        return fn(o, s) ? 0 : 2;
      }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
