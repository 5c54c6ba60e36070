#include "fgbc/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "fgbc/metrics.hpp"

namespace fgbc {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(const std::string& source, int line, const std::string& key, const std::string& value) {
  throw DomainError(source + ":" + std::to_string(line) + ": invalid value '" + value + "' for key '" + key + "'");
}

double to_double(const std::string& source, int line, const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) bad_value(source, line, key, v);
    return d;
  } catch (const std::logic_error&) {
    bad_value(source, line, key, v);
  }
}

long long to_int(const std::string& source, int line, const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long long d = std::stoll(v, &pos);
    if (pos != v.size()) bad_value(source, line, key, v);
    return d;
  } catch (const std::logic_error&) {
    bad_value(source, line, key, v);
  }
}

bool to_bool(const std::string& source, int line, const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  bad_value(source, line, key, v);
}

std::vector<double> to_list(const std::string& source, int line, const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(source, line, key, trim(item)));
  if (out.empty()) bad_value(source, line, key, v);
  return out;
}

Scenario make(std::string name, std::string manifold, std::string metric, double lambda, std::string field, int mesh,
              double tol) {
  Scenario s;
  s.name = std::move(name);
  s.manifold = std::move(manifold);
  s.metric = std::move(metric);
  s.lambda = lambda;
  s.field = std::move(field);
  s.mesh = mesh;
  s.tolerance = tol;
  if (make_manifold(s.manifold).n == 1) s.rule_phi = 64;
  return s;
}

}  // namespace

std::vector<std::string> scenario_keys() {
  return {"scenario", "name",         "manifold",     "metric", "lambda",     "field",     "mesh",
          "eps",      "rule_eta",     "rule_phi",     "boundary_eta", "boundary_phi", "step", "richardson",
          "seed",     "tolerance",    "samples",      "swap_charts",  "error_estimate"};
}

Scenario parse_scenario(std::istream& in, const std::string& source) {
  Scenario s;
  std::string raw;
  int line = 0;
  bool seen_other = false;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos)
      throw DomainError(source + ":" + std::to_string(line) + ": expected 'key = value'");
    const std::string key = trim(text.substr(0, eq));
    const std::string v = trim(text.substr(eq + 1));
    if (key == "scenario") {
      if (seen_other) throw DomainError(source + ":" + std::to_string(line) + ": 'scenario' must come first");
      s = builtin_scenario(v);
      continue;
    }
    seen_other = true;
    if (key == "name") {
      s.name = v;
    } else if (key == "manifold") {
      s.manifold = v;
    } else if (key == "metric") {
      s.metric = v;
    } else if (key == "lambda") {
      s.lambda = to_double(source, line, key, v);
    } else if (key == "field") {
      s.field = v;
    } else if (key == "mesh") {
      s.mesh = static_cast<int>(to_int(source, line, key, v));
    } else if (key == "eps") {
      s.eps = to_list(source, line, key, v);
    } else if (key == "rule_eta") {
      s.rule_eta = static_cast<int>(to_int(source, line, key, v));
    } else if (key == "rule_phi") {
      s.rule_phi = static_cast<int>(to_int(source, line, key, v));
    } else if (key == "boundary_eta") {
      s.boundary_eta = static_cast<int>(to_int(source, line, key, v));
    } else if (key == "boundary_phi") {
      s.boundary_phi = static_cast<int>(to_int(source, line, key, v));
    } else if (key == "step") {
      s.step = to_double(source, line, key, v);
    } else if (key == "richardson") {
      s.richardson = to_bool(source, line, key, v);
    } else if (key == "seed") {
      s.seed = static_cast<std::uint64_t>(to_int(source, line, key, v));
    } else if (key == "tolerance") {
      s.tolerance = to_double(source, line, key, v);
    } else if (key == "samples") {
      s.samples = static_cast<int>(to_int(source, line, key, v));
    } else if (key == "swap_charts") {
      s.swap_charts = static_cast<int>(to_int(source, line, key, v));
    } else if (key == "error_estimate") {
      s.error_estimate = to_bool(source, line, key, v);
    } else {
      throw DomainError(source + ":" + std::to_string(line) + ": unknown key '" + key + "'");
    }
  }
  validate(s);
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open scenario file '" + path + "'");
  return parse_scenario(in, path);
}

std::string scenario_text(const Scenario& s) {
  std::ostringstream os;
  os.precision(17);
  os << "name = " << s.name << "\nmanifold = " << s.manifold << "\nmetric = " << s.metric << "\nlambda = " << s.lambda
     << "\nfield = " << s.field << "\nmesh = " << s.mesh << "\neps = ";
  for (std::size_t k = 0; k < s.eps.size(); ++k) os << (k ? ", " : "") << s.eps[k];
  os << "\nrule_eta = " << s.rule_eta << "\nrule_phi = " << s.rule_phi << "\nboundary_eta = " << s.boundary_eta
     << "\nboundary_phi = " << s.boundary_phi << "\nstep = " << s.step
     << "\nrichardson = " << (s.richardson ? "true" : "false") << "\nseed = " << s.seed
     << "\ntolerance = " << s.tolerance << "\nsamples = " << s.samples << "\nswap_charts = " << s.swap_charts
     << "\nerror_estimate = " << (s.error_estimate ? "true" : "false") << "\n";
  return os.str();
}

const std::vector<Scenario>& builtin_scenarios() {
  static const std::vector<Scenario> catalog = [] {
    std::vector<Scenario> c;
    c.push_back(make("flat-torus", "torus", "flat-hermitian", 0.0, "constant", 8, 1e-8));
    c.push_back(make("cp1-fubini-study", "cp1", "fubini-study", 0.0, "euler", 16, 0.005));
    c.push_back(make("quartic-torus", "torus-product", "quartic-minkowski", 0.0, "constant", 6, 1e-3));
    c.push_back(make("quartic-blend-torus", "torus-product", "quartic-blend", 0.5, "constant", 6, 1e-3));
    c.push_back(make("cp1xcp1-fubini-study", "cp1xcp1", "fubini-study-product", 0.0, "euler-product", 6, 0.02));
    Scenario f = make("cp1xcp1-blend", "cp1xcp1", "fs-product-blend", 0.1, "euler-product", 4, 0.05);
    c.push_back(f);
    return c;
  }();
  return catalog;
}

Scenario builtin_scenario(const std::string& key) {
  const auto& c = builtin_scenarios();
  if (key.size() == 1 && key[0] >= 'a' && key[0] < 'a' + static_cast<char>(c.size()))
    return c[static_cast<std::size_t>(key[0] - 'a')];
  for (const auto& s : c)
    if (s.name == key) return s;
  throw DomainError("unknown built-in scenario '" + key + "'");
}

Manifold scenario_manifold(const Scenario& s) { return make_manifold(s.manifold); }

MetricPtr scenario_metric(const Scenario& s) {
  const Manifold M = scenario_manifold(s);
  MetricPtr m = make_metric(s.metric, M.n, s.lambda);
  if (s.swap_charts != 0) m = std::make_shared<ChartSwappedMetric>(m, s.swap_charts);
  return m;
}

FieldPtr scenario_field(const Scenario& s) {
  const Manifold M = scenario_manifold(s);
  FieldPtr f = make_field(s.field, M.n);
  if (s.swap_charts != 0) f = std::make_shared<ChartSwappedField>(f, s.swap_charts);
  return f;
}

SphereRule scenario_rule(const Scenario& s) {
  const int n = scenario_manifold(s).n;
  return SphereRule::product(n, s.rule_eta, s.rule_phi);
}

NumericStep scenario_step(const Scenario& s) { return {s.step, s.richardson}; }

void validate(const Scenario& s) {
  const Manifold M = make_manifold(s.manifold);
  if (!M.compact()) throw DomainError("scenario manifold '" + s.manifold + "' is not compact");
  const MetricPtr m = make_metric(s.metric, M.n, s.lambda);
  const FieldPtr f = make_field(s.field, M.n);
  if (M.kind == ManifoldKind::torus && s.field != "constant")
    throw DomainError("only constant fields are periodic on " + s.manifold);
  if (M.kind == ManifoldKind::torus && !m->flags().locally_minkowski)
    throw DomainError("metric '" + s.metric + "' is not periodic on " + s.manifold);
  if (M.kind == ManifoldKind::projective && s.field == "constant")
    throw DomainError("a constant field does not extend to " + s.manifold);
  if (s.mesh < 2) throw DomainError("mesh must be at least 2");
  if (s.eps.empty()) throw DomainError("eps schedule is empty");
  for (std::size_t k = 0; k < s.eps.size(); ++k) {
    if (!(s.eps[k] > 0.0 && s.eps[k] < 1.0)) throw DomainError("eps values must lie in (0, 1)");
    if (k > 0 && !(s.eps[k] < s.eps[k - 1])) throw DomainError("eps schedule must be decreasing");
  }
  if (s.rule_phi < 2 || (M.n == 2 && s.rule_eta < 1)) throw DomainError("sphere rule resolution too small");
  if (s.boundary_phi < 2 || s.boundary_eta < 1) throw DomainError("boundary rule resolution too small");
  if (!(s.step >= 1e-8)) throw DomainError("numeric step below the 1e-8 guard");
  if (!(s.tolerance >= 0.0)) throw DomainError("tolerance must be nonnegative");
  if (s.samples < 0) throw DomainError("samples must be nonnegative");
  if (s.swap_charts < 0 || s.swap_charts >= M.chart_count()) throw DomainError("swap_charts outside the chart range");
}

}  // namespace fgbc
