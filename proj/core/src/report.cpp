#include "fgbc/report.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace fgbc {

namespace {

using nlohmann::ordered_json;

ordered_json estimate(const Estimate& e) { return {{"value", e.value}, {"error", e.error}}; }

ordered_json point(const CVec& z) {
  ordered_json a = ordered_json::array();
  for (int i = 0; i < z.size(); ++i) a.push_back({z(i).real(), z(i).imag()});
  return a;
}

ordered_json zero_json(const ZeroTable& t) {
  ordered_json rows = ordered_json::array();
  for (std::size_t k = 0; k < t.eps.size(); ++k) rows.push_back({{"eps", t.eps[k]}, {"value", t.values[k]}});
  return {{"chart", t.zero.chart},
          {"point", point(t.zero.point)},
          {"boundary", rows},
          {"extrapolated", estimate(t.extrapolated)}};
}

ordered_json hopf_json(const HopfResult& r) {
  ordered_json dets = ordered_json::array();
  for (cplx d : r.determinants) dets.push_back({d.real(), d.imag()});
  return {{"ok", r.ok}, {"zeros", r.zeros}, {"chi", r.chi}, {"determinants", dets}, {"message", r.message}};
}

ordered_json complement_json(const ComplementIntegral& c) {
  ordered_json rows = ordered_json::array();
  for (std::size_t k = 0; k < c.values.size(); ++k) {
    ordered_json row = {{"eps", c.eps.empty() ? 0.0 : c.eps[k]}, {"value", c.values[k]}};
    if (!c.coarse.empty()) row["coarse"] = c.coarse[k];
    rows.push_back(row);
  }
  return {{"nodes", c.nodes}, {"by_eps", rows}, {"extrapolated", c.extrapolated}, {"error", c.error}};
}

}  // namespace

std::string num(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string Table::csv() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < header.size(); ++k) os << (k ? "," : "") << header[k];
  os << "\n";
  for (const auto& r : rows) {
    for (std::size_t k = 0; k < r.size(); ++k) os << (k ? "," : "") << r[k];
    os << "\n";
  }
  return os.str();
}

std::string Table::dat() const {
  std::ostringstream os;
  os << "#";
  for (const auto& h : header) os << " " << h;
  os << "\n";
  for (const auto& r : rows) {
    for (std::size_t k = 0; k < r.size(); ++k) os << (k ? " " : "") << r[k];
    os << "\n";
  }
  return os.str();
}

std::string to_json(const GbcReport& r) {
  ordered_json zs = ordered_json::array();
  for (const auto& t : r.zeros) zs.push_back(zero_json(t));
  ordered_json j = {{"scenario", r.scenario},
                    {"n", r.n},
                    {"chi", r.chi},
                    {"target", r.target},
                    {"lhs", estimate(r.lhs)},
                    {"rhs", estimate(r.rhs)},
                    {"lhs_detail", complement_json(r.lhs_detail)},
                    {"zeros", zs},
                    {"hopf", hopf_json(r.hopf)},
                    {"volume_mode", r.volume_mode},
                    {"tolerance", r.tolerance},
                    {"stokes_gap", {{"value", r.stokes_gap}, {"error", r.lhs.error + r.rhs.error}}},
                    {"stokes_consistent", r.stokes_consistent},
                    {"lhs_ok", r.lhs_ok},
                    {"rhs_ok", r.rhs_ok},
                    {"passed", r.passed}};
  return j.dump(2) + "\n";
}

std::string to_json(const CorollaryReport& r) {
  ordered_json j = {{"scenario", r.scenario},       {"chi", r.chi},       {"value", estimate(r.value)},
                    {"detail", complement_json(r.detail)}, {"tolerance", r.tolerance}, {"passed", r.passed}};
  return j.dump(2) + "\n";
}

std::string to_json(const PointwiseReport& r) {
  ordered_json samples = ordered_json::array();
  for (const auto& p : r.samples)
    samples.push_back({{"chart", p.chart},
                       {"z", point(p.z)},
                       {"lemma", {p.lemma, p.lemma_half}},
                       {"identity", {p.identity, p.identity_half}},
                       {"xcn", p.xcn},
                       {"correction", p.correction}});
  ordered_json j = {{"scenario", r.scenario},
                    {"max_lemma", r.max_lemma},
                    {"max_identity", r.max_identity},
                    {"max_xcn", r.max_xcn},
                    {"max_correction", r.max_correction},
                    {"quadratic_decay", r.quadratic_decay},
                    {"samples", samples}};
  return j.dump(2) + "\n";
}

std::string to_json(const HopfResult& r) { return hopf_json(r).dump(2) + "\n"; }

std::string to_json(const std::vector<ZeroTable>& tables) {
  ordered_json zs = ordered_json::array();
  for (const auto& t : tables) zs.push_back(zero_json(t));
  return zs.dump(2) + "\n";
}

Table zero_table(const std::vector<ZeroTable>& tables) {
  Table t{{"zero", "chart", "eps", "value", "extrapolated", "error"}, {}};
  for (std::size_t z = 0; z < tables.size(); ++z)
    for (std::size_t k = 0; k < tables[z].eps.size(); ++k)
      t.add({std::to_string(z), std::to_string(tables[z].zero.chart), num(tables[z].eps[k]), num(tables[z].values[k]),
             num(tables[z].extrapolated.value), num(tables[z].extrapolated.error)});
  return t;
}

Table lhs_table(const GbcReport& r) {
  Table t{{"eps", "lhs", "lhs_coarse"}, {}};
  const auto& c = r.lhs_detail;
  for (std::size_t k = 0; k < c.values.size(); ++k)
    t.add({num(c.eps.empty() ? 0.0 : c.eps[k]), num(c.values[k]), c.coarse.empty() ? "nan" : num(c.coarse[k])});
  return t;
}

Table pointwise_table(const PointwiseReport& r) {
  Table t{{"chart", "re_z1", "im_z1", "re_z2", "im_z2", "lemma_h", "lemma_h2", "identity_h", "identity_h2", "xcn",
           "correction"},
          {}};
  for (const auto& p : r.samples) {
    const cplx z2 = p.z.size() > 1 ? p.z(1) : cplx(0.0);
    t.add({std::to_string(p.chart), num(p.z(0).real()), num(p.z(0).imag()), num(z2.real()), num(z2.imag()),
           num(p.lemma), num(p.lemma_half), num(p.identity), num(p.identity_half), num(p.xcn), num(p.correction)});
  }
  return t;
}

void write_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  if (ec) throw Error("cannot create directory for '" + path + "': " + ec.message());
  std::ofstream out(p);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
}

}  // namespace fgbc
