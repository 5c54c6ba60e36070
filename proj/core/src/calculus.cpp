#include "fgbc/calculus.hpp"

namespace fgbc {

namespace {

void check_step(const NumericStep& s) {
  if (!(s.h >= 1e-8)) throw DomainError("numeric step below the 1e-8 guard");
}

template <typename T, typename F>
std::pair<T, T> central_pair(F&& f, const CVec& z, int m, double h) {
  CVec zp = z, zm = z;
  zp(m) += h;
  zm(m) -= h;
  T dx = (f(zp) - f(zm)) * (0.5 / h);
  zp = z;
  zm = z;
  zp(m) += cplx(0.0, h);
  zm(m) -= cplx(0.0, h);
  T dy = (f(zp) - f(zm)) * (0.5 / h);
  return {dx, dy};
}

template <typename T, typename F>
std::pair<T, T> real_partials(F&& f, const CVec& z, int m, const NumericStep& s) {
  auto [dx, dy] = central_pair<T>(f, z, m, s.h);
  if (!s.richardson) return {dx, dy};
  auto [dx2, dy2] = central_pair<T>(f, z, m, 0.5 * s.h);
  return {(dx2 * 4.0 - dx) * (1.0 / 3.0), (dy2 * 4.0 - dy) * (1.0 / 3.0)};
}

}  // namespace

FormDerivative numeric_d_parts(const FormField& field, const CVec& z, NumericStep step) {
  check_step(step);
  const int n = static_cast<int>(z.size());
  FormDerivative out{ExteriorForm(n, 1), ExteriorForm(n, 1)};
  for (int m = 0; m < n; ++m) {
    auto [dx, dy] = real_partials<ExteriorForm>(field, z, m, step);
    const ExteriorForm d_z = 0.5 * (dx - I * dy);
    const ExteriorForm d_zb = 0.5 * (dx + I * dy);
    out.del += wedge(ExteriorForm::covector(n, dz(m)), d_z);
    out.dbar += wedge(ExteriorForm::covector(n, dzbar(m)), d_zb);
  }
  return out;
}

ExteriorForm numeric_d(const FormField& field, const CVec& z, NumericStep step) {
  return numeric_d_parts(field, z, step).d();
}

std::pair<CVec, CVec> numeric_wirtinger(const std::function<cplx(const CVec&)>& f, const CVec& z, NumericStep step) {
  check_step(step);
  const int n = static_cast<int>(z.size());
  CVec dh(n), da(n);
  for (int m = 0; m < n; ++m) {
    auto [dx, dy] = real_partials<cplx>(f, z, m, step);
    dh(m) = 0.5 * (dx - I * dy);
    da(m) = 0.5 * (dx + I * dy);
  }
  return {dh, da};
}

cplx integrate_nodes(const FormField& field, const NodeSet& nodes) {
  auto values = parallel_map<cplx>(nodes.size(), [&](std::size_t k) {
    const FormNode& node = nodes[k];
    const ExteriorForm f = field(node.point);
    if (f.is_zero()) return cplx(0.0);
    if (f.degree() != static_cast<int>(node.tangents.size()))
      throw DomainError("form degree " + std::to_string(f.degree()) + " does not match the integration domain");
    if (!f.base_only()) throw DomainError("integrand carries fiber covectors");
    std::vector<TangentVector> frame;
    for (const auto& t : node.tangents) frame.push_back(TangentVector::real_base(t));
    return node.weight * evaluate(f, frame);
  });
  return compensated_sum(values);
}

cplx integrate_chart(const FormField& field, const NodeSet& nodes) {
  if (!nodes.empty() && nodes.front().tangents.size() != 2 * static_cast<std::size_t>(nodes.front().point.size()))
    throw DomainError("chart integration needs a top-dimensional patch");
  return integrate_nodes(field, nodes);
}

}  // namespace fgbc
