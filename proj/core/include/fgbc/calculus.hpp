#pragma once

#include <functional>

#include "fgbc/forms.hpp"
#include "fgbc/quadrature.hpp"

namespace fgbc {

using FormField = std::function<ExteriorForm(const CVec&)>;

struct NumericStep {
  double h = 1e-4;
  bool richardson = true;
};

/// Holomorphic and antiholomorphic parts of d, from central differences
/// over the 2n real base coordinates.
struct FormDerivative {
  ExteriorForm del;
  ExteriorForm dbar;
  ExteriorForm d() const { return del + dbar; }
};

FormDerivative numeric_d_parts(const FormField& field, const CVec& z, NumericStep step = {});
ExteriorForm numeric_d(const FormField& field, const CVec& z, NumericStep step = {});

/// Complex derivatives of a scalar function by the same scheme:
/// returns (d/dz^m, d/dzbar^m) for m = 0..n-1.
std::pair<CVec, CVec> numeric_wirtinger(const std::function<cplx(const CVec&)>& f, const CVec& z,
                                        NumericStep step = {});

/// Sum over nodes of weight * field(point)(tangents), compensated, fixed order.
cplx integrate_nodes(const FormField& field, const NodeSet& nodes);
/// Top-degree base form integrated with the complex orientation.
cplx integrate_chart(const FormField& field, const NodeSet& nodes);

}  // namespace fgbc
