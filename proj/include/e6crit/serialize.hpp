#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "e6crit/critical.hpp"
#include "e6crit/curves.hpp"
#include "e6crit/eisenstein.hpp"
#include "e6crit/modular.hpp"
#include "e6crit/monodromy.hpp"

namespace e6crit {

using Json = nlohmann::ordered_json;

/// Complex numbers are [re, im]; infinite values are the string "infinity".
Json to_json(Complex z);
Json to_json(const ExtendedReal& x);
Json to_json(const ExtendedComplex& z);
Json to_json(const UnimodularMatrix& m);
Json to_json(const Matrix2& m);
Json to_json(const EisensteinEval& ev);
Json to_json(const ZeroRecord& z);
Json to_json(const ZeroCountReport& r);
Json to_json(const CurvePoint& p);
Json to_json(const std::vector<CurvePoint>& pts);
Json to_json(const MonodromyResult& m);

/// RFC 4180 CSV with header curve,C,re_tau,im_tau,half,residual.
std::string to_csv(const std::vector<CurvePoint>& pts);

/// Static plot of the points over the F and F0 boundaries, viewBox -0.1 0 1.2 3.
std::string to_svg(const std::vector<CurvePoint>& pts);

}  // namespace e6crit
