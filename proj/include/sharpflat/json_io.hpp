#pragma once

#include <json.hpp>

#include "sharpflat/factor.hpp"
#include "sharpflat/logmatrix.hpp"
#include "sharpflat/twovar.hpp"

namespace sharpflat::json_io {

using Json = nlohmann::ordered_json;

/// Raised on structurally invalid or inconsistent JSON input.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Q_p coordinate: {"v": twice-valuation, "u": "<decimal unit>", "r": rel}
// or {"zero": true, "absprec": digits} ({"zero": true} for an exact zero).
Json encode(const Padic& x);
Padic decode_padic(const Json& j, const PadicContext& ctx);

// {"a": ..., "b": ...} for a + b theta.
Json encode(const QuadElem& x);
QuadElem decode_quad(const Json& j, const FormParams& params);

// {"var": "X", "deg": d, "coeffs": [...]}
Json encode(const QSeries& s);
QSeries decode_series1(const Json& j, const FormParams& params);

// {"degs": [dx, dy], "coeffs": [{"i": i, "j": j, "c": ...}]}, exact zeros omitted.
Json encode(const QSeries2& s);
QSeries2 decode_series2(const Json& j, const FormParams& params);

// {"level": m, "coeffs": [...]} with coefficients in the power basis of X (or Y).
Json encode(const QCyclo& x);
Json encode(const BiCyclo& x);

Json encode(const MatrixSeries& m);
Json encode(const FormParams& params);
Json encode(const Valuation& v);
Json encode(const IntPoly& poly);

Json encode(const CharValueReport& r);
Json encode(const StabilizationReport& r);
Json encode(const DetReport& r);
Json encode(const Rank1Report& r);

} // namespace sharpflat::json_io
