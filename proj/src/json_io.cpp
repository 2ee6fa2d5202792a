#include "sharpflat/json_io.hpp"

#include <string>

#include "sharpflat/errors.hpp"

namespace sharpflat::json_io {

namespace {

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

long integer_field(const Json& j, const char* key)
{
    const Json& v = field(j, key);
    if (!v.is_number_integer()) throw FormatError(std::string("field \"") + key + "\" must be an integer");
    return v.get<long>();
}

Var decode_var(const Json& j)
{
    if (!j.is_string()) throw FormatError("\"var\" must be \"X\" or \"Y\"");
    auto s = j.get<std::string>();
    if (s == "X") return Var::X;
    if (s == "Y") return Var::Y;
    throw FormatError("\"var\" must be \"X\" or \"Y\"");
}

} // namespace

Json encode(const Padic& x)
{
    Json j;
    if (x.is_zero()) {
        j["zero"] = true;
        if (!x.is_exact_zero()) j["absprec"] = x.digits_absolute_precision();
        return j;
    }
    j["v"] = 2 * x.digits_valuation();
    j["u"] = x.unit().get_str();
    j["r"] = x.relative_precision();
    return j;
}

Padic decode_padic(const Json& j, const PadicContext& ctx)
{
    if (!j.is_object()) throw FormatError("p-adic coordinate must be an object");
    if (j.contains("zero")) {
        if (!j.at("zero").is_boolean() || !j.at("zero").get<bool>()) throw FormatError("\"zero\" must be true when present");
        if (!j.contains("absprec")) return Padic::zero(ctx);
        return Padic::zero_at(ctx, integer_field(j, "absprec"));
    }
    long twice = integer_field(j, "v");
    if (twice % 2 != 0) throw FormatError("Q_p coordinate must have an even twice-valuation");
    long rel = integer_field(j, "r");
    if (rel < 1) throw FormatError("relative precision must be >= 1");
    const Json& u = field(j, "u");
    if (!u.is_string()) throw FormatError("\"u\" must be a decimal string");
    mpz_class unit;
    if (unit.set_str(u.get<std::string>(), 10) != 0) throw FormatError("\"u\" is not a decimal integer");
    if (unit < 0 || unit >= prime_power(ctx.p, rel)) throw FormatError("unit out of range [0, p^r)");
    if (mpz_divisible_ui_p(unit.get_mpz_t(), static_cast<unsigned long>(ctx.p))) throw FormatError("unit must be prime to p");
    try {
        return Padic::from_parts(ctx, twice / 2, unit, rel);
    } catch (const ParameterError& e) {
        throw FormatError(e.what());
    }
}

Json encode(const QuadElem& x) { return Json{{"a", encode(x.a())}, {"b", encode(x.b())}}; }

QuadElem decode_quad(const Json& j, const FormParams& params)
{
    auto ctx = params.padic_context();
    return QuadElem(params, decode_padic(field(j, "a"), ctx), decode_padic(field(j, "b"), ctx));
}

Json encode(const QSeries& s)
{
    Json coeffs = Json::array();
    for (const auto& c : s.coeffs()) coeffs.push_back(encode(c));
    return Json{{"var", var_name(s.var())}, {"deg", s.degree()}, {"coeffs", coeffs}};
}

QSeries decode_series1(const Json& j, const FormParams& params)
{
    Var var = decode_var(field(j, "var"));
    long deg = integer_field(j, "deg");
    const Json& coeffs = field(j, "coeffs");
    if (!coeffs.is_array() || static_cast<long>(coeffs.size()) != deg)
        throw FormatError("\"coeffs\" must be an array of length \"deg\"");
    std::vector<QuadElem> c;
    for (const auto& e : coeffs) c.push_back(decode_quad(e, params));
    return QSeries(params, var, std::move(c));
}

Json encode(const QSeries2& s)
{
    Json coeffs = Json::array();
    for (std::size_t i = 0; i < s.degree_x(); ++i)
        for (std::size_t j = 0; j < s.degree_y(); ++j) {
            const auto& c = s.at(i, j);
            if (c.is_zero() && c.absolute_precision().is_infinite()) continue;
            coeffs.push_back(Json{{"i", i}, {"j", j}, {"c", encode(c)}});
        }
    return Json{{"degs", Json::array({s.degree_x(), s.degree_y()})}, {"coeffs", coeffs}};
}

QSeries2 decode_series2(const Json& j, const FormParams& params)
{
    const Json& degs = field(j, "degs");
    if (!degs.is_array() || degs.size() != 2 || !degs[0].is_number_integer() || !degs[1].is_number_integer() ||
        degs[0].get<long>() < 0 || degs[1].get<long>() < 0)
        throw FormatError("\"degs\" must be [d_X, d_Y]");
    auto dx = degs[0].get<std::size_t>(), dy = degs[1].get<std::size_t>();
    QSeries2 s = QSeries2::zero(params, dx, dy);
    const Json& coeffs = field(j, "coeffs");
    if (!coeffs.is_array()) throw FormatError("\"coeffs\" must be an array");
    for (const auto& e : coeffs) {
        long i = integer_field(e, "i"), k = integer_field(e, "j");
        if (i < 0 || k < 0 || static_cast<std::size_t>(i) >= dx || static_cast<std::size_t>(k) >= dy)
            throw FormatError("coefficient index out of range");
        s = s.with_coeff(static_cast<std::size_t>(i), static_cast<std::size_t>(k), decode_quad(field(e, "c"), params));
    }
    return s;
}

Json encode(const QCyclo& x)
{
    Json coeffs = Json::array();
    for (const auto& c : x.coeffs()) coeffs.push_back(encode(c));
    return Json{{"level", x.level()}, {"coeffs", coeffs}};
}

Json encode(const BiCyclo& x)
{
    Json coeffs = Json::array();
    for (const auto& c : x.coeffs()) coeffs.push_back(encode(c));
    return Json{{"level", x.level()}, {"coeffs", coeffs}};
}

Json encode(const MatrixSeries& m)
{
    Json j;
    j["var"] = var_name(m.var());
    if (m.level()) j["level"] = *m.level();
    j["entries"] = Json::array({Json::array({encode(m(0, 0)), encode(m(0, 1))}), Json::array({encode(m(1, 0)), encode(m(1, 1))})});
    return j;
}

Json encode(const FormParams& params)
{
    return Json{{"p", params.p}, {"ap", params.ap}, {"eps", params.eps}, {"prec", params.precision}};
}

Json encode(const Valuation& v)
{
    if (v.is_infinite()) return Json("inf");
    return Json(v.str());
}

Json encode(const IntPoly& poly)
{
    Json coeffs = Json::array();
    for (const auto& c : poly.coeffs()) coeffs.push_back(c.get_str());
    return coeffs;
}

Json encode(const CharValueReport& r)
{
    Json j;
    j["level_x"] = r.level_x;
    if (r.level_y != 0) j["level_y"] = r.level_y;
    j["pass"] = r.pass;
    j["residual_precision"] = encode(r.residual_precision);
    if (r.failing_valuation) j["failing_valuation"] = encode(*r.failing_valuation);
    if (!r.message.empty()) j["message"] = r.message;
    if (r.c_omega) j["C_omega"] = encode(*r.c_omega);
    if (r.a_omega) j["A_omega"] = encode(*r.a_omega);
    if (r.b_omega) j["B_omega"] = encode(*r.b_omega);
    if (r.c_omega2) j["C_omega"] = encode(*r.c_omega2);
    if (r.d_omega) j["D_omega"] = encode(*r.d_omega);
    if (r.e_omega) j["E_omega"] = encode(*r.e_omega);
    return j;
}

Json encode(const StabilizationReport& r)
{
    Json j{{"n", r.n}, {"pass", r.pass}, {"min_precision", encode(r.min_precision)}};
    if (r.failing_index) {
        j["failing_entry"] = Json::array({*r.failing_row + 1, *r.failing_col + 1});
        j["failing_index"] = *r.failing_index;
    }
    if (!r.message.empty()) j["message"] = r.message;
    return j;
}

Json encode(const DetReport& r)
{
    Json dist = Json::array();
    for (const auto& v : r.limit_distance) dist.push_back(encode(v));
    Json j{{"n", r.n},
           {"pass", r.pass},
           {"integer_identity", r.integer_identity},
           {"padic_identity", r.padic_identity},
           {"residual_precision", encode(r.residual_precision)},
           {"limit_distance", dist}};
    if (r.first_mismatch) j["first_mismatch"] = *r.first_mismatch;
    if (!r.message.empty()) j["message"] = r.message;
    return j;
}

Json encode(const Rank1Report& r)
{
    Json j{{"level", r.level}, {"exponent", r.exponent}, {"pass", r.pass}, {"residual_precision", encode(r.residual_precision)}};
    if (r.failing_valuation) j["failing_valuation"] = encode(*r.failing_valuation);
    if (!r.message.empty()) j["message"] = r.message;
    if (r.a_omega) j["A_omega"] = encode(*r.a_omega);
    if (r.b_omega) j["B_omega"] = encode(*r.b_omega);
    return j;
}

} // namespace sharpflat::json_io
