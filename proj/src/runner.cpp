#include "sharpflat/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sharpflat/errors.hpp"
#include "sharpflat/json_io.hpp"

namespace sharpflat::cli {

using json_io::Json;

const std::vector<std::string> kSubcommands{"logmatrix", "pollack", "factor1", "factor2",
                                            "eval",      "verify",  "roundtrip", "growth"};

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Collects the JSON report and the list of failed checks.
struct Report {
    Json body;
    Json failures = Json::array();

    void fail(const std::string& what) { failures.push_back(what); }
};

Json header(const JobConfig& cfg, const FormParams& params)
{
    Json j;
    j["command"] = cfg.subcommand;
    j["params"] = json_io::encode(params);
    return j;
}

Json read_input(const JobConfig& cfg, std::istream& in)
{
    std::string text;
    if (cfg.in.empty()) {
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    } else {
        std::ifstream f(cfg.in);
        if (!f) throw UsageError("cannot open input file '" + cfg.in + "'");
        std::ostringstream ss;
        ss << f.rdbuf();
        text = ss.str();
    }
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw json_io::FormatError(std::string("malformed JSON input: ") + e.what());
    }
}

std::size_t pow_size(long p, long n) { return prime_power_size(p, n); }

std::string level_tag(long n) { return std::to_string(n); }

Json series1_cyclo(const Series1<QCyclo>& s)
{
    Json coeffs = Json::array();
    for (const auto& c : s.coeffs()) coeffs.push_back(json_io::encode(c));
    return Json{{"var", var_name(s.var())}, {"deg", s.degree()}, {"coeffs", coeffs}};
}

Json growth_json(const GrowthMeasurement& g)
{
    Json j;
    if (std::isinf(g.bound)) j["bound"] = nullptr;
    else j["bound"] = g.bound;
    j["argmax"] = g.argmax;
    j["pass"] = g.pass;
    return j;
}

std::vector<std::pair<long, long>> level_pairs(const std::vector<long>& levels)
{
    std::vector<std::pair<long, long>> out;
    for (long a : levels)
        for (long b : levels) out.emplace_back(a, b);
    return out;
}

void add_char_reports(Report& r, Json& into, const std::string& label, const std::vector<CharValueReport>& reports)
{
    Json arr = Json::array();
    for (const auto& c : reports) {
        arr.push_back(json_io::encode(c));
        if (!c.pass) {
            std::string where = "m=" + level_tag(c.level_x);
            if (c.level_y != 0) where = "(m_p, m_pbar)=(" + level_tag(c.level_x) + "," + level_tag(c.level_y) + ")";
            r.fail(label + " " + where + ": " + c.message);
        }
    }
    into[label] = arr;
}

// ---------------------------------------------------------------- subcommands

void cmd_logmatrix(const JobConfig& cfg, const FormParams& params, Report& r)
{
    long n = cfg.level.value_or(limit_level(params.p, cfg.deg));
    if (n < 1) throw ParameterError("--level must be >= 1");
    auto m = logmatrix_level(params, n, cfg.deg);
    r.body["n"] = n;
    r.body["deg"] = cfg.deg;
    r.body["complete"] = m.is_complete();
    r.body["matrix"] = json_io::encode(m);
    r.body["det_constant"] = json_io::encode(det_constant(params, n));
}

void cmd_pollack(const JobConfig& cfg, const FormParams& params, Report& r)
{
    if (cfg.pairs < 1) throw ParameterError("--pairs must be >= 1");
    auto blocks = pollack_blocks(params, cfg.pairs, cfg.deg);
    r.body["pairs"] = cfg.pairs;
    r.body["pass"] = blocks.pass;
    r.body["plus"] = json_io::encode(blocks.plus);
    r.body["minus"] = json_io::encode(blocks.minus);
    r.body["plus_series"] = json_io::encode(blocks.plus_series);
    r.body["minus_series"] = json_io::encode(blocks.minus_series);
    if (!blocks.pass) r.fail("pollack: " + blocks.message);
}

void cmd_factor1(const JobConfig& cfg, const FormParams& params, Report& r, std::istream& in)
{
    Json input = read_input(cfg, in);
    if (!input.is_object() || !input.contains("mu_alpha") || !input.contains("mu_beta"))
        throw json_io::FormatError("factor1 input must have \"mu_alpha\" and \"mu_beta\"");
    auto a = json_io::decode_series1(input["mu_alpha"], params);
    auto b = json_io::decode_series1(input["mu_beta"], params);
    if (a.degree() != b.degree() || a.var() != b.var())
        throw json_io::FormatError("mu_alpha and mu_beta must share variable and degree");
    if (a.degree() < 1) throw json_io::FormatError("series degree must be >= 1");
    auto m = logmatrix_level(params, limit_level(params.p, a.degree()), a.degree(), a.var());
    auto f = factor_pair(a, b, m);
    r.body["n"] = *m.level();
    r.body["loss_halves"] = f.loss_halves;
    r.body["mu_sharp"] = json_io::encode(f.sharp);
    r.body["mu_flat"] = json_io::encode(f.flat);
}

void cmd_factor2(const JobConfig& cfg, const FormParams& params, Report& r, std::istream& in)
{
    Json input = read_input(cfg, in);
    if (!input.is_object()) throw json_io::FormatError("factor2 input must be an object");
    LQuadruple l;
    l.params = params;
    for (std::size_t s = 0; s < 4; ++s) {
        const char* name = LQuadruple::name(s);
        if (!input.contains(name)) throw json_io::FormatError(std::string("factor2 input is missing \"") + name + "\"");
        l.l[s] = json_io::decode_series2(input[name], params);
    }
    for (std::size_t s = 1; s < 4; ++s)
        if (l.l[s].degree_x() != l.l[0].degree_x() || l.l[s].degree_y() != l.l[0].degree_y())
            throw json_io::FormatError("all four series must share degrees");
    if (l.degree_x() < 1 || l.degree_y() < 1) throw json_io::FormatError("series degrees must be >= 1");
    auto mx = logmatrix_level(params, limit_level(params.p, l.degree_x()), l.degree_x(), Var::X);
    auto my = logmatrix_level(params, limit_level(params.p, l.degree_y()), l.degree_y(), Var::Y);
    auto f = factor_full(l, mx, my);
    r.body["loss_x_halves"] = f.loss_x_halves;
    r.body["loss_y_halves"] = f.loss_y_halves;
    for (std::size_t s = 0; s < 4; ++s) r.body[LQuadruple::bounded_name(s)] = json_io::encode(f.parts.l[s]);
}

void cmd_eval(const JobConfig& cfg, const FormParams& params, Report& r, std::istream& in)
{
    Json input = read_input(cfg, in);
    if (!input.is_object() || !input.contains("series")) throw json_io::FormatError("eval input must have \"series\"");
    const Json& s = input["series"];
    Json values = Json::array();
    if (s.is_object() && s.contains("var")) {
        auto series = json_io::decode_series1(s, params);
        if (series.degree() < 1) throw json_io::FormatError("series degree must be >= 1");
        for (long m : cfg.levels) {
            auto red = reduce_mod_cyclo(series, m, GrowthHypothesis{cfg.u, cfg.c});
            values.push_back(Json{{"level", m},
                                  {"value", json_io::encode(red.value)},
                                  {"tail_bound", red.tail_bound},
                                  {"vacuous", red.vacuous}});
        }
    } else {
        auto series = json_io::decode_series2(s, params);
        Var axis = cfg.axis == "Y" ? Var::Y : Var::X;
        r.body["axis"] = var_name(axis);
        for (long m : cfg.levels)
            values.push_back(Json{{"level", m}, {"value", series1_cyclo(partial_apply(series, axis, m))}});
    }
    r.body["values"] = values;
}

void cmd_verify(const JobConfig& cfg, const FormParams& params, Report& r)
{
    const long p = params.p;
    const long top = *std::max_element(cfg.levels.begin(), cfg.levels.end());

    Json stab = Json::array(), det = Json::array();
    for (long n : cfg.levels) {
        auto s = stabilization_check(params, n, pow_size(p, n + 1));
        stab.push_back(json_io::encode(s));
        if (!s.pass) r.fail("stabilization n=" + level_tag(n) + ": " + s.message);
        auto d = det_check(params, n, pow_size(p, n + 1));
        det.push_back(json_io::encode(d));
        if (!d.pass) r.fail("det n=" + level_tag(n) + ": " + d.message);
    }
    r.body["stabilization"] = stab;
    r.body["det"] = det;

    long rank_level = std::max(top, limit_level(p, cfg.deg));
    auto mr = logmatrix_level(params, rank_level, pow_size(p, rank_level));
    Json rank = Json::array();
    for (long m : cfg.levels) {
        auto rep = rank1_at_level(mr, m);
        rank.push_back(json_io::encode(rep));
        if (!rep.pass) r.fail("rank1 m=" + level_tag(m) + ": " + rep.message);
    }
    r.body["rank1"] = Json{{"matrix_level", rank_level}, {"reports", rank}};

    // Synthesized data: exact products with a complete M_p^(top) interpolate at every level <= top.
    const std::size_t full = pow_size(p, top);
    const std::size_t pre = cfg.deg >= full ? cfg.deg - full + 1 : 1;
    auto mx = logmatrix_level(params, top, full, Var::X);
    DigitStream stream(cfg.seed);
    auto sharp = random_bounded_quad(params, pre, stream);
    auto flat = random_bounded_quad(params, pre, stream);
    auto [mu_a, mu_b] = combine_pair_full(sharp, flat, mx);
    Json pair;
    pair["deg"] = mu_a.degree();
    add_char_reports(r, pair, "interpolation", verify_pair(mu_a, mu_b, cfg.levels));
    add_char_reports(r, pair, "vanish", vanish_check_pair(mu_a, mu_b, mx, cfg.levels));
    r.body["pair"] = pair;

    const std::size_t dy = cfg.degy.value_or(cfg.deg);
    const std::size_t pre_y = dy >= full ? dy - full + 1 : 1;
    auto q = random_bounded_quadruple(params, pre, pre_y, cfg.seed);
    auto l = recombine_full(q, kronecker(mx, mx.in_variable(Var::Y)));
    auto pairs = level_pairs(cfg.levels);
    Json quad;
    quad["degs"] = Json::array({l.degree_x(), l.degree_y()});
    add_char_reports(r, quad, "interpolation", verify_interpolation4(l, pairs));
    add_char_reports(r, quad, "derivative", derivative_relation(l, pairs));
    add_char_reports(r, quad, "vanish", vanish_check(l, mx, pairs));
    r.body["quadruple"] = quad;
}

void cmd_roundtrip(const JobConfig& cfg, const FormParams& params, Report& r)
{
    const std::size_t d = cfg.deg, dy = cfg.degy.value_or(cfg.deg);
    auto mx = logmatrix_level(params, limit_level(params.p, d), d, Var::X);
    auto my = logmatrix_level(params, limit_level(params.p, dy), dy, Var::Y);

    DigitStream stream(cfg.seed);
    auto sharp = random_bounded_quad(params, d, stream);
    auto flat = random_bounded_quad(params, d, stream);
    auto [mu_a, mu_b] = combine_pair(sharp, flat, mx);
    auto f = factor_pair(mu_a, mu_b, mx);
    bool ok1 = f.sharp.equals_within_precision(sharp) && f.flat.equals_within_precision(flat);
    Valuation prec1 = std::min(f.sharp.min_absolute_precision(), f.flat.min_absolute_precision());
    r.body["one_variable"] = Json{{"deg", d},
                                  {"pass", ok1},
                                  {"min_precision", json_io::encode(prec1)},
                                  {"loss", json_io::encode(Valuation::from_twice(f.loss_halves))}};
    if (!ok1) r.fail("one-variable round trip: recovered components differ from the inputs");

    auto q = random_bounded_quadruple(params, d, dy, cfg.seed);
    auto k = kronecker(mx, my);
    auto l = recombine(q, k);
    auto full = factor_full(l, mx, my);
    bool ok2 = full.parts.equals_within_precision(q);
    auto back = recombine(full.parts, k);
    bool ok3 = back.equals_within_precision(l);
    long loss2 = std::max(full.loss_x_halves, full.loss_y_halves);
    r.body["two_variable"] = Json{{"degs", Json::array({d, dy})},
                                  {"pass", ok2 && ok3},
                                  {"min_precision", json_io::encode(full.parts.min_absolute_precision())},
                                  {"recombined_precision", json_io::encode(back.min_absolute_precision())},
                                  {"loss_x", json_io::encode(Valuation::from_twice(full.loss_x_halves))},
                                  {"loss_y", json_io::encode(Valuation::from_twice(full.loss_y_halves))}};
    if (!ok2) r.fail("two-variable round trip: recovered quadruple differs from the input");
    if (!ok3) r.fail("two-variable round trip: recombination does not reproduce the input");
    r.body["max_loss"] = json_io::encode(Valuation::from_twice(std::max(f.loss_halves, loss2)));
}

void cmd_growth(const JobConfig& cfg, const FormParams& params, Report& r, std::istream& in)
{
    GrowthMeasurement g;
    if (cfg.builtin == "log1p") {
        r.body["series"] = "log1p_over_x";
        r.body["deg"] = cfg.deg;
        g = growth_order(log1p_over_x(params.padic_context(), cfg.deg), cfg.u, cfg.c);
    } else if (!cfg.builtin.empty()) {
        throw ParameterError("unknown built-in series '" + cfg.builtin + "' (expected log1p)");
    } else {
        Json input = read_input(cfg, in);
        if (!input.is_object() || !input.contains("series")) throw json_io::FormatError("growth input must have \"series\"");
        const Json& s = input["series"];
        if (s.is_object() && s.contains("var")) g = growth_order(json_io::decode_series1(s, params), cfg.u, cfg.c);
        else g = growth_order(json_io::decode_series2(s, params), cfg.u, cfg.v, cfg.c);
    }
    r.body["u"] = cfg.u;
    r.body["c"] = cfg.c;
    r.body["growth"] = growth_json(g);
    if (!g.pass) r.fail("growth: bound exceeds the offset c");
}

void validate(const JobConfig& cfg)
{
    if (std::find(kSubcommands.begin(), kSubcommands.end(), cfg.subcommand) == kSubcommands.end())
        throw UsageError("unknown subcommand '" + cfg.subcommand + "'");
    if (cfg.deg < 1) throw ParameterError("--deg must be >= 1");
    if (cfg.degy && *cfg.degy < 1) throw ParameterError("--degy must be >= 1");
    if (cfg.levels.empty()) throw ParameterError("--levels must not be empty");
    for (long m : cfg.levels)
        if (m < 1) throw ParameterError("--levels entries must be >= 1");
    if (cfg.axis != "X" && cfg.axis != "Y") throw ParameterError("--axis must be X or Y");
}

void emit(const JobConfig& cfg, const Json& doc, std::ostream& out)
{
    std::string text = doc.dump(2) + "\n";
    if (cfg.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw UsageError("cannot open output file '" + cfg.out + "'");
    f << text;
}

} // namespace

int run(const JobConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err)
{
    FormParams params;
    try {
        validate(cfg);
        params = FormParams::make(cfg.p, cfg.ap, cfg.eps, cfg.prec);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParameterError& e) {
        err << "error: invalid parameters: " << e.what() << "\n";
        return 2;
    }

    Report r;
    r.body = header(cfg, params);
    try {
        if (cfg.subcommand == "logmatrix") cmd_logmatrix(cfg, params, r);
        else if (cfg.subcommand == "pollack") cmd_pollack(cfg, params, r);
        else if (cfg.subcommand == "factor1") cmd_factor1(cfg, params, r, in);
        else if (cfg.subcommand == "factor2") cmd_factor2(cfg, params, r, in);
        else if (cfg.subcommand == "eval") cmd_eval(cfg, params, r, in);
        else if (cfg.subcommand == "verify") cmd_verify(cfg, params, r);
        else if (cfg.subcommand == "roundtrip") cmd_roundtrip(cfg, params, r);
        else cmd_growth(cfg, params, r, in);
    } catch (const json_io::FormatError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ShapeError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const PrecisionError& e) {
        r.fail(std::string("precision exhausted: ") + e.what());
    } catch (const DivisionByZero& e) {
        r.fail(std::string("division by zero: ") + e.what());
    }

    r.body["failures"] = r.failures;
    try {
        emit(cfg, r.body, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return r.failures.empty() ? 0 : 1;
}

ParseResult parse_arguments(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    JobConfig cfg;
    CLI::App app{"Logarithmic matrices and sharp/flat factorization of p-adic power series", "sharpflat"};
    app.add_option("subcommand", cfg.subcommand, "logmatrix | pollack | factor1 | factor2 | eval | verify | roundtrip | growth")
        ->required();
    app.add_option("--p", cfg.p, "odd prime p")->required();
    app.add_option("--ap", cfg.ap, "Hecke eigenvalue a_p (divisible by p)")->required();
    app.add_option("--eps", cfg.eps, "character value eps(p), prime to p");
    app.add_option("--deg", cfg.deg, "truncation degree d (d_X for two variables)");
    app.add_option("--degy", cfg.degy, "truncation degree d_Y (defaults to --deg)");
    app.add_option("--prec", cfg.prec, "p-adic precision N in digits");
    app.add_option("--levels", cfg.levels, "character levels m, comma separated")->delimiter(',');
    app.add_option("--seed", cfg.seed, "seed for synthesized data");
    app.add_option("--in", cfg.in, "input JSON file (default stdin)");
    app.add_option("--out", cfg.out, "output JSON file (default stdout)");
    app.add_option("--level", cfg.level, "logmatrix: level n of M_p^(n)");
    app.add_option("--pairs", cfg.pairs, "pollack: number of companion pairs m");
    app.add_option("--u", cfg.u, "growth order in the first variable");
    app.add_option("--v", cfg.v, "growth order in the second variable");
    app.add_option("--c", cfg.c, "growth offset");
    app.add_option("--axis", cfg.axis, "eval: variable fixed by partial application (X or Y)");
    app.add_option("--builtin", cfg.builtin, "growth: built-in series to scan (log1p)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return {std::nullopt, 0};
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return {std::nullopt, 2};
    }
    return {cfg, 0};
}

int main_entry(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err)
{
    auto parsed = parse_arguments(argc, argv, out, err);
    if (!parsed.config) return parsed.status;
    return run(*parsed.config, in, out, err);
}

} // namespace sharpflat::cli
