#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "sharpflat/cli.hpp"
#include "sharpflat/json_io.hpp"

using namespace sharpflat;
using json_io::Json;

namespace {

struct Outcome {
    int status;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args, const std::string& input = "")
{
    args.insert(args.begin(), "sharpflat");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::istringstream in(input);
    std::ostringstream out, err;
    int status = cli::main_entry(static_cast<int>(argv.size()), argv.data(), in, out, err);
    return {status, out.str(), err.str()};
}

} // namespace

TEST_SUITE("cli")
{
TEST_CASE("verify passes on the default grid")
{
    auto r = invoke({"verify", "--p", "3", "--ap", "3", "--eps", "1", "--deg", "27", "--prec", "60", "--levels", "1,2"});
    CHECK(r.status == 0);
    auto j = Json::parse(r.out);
    CHECK(j["failures"].empty());
    CHECK(j["stabilization"].size() == 2);
    CHECK(j["rank1"]["reports"].size() == 2);
    CHECK(j["quadruple"]["derivative"].size() == 4);
}

TEST_CASE("pollack precondition")
{
    auto r = invoke({"pollack", "--p", "3", "--ap", "3", "--deg", "10"});
    CHECK(r.status == 2);
    CHECK(r.err.find("pollack requires a_p = 0") != std::string::npos);
    auto ok = invoke({"pollack", "--p", "3", "--ap", "0", "--pairs", "2", "--deg", "10"});
    CHECK(ok.status == 0);
    CHECK(Json::parse(ok.out)["pass"] == true);
}

TEST_CASE("roundtrip reports the precision loss and is deterministic")
{
    std::vector<std::string> args{"roundtrip", "--p", "5", "--ap", "0", "--seed", "7", "--deg", "27", "--prec", "60"};
    auto a = invoke(args), b = invoke(args);
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    auto j = Json::parse(a.out);
    CHECK(j.contains("max_loss"));
    CHECK(j["failures"].empty());
}

TEST_CASE("usage and parameter errors exit with status 2")
{
    auto unknown = invoke({"frobnicate", "--p", "3", "--ap", "3"});
    CHECK(unknown.status == 2);
    CHECK(unknown.err.find("unknown subcommand") != std::string::npos);

    auto bad_prime = invoke({"logmatrix", "--p", "4", "--ap", "4"});
    CHECK(bad_prime.status == 2);
    CHECK(bad_prime.err.find("invalid parameters") != std::string::npos);

    auto malformed = invoke({"factor1", "--p", "3", "--ap", "3"}, "{\"mu_alpha\": [");
    CHECK(malformed.status == 2);
    CHECK(malformed.err.find("malformed JSON") != std::string::npos);

    auto missing = invoke({"factor1", "--p", "3", "--ap", "3"}, "{}");
    CHECK(missing.status == 2);
    CHECK(missing.err.find("mu_alpha") != std::string::npos);

    auto no_p = invoke({"verify", "--ap", "3"});
    CHECK(no_p.status == 2);

    auto bad_level = invoke({"verify", "--p", "3", "--ap", "3", "--levels", "0"});
    CHECK(bad_level.status == 2);
}

TEST_CASE("verification failures exit with status 1 and list failures")
{
    auto r = invoke({"growth", "--p", "3", "--ap", "3", "--deg", "30", "--builtin", "log1p", "--u", "0", "--c", "0"});
    CHECK(r.status == 1);
    auto j = Json::parse(r.out);
    CHECK(j["growth"]["bound"].get<double>() == doctest::Approx(3.0));
    CHECK(j["failures"].size() == 1);
    auto ok = invoke({"growth", "--p", "3", "--ap", "3", "--deg", "30", "--builtin", "log1p", "--u", "1", "--c", "1"});
    CHECK(ok.status == 0);
}

TEST_CASE("factor1 and factor2 consume serialized series")
{
    auto fp = FormParams::make(3, 0, 1);
    auto m = logmatrix_level(fp, 3, 12);
    DigitStream stream(3);
    auto s = random_bounded_quad(fp, 12, stream), f = random_bounded_quad(fp, 12, stream);
    auto [a, b] = combine_pair(s, f, m);
    Json input{{"mu_alpha", json_io::encode(a)}, {"mu_beta", json_io::encode(b)}};
    auto r = invoke({"factor1", "--p", "3", "--ap", "0"}, input.dump());
    REQUIRE(r.status == 0);
    auto j = Json::parse(r.out);
    CHECK(json_io::decode_series1(j["mu_sharp"], fp).equals_within_precision(s));
    CHECK(json_io::decode_series1(j["mu_flat"], fp).equals_within_precision(f));

    auto mx = logmatrix_level(fp, 2, 9, Var::X);
    auto q = random_bounded_quadruple(fp, 9, 9, 2);
    auto l = recombine(q, kronecker(mx, mx.in_variable(Var::Y)));
    Json quad;
    for (std::size_t k = 0; k < 4; ++k) quad[LQuadruple::name(k)] = json_io::encode(l.l[k]);
    auto r2 = invoke({"factor2", "--p", "3", "--ap", "0"}, quad.dump());
    REQUIRE(r2.status == 0);
    auto j2 = Json::parse(r2.out);
    for (std::size_t k = 0; k < 4; ++k)
        CHECK(json_io::decode_series2(j2[LQuadruple::bounded_name(k)], fp).equals_within_precision(q.l[k]));
}

TEST_CASE("eval reduces one- and two-variable series")
{
    auto fp = FormParams::make(3, 3, 1);
    std::vector<QuadElem> c(4, QuadElem::zero(fp));
    c[3] = QuadElem::one(fp);
    Json input{{"series", json_io::encode(QSeries(fp, Var::X, c))}};
    auto r = invoke({"eval", "--p", "3", "--ap", "3", "--levels", "1"}, input.dump());
    REQUIRE(r.status == 0);
    auto v = Json::parse(r.out)["values"][0]["value"]["coeffs"];
    CHECK(json_io::decode_quad(v[0], fp) == QuadElem::from_integer(fp, 9));
    CHECK(json_io::decode_quad(v[1], fp) == QuadElem::from_integer(fp, 6));

    auto x2y = QSeries2::monomial(fp, 3, 2, 2, 1, QuadElem::one(fp));
    auto r2 = invoke({"eval", "--p", "3", "--ap", "3", "--levels", "1", "--axis", "X"}, Json{{"series", json_io::encode(x2y)}}.dump());
    REQUIRE(r2.status == 0);
    auto y1 = Json::parse(r2.out)["values"][0]["value"]["coeffs"][1]["coeffs"];
    CHECK(json_io::decode_quad(y1[0], fp) == QuadElem::from_integer(fp, -3));
    CHECK(json_io::decode_quad(y1[1], fp) == QuadElem::from_integer(fp, -3));
}

TEST_CASE("output file option")
{
    std::string path = "sharpflat_cli_test_output.json";
    auto r = invoke({"logmatrix", "--p", "5", "--ap", "5", "--deg", "5", "--out", path});
    CHECK(r.status == 0);
    CHECK(r.out.empty());
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    auto j = Json::parse(ss.str());
    CHECK(j["n"] == 1);
    CHECK(j["matrix"]["entries"].size() == 2);
    std::remove(path.c_str());
}

TEST_CASE("coefficient encoding round trips")
{
    auto fp = FormParams::make(5, 5, 2);
    auto ctx = fp.padic_context();
    std::vector<Padic> values{Padic::zero(ctx), Padic::zero_at(ctx, 7), Padic::from_rational(ctx, mpq_class(-7, 125)),
                              Padic::from_integer(ctx, 50, 9)};
    for (const auto& x : values) {
        auto back = json_io::decode_padic(json_io::encode(x), ctx);
        CHECK(back == x);
        CHECK(back.absolute_precision() == x.absolute_precision());
    }
    CHECK(json_io::encode(Padic::zero(ctx)).dump() == "{\"zero\":true}");
    CHECK(json_io::encode(Padic::from_rational(ctx, mpq_class(1, 5)))["v"] == -2);
    CHECK_THROWS_AS(json_io::decode_padic(Json{{"v", 1}, {"u", "1"}, {"r", 3}}, ctx), json_io::FormatError);
    CHECK_THROWS_AS(json_io::decode_padic(Json{{"v", 0}, {"u", "5"}, {"r", 3}}, ctx), json_io::FormatError);
    CHECK_THROWS_AS(json_io::decode_padic(Json{{"v", 0}, {"u", "x"}, {"r", 3}}, ctx), json_io::FormatError);

    auto s2 = QSeries2::monomial(fp, 3, 4, 1, 2, QuadElem::theta(fp));
    auto enc = json_io::encode(s2);
    CHECK(enc["coeffs"].size() == 1);
    CHECK(json_io::decode_series2(enc, fp).equals_within_precision(s2));
}
}
