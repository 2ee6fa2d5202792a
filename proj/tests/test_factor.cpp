#include <doctest.h>

#include "sharpflat/errors.hpp"
#include "sharpflat/factor.hpp"

using namespace sharpflat;

namespace {

FormParams p3() { return FormParams::make(3, 3, 1); }

QSeries constant(const FormParams& fp, std::size_t d, long c)
{
    return c == 0 ? QSeries::zero(fp, Var::X, d) : QSeries::constant(fp, Var::X, d, QuadElem::from_integer(fp, c));
}

// Row vector times matrix written out coefficient by coefficient.
std::pair<QSeries, QSeries> row_times(const QSeries& s, const QSeries& f, const MatrixSeries& m)
{
    auto fp = s.context();
    std::size_t d = s.degree();
    std::vector<QuadElem> a(d, QuadElem::zero(fp)), b(d, QuadElem::zero(fp));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; i + j < d; ++j) {
            a[i + j] += s[i] * m(0, 0)[j] + f[i] * m(1, 0)[j];
            b[i + j] += s[i] * m(0, 1)[j] + f[i] * m(1, 1)[j];
        }
    return {QSeries(fp, Var::X, a), QSeries(fp, Var::X, b)};
}

} // namespace

TEST_SUITE("factor")
{
TEST_CASE("combine_pair examples")
{
    auto fp = p3();
    auto m = logmatrix_level(fp, 2, 9);
    auto [a, b] = combine_pair(constant(fp, 9, 1), constant(fp, 9, 0), m);
    CHECK(a.equals_within_precision(m(0, 0)));
    CHECK(b.equals_within_precision(m(0, 1)));
    auto [z1, z2] = combine_pair(constant(fp, 9, 0), constant(fp, 9, 0), m);
    CHECK(z1.is_zero());
    CHECK(z2.is_zero());
    auto [s1, s2] = combine_pair(constant(fp, 9, 1), constant(fp, 9, 1), m);
    CHECK(s1.equals_within_precision(m(0, 0) + m(1, 0)));
    CHECK(s2.equals_within_precision(m(0, 1) + m(1, 1)));
}

TEST_CASE("combine_pair agrees with the explicit row-vector product")
{
    auto fp = FormParams::make(5, 0, 2);
    DigitStream stream(8);
    auto m = logmatrix_level(fp, 2, 20);
    auto s = random_bounded_quad(fp, 20, stream), f = random_bounded_quad(fp, 20, stream);
    auto [a, b] = combine_pair(s, f, m);
    auto [ea, eb] = row_times(s, f, m);
    CHECK(a.equals_within_precision(ea));
    CHECK(b.equals_within_precision(eb));
}

TEST_CASE("factor_pair examples")
{
    auto fp = p3();
    auto m = logmatrix_level(fp, 2, 9);
    auto r1 = factor_pair(m(0, 0), m(0, 1), m);
    CHECK(r1.sharp.equals_within_precision(constant(fp, 9, 1)));
    CHECK(r1.flat.equals_within_precision(constant(fp, 9, 0)));
    auto r2 = factor_pair(m(1, 0), m(1, 1), m);
    CHECK(r2.sharp.equals_within_precision(constant(fp, 9, 0)));
    CHECK(r2.flat.equals_within_precision(constant(fp, 9, 1)));
    auto r3 = factor_pair(m(0, 0) + m(1, 0), m(0, 1) + m(1, 1), m);
    CHECK(r3.sharp.equals_within_precision(constant(fp, 9, 1)));
    CHECK(r3.flat.equals_within_precision(constant(fp, 9, 1)));
    auto [a, b] = row_times(r3.sharp, r3.flat, m);
    CHECK(a.equals_within_precision(m(0, 0) + m(1, 0)));
    CHECK(b.equals_within_precision(m(0, 1) + m(1, 1)));
}

TEST_CASE("round trip in both directions")
{
    for (long p : {3L, 5L})
        for (long ap : {0L, p}) {
            auto fp = FormParams::make(p, ap, 1);
            auto m = logmatrix_level(fp, limit_level(p, 27), 27);
            DigitStream stream(static_cast<std::uint64_t>(p * 10 + ap));
            auto s = random_bounded_quad(fp, 27, stream), f = random_bounded_quad(fp, 27, stream);
            auto [a, b] = combine_pair(s, f, m);
            auto r = factor_pair(a, b, m);
            CHECK(r.sharp.equals_within_precision(s));
            CHECK(r.flat.equals_within_precision(f));
            auto [a2, b2] = combine_pair(r.sharp, r.flat, m);
            CHECK(a2.equals_within_precision(a));
            CHECK(b2.equals_within_precision(b));
            // Boundedness transfers up to the measured loss.
            double loss = r.loss_halves / 2.0;
            CHECK(growth_order(r.sharp, 0.0, 0.0).bound <= loss);
            CHECK(growth_order(r.flat, 0.0, 0.0).bound <= loss);
        }
}

TEST_CASE("verify_pair examples")
{
    auto fp = p3();
    auto m = logmatrix_level(fp, 2, 9);
    DigitStream stream(1);
    auto [a, b] = combine_pair_full(random_bounded_quad(fp, 6, stream), random_bounded_quad(fp, 6, stream), m);
    for (const auto& r : verify_pair(a, b, {1, 2})) {
        CHECK(r.pass);
        CHECK(r.residual_precision >= Valuation::from_digits(20));
    }

    auto zeros = verify_pair(constant(fp, 9, 0), constant(fp, 9, 0), {1, 2});
    for (const auto& r : zeros) {
        CHECK(r.pass);
        REQUIRE(r.c_omega.has_value());
        CHECK(r.c_omega->is_zero());
    }
    for (const auto& r : verify_pair(constant(fp, 9, 1), constant(fp, 9, 0), {1, 2})) {
        CHECK_FALSE(r.pass);
        CHECK_FALSE(r.message.empty());
    }
    CHECK_THROWS_AS(verify_pair(a, b, {0}), ParameterError);
}

TEST_CASE("verify_pair constants scale linearly")
{
    auto fp = FormParams::make(5, 5, 1);
    auto m = logmatrix_level(fp, 1, 5);
    DigitStream stream(2);
    auto [a, b] = combine_pair_full(random_bounded_quad(fp, 4, stream), random_bounded_quad(fp, 4, stream), m);
    auto three = QuadElem::from_integer(fp, 3);
    auto base = verify_pair(a, b, {1});
    auto scaled = verify_pair(a * three, b * three, {1});
    REQUIRE(base[0].pass);
    REQUIRE(scaled[0].pass);
    CHECK(scaled[0].c_omega->equals_within_precision(scale(*base[0].c_omega, three)));
}

TEST_CASE("vanish_check_pair on synthesized and non-pair data")
{
    auto fp = FormParams::make(3, 0, 1);
    auto m = logmatrix_level(fp, 2, 9);
    DigitStream stream(4);
    auto [a, b] = combine_pair_full(random_bounded_quad(fp, 5, stream), random_bounded_quad(fp, 5, stream), m);
    for (const auto& r : vanish_check_pair(a, b, m, {1, 2})) CHECK(r.pass);
    auto noise_a = random_bounded_quad(fp, 13, stream), noise_b = random_bounded_quad(fp, 13, stream);
    bool any_fail = false;
    for (const auto& r : vanish_check_pair(noise_a, noise_b, m, {1, 2})) any_fail = any_fail || !r.pass;
    CHECK(any_fail);
}

TEST_CASE("growth_order examples")
{
    PadicContext ctx{3, 60};
    auto s = log1p_over_x(ctx, 30);
    auto g0 = growth_order(s, 0.0, 0.0);
    CHECK(g0.bound == doctest::Approx(3.0));
    CHECK(g0.argmax == 26);
    CHECK_FALSE(g0.pass);
    auto g1 = growth_order(s, 1.0, 1.0);
    CHECK(g1.bound <= 1.0 + 1e-12);
    CHECK(g1.pass);
    // Independent scan: max_n v_3(n+1) - log_3(max(n, 1)).
    double best = -1e9;
    for (int n = 0; n < 30; ++n) {
        int v = 0;
        for (int k = n + 1; k % 3 == 0; k /= 3) ++v;
        best = std::max(best, v - std::log(std::max(n, 1)) / std::log(3.0));
    }
    CHECK(g1.bound == doctest::Approx(best));
    for (double u : {0.0, 1.0, 2.5}) {
        auto one = growth_order(Series1<Padic>::one(ctx, Var::X, 10), u, 0.0);
        CHECK(one.bound == doctest::Approx(0.0));
    }
}

TEST_CASE("random_bounded is deterministic and integral")
{
    PadicContext ctx{5, 60};
    auto a = random_bounded(ctx, 20, 42), b = random_bounded(ctx, 20, 42);
    CHECK(a == b);
    CHECK(growth_order(a, 0.0, 0.0).bound <= 0.0);
    CHECK_FALSE(random_bounded(ctx, 20, 0) == random_bounded(ctx, 20, 1));
    for (const auto& c : a.coeffs()) CHECK(c.absolute_precision() == Valuation::from_digits(60));
}
}
