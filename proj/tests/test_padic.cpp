#include <doctest.h>

#include <random>

#include "sharpflat/errors.hpp"
#include "sharpflat/quad.hpp"

using namespace sharpflat;

namespace {

// Independent p-adic valuation of a nonzero rational.
long vq(const mpq_class& q, long p)
{
    long v = 0;
    mpz_class n = q.get_num(), d = q.get_den();
    while (n % p == 0) n /= p, ++v;
    while (d % p == 0) d /= p, --v;
    return v;
}

// x == y modulo p^k, for rationals whose denominators are handled via valuation.
bool congruent(const mpq_class& x, const mpq_class& y, long p, long k)
{
    mpq_class diff = x - y;
    if (diff == 0) return true;
    return vq(diff, p) >= k;
}

FormParams p3a3() { return FormParams::make(3, 3, 1); }

} // namespace

TEST_SUITE("padic")
{
TEST_CASE("form parameters are validated")
{
    CHECK_NOTHROW(FormParams::make(3, 0, 1));
    CHECK_NOTHROW(FormParams::make(5, -10, 2));
    CHECK_THROWS_AS(FormParams::make(2, 2, 1), ParameterError);
    CHECK_THROWS_AS(FormParams::make(9, 9, 1), ParameterError);
    CHECK_THROWS_AS(FormParams::make(3, 1, 1), ParameterError);
    CHECK_THROWS_AS(FormParams::make(3, 3, 3), ParameterError);
    CHECK_THROWS_AS(FormParams::make(3, 3, 1, 0), ParameterError);
}

TEST_CASE("Vieta relations hold for theta and its conjugate")
{
    for (long p : {3L, 5L})
        for (long ap : {0L, p, 2 * p})
            for (long eps : {1L, 2L, -1L}) {
                auto fp = FormParams::make(p, ap, eps);
                auto a = QuadElem::root(fp, Root::alpha), b = QuadElem::root(fp, Root::beta);
                CHECK(quad_mul(a, b).equals_within_precision(QuadElem::from_integer(fp, eps * p)));
                CHECK((a + b).equals_within_precision(QuadElem::from_integer(fp, ap)));
            }
}

TEST_CASE("quad_mul examples")
{
    auto fp = p3a3();
    auto th = QuadElem::theta(fp);
    auto one = QuadElem::one(fp);
    CHECK(quad_mul(th, QuadElem::from_integer(fp, 3) - th).equals_within_precision(QuadElem::from_integer(fp, 3)));
    CHECK(quad_mul(one + th, one) == one + th);
    CHECK(quad_mul(th, th) == th * Padic::from_integer(fp.padic_context(), 3) - QuadElem::from_integer(fp, 3));
}

TEST_CASE("quad_conj examples")
{
    auto fp = p3a3();
    auto th = QuadElem::theta(fp);
    CHECK(quad_conj(th) == QuadElem::from_integer(fp, 3) - th);
    auto x = QuadElem::from_integer(fp, 7) + th * Padic::from_rational(fp.padic_context(), mpq_class(2, 9));
    CHECK(quad_conj(quad_conj(x)).equals_within_precision(x));
    CHECK(quad_conj(QuadElem::from_integer(fp, 5)) == QuadElem::from_integer(fp, 5));
}

TEST_CASE("quad_inv examples")
{
    auto fp = p3a3();
    auto ctx = fp.padic_context();
    auto th = QuadElem::theta(fp);
    auto expected = (QuadElem::from_integer(fp, 3) - th) * Padic::from_rational(ctx, mpq_class(1, 3));
    CHECK(quad_inv(th).equals_within_precision(expected));
    // (2 - theta)/3 from (3 - theta)^2 / 9 = (9 - 6 theta + 3 theta - 3)/9.
    auto inv_sq = (QuadElem::from_integer(fp, 2) - th) * Padic::from_rational(ctx, mpq_class(1, 3));
    CHECK(quad_inv(quad_mul(th, th)).equals_within_precision(inv_sq));
    CHECK(quad_inv(QuadElem::one(fp)) == QuadElem::one(fp));
    CHECK_THROWS_AS(quad_inv(QuadElem::zero(fp)), DivisionByZero);
}

TEST_CASE("valuation examples")
{
    auto fp = p3a3();
    auto th = QuadElem::theta(fp);
    CHECK(th.valuation() == Valuation::from_twice(1));
    CHECK(QuadElem::from_integer(fp, 3).valuation() == Valuation::from_digits(1));
    CHECK((QuadElem::one(fp) + th).valuation() == Valuation::from_digits(0));
}

TEST_CASE("root_power examples")
{
    auto fp = p3a3();
    auto ctx = fp.padic_context();
    auto th = QuadElem::theta(fp);
    CHECK(root_power(fp, Root::alpha, 1) == th);
    auto inv_sq = (QuadElem::from_integer(fp, 2) - th) * Padic::from_rational(ctx, mpq_class(1, 3));
    CHECK(root_power(fp, Root::alpha, -2).equals_within_precision(inv_sq));
    CHECK(root_power(fp, Root::alpha, 2) == th * Padic::from_integer(ctx, 3) - QuadElem::from_integer(fp, 3));
    CHECK(root_power(fp, Root::alpha, 0) == QuadElem::one(fp));
}

TEST_CASE("root_power(alpha, k) root_power(beta, k) = (eps p)^k")
{
    for (long p : {3L, 5L})
        for (long ap : {0L, p})
            for (long eps : {1L, 2L}) {
                auto fp = FormParams::make(p, ap, eps);
                for (long k = -10; k <= 10; ++k) {
                    auto prod = quad_mul(root_power(fp, Root::alpha, k), root_power(fp, Root::beta, k));
                    mpq_class target = 1;
                    for (long i = 0; i < std::abs(k); ++i) target *= eps * p;
                    if (k < 0) target = 1 / target;
                    CHECK(prod.equals_within_precision(QuadElem::from_rational(fp, target)));
                }
            }
}

TEST_CASE("valuation is multiplicative and the norm has integral valuation")
{
    std::mt19937_64 rng(2024);
    for (long p : {3L, 5L})
        for (long ap : {0L, p}) {
            auto fp = FormParams::make(p, ap, 1);
            auto ctx = fp.padic_context();
            auto draw = [&] {
                auto num = static_cast<long>(rng() % 2000) - 1000;
                auto e = static_cast<long>(rng() % 5) - 2;
                mpq_class q(num == 0 ? 1 : num);
                for (long i = 0; i < std::abs(e); ++i) q = e < 0 ? mpq_class(q / p) : mpq_class(q * p);
                return Padic::from_rational(ctx, q);
            };
            for (int t = 0; t < 50; ++t) {
                QuadElem x(fp, draw(), draw()), y(fp, draw(), draw());
                CHECK((x * y).valuation() == x.valuation() + y.valuation());
                CHECK(x.valuation() + x.conj().valuation() == x.norm().valuation());
                CHECK(x.norm().valuation().twice() % 2 == 0);
            }
        }
}

TEST_CASE("precision tracking matches interval arithmetic on rational inputs")
{
    std::mt19937_64 rng(99);
    const long p = 3;
    PadicContext ctx{p, 60};
    auto draw = [&](mpq_class& exact, long& abs) {
        long num = static_cast<long>(rng() % 4000) + 1;
        long den = static_cast<long>(rng() % 30) + 1;
        if (rng() % 2) num = -num;
        exact = mpq_class(num, den);
        exact.canonicalize();
        abs = vq(exact, p) + 1 + static_cast<long>(rng() % 12);
        return Padic::from_rational(ctx, exact).with_absolute_precision(abs);
    };
    for (int t = 0; t < 300; ++t) {
        mpq_class qx, qy;
        long ax, ay;
        Padic x = draw(qx, ax), y = draw(qy, ay);
        long vx = vq(qx, p), vy = vq(qy, p);

        Padic s = x + y;
        CHECK(s.digits_absolute_precision() == std::min(ax, ay));
        CHECK(congruent(s.representative(), qx + qy, p, std::min(ax, ay)));

        Padic d = x - y;
        CHECK(d.digits_absolute_precision() == std::min(ax, ay));
        CHECK(congruent(d.representative(), qx - qy, p, std::min(ax, ay)));

        Padic m = x * y;
        long am = std::min(ax + vy, ay + vx);
        CHECK(m.digits_absolute_precision() == am);
        CHECK(congruent(m.representative(), qx * qy, p, am));

        Padic inv = x.inverse();
        long ai = ax - 2 * vx;
        CHECK(inv.digits_absolute_precision() == ai);
        CHECK(congruent(inv.representative(), 1 / qx, p, ai));
    }
}

TEST_CASE("precision never increases and zero-at-precision is recognized")
{
    PadicContext ctx{5, 20};
    auto x = Padic::from_integer(ctx, 7, 4);
    auto y = Padic::from_integer(ctx, 7, 10);
    auto z = x - y;
    CHECK(z.is_zero());
    CHECK_FALSE(z.is_exact_zero());
    CHECK(z.digits_absolute_precision() == 4);
    CHECK(Padic::zero(ctx).is_exact_zero());
    CHECK((Padic::from_integer(ctx, 25) * Padic::zero_at(ctx, 3)).digits_absolute_precision() == 5);
    CHECK_THROWS_AS(z.inverse(), DivisionByZero);
    CHECK(Padic::from_integer(ctx, 250).digits_valuation() == 3);
    CHECK(Padic::from_integer(ctx, 250).relative_precision() == 20);
}
}
