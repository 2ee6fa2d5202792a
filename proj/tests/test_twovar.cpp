#include <doctest.h>

#include <algorithm>
#include <array>
#include <string>

#include "sharpflat/errors.hpp"
#include "sharpflat/twovar.hpp"

using namespace sharpflat;

namespace {

struct Fixture {
    FormParams fp;
    MatrixSeries mx;
    MatrixSeries my;
    LQuadruple q;
    LQuadruple l;
};

// Exact synthesis: pre-images of degree 4 times complete level-2 matrices.
Fixture synthesized(long p, long ap, std::uint64_t seed, std::size_t pre = 4)
{
    auto fp = FormParams::make(p, ap, 1);
    auto full = prime_power_size(p, 2);
    auto mx = logmatrix_level(fp, 2, full, Var::X);
    auto my = mx.in_variable(Var::Y);
    auto q = random_bounded_quadruple(fp, pre, pre, seed);
    auto l = recombine_full(q, kronecker(mx, my));
    return {fp, mx, my, q, l};
}

LQuadruple unit_quadruple(const FormParams& fp, std::size_t d, std::size_t slot)
{
    auto l = LQuadruple::zero(fp, d, d);
    l.l[slot] = QSeries2::monomial(fp, d, d, 0, 0, QuadElem::one(fp));
    return l;
}

const std::vector<std::pair<long, long>> kPairs{{1, 1}, {1, 2}, {2, 1}};

} // namespace

TEST_SUITE("twovar")
{
TEST_CASE("identity tensor identity is the identity")
{
    auto fp = FormParams::make(3, 3, 1);
    auto k = kronecker(MatrixSeries::identity(fp, Var::X, 3), MatrixSeries::identity(fp, Var::Y, 3));
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) {
            auto e = k.entry(r, c);
            if (r == c) CHECK(e.equals_within_precision(QSeries2::monomial(fp, 3, 3, 0, 0, QuadElem::one(fp))));
            else CHECK(e.is_zero());
        }
}

TEST_CASE("row vector convention of the Kronecker product")
{
    auto fp = FormParams::make(5, 5, 1);
    auto mx = logmatrix_level(fp, 1, 6, Var::X);
    auto my = logmatrix_level(fp, 1, 6, Var::Y);
    auto out = recombine(unit_quadruple(fp, 6, 0), kronecker(mx, my));
    CHECK(out.l[0].equals_within_precision(QSeries2::outer(mx(0, 0), my(0, 0))));
    CHECK(out.l[1].equals_within_precision(QSeries2::outer(mx(0, 1), my(0, 0))));
    CHECK(out.l[2].equals_within_precision(QSeries2::outer(mx(0, 0), my(0, 1))));
    CHECK(out.l[3].equals_within_precision(QSeries2::outer(mx(0, 1), my(0, 1))));

    auto mat = recombine_materialized(unit_quadruple(fp, 6, 0), kronecker(mx, my));
    CHECK(mat.equals_within_precision(out));
}

TEST_CASE("det of the Kronecker product is det(Mx)^2 det(My)^2")
{
    auto fp = FormParams::make(3, 0, 1);
    const std::size_t d = 4;
    auto mx = logmatrix_level(fp, 1, d, Var::X);
    auto my = logmatrix_level(fp, 1, d, Var::Y);
    auto k = kronecker(mx, my);
    std::array<std::size_t, 4> perm{0, 1, 2, 3};
    auto det = QSeries2::zero(fp, d, d);
    do {
        int inversions = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) inversions += perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)];
        auto term = k.entry(0, perm[0]);
        for (std::size_t r = 1; r < 4; ++r) term = mul_trunc(term, k.entry(r, perm[r]));
        det = inversions % 2 == 0 ? det + term : det - term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    auto dx = mx.det(), dy = my.det();
    auto expected = QSeries2::outer(mul_trunc(dx, dx), mul_trunc(dy, dy));
    CHECK(det.equals_within_precision(expected));
}

TEST_CASE("factor_x and factor_y unit round trips")
{
    auto fp = FormParams::make(3, 3, 1);
    auto mx = logmatrix_level(fp, 2, 9, Var::X);
    auto my = logmatrix_level(fp, 2, 9, Var::Y);
    auto one = QSeries2::monomial(fp, 9, 9, 0, 0, QuadElem::one(fp));
    auto zero = QSeries2::zero(fp, 9, 9);

    // (L_{#,*}, L_{b,*}) = (1, 0) for both *: L_{a,*} = m11, L_{b,*} = m12.
    LQuadruple l{fp, {}};
    auto m11 = QSeries2::outer(mx(0, 0), QSeries::one(fp, Var::Y, 9));
    auto m12 = QSeries2::outer(mx(0, 1), QSeries::one(fp, Var::Y, 9));
    l.l = {m11, m12, m11, m12};
    auto xf = factor_x(l, mx);
    CHECK(xf.sharp_alpha.equals_within_precision(one));
    CHECK(xf.flat_alpha.equals_within_precision(zero));
    CHECK(xf.sharp_beta.equals_within_precision(one));
    CHECK(xf.flat_beta.equals_within_precision(zero));

    auto zx = factor_x(LQuadruple::zero(fp, 9, 9), mx);
    CHECK(zx.sharp_alpha.is_zero());
    CHECK(zx.flat_beta.is_zero());

    // (L_{*,#}, L_{*,b}) = (0, 1): the Y-pair is the second row of My.
    XFactors in;
    in.sharp_alpha = in.flat_alpha = QSeries2::outer(QSeries::one(fp, Var::X, 9), my(1, 0));
    in.sharp_beta = in.flat_beta = QSeries2::outer(QSeries::one(fp, Var::X, 9), my(1, 1));
    auto yf = factor_y(in, my);
    for (std::size_t first : {0, 1}) {
        CHECK(yf.parts.l[LQuadruple::slot(static_cast<int>(first), 0)].equals_within_precision(zero));
        CHECK(yf.parts.l[LQuadruple::slot(static_cast<int>(first), 1)].equals_within_precision(one));
    }
    XFactors zin{zero, zero, zero, zero, 0};
    CHECK(factor_y(zin, my).parts.equals_within_precision(LQuadruple::zero(fp, 9, 9)));
}

TEST_CASE("factor_full recovers unit and random quadruples")
{
    auto fp = FormParams::make(3, 0, 1);
    auto mx = logmatrix_level(fp, 2, 9, Var::X);
    auto my = logmatrix_level(fp, 2, 9, Var::Y);
    auto k = kronecker(mx, my);
    auto unit = unit_quadruple(fp, 9, 0);
    auto l = recombine(unit, k);
    CHECK(factor_full(l, mx, my).parts.equals_within_precision(unit));

    auto q = random_bounded_quadruple(fp, 9, 9, 3);
    auto f = factor_full(recombine(q, k), mx, my);
    CHECK(f.parts.equals_within_precision(q));
    CHECK(recombine(f.parts, k).equals_within_precision(recombine(q, k)));
}

TEST_CASE("factoring order does not matter")
{
    for (long ap : {0L, 5L}) {
        auto fp = FormParams::make(5, ap, 1);
        auto mx = logmatrix_level(fp, 2, 12, Var::X);
        auto my = logmatrix_level(fp, 2, 12, Var::Y);
        auto l = recombine(random_bounded_quadruple(fp, 12, 12, 9), kronecker(mx, my));
        auto a = factor_full(l, mx, my), b = factor_full_y_first(l, mx, my);
        CHECK(a.parts.equals_within_precision(b.parts));
    }
}

TEST_CASE("factor_x commutes with partial application in Y")
{
    auto fx = synthesized(3, 3, 21);
    auto mxd = logmatrix_level(fx.fp, 2, fx.l.degree_x(), Var::X);
    auto xf = factor_x(fx.l, mxd);
    for (long m : {1L, 2L}) {
        auto a = partial_apply(fx.l.l[LQuadruple::slot(0, 0)], Var::Y, m);
        auto b = partial_apply(fx.l.l[LQuadruple::slot(1, 0)], Var::Y, m);
        auto ctx = a.context();
        auto lift = [&](const QSeries& s) {
            return s.truncated(a.degree()).map([&](const QuadElem& c) { return QCyclo::constant(ctx, c); });
        };
        auto num = mul_trunc(lift(mxd(1, 1)), a) - mul_trunc(lift(mxd(1, 0)), b);
        auto sharp = divide_series(num, lift(mxd.det())).quotient;
        CHECK(sharp.equals_within_precision(partial_apply(xf.sharp_alpha, Var::Y, m)));
    }
}

TEST_CASE("verify_interpolation4 examples")
{
    auto fx = synthesized(5, 0, 5);
    for (const auto& r : verify_interpolation4(fx.l, kPairs)) {
        CHECK(r.pass);
        CHECK(r.c_omega2.has_value());
        CHECK(r.residual_precision >= Valuation::from_digits(20));
    }
    for (const auto& r : verify_interpolation4(LQuadruple::zero(fx.fp, 30, 30), kPairs)) {
        CHECK(r.pass);
        CHECK(r.c_omega2->is_zero());
    }
    auto bumped = fx.l;
    auto& lbb = bumped.l[LQuadruple::slot(1, 1)];
    lbb = lbb.with_coeff(1, 2, lbb.at(1, 2) + QuadElem::one(fx.fp));
    for (const auto& r : verify_interpolation4(bumped, kPairs)) {
        CHECK_FALSE(r.pass);
        CHECK(r.message.find("L_bb") != std::string::npos);
    }
}

TEST_CASE("derivative_relation examples")
{
    auto fx = synthesized(3, 3, 6);
    for (const auto& r : derivative_relation(fx.l, kPairs)) {
        CHECK(r.pass);
        CHECK(r.d_omega.has_value());
        CHECK(r.e_omega.has_value());
    }

    DigitStream stream(10);
    LQuadruple flat{fx.fp, {}};
    for (auto& s : flat.l) s = QSeries2::outer(QSeries::one(fx.fp, Var::X, 12), random_bounded_quad(fx.fp, 12, stream, Var::Y));
    for (const auto& r : derivative_relation(flat, kPairs)) {
        CHECK(r.pass);
        CHECK(r.d_omega->is_zero());
        CHECK(r.e_omega->is_zero());
    }

    auto bumped = fx.l;
    auto& lab = bumped.l[LQuadruple::slot(0, 1)];
    lab = lab.with_coeff(2, 1, lab.at(2, 1) + QuadElem::one(fx.fp));
    bool any_fail = false;
    for (const auto& r : derivative_relation(bumped, kPairs)) any_fail = any_fail || !r.pass;
    CHECK(any_fail);
}

TEST_CASE("vanish_check examples")
{
    auto fx = synthesized(3, 0, 8);
    for (const auto& r : vanish_check(fx.l, fx.mx, kPairs)) CHECK(r.pass);
    for (const auto& r : vanish_check(LQuadruple::zero(fx.fp, 12, 12), fx.mx, kPairs)) CHECK(r.pass);
    int failed = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto noise = random_bounded_quadruple(fx.fp, 12, 12, seed);
        bool any = false;
        for (const auto& r : vanish_check(noise, fx.mx, kPairs)) any = any || !r.pass;
        failed += any;
    }
    CHECK(failed == 20);
}

TEST_CASE("factor outputs are bounded up to the measured loss")
{
    auto fp = FormParams::make(5, 5, 1);
    auto mx = logmatrix_level(fp, 2, 15, Var::X);
    auto my = logmatrix_level(fp, 2, 15, Var::Y);
    auto q = random_bounded_quadruple(fp, 15, 15, 12);
    auto f = factor_full(recombine(q, kronecker(mx, my)), mx, my);
    double loss = (f.loss_x_halves + f.loss_y_halves) / 2.0;
    for (const auto& s : f.parts.l) CHECK(growth_order(s, 0.0, 0.0, 0.0).bound <= loss);
}
}
