#include "sharpflat/factor.hpp"

#include "sharpflat/errors.hpp"

namespace sharpflat {

namespace {

void require_pair_shape(const QSeries& a, const QSeries& b, const MatrixSeries& m, const char* what)
{
    a.require_compatible(b, what);
    if (a.var() != m.var()) throw ShapeError(std::string(what) + ": series and matrix use different variables");
    if (!(a.context() == m.params())) throw ParameterError(std::string(what) + ": parameter mismatch");
    if (a.degree() != b.degree() || a.degree() != m.degree()) throw ShapeError(std::string(what) + ": degree mismatch");
}

} // namespace

PairFactors factor_pair(const QSeries& mu_alpha, const QSeries& mu_beta, const MatrixSeries& m)
{
    require_pair_shape(mu_alpha, mu_beta, m, "factor_pair");
    QSeries det = m.det();
    QSeries num_sharp = mul_trunc(m(1, 1), mu_alpha) - mul_trunc(m(1, 0), mu_beta);
    QSeries num_flat = mul_trunc(m(0, 0), mu_beta) - mul_trunc(m(0, 1), mu_alpha);
    auto qs = divide_series(num_sharp, det);
    auto qf = divide_series(num_flat, det);
    return {std::move(qs.quotient), std::move(qf.quotient), std::max(qs.max_loss_halves, qf.max_loss_halves)};
}

std::pair<QSeries, QSeries> combine_pair(const QSeries& mu_sharp, const QSeries& mu_flat, const MatrixSeries& m)
{
    require_pair_shape(mu_sharp, mu_flat, m, "combine_pair");
    return {mul_trunc(mu_sharp, m(0, 0)) + mul_trunc(mu_flat, m(1, 0)),
            mul_trunc(mu_sharp, m(0, 1)) + mul_trunc(mu_flat, m(1, 1))};
}

std::pair<QSeries, QSeries> combine_pair_full(const QSeries& mu_sharp, const QSeries& mu_flat, const MatrixSeries& m)
{
    mu_sharp.require_compatible(mu_flat, "combine_pair_full");
    if (mu_sharp.degree() != mu_flat.degree()) throw ShapeError("combine_pair_full: degree mismatch");
    if (mu_sharp.var() != m.var()) throw ShapeError("combine_pair_full: variable mismatch");
    return {mul_full(mu_sharp, m(0, 0)) + mul_full(mu_flat, m(1, 0)),
            mul_full(mu_sharp, m(0, 1)) + mul_full(mu_flat, m(1, 1))};
}

std::vector<CharValueReport> verify_pair(const QSeries& mu_alpha, const QSeries& mu_beta, const std::vector<long>& levels)
{
    mu_alpha.require_compatible(mu_beta, "verify_pair");
    const FormParams& params = mu_alpha.context();
    std::vector<CharValueReport> out;
    for (long m : levels) {
        if (m < 1) throw ParameterError("verify_pair: levels must be >= 1 (trivial characters are excluded)");
        if (static_cast<std::size_t>(cyclotomic_degree(params.p, m)) > mu_alpha.degree())
            throw ShapeError("verify_pair: series degree below deg Phi_{p^m}");
        CharValueReport rep;
        rep.level_x = m;
        long n = m + 1;
        QCyclo lhs = scale(reduce_mod_cyclo(mu_alpha, m), root_power(params, Root::alpha, n));
        QCyclo rhs = scale(reduce_mod_cyclo(mu_beta, m), root_power(params, Root::beta, n));
        QCyclo residual = lhs - rhs;
        rep.residual_precision = residual.absolute_precision();
        rep.pass = residual.is_zero();
        if (!rep.pass) {
            rep.failing_valuation = residual.valuation();
            rep.message = "level " + std::to_string(m) + ": alpha^n mu_alpha(omega) != beta^n mu_beta(omega), residual valuation " +
                          residual.valuation().str();
        }
        rep.c_omega = lhs;
        out.push_back(std::move(rep));
    }
    return out;
}

std::vector<CharValueReport> vanish_check_pair(const QSeries& mu_alpha, const QSeries& mu_beta, const MatrixSeries& m,
                                               const std::vector<long>& levels)
{
    mu_alpha.require_compatible(mu_beta, "vanish_check_pair");
    std::vector<CharValueReport> out;
    for (long level : levels) {
        CharValueReport rep;
        rep.level_x = level;
        // Evaluation is a ring map, so each factor is evaluated separately and no truncation enters.
        QCyclo a = reduce_mod_cyclo(mu_alpha, level);
        QCyclo b = reduce_mod_cyclo(mu_beta, level);
        QCyclo sharp = reduce_mod_cyclo(m(1, 1), level) * a - reduce_mod_cyclo(m(1, 0), level) * b;
        QCyclo flat = reduce_mod_cyclo(m(0, 0), level) * b - reduce_mod_cyclo(m(0, 1), level) * a;
        rep.residual_precision = std::min(sharp.absolute_precision(), flat.absolute_precision());
        rep.pass = sharp.is_zero() && flat.is_zero();
        if (!rep.pass) {
            Valuation worst = Valuation::infinity();
            if (!sharp.is_zero()) worst = std::min(worst, sharp.valuation());
            if (!flat.is_zero()) worst = std::min(worst, flat.valuation());
            rep.failing_valuation = worst;
            rep.message = "level " + std::to_string(level) + ": numerator does not vanish, valuation " + worst.str();
        }
        out.push_back(std::move(rep));
    }
    return out;
}

mpz_class DigitStream::integer_mod(long p, long digits)
{
    mpz_class value = 0;
    for (long k = 0; k < digits; ++k) {
        std::uint64_t digit = engine_() % static_cast<std::uint64_t>(p);
        value += prime_power(p, k) * static_cast<unsigned long>(digit);
    }
    return value;
}

Series1<Padic> random_bounded(const PadicContext& ctx, std::size_t d, DigitStream& stream)
{
    std::vector<Padic> c;
    c.reserve(d);
    for (std::size_t n = 0; n < d; ++n) c.push_back(Padic::from_integer(ctx, stream.integer_mod(ctx.p, ctx.cap), ctx.cap));
    return Series1<Padic>(ctx, Var::X, std::move(c));
}

Series1<Padic> random_bounded(const PadicContext& ctx, std::size_t d, std::uint64_t seed)
{
    DigitStream stream(seed);
    return random_bounded(ctx, d, stream);
}

QSeries random_bounded_quad(const FormParams& params, std::size_t d, DigitStream& stream, Var var)
{
    auto ctx = params.padic_context();
    std::vector<QuadElem> c;
    c.reserve(d);
    for (std::size_t n = 0; n < d; ++n) {
        Padic a = Padic::from_integer(ctx, stream.integer_mod(params.p, params.precision), params.precision);
        Padic b = Padic::from_integer(ctx, stream.integer_mod(params.p, params.precision), params.precision);
        c.emplace_back(params, std::move(a), std::move(b));
    }
    return QSeries(params, var, std::move(c));
}

Series2<QuadElem> random_bounded2(const FormParams& params, std::size_t dx, std::size_t dy, DigitStream& stream)
{
    std::vector<QSeries> fibers;
    for (std::size_t j = 0; j < dy; ++j) fibers.push_back(random_bounded_quad(params, dx, stream, Var::X));
    return Series2<QuadElem>::from_fibers(params, Var::X, fibers);
}

} // namespace sharpflat
