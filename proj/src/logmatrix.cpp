#include "sharpflat/logmatrix.hpp"

#include <utility>

#include "sharpflat/errors.hpp"

namespace sharpflat {

QuadMatrix QuadMatrix::operator*(const QuadMatrix& o) const
{
    QuadMatrix r = o;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r(i, j) = (*this)(i, 0) * o(0, j) + (*this)(i, 1) * o(1, j);
    return r;
}

QuadMatrix QuadMatrix::inverse() const
{
    QuadElem inv = det().inverse();
    return QuadMatrix{{e[3] * inv, -e[1] * inv, -e[2] * inv, e[0] * inv}};
}

QuadMatrix QuadMatrix::identity(const FormParams& params)
{
    return QuadMatrix{{QuadElem::one(params), QuadElem::zero(params), QuadElem::zero(params), QuadElem::one(params)}};
}

MatrixSeries::MatrixSeries(const FormParams& params, Var var, std::optional<long> level, std::array<QSeries, 4> entries)
    : params_(params), var_(var), level_(level), entries_(std::move(entries))
{
    for (const auto& s : entries_) {
        if (!(s.context() == params_)) throw ParameterError("MatrixSeries: entry parameters differ");
        if (s.var() != var_) throw ShapeError("MatrixSeries: entry variable differs");
        if (s.degree() != entries_[0].degree()) throw ShapeError("MatrixSeries: entry degrees differ");
    }
}

MatrixSeries MatrixSeries::identity(const FormParams& params, Var var, std::size_t d)
{
    auto one = QSeries::one(params, var, d);
    auto zero = QSeries::zero(params, var, d);
    return MatrixSeries(params, var, std::nullopt, {one, zero, zero, one});
}

MatrixSeries MatrixSeries::from_int(const FormParams& params, Var var, std::size_t d, const IntMatrix& m,
                                    std::optional<long> level)
{
    std::array<QSeries, 4> e;
    for (std::size_t k = 0; k < 4; ++k) e[k] = QSeries::from_int_poly(params, var, d, m.e[k]);
    return MatrixSeries(params, var, level, std::move(e));
}

bool MatrixSeries::is_complete() const
{
    return level_.has_value() && degree() >= prime_power_size(params_.p, *level_);
}

MatrixSeries MatrixSeries::with_entry(int row, int col, QSeries s) const
{
    auto e = entries_;
    e[static_cast<std::size_t>(2 * row + col)] = std::move(s);
    return MatrixSeries(params_, var_, level_, std::move(e));
}

MatrixSeries MatrixSeries::in_variable(Var var) const
{
    std::array<QSeries, 4> e;
    for (std::size_t k = 0; k < 4; ++k) e[k] = QSeries(params_, var, entries_[k].coeffs());
    return MatrixSeries(params_, var, level_, std::move(e));
}

MatrixSeries MatrixSeries::operator*(const MatrixSeries& o) const
{
    std::array<QSeries, 4> e;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            e[static_cast<std::size_t>(2 * i + j)] = mul_trunc((*this)(i, 0), o(0, j)) + mul_trunc((*this)(i, 1), o(1, j));
    return MatrixSeries(params_, var_, std::nullopt, std::move(e));
}

MatrixSeries MatrixSeries::operator*(const QuadMatrix& c) const
{
    std::array<QSeries, 4> e;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            e[static_cast<std::size_t>(2 * i + j)] = (*this)(i, 0) * c(0, j) + (*this)(i, 1) * c(1, j);
    return MatrixSeries(params_, var_, level_, std::move(e));
}

MatrixSeries MatrixSeries::operator-(const MatrixSeries& o) const
{
    std::array<QSeries, 4> e;
    for (std::size_t k = 0; k < 4; ++k) e[k] = entries_[k] - o.entries_[k];
    return MatrixSeries(params_, var_, std::nullopt, std::move(e));
}

QSeries MatrixSeries::det() const
{
    return mul_trunc((*this)(0, 0), (*this)(1, 1)) - mul_trunc((*this)(0, 1), (*this)(1, 0));
}

std::size_t prime_power_size(long p, long n)
{
    std::size_t r = 1;
    for (long i = 0; i < n; ++i) r *= static_cast<std::size_t>(p);
    return r;
}

long limit_level(long p, std::size_t d)
{
    long n = 1;
    while (prime_power_size(p, n) < d) ++n;
    return n;
}

IntMatrix companion_int(const FormParams& params, long k)
{
    if (k < 1) throw ParameterError("companion_matrix: level must be >= 1");
    IntMatrix c;
    c(0, 0) = IntPoly::constant(params.ap);
    c(0, 1) = IntPoly::constant(1);
    c(1, 0) = cyclotomic_poly_cached(params.p, k) * mpz_class(-params.eps);
    c(1, 1) = IntPoly{};
    return c;
}

MatrixSeries companion_matrix(const FormParams& params, long k, std::size_t d, Var var)
{
    return MatrixSeries::from_int(params, var, d, companion_int(params, k));
}

QuadMatrix constant_companion(const FormParams& params)
{
    return QuadMatrix{{QuadElem::from_integer(params, params.ap), QuadElem::one(params),
                       QuadElem::from_integer(params, -params.eps * params.p), QuadElem::zero(params)}};
}

QuadMatrix root_matrix(const FormParams& params)
{
    return QuadMatrix{{-QuadElem::one(params), -QuadElem::one(params), QuadElem::root(params, Root::beta),
                       QuadElem::root(params, Root::alpha)}};
}

QuadMatrix diagonalized_tail(const FormParams& params, long k)
{
    QuadElem ak = root_power(params, Root::alpha, -k);
    QuadElem bk = root_power(params, Root::beta, -k);
    return QuadMatrix{{-ak, -bk, QuadElem::root(params, Root::beta) * ak, QuadElem::root(params, Root::alpha) * bk}};
}

IntMatrix companion_product(const FormParams& params, long n, std::optional<std::size_t> limit)
{
    IntMatrix h = IntMatrix::identity();
    for (long k = 1; k <= n; ++k) h = h.mul(companion_int(params, k), limit);
    return h;
}

MatrixSeries logmatrix_level(const FormParams& params, long n, std::size_t d, Var var)
{
    if (n < 1) throw ParameterError("logmatrix_level: level must be >= 1");
    if (d < 1) throw ParameterError("logmatrix_level: degree must be >= 1");
    IntMatrix h = companion_product(params, n, d);
    MatrixSeries hs = MatrixSeries::from_int(params, var, d, h, n);
    return hs * diagonalized_tail(params, n + 2);
}

StabilizationReport check_stabilization(const MatrixSeries& lower, const MatrixSeries& upper, long n)
{
    StabilizationReport rep;
    rep.n = n;
    const mpz_class q = prime_power(lower.params().p, n);
    const IntPoly modulus = shifted_power_minus_one(q);
    MatrixSeries diff = upper - lower;
    rep.pass = true;
    for (int i = 0; i < 2 && rep.pass; ++i)
        for (int j = 0; j < 2 && rep.pass; ++j) {
            auto rem = reduce_series_mod_monic(diff(i, j), modulus);
            for (std::size_t k = 0; k < rem.size(); ++k) {
                rep.min_precision = std::min(rep.min_precision, rem[k].absolute_precision());
                if (!rem[k].is_zero()) {
                    rep.pass = false;
                    rep.failing_row = i;
                    rep.failing_col = j;
                    rep.failing_index = k;
                    rep.message = "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") coefficient " +
                                  std::to_string(k) + " of the reduced difference has valuation " +
                                  rem[k].valuation().str();
                    break;
                }
            }
        }
    return rep;
}

StabilizationReport stabilization_check(const FormParams& params, long n, std::size_t d)
{
    if (n < 1) throw ParameterError("stabilization_check: level must be >= 1");
    if (d <= prime_power_size(params.p, n)) throw ParameterError("stabilization_check: degree must exceed p^n");
    // Both levels are polynomials of degree < p^(n+1); work at that degree so truncation cannot interfere.
    std::size_t work = std::max(d, prime_power_size(params.p, n + 1));
    return check_stabilization(logmatrix_level(params, n, work), logmatrix_level(params, n + 1, work), n);
}

QuadElem det_constant(const FormParams& params, long n)
{
    mpz_class denom = mpz_class(params.eps) * params.eps * prime_power(params.p, n + 2);
    QuadElem diff = QuadElem::root(params, Root::beta) - QuadElem::root(params, Root::alpha);
    return diff * QuadElem::from_integer(params, denom).inverse();
}

QuadElem limit_det_constant(const FormParams& params)
{
    QuadElem ab = QuadElem::root(params, Root::alpha) * QuadElem::root(params, Root::beta);
    QuadElem diff = QuadElem::root(params, Root::beta) - QuadElem::root(params, Root::alpha);
    return diff * (ab * ab).inverse();
}

DetReport check_det(const MatrixSeries& m, long n)
{
    const FormParams& params = m.params();
    DetReport rep;
    rep.n = n;
    const std::size_t d = m.degree();
    const mpz_class q = prime_power(params.p, n);
    // ((1+X)^{p^n} - 1) / X
    const IntPoly shifted = shifted_power_minus_one(q);
    const IntPoly norm_poly(std::vector<mpz_class>(shifted.coeffs().begin() + 1, shifted.coeffs().end()));

    mpz_class eps_n = 1;
    for (long k = 0; k < n; ++k) eps_n *= params.eps;
    IntMatrix h = companion_product(params, n, d);
    rep.integer_identity = h.det().truncated(d) == (norm_poly * eps_n).truncated(d);

    QSeries det = m.det();
    QSeries expected = QSeries::from_int_poly(params, m.var(), d, norm_poly) * det_constant(params, n);
    QSeries residual = det - expected;
    rep.padic_identity = true;
    for (std::size_t k = 0; k < residual.degree(); ++k) {
        rep.residual_precision = std::min(rep.residual_precision, residual[k].absolute_precision());
        if (!residual[k].is_zero() && rep.padic_identity) {
            rep.padic_identity = false;
            rep.first_mismatch = k;
            rep.message = "determinant differs from the closed form at coefficient " + std::to_string(k);
        }
    }
    if (!rep.integer_identity && rep.message.empty())
        rep.message = "det(C_1...C_n) differs from eps^n ((1+X)^{p^n}-1)/X";

    QuadElem limit_const = limit_det_constant(params);
    auto log_series = log1p_over_x(params.padic_context(), std::min<std::size_t>(d, static_cast<std::size_t>(params.p)));
    for (std::size_t j = 0; j < log_series.degree(); ++j) {
        QuadElem dist = det[j] - limit_const * QuadElem::from_padic(params, log_series[j]);
        rep.limit_distance.push_back(dist.is_zero() ? Valuation::infinity() : dist.valuation());
    }
    rep.pass = rep.integer_identity && rep.padic_identity;
    return rep;
}

DetReport det_check(const FormParams& params, long n, std::size_t d)
{
    return check_det(logmatrix_level(params, n, d), n);
}

Rank1Report rank1_at_level(const MatrixSeries& m, long level)
{
    if (level < 1) throw ParameterError("rank1_at_level: level must be >= 1");
    if (m.level()) {
        if (*m.level() < level)
            throw ParameterError("rank1_at_level: matrix level " + std::to_string(*m.level()) +
                                 " is below the character level " + std::to_string(level));
        if (!m.is_complete())
            throw ShapeError("rank1_at_level: matrix is truncated below its polynomial degree p^level");
    }
    const FormParams& params = m.params();
    Rank1Report rep;
    rep.level = level;
    rep.exponent = level + 1;
    QuadElem an = root_power(params, Root::alpha, rep.exponent);
    QuadElem bn = root_power(params, Root::beta, rep.exponent);
    QCyclo m11 = reduce_mod_cyclo(m(0, 0), level);
    QCyclo m12 = reduce_mod_cyclo(m(0, 1), level);
    QCyclo m21 = reduce_mod_cyclo(m(1, 0), level);
    QCyclo m22 = reduce_mod_cyclo(m(1, 1), level);
    QCyclo r1 = scale(m11, an) - scale(m12, bn);
    QCyclo r2 = scale(m21, an) - scale(m22, bn);
    rep.residual_precision = std::min(r1.absolute_precision(), r2.absolute_precision());
    rep.pass = r1.is_zero() && r2.is_zero();
    if (!rep.pass) {
        Valuation worst = Valuation::infinity();
        if (!r1.is_zero()) worst = std::min(worst, r1.valuation());
        if (!r2.is_zero()) worst = std::min(worst, r2.valuation());
        rep.failing_valuation = worst;
        rep.message = "alpha^n m_{i,1}(omega) != beta^n m_{i,2}(omega); residual valuation " + worst.str();
    }
    rep.a_omega = -scale(m11, an);
    rep.b_omega = -scale(m21, an);
    return rep;
}

PollackBlocks pollack_blocks(const FormParams& params, long pairs, std::size_t d)
{
    if (params.ap != 0) throw ParameterError("pollack requires a_p = 0");
    if (pairs < 1) throw ParameterError("pollack_blocks: pair count must be >= 1");
    PollackBlocks out;
    out.product = companion_product(params, 2 * pairs);
    mpz_class sign = 1;
    for (long k = 0; k < pairs; ++k) sign *= -params.eps;
    IntPoly plus = IntPoly::constant(sign);
    IntPoly minus = IntPoly::constant(sign);
    for (long k = 1; k <= pairs; ++k) {
        plus = plus * cyclotomic_poly_cached(params.p, 2 * k);
        minus = minus * cyclotomic_poly_cached(params.p, 2 * k - 1);
    }
    out.plus = plus;
    out.minus = minus;
    IntMatrix expected;
    expected(0, 0) = plus;
    expected(1, 1) = minus;
    out.pass = out.product == expected;
    if (!out.pass) out.message = "C_1...C_2m is not diag(plus, minus)";
    out.plus_series = QSeries::from_int_poly(params, Var::X, d, plus);
    out.minus_series = QSeries::from_int_poly(params, Var::X, d, minus);
    return out;
}

} // namespace sharpflat
