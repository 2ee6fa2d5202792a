#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "sharpflat/logmatrix.hpp"
#include "sharpflat/series.hpp"

namespace sharpflat {

enum class Branch { p_side, pbar_side };

/// A family of characters whose generator value has exact order p^level.
struct CharSpec {
    Branch branch = Branch::p_side;
    long level = 1;

    /// Interpolation exponent n = level + 1 (conductor p^n).
    long exponent() const { return level + 1; }
};

/**
 * Constants recovered at one character (or one pair of levels). Only the
 * fields relevant to the producing check are set.
 */
struct CharValueReport {
    long level_x = 0;
    long level_y = 0;
    bool pass = false;
    /// Minimum absolute precision of the residuals.
    Valuation residual_precision = Valuation::infinity();
    /// Valuation of the offending residual when the check fails.
    std::optional<Valuation> failing_valuation;
    std::string message;

    std::optional<QCyclo> c_omega;
    std::optional<QCyclo> a_omega;
    std::optional<QCyclo> b_omega;
    std::optional<Cyclo<QCyclo>> c_omega2;
    std::optional<Cyclo<QCyclo>> d_omega;
    std::optional<Cyclo<QCyclo>> e_omega;
};

struct PairFactors {
    QSeries sharp;
    QSeries flat;
    /// Precision lost in the division recursion (half-digits).
    long loss_halves = 0;
};

/// (mu_sharp, mu_flat) with (mu_alpha, mu_beta) = (mu_sharp, mu_flat) M.
PairFactors factor_pair(const QSeries& mu_alpha, const QSeries& mu_beta, const MatrixSeries& m);

/// Row vector (mu_sharp, mu_flat) times M, truncated.
std::pair<QSeries, QSeries> combine_pair(const QSeries& mu_sharp, const QSeries& mu_flat, const MatrixSeries& m);

/// As combine_pair but with exact polynomial products, so the result
/// interpolates exactly at every character of level <= level(M).
std::pair<QSeries, QSeries> combine_pair_full(const QSeries& mu_sharp, const QSeries& mu_flat, const MatrixSeries& m);

/// alpha^n mu_alpha(omega) == beta^n mu_beta(omega) for each level m (n = m + 1).
std::vector<CharValueReport> verify_pair(const QSeries& mu_alpha, const QSeries& mu_beta, const std::vector<long>& levels);

/// m22 mu_alpha - m21 mu_beta and -m12 mu_alpha + m11 mu_beta vanish in R_m for every level.
std::vector<CharValueReport> vanish_check_pair(const QSeries& mu_alpha, const QSeries& mu_beta, const MatrixSeries& m,
                                               const std::vector<long>& levels);

struct GrowthMeasurement {
    /// max_n (-v(c_n) - u log_p max(n,1)); -inf for a series with only exact zeros.
    double bound = -std::numeric_limits<double>::infinity();
    std::size_t argmax = 0;
    bool pass = false;
};

namespace detail {
inline double log_base(double x, long p) { return std::log(x) / std::log(static_cast<double>(p)); }

template <class R>
double growth_term(const R& c)
{
    if (c.is_zero() && c.absolute_precision().is_infinite()) return -std::numeric_limits<double>::infinity();
    return -c.valuation().as_double();
}
} // namespace detail

/// Desk-scale proxy for membership in D^(u): B(u) compared against the offset c.
template <CoefficientRing R>
GrowthMeasurement growth_order(const Series1<R>& s, double u, double c)
{
    GrowthMeasurement g;
    const long p = ring_prime(s.context());
    for (std::size_t n = 0; n < s.degree(); ++n) {
        double t = detail::growth_term(s[n]);
        if (t == -std::numeric_limits<double>::infinity()) continue;
        t -= u * detail::log_base(static_cast<double>(std::max<std::size_t>(n, 1)), p);
        if (t > g.bound) {
            g.bound = t;
            g.argmax = n;
        }
    }
    g.pass = g.bound <= c + 1e-12;
    return g;
}

/// Two-variable analogue: max (-v(c_ij) - u log_p max(i,1) - v log_p max(j,1)).
template <CoefficientRing R>
GrowthMeasurement growth_order(const Series2<R>& s, double u, double v, double c)
{
    GrowthMeasurement g;
    const long p = ring_prime(s.context());
    for (std::size_t i = 0; i < s.degree_x(); ++i)
        for (std::size_t j = 0; j < s.degree_y(); ++j) {
            double t = detail::growth_term(s.at(i, j));
            if (t == -std::numeric_limits<double>::infinity()) continue;
            t -= u * detail::log_base(static_cast<double>(std::max<std::size_t>(i, 1)), p) +
                 v * detail::log_base(static_cast<double>(std::max<std::size_t>(j, 1)), p);
            if (t > g.bound) {
                g.bound = t;
                g.argmax = i * s.degree_y() + j;
            }
        }
    g.pass = g.bound <= c + 1e-12;
    return g;
}

/**
 * Deterministic source of integral p-adic digits. Uses std::mt19937_64, whose
 * output sequence is fixed by the C++ standard, and reduces each 64-bit draw
 * modulo p directly (std distributions are implementation-defined). Each
 * coefficient is sum_{k<N} digit_k p^k, i.e. uniform modulo p^N.
 */
class DigitStream {
public:
    explicit DigitStream(std::uint64_t seed) : engine_(seed) {}

    mpz_class integer_mod(long p, long digits);

private:
    std::mt19937_64 engine_;
};

/// Random integral series over Z_p, coefficients known modulo p^N (N = ctx.cap).
Series1<Padic> random_bounded(const PadicContext& ctx, std::size_t d, std::uint64_t seed);
Series1<Padic> random_bounded(const PadicContext& ctx, std::size_t d, DigitStream& stream);
/// Random integral series over the integers of E: both coordinates drawn.
QSeries random_bounded_quad(const FormParams& params, std::size_t d, DigitStream& stream, Var var = Var::X);
Series2<QuadElem> random_bounded2(const FormParams& params, std::size_t dx, std::size_t dy, DigitStream& stream);

} // namespace sharpflat
