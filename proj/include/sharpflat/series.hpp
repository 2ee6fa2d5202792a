#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sharpflat/cyclo.hpp"
#include "sharpflat/errors.hpp"
#include "sharpflat/intpoly.hpp"
#include "sharpflat/padic.hpp"
#include "sharpflat/quad.hpp"
#include "sharpflat/ring.hpp"

namespace sharpflat {

/// X = gamma_p - 1, Y = gamma_pbar - 1.
enum class Var { X, Y };

inline const char* var_name(Var v) { return v == Var::X ? "X" : "Y"; }
inline Var other_var(Var v) { return v == Var::X ? Var::Y : Var::X; }

/// Truncated power series sum_{n<d} c_n var^n.
template <CoefficientRing R>
class Series1 {
public:
    using ring_type = R;
    using context_type = typename R::context_type;

    Series1() = default;
    Series1(const context_type& ctx, Var var, std::vector<R> coeffs) : ctx_(ctx), var_(var), coeffs_(std::move(coeffs))
    {
        for (const auto& c : coeffs_)
            if (!(c.context() == ctx_)) throw ParameterError("Series1: coefficient ring mismatch");
    }

    static Series1 zero(const context_type& ctx, Var var, std::size_t d)
    {
        return Series1(ctx, var, std::vector<R>(d, R::zero(ctx)));
    }
    static Series1 monomial(const context_type& ctx, Var var, std::size_t d, std::size_t k, const R& c)
    {
        Series1 s = zero(ctx, var, d);
        if (k < d) s.coeffs_[k] = c;
        return s;
    }
    static Series1 constant(const context_type& ctx, Var var, std::size_t d, const R& c) { return monomial(ctx, var, d, 0, c); }
    static Series1 one(const context_type& ctx, Var var, std::size_t d)
    {
        return constant(ctx, var, d, R::from_integer(ctx, 1));
    }
    static Series1 from_int_poly(const context_type& ctx, Var var, std::size_t d, const IntPoly& poly)
    {
        std::vector<R> c;
        c.reserve(d);
        for (std::size_t k = 0; k < d; ++k) c.push_back(poly[k] == 0 ? R::zero(ctx) : R::from_integer(ctx, poly[k]));
        return Series1(ctx, var, std::move(c));
    }

    std::size_t degree() const { return coeffs_.size(); }
    Var var() const { return var_; }
    const context_type& context() const { return ctx_; }
    const std::vector<R>& coeffs() const { return coeffs_; }
    const R& operator[](std::size_t k) const { return coeffs_[k]; }
    /// Copy with coefficient k replaced.
    Series1 with_coeff(std::size_t k, R c) const
    {
        Series1 s = *this;
        s.coeffs_.at(k) = std::move(c);
        return s;
    }

    Series1 truncated(std::size_t d) const
    {
        Series1 s = *this;
        if (d < s.coeffs_.size()) s.coeffs_.resize(d);
        return s;
    }
    /// Zero-padded copy; only meaningful for series that are polynomials.
    Series1 padded(std::size_t d) const
    {
        Series1 s = *this;
        if (d > s.coeffs_.size()) s.coeffs_.resize(d, R::zero(ctx_));
        return s;
    }

    Series1 operator+(const Series1& o) const { return zip(o, [](const R& a, const R& b) { return a + b; }); }
    Series1 operator-(const Series1& o) const { return zip(o, [](const R& a, const R& b) { return a - b; }); }
    Series1 operator-() const
    {
        return map([](const R& c) { return -c; });
    }
    Series1 operator*(const R& c) const
    {
        return map([&](const R& x) { return x * c; });
    }

    template <class F>
    auto map(F&& f) const
    {
        using Out = std::decay_t<decltype(f(std::declval<const R&>()))>;
        std::vector<Out> r;
        r.reserve(coeffs_.size());
        for (const auto& c : coeffs_) r.push_back(f(c));
        if constexpr (std::is_same_v<Out, R>) {
            return Series1<R>(ctx_, var_, std::move(r));
        } else {
            if (r.empty()) throw ShapeError("Series1::map: cannot change ring of an empty series");
            auto ctx = r.front().context();
            return Series1<Out>(ctx, var_, std::move(r));
        }
    }

    bool is_zero() const
    {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const R& c) { return c.is_zero(); });
    }
    Valuation min_absolute_precision() const
    {
        Valuation best = Valuation::infinity();
        for (const auto& c : coeffs_) best = std::min(best, c.absolute_precision());
        return best;
    }
    bool equals_within_precision(const Series1& o) const { return (*this - o).is_zero(); }
    bool operator==(const Series1& o) const { return var_ == o.var_ && ctx_ == o.ctx_ && coeffs_ == o.coeffs_; }

    void require_compatible(const Series1& o, const char* what) const
    {
        if (var_ != o.var_) throw ShapeError(std::string(what) + ": variable mismatch");
        if (!(ctx_ == o.ctx_)) throw ParameterError(std::string(what) + ": coefficient ring mismatch");
    }

private:
    template <class F>
    Series1 zip(const Series1& o, F&& f) const
    {
        require_compatible(o, "Series1");
        std::size_t d = std::min(degree(), o.degree());
        std::vector<R> r;
        r.reserve(d);
        for (std::size_t k = 0; k < d; ++k) r.push_back(f(coeffs_[k], o.coeffs_[k]));
        return Series1(ctx_, var_, std::move(r));
    }

    context_type ctx_{};
    Var var_ = Var::X;
    std::vector<R> coeffs_;
};

namespace detail {
template <CoefficientRing R>
bool is_exact_zero(const R& c)
{
    return c.is_zero() && c.absolute_precision().is_infinite();
}

template <CoefficientRing R>
std::vector<R> convolve(const std::vector<R>& a, const std::vector<R>& b, std::size_t limit, const typename R::context_type& ctx)
{
    std::vector<R> r(limit, R::zero(ctx));
    for (std::size_t i = 0; i < a.size() && i < limit; ++i) {
        if (is_exact_zero(a[i])) continue;
        for (std::size_t j = 0; j < b.size() && i + j < limit; ++j) {
            if (is_exact_zero(b[j])) continue;
            r[i + j] = r[i + j] + a[i] * b[j];
        }
    }
    return r;
}
} // namespace detail

/// Truncated Cauchy product to the smaller operand degree.
template <CoefficientRing R>
Series1<R> mul_trunc(const Series1<R>& s, const Series1<R>& t)
{
    s.require_compatible(t, "mul_trunc");
    std::size_t d = std::min(s.degree(), t.degree());
    return Series1<R>(s.context(), s.var(), detail::convolve(s.coeffs(), t.coeffs(), d, s.context()));
}

/// Polynomial product of two truncated series, degree ds + dt - 1. Used when
/// both operands are genuine polynomials and the product must stay exact.
template <CoefficientRing R>
Series1<R> mul_full(const Series1<R>& s, const Series1<R>& t)
{
    s.require_compatible(t, "mul_full");
    if (s.degree() == 0 || t.degree() == 0) return Series1<R>::zero(s.context(), s.var(), 0);
    std::size_t d = s.degree() + t.degree() - 1;
    return Series1<R>(s.context(), s.var(), detail::convolve(s.coeffs(), t.coeffs(), d, s.context()));
}

template <CoefficientRing R>
struct SeriesQuotient {
    Series1<R> quotient;
    /// Per-coefficient precision loss in half-digits against the lossless
    /// baseline min_{i<=k} abs(num_i) - v(den_0).
    std::vector<long> loss_halves;
    long max_loss_halves = 0;
};

/**
 * q with q * den = num modulo var^d, d = min(deg num, deg den), by the
 * triangular recursion q_k = (num_k - sum_{i<k} q_i den_{k-i}) / den_0.
 */
template <InvertibleRing R>
SeriesQuotient<R> divide_series(const Series1<R>& num, const Series1<R>& den)
{
    num.require_compatible(den, "divide_series");
    std::size_t d = std::min(num.degree(), den.degree());
    if (d == 0) return {Series1<R>::zero(num.context(), num.var(), 0), {}, 0};
    if (den[0].is_zero())
        throw DivisionByZero("divide_series: constant term of the divisor is zero at absolute precision " +
                                 den[0].absolute_precision().str(),
                             den[0].absolute_precision().twice());
    const R inv0 = den[0].inverse();
    const Valuation v0 = den[0].valuation();
    std::vector<R> q;
    q.reserve(d);
    std::vector<long> loss(d, 0);
    long max_loss = 0;
    Valuation num_floor = Valuation::infinity();
    for (std::size_t k = 0; k < d; ++k) {
        R acc = num[k];
        for (std::size_t i = 0; i < k; ++i) {
            if (detail::is_exact_zero(q[i]) || detail::is_exact_zero(den[k - i])) continue;
            acc = acc - q[i] * den[k - i];
        }
        q.push_back(acc * inv0);
        num_floor = std::min(num_floor, num[k].absolute_precision());
        if (!num_floor.is_infinite()) {
            long l = (num_floor - v0).twice() - q.back().absolute_precision().twice();
            loss[k] = std::max(0L, l);
            max_loss = std::max(max_loss, loss[k]);
        }
    }
    return {Series1<R>(num.context(), num.var(), std::move(q)), std::move(loss), max_loss};
}

/// Formal derivative; the degree drops by one.
template <CoefficientRing R>
Series1<R> derivative(const Series1<R>& s)
{
    std::vector<R> r;
    for (std::size_t n = 1; n < s.degree(); ++n) r.push_back(s[n] * R::from_integer(s.context(), static_cast<unsigned long>(n)));
    return Series1<R>(s.context(), s.var(), std::move(r));
}

template <CoefficientRing R>
Series1<R> derivative(const Series1<R>& s, Var axis)
{
    if (axis != s.var()) throw ShapeError(std::string("derivative: series has no variable ") + var_name(axis));
    return derivative(s);
}

/// The remainder of the (truncated) polynomial modulo a monic integer polynomial.
template <CoefficientRing R>
std::vector<R> reduce_series_mod_monic(const Series1<R>& s, const IntPoly& modulus)
{
    return reduce_mod_monic(s.coeffs(), modulus, s.context());
}

template <CoefficientRing R>
typename Cyclo<R>::Context cyclo_context(const typename R::context_type& base, long p, long level)
{
    return typename Cyclo<R>::Context{base, p, level};
}

/// Prime of a coefficient ring.
inline long ring_prime(const PadicContext& c) { return c.p; }
inline long ring_prime(const FormParams& c) { return c.p; }
template <class Ctx>
long ring_prime(const Ctx& c)
    requires requires { c.level; c.p; }
{
    return c.p;
}

/// Class in R_m of the truncated polynomial; exact when the series is a polynomial of degree < d.
template <CoefficientRing R>
Cyclo<R> reduce_mod_cyclo(const Series1<R>& s, long m)
{
    if (m < 1) throw ParameterError("reduce_mod_cyclo: level must be >= 1");
    long p = ring_prime(s.context());
    auto ctx = cyclo_context<R>(s.context(), p, m);
    return Cyclo<R>(ctx, reduce_series_mod_monic(s, cyclotomic_poly_cached(p, m)));
}

/// Caller's hypothesis on the discarded tail: v(c_k) >= -(u log_p k + c).
struct GrowthHypothesis {
    double u = 0.0;
    double c = 0.0;
};

template <CoefficientRing R>
struct CycloReduction {
    Cyclo<R> value;
    /// Lower bound for the valuation of the discarded tail at every primitive p^m-th root.
    double tail_bound = 0.0;
    /// True when the bound carries no information (<= 0).
    bool vacuous = true;
};

template <CoefficientRing R>
CycloReduction<R> reduce_mod_cyclo(const Series1<R>& s, long m, const GrowthHypothesis& growth)
{
    if (s.degree() < 1) throw ShapeError("reduce_mod_cyclo: empty series");
    long p = ring_prime(s.context());
    double d = static_cast<double>(s.degree());
    double bound = d / static_cast<double>(cyclotomic_degree(p, m)) -
                   (growth.u * std::log(d) / std::log(static_cast<double>(p)) + growth.c);
    return {reduce_mod_cyclo(s, m), bound, bound <= 0.0};
}

/// log(1+X)/X = sum (-1)^n X^n / (n+1) over Q_p.
Series1<Padic> log1p_over_x(const PadicContext& ctx, std::size_t d);

/// Coefficientwise embedding Q_p -> E.
Series1<QuadElem> lift_to_quad(const Series1<Padic>& s, const FormParams& params);

/**
 * Truncated two-variable series sum c_{i,j} X^i Y^j, i < d_X, j < d_Y.
 */
template <CoefficientRing R>
class Series2 {
public:
    using ring_type = R;
    using context_type = typename R::context_type;

    Series2() = default;
    Series2(const context_type& ctx, std::size_t dx, std::size_t dy, std::vector<R> coeffs)
        : ctx_(ctx), dx_(dx), dy_(dy), coeffs_(std::move(coeffs))
    {
        if (coeffs_.size() != dx_ * dy_) throw ShapeError("Series2: grid size does not match degrees");
    }

    static Series2 zero(const context_type& ctx, std::size_t dx, std::size_t dy)
    {
        return Series2(ctx, dx, dy, std::vector<R>(dx * dy, R::zero(ctx)));
    }
    static Series2 monomial(const context_type& ctx, std::size_t dx, std::size_t dy, std::size_t i, std::size_t j, const R& c)
    {
        Series2 s = zero(ctx, dx, dy);
        if (i < dx && j < dy) s.coeffs_[i * dy + j] = c;
        return s;
    }
    /// f(X) g(Y).
    static Series2 outer(const Series1<R>& fx, const Series1<R>& gy)
    {
        if (fx.var() != Var::X || gy.var() != Var::Y) throw ShapeError("Series2::outer: expects a series in X and a series in Y");
        Series2 s = zero(fx.context(), fx.degree(), gy.degree());
        for (std::size_t i = 0; i < fx.degree(); ++i)
            for (std::size_t j = 0; j < gy.degree(); ++j) s.coeffs_[i * s.dy_ + j] = fx[i] * gy[j];
        return s;
    }

    std::size_t degree_x() const { return dx_; }
    std::size_t degree_y() const { return dy_; }
    std::size_t degree(Var axis) const { return axis == Var::X ? dx_ : dy_; }
    const context_type& context() const { return ctx_; }
    const R& at(std::size_t i, std::size_t j) const { return coeffs_[i * dy_ + j]; }
    const std::vector<R>& coeffs() const { return coeffs_; }
    Series2 with_coeff(std::size_t i, std::size_t j, R c) const
    {
        Series2 s = *this;
        s.coeffs_.at(i * dy_ + j) = std::move(c);
        return s;
    }

    /// The one-variable series in `axis` obtained by fixing the other exponent at k.
    Series1<R> fiber(Var axis, std::size_t k) const
    {
        std::vector<R> c;
        if (axis == Var::X) {
            for (std::size_t i = 0; i < dx_; ++i) c.push_back(at(i, k));
        } else {
            for (std::size_t j = 0; j < dy_; ++j) c.push_back(at(k, j));
        }
        return Series1<R>(ctx_, axis, std::move(c));
    }
    static Series2 from_fibers(const context_type& ctx, Var axis, const std::vector<Series1<R>>& fibers)
    {
        if (fibers.empty()) throw ShapeError("Series2::from_fibers: no fibers");
        std::size_t along = fibers.front().degree();
        std::size_t across = fibers.size();
        std::size_t dx = axis == Var::X ? along : across;
        std::size_t dy = axis == Var::X ? across : along;
        Series2 s = zero(ctx, dx, dy);
        for (std::size_t k = 0; k < across; ++k) {
            if (fibers[k].degree() != along || fibers[k].var() != axis) throw ShapeError("Series2::from_fibers: ragged fibers");
            for (std::size_t t = 0; t < along; ++t) {
                if (axis == Var::X) s.coeffs_[t * dy + k] = fibers[k][t];
                else s.coeffs_[k * dy + t] = fibers[k][t];
            }
        }
        return s;
    }
    std::vector<Series1<R>> fibers(Var axis) const
    {
        std::vector<Series1<R>> out;
        std::size_t across = axis == Var::X ? dy_ : dx_;
        for (std::size_t k = 0; k < across; ++k) out.push_back(fiber(axis, k));
        return out;
    }

    Series2 truncated(std::size_t dx, std::size_t dy) const
    {
        dx = std::min(dx, dx_);
        dy = std::min(dy, dy_);
        Series2 s = zero(ctx_, dx, dy);
        for (std::size_t i = 0; i < dx; ++i)
            for (std::size_t j = 0; j < dy; ++j) s.coeffs_[i * dy + j] = at(i, j);
        return s;
    }

    Series2 operator+(const Series2& o) const { return zip(o, [](const R& a, const R& b) { return a + b; }); }
    Series2 operator-(const Series2& o) const { return zip(o, [](const R& a, const R& b) { return a - b; }); }
    Series2 operator-() const
    {
        Series2 s = *this;
        for (auto& c : s.coeffs_) c = -c;
        return s;
    }
    Series2 operator*(const R& c) const
    {
        Series2 s = *this;
        for (auto& x : s.coeffs_) x = x * c;
        return s;
    }

    bool is_zero() const
    {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const R& c) { return c.is_zero(); });
    }
    Valuation min_absolute_precision() const
    {
        Valuation best = Valuation::infinity();
        for (const auto& c : coeffs_) best = std::min(best, c.absolute_precision());
        return best;
    }
    bool equals_within_precision(const Series2& o) const { return (*this - o).is_zero(); }
    bool operator==(const Series2& o) const { return ctx_ == o.ctx_ && dx_ == o.dx_ && dy_ == o.dy_ && coeffs_ == o.coeffs_; }

private:
    template <class F>
    Series2 zip(const Series2& o, F&& f) const
    {
        if (!(ctx_ == o.ctx_)) throw ParameterError("Series2: coefficient ring mismatch");
        std::size_t dx = std::min(dx_, o.dx_), dy = std::min(dy_, o.dy_);
        Series2 s = zero(ctx_, dx, dy);
        for (std::size_t i = 0; i < dx; ++i)
            for (std::size_t j = 0; j < dy; ++j) s.coeffs_[i * dy + j] = f(at(i, j), o.at(i, j));
        return s;
    }

    context_type ctx_{};
    std::size_t dx_ = 0;
    std::size_t dy_ = 0;
    std::vector<R> coeffs_;
};

/// Truncated product of two-variable series.
template <CoefficientRing R>
Series2<R> mul_trunc(const Series2<R>& s, const Series2<R>& t)
{
    if (!(s.context() == t.context())) throw ParameterError("mul_trunc: coefficient ring mismatch");
    std::size_t dx = std::min(s.degree_x(), t.degree_x()), dy = std::min(s.degree_y(), t.degree_y());
    std::vector<R> r(dx * dy, R::zero(s.context()));
    for (std::size_t i1 = 0; i1 < dx; ++i1)
        for (std::size_t j1 = 0; j1 < dy; ++j1) {
            const R& a = s.at(i1, j1);
            if (detail::is_exact_zero(a)) continue;
            for (std::size_t i2 = 0; i1 + i2 < dx; ++i2)
                for (std::size_t j2 = 0; j1 + j2 < dy; ++j2) {
                    const R& b = t.at(i2, j2);
                    if (detail::is_exact_zero(b)) continue;
                    auto& slot = r[(i1 + i2) * dy + (j1 + j2)];
                    slot = slot + a * b;
                }
        }
    return Series2<R>(s.context(), dx, dy, std::move(r));
}

/// Multiply every fiber along f.var() by the one-variable series f (truncated).
template <CoefficientRing R>
Series2<R> mul_axis(const Series2<R>& s, const Series1<R>& f)
{
    std::vector<Series1<R>> out;
    for (const auto& fib : s.fibers(f.var())) out.push_back(mul_trunc(fib, f));
    return Series2<R>::from_fibers(s.context(), f.var(), out);
}

/// As mul_axis, but with the exact polynomial product (degree grows along f.var()).
template <CoefficientRing R>
Series2<R> mul_axis_full(const Series2<R>& s, const Series1<R>& f)
{
    std::vector<Series1<R>> out;
    for (const auto& fib : s.fibers(f.var())) out.push_back(mul_full(fib, f));
    return Series2<R>::from_fibers(s.context(), f.var(), out);
}

template <CoefficientRing R>
struct Series2Quotient {
    Series2<R> quotient;
    long max_loss_halves = 0;
};

/// Fiber-wise division by a one-variable series in den.var().
template <InvertibleRing R>
Series2Quotient<R> divide_axis(const Series2<R>& num, const Series1<R>& den)
{
    std::vector<Series1<R>> out;
    long loss = 0;
    for (const auto& fib : num.fibers(den.var())) {
        auto q = divide_series(fib, den);
        loss = std::max(loss, q.max_loss_halves);
        out.push_back(std::move(q.quotient));
    }
    return {Series2<R>::from_fibers(num.context(), den.var(), out), loss};
}

template <CoefficientRing R>
Series2<R> derivative(const Series2<R>& s, Var axis)
{
    std::vector<Series1<R>> out;
    for (const auto& fib : s.fibers(axis)) out.push_back(derivative(fib));
    if (s.degree(axis) == 0) return s;
    return Series2<R>::from_fibers(s.context(), axis, out);
}

/**
 * mu^(omega): substitute the class of `axis` in R_m, i.e. reduce every fiber
 * along `axis` modulo Phi_{p^m}(1+axis). The result is a series in the other
 * variable with coefficients in R_m.
 */
template <CoefficientRing R>
Series1<Cyclo<R>> partial_apply(const Series2<R>& s, Var axis, long m)
{
    std::vector<Cyclo<R>> c;
    for (const auto& fib : s.fibers(axis)) c.push_back(reduce_mod_cyclo(fib, m));
    auto ctx = cyclo_context<R>(s.context(), ring_prime(s.context()), m);
    return Series1<Cyclo<R>>(ctx, other_var(axis), std::move(c));
}

/// Value at a character of level m_x in X and m_y in Y, in R_{m_y} over R_{m_x}.
template <CoefficientRing R>
Cyclo<Cyclo<R>> evaluate2(const Series2<R>& s, long mx, long my)
{
    return reduce_mod_cyclo(partial_apply(s, Var::X, mx), my);
}

} // namespace sharpflat
