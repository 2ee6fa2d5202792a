#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "sharpflat/errors.hpp"
#include "sharpflat/intpoly.hpp"
#include "sharpflat/ring.hpp"

namespace sharpflat {

/// Reduce a coefficient vector modulo a monic integer polynomial; the result
/// has exactly deg(modulus) entries.
template <CoefficientRing R>
std::vector<R> reduce_mod_monic(std::vector<R> coeffs, const IntPoly& modulus, const typename R::context_type& ctx)
{
    const auto deg = static_cast<std::size_t>(modulus.degree());
    std::vector<R> lower;
    lower.reserve(deg);
    for (std::size_t j = 0; j < deg; ++j) lower.push_back(R::from_integer(ctx, modulus[j]));
    for (std::size_t k = coeffs.size(); k-- > deg;) {
        const R c = coeffs[k];
        if (c.is_zero() && c.absolute_precision().is_infinite()) continue;
        for (std::size_t j = 0; j < deg; ++j) {
            if (modulus[j] == 0) continue;
            coeffs[k - deg + j] = coeffs[k - deg + j] - c * lower[j];
        }
    }
    coeffs.resize(deg, R::zero(ctx));
    return coeffs;
}

/**
 * Element of R_m = R[X] / Phi_{p^m}(1+X), stored as its remainder of degree
 * below p^(m-1)(p-1). Evaluating a series at a character that sends the
 * topological generator to a root of unity of exact order p^m is reduction
 * into this ring.
 */
template <CoefficientRing R>
class Cyclo {
public:
    struct Context {
        typename R::context_type base{};
        long p = 3;
        long level = 1;
        bool operator==(const Context&) const = default;
    };
    using context_type = Context;

    Cyclo() = default;
    Cyclo(const Context& ctx, std::vector<R> coeffs) : ctx_(ctx)
    {
        if (ctx_.level < 1) throw ParameterError("Cyclo: level must be >= 1");
        const auto phi = static_cast<std::size_t>(cyclotomic_degree(ctx_.p, ctx_.level));
        if (coeffs.size() > phi) coeffs = reduce_mod_monic(std::move(coeffs), modulus(), ctx_.base);
        coeffs.resize(phi, R::zero(ctx_.base));
        coeffs_ = std::move(coeffs);
    }

    static Cyclo zero(const Context& ctx) { return Cyclo(ctx, {}); }
    static Cyclo from_integer(const Context& ctx, const mpz_class& z) { return Cyclo(ctx, {R::from_integer(ctx.base, z)}); }
    static Cyclo constant(const Context& ctx, const R& c) { return Cyclo(ctx, {c}); }
    /// The class of X, i.e. zeta - 1.
    static Cyclo generator(const Context& ctx)
    {
        return Cyclo(ctx, {R::zero(ctx.base), R::from_integer(ctx.base, 1)});
    }

    const Context& context() const { return ctx_; }
    long level() const { return ctx_.level; }
    const std::vector<R>& coeffs() const { return coeffs_; }
    const R& operator[](std::size_t k) const { return coeffs_[k]; }
    const IntPoly& modulus() const { return cyclotomic_poly_cached(ctx_.p, ctx_.level); }

    Cyclo operator+(const Cyclo& o) const
    {
        require_same(o);
        std::vector<R> r(coeffs_.size());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeffs_[i] + o.coeffs_[i];
        return Cyclo(ctx_, std::move(r));
    }
    Cyclo operator-(const Cyclo& o) const
    {
        require_same(o);
        std::vector<R> r(coeffs_.size());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeffs_[i] - o.coeffs_[i];
        return Cyclo(ctx_, std::move(r));
    }
    Cyclo operator-() const
    {
        return map([](const R& c) { return -c; });
    }
    Cyclo operator*(const Cyclo& o) const
    {
        require_same(o);
        const std::size_t n = coeffs_.size();
        std::vector<R> prod(2 * n - 1, R::zero(ctx_.base));
        for (std::size_t i = 0; i < n; ++i) {
            if (coeffs_[i].is_zero() && coeffs_[i].absolute_precision().is_infinite()) continue;
            for (std::size_t j = 0; j < n; ++j) prod[i + j] = prod[i + j] + coeffs_[i] * o.coeffs_[j];
        }
        return Cyclo(ctx_, std::move(prod));
    }

    template <class F>
    Cyclo map(F&& f) const
    {
        std::vector<R> r;
        r.reserve(coeffs_.size());
        for (const auto& c : coeffs_) r.push_back(f(c));
        return Cyclo(ctx_, std::move(r));
    }

    bool is_zero() const
    {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const R& c) { return c.is_zero(); });
    }
    Valuation absolute_precision() const
    {
        Valuation best = Valuation::infinity();
        for (const auto& c : coeffs_) best = std::min(best, c.absolute_precision());
        return best;
    }
    /// Minimum coefficient valuation in the power basis of X.
    Valuation valuation() const
    {
        Valuation best = Valuation::infinity();
        for (const auto& c : coeffs_) best = std::min(best, c.valuation());
        return best;
    }
    bool equals_within_precision(const Cyclo& o) const { return (*this - o).is_zero(); }

    /// Solves x * y = 1 by Gaussian elimination on the multiplication-by-x
    /// matrix, pivoting on the entry of least valuation.
    Cyclo inverse() const
        requires InvertibleRing<R>
    {
        const std::size_t n = coeffs_.size();
        std::vector<std::vector<R>> a(n, std::vector<R>(n + 1, R::zero(ctx_.base)));
        Cyclo column = *this;
        const Cyclo x = generator(ctx_);
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < n; ++i) a[i][j] = column.coeffs_[i];
            if (j + 1 < n) column = column * x;
        }
        a[0][n] = R::from_integer(ctx_.base, 1);
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t pivot = n;
            for (std::size_t i = col; i < n; ++i) {
                if (a[i][col].is_zero()) continue;
                if (pivot == n || a[i][col].valuation() < a[pivot][col].valuation()) pivot = i;
            }
            if (pivot == n)
                throw DivisionByZero("Cyclo::inverse: element is not invertible at tracked precision",
                                     absolute_precision().twice());
            std::swap(a[pivot], a[col]);
            const R inv = a[col][col].inverse();
            for (std::size_t i = 0; i < n; ++i) {
                if (i == col || (a[i][col].is_zero() && a[i][col].absolute_precision().is_infinite())) continue;
                const R factor = a[i][col] * inv;
                for (std::size_t k = col; k <= n; ++k) a[i][k] = a[i][k] - factor * a[col][k];
            }
        }
        std::vector<R> y;
        y.reserve(n);
        for (std::size_t i = 0; i < n; ++i) y.push_back(a[i][n] * a[i][i].inverse());
        return Cyclo(ctx_, std::move(y));
    }
    bool operator==(const Cyclo& o) const { return ctx_ == o.ctx_ && coeffs_ == o.coeffs_; }

private:
    void require_same(const Cyclo& o) const
    {
        if (!(ctx_ == o.ctx_)) throw ParameterError("Cyclo: mismatched ring parameters");
    }

    Context ctx_{};
    std::vector<R> coeffs_;
};

} // namespace sharpflat
