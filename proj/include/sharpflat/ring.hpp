#pragma once

#include <gmpxx.h>

#include <concepts>
#include <type_traits>

#include "sharpflat/valuation.hpp"

namespace sharpflat {

/**
 * The coefficient-ring interface shared by Padic, QuadElem and Cyclo<R>.
 * Every element carries its ring parameters (its context) so that zeros and
 * integer constants can be produced without extra arguments.
 */
template <class R>
concept CoefficientRing =
    std::copyable<R> && std::equality_comparable<typename R::context_type> &&
    requires(const R& a, const R& b, const typename R::context_type& ctx, const mpz_class& z) {
        { R::zero(ctx) } -> std::same_as<R>;
        { R::from_integer(ctx, z) } -> std::same_as<R>;
        { a + b } -> std::same_as<R>;
        { a - b } -> std::same_as<R>;
        { a * b } -> std::same_as<R>;
        { -a } -> std::same_as<R>;
        { a.is_zero() } -> std::convertible_to<bool>;
        { a.valuation() } -> std::same_as<Valuation>;
        { a.absolute_precision() } -> std::same_as<Valuation>;
        { a.context() } -> std::convertible_to<const typename R::context_type&>;
    };

template <class R>
concept InvertibleRing = CoefficientRing<R> && requires(const R& a) {
    { a.inverse() } -> std::same_as<R>;
};

/// Multiply x by a scalar from a (possibly smaller) coefficient ring, recursing
/// through nested coefficient structures until the scalar's ring is reached.
template <class T, class S>
T scale(const T& x, const S& s)
{
    if constexpr (std::is_same_v<T, S>) {
        return x * s;
    } else if constexpr (requires { { x * s } -> std::same_as<T>; }) {
        return x * s;
    } else {
        return x.map([&](const auto& c) { return scale(c, s); });
    }
}

} // namespace sharpflat
