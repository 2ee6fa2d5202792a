#pragma once

#include <gmpxx.h>

#include <string>

#include "sharpflat/valuation.hpp"

namespace sharpflat {

/// Prime and relative-precision cap shared by every element of a computation.
struct PadicContext {
    long p = 3;
    long cap = 60;

    bool operator==(const PadicContext&) const = default;
};

/// p^k for k >= 0, memoized per thread.
const mpz_class& prime_power(long p, long k);

/// v_p(z) for z != 0.
long valuation_of_integer(const mpz_class& z, long p);

/**
 * Capped-relative-precision element of Q_p.
 *
 * A nonzero element is p^v * u with u a unit known modulo p^rel, so its
 * absolute precision is v + rel. A zero element is either the exact zero or
 * "zero at precision a", meaning the value is only known to lie in p^a Z_p.
 * Every operation follows interval arithmetic: absolute precision never
 * increases except through multiplication by a known valuation.
 */
class Padic {
public:
    using context_type = PadicContext;

    Padic() = default;

    static Padic zero(const PadicContext& ctx);
    static Padic zero_at(const PadicContext& ctx, long absprec);
    static Padic one(const PadicContext& ctx) { return from_integer(ctx, 1); }
    /// Integer known to full relative precision `cap`.
    static Padic from_integer(const PadicContext& ctx, const mpz_class& z);
    /// Integer known modulo p^absprec.
    static Padic from_integer(const PadicContext& ctx, const mpz_class& z, long absprec);
    static Padic from_rational(const PadicContext& ctx, const mpq_class& q);
    /// p^valuation * unit, unit taken modulo p^rel (rel is clamped to cap).
    static Padic from_parts(const PadicContext& ctx, long valuation, const mpz_class& unit, long rel);

    const PadicContext& context() const { return ctx_; }
    long prime() const { return ctx_.p; }

    /// True for the exact zero and for values indistinguishable from zero.
    bool is_zero() const { return zero_; }
    bool is_exact_zero() const { return zero_ && abs_ >= kExact; }

    /// Valuation in digits; for a zero this is the absolute precision (a lower bound).
    long digits_valuation() const { return zero_ ? abs_ : val_; }
    long digits_absolute_precision() const { return zero_ ? abs_ : val_ + rel_; }
    long relative_precision() const { return zero_ ? 0 : rel_; }
    const mpz_class& unit() const { return unit_; }

    Valuation valuation() const { return to_valuation(digits_valuation()); }
    Valuation absolute_precision() const { return to_valuation(digits_absolute_precision()); }

    Padic operator+(const Padic& o) const;
    Padic operator-(const Padic& o) const { return *this + (-o); }
    Padic operator-() const;
    Padic operator*(const Padic& o) const;
    Padic inverse() const;
    /// Product with an exact integer (no precision is lost to the integer).
    Padic times_integer(long k) const;
    Padic operator/(const Padic& o) const { return *this * o.inverse(); }

    Padic& operator+=(const Padic& o) { return *this = *this + o; }
    Padic& operator-=(const Padic& o) { return *this = *this - o; }
    Padic& operator*=(const Padic& o) { return *this = *this * o; }

    /// Forget digits at and beyond p^absprec.
    Padic with_absolute_precision(long absprec) const;

    /// Rational representative u * p^v (0 for zeros).
    mpq_class representative() const;

    /// x - y is zero at the combined precision.
    bool equals_within_precision(const Padic& o) const { return (*this - o).is_zero(); }

    /// Bitwise equality of the representation.
    bool operator==(const Padic& o) const;

    std::string str() const;

    static constexpr long kExact = Valuation::kInfinite / 2;

private:
    static Valuation to_valuation(long digits)
    {
        return digits >= kExact ? Valuation::infinity() : Valuation::from_digits(digits);
    }
    /// z * p^shift known modulo p^absprec.
    static Padic normalize(const PadicContext& ctx, mpz_class z, long shift, long absprec);

    PadicContext ctx_{};
    bool zero_ = true;
    long val_ = 0;
    long rel_ = 0;
    long abs_ = kExact;
    mpz_class unit_ = 0;
};

} // namespace sharpflat
