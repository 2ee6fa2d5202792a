#pragma once

#include <gmpxx.h>

#include <string>

#include "sharpflat/padic.hpp"
#include "sharpflat/valuation.hpp"

namespace sharpflat {

/**
 * Arithmetic datum of a weight-two form at a non-ordinary prime: the Hecke
 * polynomial X^2 - a_p X + eps*p with p odd, p | a_p and eps a p-adic unit.
 * Both roots then have valuation 1/2.
 */
struct FormParams {
    long p = 3;
    long ap = 0;
    long eps = 1;
    /// Relative precision cap, in p-adic digits.
    long precision = 60;

    /// Validates and returns the datum; throws ParameterError.
    static FormParams make(long p, long ap, long eps, long precision = 60);

    PadicContext padic_context() const { return {p, precision}; }

    /// Valuations of alpha and beta (both 1/2 in the supported range).
    Valuation r() const { return Valuation::from_twice(1); }
    Valuation s() const { return Valuation::from_twice(1); }

    bool operator==(const FormParams&) const = default;
};

bool is_prime(long n);

enum class Root { alpha, beta };

/**
 * Element a + b*theta of E = Q_p[theta]/(theta^2 - a_p theta + eps p).
 * theta plays the role of alpha and a_p - theta the role of beta. Since the
 * Hecke polynomial is Eisenstein, {1, theta} is an integral basis and the
 * valuation is min(v(a), v(b) + 1/2).
 */
class QuadElem {
public:
    using context_type = FormParams;

    QuadElem() = default;
    QuadElem(const FormParams& params, Padic a, Padic b);

    static QuadElem zero(const FormParams& params);
    static QuadElem one(const FormParams& params) { return from_integer(params, 1); }
    static QuadElem from_integer(const FormParams& params, const mpz_class& z);
    static QuadElem from_rational(const FormParams& params, const mpq_class& q);
    static QuadElem from_padic(const FormParams& params, Padic a);
    static QuadElem theta(const FormParams& params);
    static QuadElem root(const FormParams& params, Root which);

    const FormParams& context() const { return params_; }
    const FormParams& params() const { return params_; }
    const Padic& a() const { return a_; }
    const Padic& b() const { return b_; }

    QuadElem operator+(const QuadElem& o) const;
    QuadElem operator-(const QuadElem& o) const;
    QuadElem operator-() const;
    QuadElem operator*(const QuadElem& o) const;
    QuadElem operator*(const Padic& s) const;

    QuadElem& operator+=(const QuadElem& o) { return *this = *this + o; }
    QuadElem& operator-=(const QuadElem& o) { return *this = *this - o; }
    QuadElem& operator*=(const QuadElem& o) { return *this = *this * o; }

    /// Swaps alpha and beta: a + b theta -> (a + a_p b) - b theta.
    QuadElem conj() const;
    /// x * conj(x), an element of Q_p.
    Padic norm() const;
    /// conj(x) / norm(x); throws DivisionByZero when x is zero at precision.
    QuadElem inverse() const;

    /// Absolute precision in half-digits: min(2 abs(a), 2 abs(b) + 1).
    Valuation absolute_precision() const;
    /// min(v(a), v(b) + 1/2); equals the absolute precision (a lower bound) for a zero.
    Valuation valuation() const;
    bool is_zero() const;

    bool equals_within_precision(const QuadElem& o) const { return (*this - o).is_zero(); }
    bool operator==(const QuadElem& o) const { return params_ == o.params_ && a_ == o.a_ && b_ == o.b_; }

    std::string str() const;

private:
    void require_same(const QuadElem& o) const;

    FormParams params_{};
    Padic a_{};
    Padic b_{};
};

QuadElem quad_mul(const QuadElem& x, const QuadElem& y);
QuadElem quad_conj(const QuadElem& x);
QuadElem quad_inv(const QuadElem& x);

/// alpha^k or beta^k by square-and-multiply; throws PrecisionError if no digits survive.
QuadElem root_power(const FormParams& params, Root which, long k);

} // namespace sharpflat
