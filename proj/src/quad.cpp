#include "sharpflat/quad.hpp"

#include <algorithm>
#include <numeric>

#include "sharpflat/errors.hpp"

namespace sharpflat {

bool is_prime(long n)
{
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

FormParams FormParams::make(long p, long ap, long eps, long precision)
{
    if (!is_prime(p)) throw ParameterError("p = " + std::to_string(p) + " is not prime");
    if (p == 2) throw ParameterError("p = 2 is not supported");
    if (ap % p != 0) throw ParameterError("ordinary case unsupported: p must divide a_p");
    if (eps == 0 || std::gcd(eps, p) != 1) throw ParameterError("eps must be a unit coprime to p");
    if (precision < 1) throw ParameterError("precision must be at least one digit");
    return FormParams{p, ap, eps, precision};
}

QuadElem::QuadElem(const FormParams& params, Padic a, Padic b)
    : params_(params), a_(std::move(a)), b_(std::move(b))
{
    if (a_.prime() != params_.p || b_.prime() != params_.p) throw ParameterError("QuadElem: coordinate prime mismatch");
}

QuadElem QuadElem::zero(const FormParams& params)
{
    auto ctx = params.padic_context();
    return {params, Padic::zero(ctx), Padic::zero(ctx)};
}

QuadElem QuadElem::from_integer(const FormParams& params, const mpz_class& z)
{
    auto ctx = params.padic_context();
    return {params, Padic::from_integer(ctx, z), Padic::zero(ctx)};
}

QuadElem QuadElem::from_rational(const FormParams& params, const mpq_class& q)
{
    auto ctx = params.padic_context();
    return {params, Padic::from_rational(ctx, q), Padic::zero(ctx)};
}

QuadElem QuadElem::from_padic(const FormParams& params, Padic a)
{
    return {params, std::move(a), Padic::zero(params.padic_context())};
}

QuadElem QuadElem::theta(const FormParams& params)
{
    auto ctx = params.padic_context();
    return {params, Padic::zero(ctx), Padic::one(ctx)};
}

QuadElem QuadElem::root(const FormParams& params, Root which)
{
    if (which == Root::alpha) return theta(params);
    auto ctx = params.padic_context();
    return {params, Padic::from_integer(ctx, params.ap), -Padic::one(ctx)};
}

void QuadElem::require_same(const QuadElem& o) const
{
    if (!(params_ == o.params_)) throw ParameterError("QuadElem: mismatched FormParams");
}

QuadElem QuadElem::operator+(const QuadElem& o) const
{
    require_same(o);
    return {params_, a_ + o.a_, b_ + o.b_};
}

QuadElem QuadElem::operator-(const QuadElem& o) const
{
    require_same(o);
    return {params_, a_ - o.a_, b_ - o.b_};
}

QuadElem QuadElem::operator-() const { return {params_, -a_, -b_}; }

QuadElem QuadElem::operator*(const QuadElem& o) const
{
    require_same(o);
    // theta^2 = a_p theta - eps p
    Padic bb = b_ * o.b_;
    return {params_, a_ * o.a_ - bb.times_integer(params_.eps * params_.p), a_ * o.b_ + o.a_ * b_ + bb.times_integer(params_.ap)};
}

QuadElem QuadElem::operator*(const Padic& s) const { return {params_, a_ * s, b_ * s}; }

QuadElem QuadElem::conj() const
{
    return {params_, a_ + b_.times_integer(params_.ap), -b_};
}

Padic QuadElem::norm() const
{
    return a_ * a_ + (a_ * b_).times_integer(params_.ap) + (b_ * b_).times_integer(params_.eps * params_.p);
}

QuadElem QuadElem::inverse() const
{
    if (is_zero())
        throw DivisionByZero("QuadElem::inverse: value is zero at absolute precision " + absolute_precision().str(),
                             absolute_precision().twice());
    return conj() * norm().inverse();
}

Valuation QuadElem::absolute_precision() const
{
    return std::min(a_.absolute_precision(), b_.absolute_precision() + Valuation::from_twice(1));
}

bool QuadElem::is_zero() const
{
    Valuation absprec = absolute_precision();
    if (!a_.is_zero() && a_.valuation() < absprec) return false;
    if (!b_.is_zero() && b_.valuation() + Valuation::from_twice(1) < absprec) return false;
    return true;
}

Valuation QuadElem::valuation() const
{
    if (is_zero()) return absolute_precision();
    return std::min(a_.valuation(), b_.valuation() + Valuation::from_twice(1));
}

std::string QuadElem::str() const { return "(" + a_.str() + ") + (" + b_.str() + ")*theta"; }

QuadElem quad_mul(const QuadElem& x, const QuadElem& y) { return x * y; }
QuadElem quad_conj(const QuadElem& x) { return x.conj(); }
QuadElem quad_inv(const QuadElem& x) { return x.inverse(); }

QuadElem root_power(const FormParams& params, Root which, long k)
{
    QuadElem base = QuadElem::root(params, which);
    if (k < 0) base = base.inverse();
    unsigned long e = static_cast<unsigned long>(k < 0 ? -k : k);
    QuadElem result = QuadElem::one(params);
    while (e != 0) {
        if (e & 1UL) result = result * base;
        e >>= 1;
        if (e != 0) base = base * base;
    }
    if (result.is_zero())
        throw PrecisionError("root_power: precision exhausted computing power " + std::to_string(k));
    return result;
}

} // namespace sharpflat
