#include "sharpflat/padic.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>

#include "sharpflat/errors.hpp"

namespace sharpflat {

const mpz_class& prime_power(long p, long k)
{
    thread_local std::unordered_map<long, std::deque<mpz_class>> cache;
    auto& powers = cache[p];
    if (powers.empty()) powers.emplace_back(1);
    while (static_cast<long>(powers.size()) <= k) powers.emplace_back(powers.back() * p);
    return powers[static_cast<std::size_t>(k)];
}

long valuation_of_integer(const mpz_class& z, long p)
{
    if (z == 0) return Padic::kExact;
    mpz_class rest;
    mpz_class prime = p;
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), z.get_mpz_t(), prime.get_mpz_t()));
}

Padic Padic::zero(const PadicContext& ctx)
{
    Padic r;
    r.ctx_ = ctx;
    return r;
}

Padic Padic::zero_at(const PadicContext& ctx, long absprec)
{
    Padic r;
    r.ctx_ = ctx;
    r.abs_ = std::min(absprec, kExact);
    return r;
}

Padic Padic::normalize(const PadicContext& ctx, mpz_class z, long shift, long absprec)
{
    if (z == 0) return absprec >= kExact ? zero(ctx) : zero_at(ctx, absprec);
    mpz_class unit;
    long k = 0;
    if (mpz_divisible_ui_p(z.get_mpz_t(), static_cast<unsigned long>(ctx.p))) {
        mpz_class prime = ctx.p;
        k = static_cast<long>(mpz_remove(unit.get_mpz_t(), z.get_mpz_t(), prime.get_mpz_t()));
    } else {
        unit = std::move(z);
    }
    long v = shift + k;
    if (v >= absprec) return zero_at(ctx, absprec);
    long rel = std::min(absprec - v, ctx.cap);
    if (rel <= 0) return zero_at(ctx, v);
    Padic r;
    r.ctx_ = ctx;
    r.zero_ = false;
    r.val_ = v;
    r.rel_ = rel;
    r.abs_ = v + rel;
    const mpz_class& modulus = prime_power(ctx.p, rel);
    if (sgn(unit) >= 0 && unit < modulus) r.unit_ = std::move(unit);
    else mpz_mod(r.unit_.get_mpz_t(), unit.get_mpz_t(), modulus.get_mpz_t());
    return r;
}

Padic Padic::from_integer(const PadicContext& ctx, const mpz_class& z)
{
    if (z == 0) return zero(ctx);
    long v = valuation_of_integer(z, ctx.p);
    return normalize(ctx, z, 0, v + ctx.cap);
}

Padic Padic::from_integer(const PadicContext& ctx, const mpz_class& z, long absprec)
{
    return normalize(ctx, z, 0, absprec);
}

Padic Padic::from_rational(const PadicContext& ctx, const mpq_class& q)
{
    if (q == 0) return zero(ctx);
    Padic num = from_integer(ctx, q.get_num());
    Padic den = from_integer(ctx, q.get_den());
    return num * den.inverse();
}

Padic Padic::from_parts(const PadicContext& ctx, long valuation, const mpz_class& unit, long rel)
{
    if (rel <= 0) return zero_at(ctx, valuation);
    if (valuation_of_integer(unit, ctx.p) != 0) throw ParameterError("Padic::from_parts: mantissa is not a p-adic unit");
    return normalize(ctx, unit, valuation, valuation + std::min(rel, ctx.cap));
}

Padic Padic::operator-() const
{
    if (zero_) return *this;
    Padic r = *this;
    mpz_class modulus = prime_power(ctx_.p, rel_);
    r.unit_ = modulus - unit_;
    return r;
}

Padic Padic::operator+(const Padic& o) const
{
    if (ctx_.p != o.ctx_.p) throw ParameterError("Padic: mismatched primes");
    if (is_exact_zero()) return o;
    if (o.is_exact_zero()) return *this;
    long absprec = std::min(digits_absolute_precision(), o.digits_absolute_precision());
    if (zero_ && o.zero_) return zero_at(ctx_, absprec);
    if (zero_) return o.with_absolute_precision(absprec);
    if (o.zero_) return with_absolute_precision(absprec);

    long base = std::min(val_, o.val_);
    long span = absprec - base;
    mpz_class sum = 0;
    if (val_ - base < span) sum += unit_ * prime_power(ctx_.p, val_ - base);
    if (o.val_ - base < span) sum += o.unit_ * prime_power(ctx_.p, o.val_ - base);
    return normalize(ctx_, std::move(sum), base, absprec);
}

Padic Padic::operator*(const Padic& o) const
{
    if (ctx_.p != o.ctx_.p) throw ParameterError("Padic: mismatched primes");
    if (is_exact_zero() || o.is_exact_zero()) return zero(ctx_);
    if (zero_ || o.zero_) return zero_at(ctx_, digits_valuation() + o.digits_valuation());
    Padic r;
    r.ctx_ = ctx_;
    r.zero_ = false;
    r.val_ = val_ + o.val_;
    r.rel_ = std::min(rel_, o.rel_);
    r.abs_ = r.val_ + r.rel_;
    r.unit_ = unit_ * o.unit_;
    mpz_mod(r.unit_.get_mpz_t(), r.unit_.get_mpz_t(), prime_power(ctx_.p, r.rel_).get_mpz_t());
    return r;
}

Padic Padic::inverse() const
{
    if (zero_) {
        long halves = abs_ >= kExact ? Valuation::kInfinite : 2 * abs_;
        throw DivisionByZero("Padic::inverse: value is zero at absolute precision " +
                                 (abs_ >= kExact ? std::string("inf") : std::to_string(abs_)),
                             halves);
    }
    Padic r = *this;
    r.val_ = -val_;
    r.abs_ = r.val_ + rel_;
    mpz_invert(r.unit_.get_mpz_t(), unit_.get_mpz_t(), prime_power(ctx_.p, rel_).get_mpz_t());
    return r;
}

Padic Padic::times_integer(long k) const
{
    if (k == 0) return zero(ctx_);
    if (zero_) {
        if (is_exact_zero()) return *this;
        return zero_at(ctx_, abs_ + valuation_of_integer(mpz_class(k), ctx_.p));
    }
    long kv = 0;
    while (k % ctx_.p == 0) {
        k /= ctx_.p;
        ++kv;
    }
    Padic r = *this;
    r.val_ += kv;
    r.abs_ += kv;
    mpz_mul_si(r.unit_.get_mpz_t(), unit_.get_mpz_t(), k);
    mpz_mod(r.unit_.get_mpz_t(), r.unit_.get_mpz_t(), prime_power(ctx_.p, rel_).get_mpz_t());
    return r;
}

Padic Padic::with_absolute_precision(long absprec) const
{
    if (absprec >= digits_absolute_precision()) return *this;
    if (zero_) return zero_at(ctx_, absprec);
    return normalize(ctx_, unit_, val_, absprec);
}

mpq_class Padic::representative() const
{
    if (zero_) return 0;
    mpq_class r(unit_);
    if (val_ >= 0) r *= prime_power(ctx_.p, val_);
    else r /= prime_power(ctx_.p, -val_);
    r.canonicalize();
    return r;
}

bool Padic::operator==(const Padic& o) const
{
    return ctx_ == o.ctx_ && zero_ == o.zero_ && abs_ == o.abs_ && (zero_ || (val_ == o.val_ && unit_ == o.unit_));
}

std::string Padic::str() const
{
    std::ostringstream os;
    if (zero_) {
        if (abs_ >= kExact) return "0";
        os << "O(" << ctx_.p << "^" << abs_ << ")";
        return os.str();
    }
    os << unit_.get_str();
    if (val_ != 0) os << "*" << ctx_.p << "^" << val_;
    os << " + O(" << ctx_.p << "^" << abs_ << ")";
    return os.str();
}

} // namespace sharpflat
