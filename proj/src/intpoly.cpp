#include "sharpflat/intpoly.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace sharpflat {

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPoly IntPoly::monomial(std::size_t degree, const mpz_class& c)
{
    std::vector<mpz_class> v(degree + 1, 0);
    v[degree] = c;
    return IntPoly(std::move(v));
}

void IntPoly::trim()
{
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

IntPoly IntPoly::operator+(const IntPoly& o) const
{
    std::vector<mpz_class> r(std::max(coeffs_.size(), o.coeffs_.size()), 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r[i] += coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) r[i] += o.coeffs_[i];
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-() const
{
    std::vector<mpz_class> r(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r[i] = -coeffs_[i];
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-(const IntPoly& o) const { return *this + (-o); }

IntPoly IntPoly::operator*(const mpz_class& c) const
{
    std::vector<mpz_class> r(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r[i] = coeffs_[i] * c;
    return IntPoly(std::move(r));
}

IntPoly IntPoly::mul(const IntPoly& o, std::optional<std::size_t> limit) const
{
    if (is_zero() || o.is_zero()) return {};
    std::size_t n = coeffs_.size() + o.coeffs_.size() - 1;
    if (limit) n = std::min(n, *limit);
    std::vector<mpz_class> r(n, 0);
    for (std::size_t i = 0; i < coeffs_.size() && i < n; ++i) {
        if (coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < o.coeffs_.size() && i + j < n; ++j) r[i + j] += coeffs_[i] * o.coeffs_[j];
    }
    return IntPoly(std::move(r));
}

IntPoly IntPoly::truncated(std::size_t limit) const
{
    if (coeffs_.size() <= limit) return *this;
    return IntPoly(std::vector<mpz_class>(coeffs_.begin(), coeffs_.begin() + static_cast<long>(limit)));
}

std::pair<IntPoly, IntPoly> IntPoly::divmod_monic(const IntPoly& divisor) const
{
    if (divisor.is_zero() || divisor.coeffs_.back() != 1) throw std::invalid_argument("IntPoly: divisor must be monic");
    std::size_t dd = divisor.coeffs_.size() - 1;
    if (coeffs_.size() <= dd) return {IntPoly{}, *this};
    std::vector<mpz_class> rem = coeffs_;
    std::vector<mpz_class> quo(coeffs_.size() - dd, 0);
    for (std::size_t k = coeffs_.size(); k-- > dd;) {
        const mpz_class c = rem[k];
        if (c == 0) continue;
        quo[k - dd] = c;
        for (std::size_t j = 0; j <= dd; ++j) rem[k - dd + j] -= c * divisor.coeffs_[j];
    }
    rem.resize(dd);
    return {IntPoly(std::move(quo)), IntPoly(std::move(rem))};
}

IntPoly IntPoly::divexact_monic(const IntPoly& divisor) const
{
    auto [q, r] = divmod_monic(divisor);
    if (!r.is_zero()) throw std::domain_error("IntPoly::divexact_monic: nonzero remainder");
    return q;
}

std::string IntPoly::str() const
{
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        if (coeffs_[i] == 0) continue;
        if (!first) os << (coeffs_[i] > 0 ? " + " : " - ");
        else if (coeffs_[i] < 0) os << "-";
        mpz_class a = abs(coeffs_[i]);
        if (a != 1 || i == 0) os << a.get_str();
        if (i > 0) os << (a != 1 ? "*X" : "X");
        if (i > 1) os << "^" << i;
        first = false;
    }
    return os.str();
}

IntPoly shifted_power_minus_one(const mpz_class& q)
{
    unsigned long n = q.get_ui();
    std::vector<mpz_class> c(n + 1);
    mpz_class binom = 1;
    c[0] = 0;
    for (unsigned long k = 1; k <= n; ++k) {
        binom = binom * (n - k + 1) / k;
        c[k] = binom;
    }
    return IntPoly(std::move(c));
}

long cyclotomic_degree(long p, long m)
{
    long d = p - 1;
    for (long i = 1; i < m; ++i) d *= p;
    return d;
}

IntPoly cyclotomic_poly(long p, long m)
{
    if (m < 1) throw std::invalid_argument("cyclotomic_poly: level must be >= 1");
    mpz_class outer, inner;
    mpz_ui_pow_ui(outer.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(m));
    mpz_ui_pow_ui(inner.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(m - 1));
    // Both sides are divisible by X; dividing it out leaves a monic divisor.
    IntPoly num = shifted_power_minus_one(outer);
    IntPoly den = shifted_power_minus_one(inner);
    std::vector<mpz_class> nc(num.coeffs().begin() + 1, num.coeffs().end());
    std::vector<mpz_class> dc(den.coeffs().begin() + 1, den.coeffs().end());
    return IntPoly(std::move(nc)).divexact_monic(IntPoly(std::move(dc)));
}

const IntPoly& cyclotomic_poly_cached(long p, long m)
{
    static std::mutex mutex;
    static std::map<std::pair<long, long>, IntPoly> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find({p, m});
    if (it == cache.end()) it = cache.emplace(std::make_pair(p, m), cyclotomic_poly(p, m)).first;
    return it->second;
}

IntMatrix IntMatrix::identity()
{
    return IntMatrix{{IntPoly::constant(1), IntPoly{}, IntPoly{}, IntPoly::constant(1)}};
}

IntMatrix IntMatrix::mul(const IntMatrix& o, std::optional<std::size_t> limit) const
{
    IntMatrix r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r(i, j) = (*this)(i, 0).mul(o(0, j), limit) + (*this)(i, 1).mul(o(1, j), limit);
    return r;
}

} // namespace sharpflat
