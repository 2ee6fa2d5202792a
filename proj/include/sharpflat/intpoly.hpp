#pragma once

#include <gmpxx.h>

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace sharpflat {

/// Exact polynomial over Z, coefficients in increasing degree. Trailing zeros are trimmed.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<mpz_class> coeffs);
    static IntPoly constant(const mpz_class& c) { return IntPoly(std::vector<mpz_class>{c}); }
    static IntPoly monomial(std::size_t degree, const mpz_class& c = 1);

    /// Degree, or -1 for the zero polynomial.
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<mpz_class>& coeffs() const { return coeffs_; }
    /// Coefficient of X^k (zero beyond the degree).
    mpz_class operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : mpz_class(0); }

    IntPoly operator+(const IntPoly& o) const;
    IntPoly operator-(const IntPoly& o) const;
    IntPoly operator-() const;
    IntPoly operator*(const IntPoly& o) const { return mul(o, std::nullopt); }
    IntPoly operator*(const mpz_class& c) const;

    /// Product, optionally truncated to terms of degree < limit.
    IntPoly mul(const IntPoly& o, std::optional<std::size_t> limit) const;
    IntPoly truncated(std::size_t limit) const;

    /// Quotient and remainder by a monic divisor.
    std::pair<IntPoly, IntPoly> divmod_monic(const IntPoly& divisor) const;
    IntPoly rem_monic(const IntPoly& divisor) const { return divmod_monic(divisor).second; }
    /// Exact quotient by a monic divisor; throws std::domain_error on a nonzero remainder.
    IntPoly divexact_monic(const IntPoly& divisor) const;

    bool operator==(const IntPoly& o) const { return coeffs_ == o.coeffs_; }

    std::string str() const;

private:
    void trim();
    std::vector<mpz_class> coeffs_;
};

/// (1+X)^q - 1.
IntPoly shifted_power_minus_one(const mpz_class& q);

/// Phi_{p^m}(1+X) as the exact quotient ((1+X)^{p^m} - 1) / ((1+X)^{p^(m-1)} - 1); m >= 1.
IntPoly cyclotomic_poly(long p, long m);

/// Cached copy of cyclotomic_poly.
const IntPoly& cyclotomic_poly_cached(long p, long m);

/// p^(m-1) (p-1).
long cyclotomic_degree(long p, long m);

/// 2x2 matrix over Z[X], row-major.
struct IntMatrix {
    std::array<IntPoly, 4> e;

    const IntPoly& operator()(int row, int col) const { return e[static_cast<std::size_t>(2 * row + col)]; }
    IntPoly& operator()(int row, int col) { return e[static_cast<std::size_t>(2 * row + col)]; }

    static IntMatrix identity();
    IntMatrix mul(const IntMatrix& o, std::optional<std::size_t> limit = std::nullopt) const;
    IntPoly det() const { return e[0] * e[3] - e[1] * e[2]; }
    bool operator==(const IntMatrix&) const = default;
};

} // namespace sharpflat
