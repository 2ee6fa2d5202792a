#pragma once

#include <compare>
#include <limits>
#include <ostream>
#include <string>

namespace sharpflat {

/// A p-adic valuation measured in half-digits, so that the ramified quadratic
/// extension (uniformizer of valuation 1/2) needs no rational arithmetic.
/// Infinity stands for an exact zero.
class Valuation {
public:
    static constexpr long kInfinite = std::numeric_limits<long>::max() / 4;

    constexpr Valuation() = default;

    static constexpr Valuation from_twice(long twice) { return Valuation(twice); }
    static constexpr Valuation from_digits(long digits) { return Valuation(2 * digits); }
    static constexpr Valuation infinity() { return Valuation(kInfinite); }

    constexpr long twice() const { return twice_; }
    constexpr bool is_infinite() const { return twice_ >= kInfinite; }
    constexpr double as_double() const
    {
        return is_infinite() ? std::numeric_limits<double>::infinity() : 0.5 * static_cast<double>(twice_);
    }

    constexpr Valuation operator+(Valuation o) const
    {
        if (is_infinite() || o.is_infinite()) return infinity();
        return Valuation(twice_ + o.twice_);
    }
    constexpr Valuation operator-(Valuation o) const
    {
        if (is_infinite()) return infinity();
        return Valuation(twice_ - o.twice_);
    }
    constexpr Valuation operator-() const { return Valuation(-twice_); }

    constexpr auto operator<=>(const Valuation&) const = default;

    /// "3/2", "-1", "inf".
    std::string str() const
    {
        if (is_infinite()) return "inf";
        if (twice_ % 2 == 0) return std::to_string(twice_ / 2);
        return std::to_string(twice_) + "/2";
    }

private:
    constexpr explicit Valuation(long twice) : twice_(twice) {}
    long twice_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, Valuation v) { return os << v.str(); }

} // namespace sharpflat
