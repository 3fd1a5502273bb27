#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <string>

namespace replenish {

/// Currency held as integer minor units (cents) so that cost breakdowns sum
/// exactly and reports are bit-identical across platforms.
class Money {
public:
    constexpr Money() = default;

    static constexpr Money from_cents(std::int64_t cents) { return Money(cents); }

    /// Rounds half away from zero to the nearest cent.
    static Money from_currency(double amount) { return Money(std::llround(amount * 100.0)); }

    constexpr std::int64_t cents() const { return cents_; }
    constexpr double currency() const { return static_cast<double>(cents_) / 100.0; }

    constexpr Money& operator+=(Money other) {
        cents_ += other.cents_;
        return *this;
    }
    constexpr Money& operator-=(Money other) {
        cents_ -= other.cents_;
        return *this;
    }
    friend constexpr Money operator+(Money a, Money b) { return Money(a.cents_ + b.cents_); }
    friend constexpr Money operator-(Money a, Money b) { return Money(a.cents_ - b.cents_); }
    friend constexpr auto operator<=>(Money, Money) = default;

    /// "12.34" style rendering, exact.
    std::string to_string() const;

private:
    constexpr explicit Money(std::int64_t cents) : cents_(cents) {}
    std::int64_t cents_ = 0;
};

}  // namespace replenish
