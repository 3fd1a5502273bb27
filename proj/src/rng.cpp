#include "replenish/rng.hpp"
#include "replenish/money.hpp"

#include <cmath>
#include <numbers>

namespace replenish {

std::string Money::to_string() const {
    const std::int64_t whole = cents_ / 100;
    std::int64_t frac = cents_ % 100;
    std::string out;
    if (cents_ < 0) {
        out = "-";
        frac = -frac;
    }
    out += std::to_string(whole < 0 ? -whole : whole);
    out += '.';
    if (frac < 10) out += '0';
    out += std::to_string(frac);
    return out;
}

double Rng::uniform() {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
    // 1 - u keeps the log argument in (0, 1].
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double Rng::gamma(double shape) {
    if (shape < 1.0) {
        const double u = 1.0 - uniform();
        return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = 0.0;
        double v = 0.0;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = 1.0 - uniform();
        if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v;
    }
}

std::int64_t Rng::poisson(double mean) {
    std::int64_t total = 0;
    constexpr double chunk = 16.0;
    while (mean > 0.0) {
        const double m = mean > chunk ? chunk : mean;
        mean -= m;
        const double limit = std::exp(-m);
        double product = uniform();
        while (product > limit) {
            ++total;
            product *= uniform();
        }
    }
    return total;
}

}  // namespace replenish
