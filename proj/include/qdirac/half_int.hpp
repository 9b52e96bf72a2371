#pragma once

#include <compare>
#include <cstdlib>
#include <string>

#include "qdirac/errors.hpp"

namespace qdirac {

// Half-integer stored as twice its value, so weights and spins stay exact.
struct HalfInt {
    int twice = 0;

    constexpr HalfInt() = default;
    constexpr explicit HalfInt(int twice_value) : twice(twice_value) {}

    static constexpr HalfInt whole(int n) { return HalfInt(2 * n); }
    static constexpr HalfInt half(int n) { return HalfInt(n); } // n half-units

    constexpr bool is_integer() const { return twice % 2 == 0; }
    constexpr int as_integer() const { return twice / 2; }
    constexpr double value() const { return twice / 2.0; }

    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return HalfInt(a.twice + b.twice); }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return HalfInt(a.twice - b.twice); }
    friend constexpr HalfInt operator-(HalfInt a) { return HalfInt(-a.twice); }
    friend constexpr bool operator==(HalfInt a, HalfInt b) { return a.twice == b.twice; }
    friend constexpr auto operator<=>(HalfInt a, HalfInt b) { return a.twice <=> b.twice; }

    std::string str() const {
        if (is_integer()) return std::to_string(twice / 2);
        return std::to_string(twice) + "/2";
    }
};

// Accepts "2", "3/2", "0.5", "1.5", ... ; anything else throws.
inline HalfInt parse_half_int(const std::string& text) {
    if (text.empty()) throw error("empty half-integer");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        long num = std::strtol(text.substr(0, slash).c_str(), nullptr, 10);
        long den = std::strtol(text.substr(slash + 1).c_str(), nullptr, 10);
        if (den == 2) return HalfInt(static_cast<int>(num));
        if (den == 1) return HalfInt(static_cast<int>(2 * num));
        throw error("half-integer must have denominator 1 or 2: " + text);
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
        std::string frac = text.substr(dot + 1);
        long whole = std::strtol(text.substr(0, dot).c_str(), nullptr, 10);
        bool negative = text[0] == '-';
        if (frac == "5") return HalfInt(static_cast<int>(2 * whole + (negative ? -1 : 1)));
        if (frac == "0" || frac.empty()) return HalfInt(static_cast<int>(2 * whole));
        throw error("not a half-integer: " + text);
    }
    char* end = nullptr;
    long whole = std::strtol(text.c_str(), &end, 10);
    if (end == text.c_str() || *end != '\0') throw error("not a half-integer: " + text);
    return HalfInt(static_cast<int>(2 * whole));
}

} // namespace qdirac
