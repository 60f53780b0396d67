// Exact rational arithmetic on 128-bit integers.
//
// Probabilities in this library are products and sums of small fractions
// (success rates like 3/4 or 79/100), so numerators and denominators stay
// far below the 128-bit range for every supported configuration. Any
// operation that would overflow throws instead of silently wrapping;
// callers that need wider inputs should switch to the floating-point
// engine instantiations.

#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <stdexcept>
#include <string>
#include <string_view>

namespace shootout {

using int128 = __int128;

namespace detail {

inline int128 gcd128(int128 a, int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline int128 checked_add(int128 a, int128 b) {
    int128 r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("rational: 128-bit addition overflow");
    return r;
}

inline int128 checked_mul(int128 a, int128 b) {
    int128 r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("rational: 128-bit multiplication overflow");
    return r;
}

inline std::string int128_to_string(int128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    // Negate digit by digit to survive INT128_MIN.
    std::string digits;
    while (v != 0) {
        int d = static_cast<int>(v % 10);
        if (d < 0) d = -d;
        digits.push_back(static_cast<char>('0' + d));
        v /= 10;
    }
    if (neg) digits.push_back('-');
    return {digits.rbegin(), digits.rend()};
}

} // namespace detail

class rational {
public:
    constexpr rational() = default;
    rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
    rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    static rational from_parts(int128 n, int128 d) {
        rational r;
        r.num_ = n;
        r.den_ = d;
        r.normalize();
        return r;
    }

    // Accepts "3/4", "-1/2", "0.79", "1", "0.5440673828125".
    static std::optional<rational> parse(std::string_view text);

    int128 num() const { return num_; }
    int128 den() const { return den_; }

    bool is_zero() const { return num_ == 0; }

    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }
    long double to_long_double() const {
        return static_cast<long double>(num_) / static_cast<long double>(den_);
    }

    // "num/den", or just "num" when the denominator is 1.
    std::string to_string() const {
        std::string s = detail::int128_to_string(num_);
        if (den_ != 1) {
            s += '/';
            s += detail::int128_to_string(den_);
        }
        return s;
    }

    friend rational operator+(const rational& a, const rational& b) {
        const int128 g = detail::gcd128(a.den_, b.den_);
        const int128 bd = b.den_ / g;
        const int128 n = detail::checked_add(detail::checked_mul(a.num_, bd),
                                             detail::checked_mul(b.num_, a.den_ / g));
        return from_parts(n, detail::checked_mul(a.den_, bd));
    }
    friend rational operator-(const rational& a, const rational& b) { return a + (-b); }
    friend rational operator*(const rational& a, const rational& b) {
        const int128 g1 = detail::gcd128(a.num_, b.den_);
        const int128 g2 = detail::gcd128(b.num_, a.den_);
        rational r;
        r.num_ = detail::checked_mul(a.num_ / g1, b.num_ / g2);
        r.den_ = detail::checked_mul(a.den_ / g2, b.den_ / g1);
        return r;
    }
    friend rational operator/(const rational& a, const rational& b) {
        if (b.num_ == 0) throw std::domain_error("rational: division by zero");
        rational inv;
        inv.num_ = b.den_;
        inv.den_ = b.num_;
        if (inv.den_ < 0) {
            inv.num_ = -inv.num_;
            inv.den_ = -inv.den_;
        }
        return a * inv;
    }
    rational operator-() const {
        rational r = *this;
        r.num_ = -r.num_;
        return r;
    }

    rational& operator+=(const rational& o) { return *this = *this + o; }
    rational& operator-=(const rational& o) { return *this = *this - o; }
    rational& operator*=(const rational& o) { return *this = *this * o; }
    rational& operator/=(const rational& o) { return *this = *this / o; }

    friend bool operator==(const rational& a, const rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const rational& a, const rational& b) { return !(a == b); }
    friend bool operator<(const rational& a, const rational& b) {
        return compare(a.num_, a.den_, b.num_, b.den_) < 0;
    }
    friend bool operator>(const rational& a, const rational& b) { return b < a; }
    friend bool operator<=(const rational& a, const rational& b) { return !(b < a); }
    friend bool operator>=(const rational& a, const rational& b) { return !(a < b); }

    rational abs() const { return num_ < 0 ? -*this : *this; }

private:
    // Continued-fraction comparison: exact for any 128-bit operands, with no
    // cross-multiplication that could overflow.
    static int compare(int128 n1, int128 d1, int128 n2, int128 d2) {
        if ((n1 < 0) != (n2 < 0)) return n1 < n2 ? -1 : 1;
        if (n1 < 0) {
            // -a < -b iff b < a.
            n1 = -n1;
            n2 = -n2;
            std::swap(n1, n2);
            std::swap(d1, d2);
        }
        for (;;) {
            const int128 q1 = n1 / d1;
            const int128 q2 = n2 / d2;
            if (q1 != q2) return q1 < q2 ? -1 : 1;
            n1 %= d1;
            n2 %= d2;
            if (n1 == 0 || n2 == 0) {
                if (n1 == n2) return 0;
                return n1 == 0 ? -1 : 1;
            }
            // Both remainders in (0, den): compare reciprocals, flipped.
            std::swap(n1, d2);
            std::swap(n2, d1);
        }
    }

    void normalize() {
        if (den_ == 0) throw std::domain_error("rational: zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        const int128 g = detail::gcd128(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    int128 num_ = 0;
    int128 den_ = 1;
};

inline std::optional<rational> rational::parse(std::string_view text) {
    if (text.empty()) return std::nullopt;
    bool neg = false;
    std::size_t i = 0;
    if (text[i] == '+' || text[i] == '-') {
        neg = text[i] == '-';
        ++i;
    }
    auto read_digits = [&](int128& out) -> bool {
        if (i >= text.size() || text[i] < '0' || text[i] > '9') return false;
        out = 0;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
            out = detail::checked_mul(out, 10);
            out = detail::checked_add(out, text[i] - '0');
            ++i;
        }
        return true;
    };
    int128 whole = 0;
    if (!read_digits(whole)) return std::nullopt;
    int128 num = whole;
    int128 den = 1;
    if (i < text.size() && text[i] == '/') {
        ++i;
        if (!read_digits(den) || den == 0) return std::nullopt;
    } else if (i < text.size() && text[i] == '.') {
        ++i;
        const std::size_t frac_start = i;
        int128 frac = 0;
        if (!read_digits(frac)) return std::nullopt;
        for (std::size_t k = frac_start; k < i; ++k) den = detail::checked_mul(den, 10);
        num = detail::checked_add(detail::checked_mul(whole, den), frac);
    }
    if (i != text.size()) return std::nullopt;
    if (neg) num = -num;
    return from_parts(num, den);
}

} // namespace shootout
