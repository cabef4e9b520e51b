#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace conekit {

/// Exact rational number, always in lowest terms with a positive denominator.
class Rat {
public:
    Rat() = default;
    Rat(long value);  // NOLINT(google-explicit-constructor): integer literals read naturally
    Rat(long num, long den);
    explicit Rat(mpq_class value);

    /// Parses "p", "-p" or "p/q" (whitespace not allowed).
    static Rat parse(std::string_view text);

    const mpz_class& numerator() const { return value_.get_num(); }
    const mpz_class& denominator() const { return value_.get_den(); }
    const mpq_class& raw() const { return value_; }

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_integer() const { return value_.get_den() == 1; }
    int sign() const { return sgn(value_); }

    Rat floor() const;
    Rat ceil() const;
    /// x - floor(x), always in [0, 1).
    Rat frac() const;
    Rat abs() const;

    /// Value as a machine integer; throws if not integral or out of range.
    long to_long() const;

    /// "p" for integers, "p/q" otherwise.
    std::string str() const;

    Rat& operator+=(const Rat& o);
    Rat& operator-=(const Rat& o);
    Rat& operator*=(const Rat& o);
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
    Rat operator-() const;

    friend bool operator==(const Rat& a, const Rat& b) { return cmp(a.value_, b.value_) == 0; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

}  // namespace conekit
