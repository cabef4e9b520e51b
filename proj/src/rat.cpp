#include "conekit/rat.hpp"

#include <stdexcept>

namespace conekit {

Rat::Rat(long value) : value_(value) {}

Rat::Rat(long num, long den) {
    if (den == 0) {
        throw std::domain_error("Rat: zero denominator");
    }
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

Rat::Rat(mpq_class value) : value_(std::move(value)) {
    if (value_.get_den() == 0) {
        throw std::domain_error("Rat: zero denominator");
    }
    value_.canonicalize();
}

Rat Rat::parse(std::string_view text) {
    const auto digits_ok = [](std::string_view s, bool allow_sign) {
        if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+')) {
            s.remove_prefix(1);
        }
        if (s.empty()) {
            return false;
        }
        for (char c : s) {
            if (c < '0' || c > '9') {
                return false;
            }
        }
        return true;
    };
    const auto slash = text.find('/');
    const std::string_view num = text.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? "1" : text.substr(slash + 1);
    if (!digits_ok(num, true) || !digits_ok(den, false)) {
        throw std::invalid_argument("Rat: cannot parse '" + std::string(text) + "'");
    }
    std::string num_s(num);
    if (!num_s.empty() && num_s.front() == '+') {
        num_s.erase(0, 1);
    }
    mpz_class n(num_s, 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) {
        throw std::domain_error("Rat: zero denominator in '" + std::string(text) + "'");
    }
    return Rat(mpq_class(n, d));
}

Rat Rat::floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
    return Rat(mpq_class(q));
}

Rat Rat::ceil() const {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
    return Rat(mpq_class(q));
}

Rat Rat::frac() const { return *this - floor(); }

Rat Rat::abs() const { return sign() < 0 ? -*this : *this; }

long Rat::to_long() const {
    if (!is_integer()) {
        throw std::domain_error("Rat: " + str() + " is not an integer");
    }
    if (!value_.get_num().fits_slong_p()) {
        throw std::overflow_error("Rat: " + str() + " does not fit in long");
    }
    return value_.get_num().get_si();
}

std::string Rat::str() const { return value_.get_str(10); }

Rat& Rat::operator+=(const Rat& o) {
    value_ += o.value_;
    return *this;
}

Rat& Rat::operator-=(const Rat& o) {
    value_ -= o.value_;
    return *this;
}

Rat& Rat::operator*=(const Rat& o) {
    value_ *= o.value_;
    return *this;
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) {
        throw std::domain_error("Rat: division by zero");
    }
    value_ /= o.value_;
    return *this;
}

Rat Rat::operator-() const { return Rat(mpq_class(-value_)); }

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

}  // namespace conekit
