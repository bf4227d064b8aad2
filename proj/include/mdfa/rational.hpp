#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

#include <gmpxx.h>

namespace mdfa {

/// Exact rational number, always in lowest terms with a positive denominator.
/// Thin value wrapper over GMP's mpq_class.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t value);  // NOLINT(google-explicit-constructor): integers promote freely
    Rational(std::int64_t num, std::int64_t den);
    /// Parses "p" or "p/q"; throws std::invalid_argument on malformed text or q = 0.
    static Rational parse(const std::string& text);

    std::string numerator() const { return q_.get_num().get_str(); }
    std::string denominator() const { return q_.get_den().get_str(); }
    std::string str() const { return q_.get_str(); }
    double to_double() const { return q_.get_d(); }

    bool is_integer() const { return q_.get_den() == 1; }
    bool is_zero() const { return sgn(q_) == 0; }
    int sign() const { return sgn(q_); }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    /// Throws std::domain_error on division by zero.
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
    mpq_class q_{0};
};

}  // namespace mdfa
