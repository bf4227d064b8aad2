#include "mdfa/rational.hpp"

#include <stdexcept>

namespace mdfa {

namespace {

mpz_class to_mpz(std::int64_t v) {
    if constexpr (sizeof(long) >= sizeof(std::int64_t)) {
        mpz_class z;
        mpz_set_si(z.get_mpz_t(), static_cast<long>(v));
        return z;
    } else {
        return mpz_class(std::to_string(v));
    }
}

}  // namespace

Rational::Rational(std::int64_t value) : q_(to_mpz(value)) {}

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    q_ = mpq_class(to_mpz(num), to_mpz(den));
    q_.canonicalize();
}

Rational Rational::parse(const std::string& text) {
    const auto slash = text.find('/');
    auto valid_int = [](const std::string& s) {
        if (s.empty()) return false;
        std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (start == s.size()) return false;
        for (std::size_t t = start; t < s.size(); ++t)
            if (s[t] < '0' || s[t] > '9') return false;
        return true;
    };
    auto strip_plus = [](const std::string& s) { return (!s.empty() && s[0] == '+') ? s.substr(1) : s; };
    const std::string num = strip_plus(text.substr(0, slash));
    const std::string den = slash == std::string::npos ? "1" : strip_plus(text.substr(slash + 1));
    if (!valid_int(num) || !valid_int(den)) {
        throw std::invalid_argument("malformed rational '" + text + "'");
    }
    mpz_class d(den);
    if (d == 0) throw std::invalid_argument("rational with zero denominator: '" + text + "'");
    return Rational(mpq_class(mpz_class(num), d));
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("rational division by zero");
    q_ /= o.q_;
    return *this;
}

}  // namespace mdfa
