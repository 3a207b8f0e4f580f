#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace moulds {

/// Exact rational scalar, always kept in canonical form (reduced,
/// positive denominator). Backed by GMP so numerators and denominators
/// never overflow; every algebraic identity in this library is checked
/// with equality on these.
class Rational {
public:
    Rational() : value_(0) {}
    Rational(long n) : value_(n) {}
    Rational(int n) : value_(static_cast<long>(n)) {}
    Rational(long num, long den) : value_(num, den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        value_.canonicalize();
    }
    explicit Rational(const mpq_class& q) : value_(q) { value_.canonicalize(); }

    /// Accepts "p", "p/q", "-p/q" and plain decimal strings like "1.25".
    static Rational parse(const std::string& text) {
        if (text.empty()) throw std::invalid_argument("Rational: empty string");
        auto dot = text.find('.');
        if (dot == std::string::npos) {
            mpq_class q;
            if (q.set_str(text, 10) != 0)
                throw std::invalid_argument("Rational: cannot parse '" + text + "'");
            if (q.get_den() == 0) throw std::domain_error("Rational: zero denominator");
            q.canonicalize();
            return Rational(q);
        }
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        std::size_t places = text.size() - dot - 1;
        mpz_class num;
        if (num.set_str(digits, 10) != 0)
            throw std::invalid_argument("Rational: cannot parse '" + text + "'");
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10u, places);
        mpq_class q(num, den);
        q.canonicalize();
        return Rational(q);
    }

    bool is_zero() const { return value_ == 0; }
    bool is_one() const { return value_ == 1; }
    int sign() const { return sgn(value_); }

    Rational operator-() const { return Rational(mpq_class(-value_)); }
    Rational abs() const { return sign() < 0 ? -*this : *this; }

    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        value_ /= o.value_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.value_ != b.value_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.value_ < b.value_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.value_ <= b.value_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.value_ > b.value_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.value_ >= b.value_; }

    Rational inverse() const {
        if (is_zero()) throw std::domain_error("Rational: inverse of zero");
        return Rational(mpq_class(1) / value_);
    }

    Rational pow(long e) const {
        if (e == 0) return Rational(1);
        if (e < 0) return inverse().pow(-e);
        mpz_class num, den;
        mpz_pow_ui(num.get_mpz_t(), value_.get_num().get_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(den.get_mpz_t(), value_.get_den().get_mpz_t(), static_cast<unsigned long>(e));
        return Rational(mpq_class(num, den));
    }

    static Rational factorial(unsigned n) {
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), n);
        return Rational(mpq_class(f));
    }

    static Rational binomial(unsigned n, unsigned k) {
        if (k > n) return Rational(0);
        mpz_class b;
        mpz_bin_uiui(b.get_mpz_t(), n, k);
        return Rational(mpq_class(b));
    }

    double to_double() const { return value_.get_d(); }

    /// "p" for integers, "p/q" otherwise; inverse of parse.
    std::string str() const { return value_.get_str(); }

    const mpq_class& raw() const { return value_; }

private:
    mpq_class value_;
};

inline std::string to_string(const Rational& r) { return r.str(); }

} // namespace moulds
