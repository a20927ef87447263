#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace gwc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact rational number, always kept in lowest terms with positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(long v) : q_(v) {}
    Rational(int v) : q_(static_cast<long>(v)) {}
    explicit Rational(const mpz_class& v) : q_(v) {}
    Rational(const mpz_class& num, const mpz_class& den);
    explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    static Rational parse(const std::string& s);

    mpz_class num() const { return q_.get_num(); }
    mpz_class den() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }
    bool is_canonical() const;

    std::string str() const;

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

private:
    void audit() const;
    mpq_class q_;
};

using ExactRational = Rational;

Rational rat(long num, long den);
Rational pow(const Rational& base, long exp);

// n! for n >= 0, cached up to the configured bound.
mpz_class factorial(long n);
void set_factorial_cache_bound(long bound);
long factorial_cache_bound();
mpz_class binomial(long n, long k);
// (n)! / (k_1! ... k_r!) with sum k_i = n, zero otherwise.
mpz_class multinomial(const std::vector<long>& parts);

// 1 / [(d-1)!]^n
Rational falling_factorial_inv(long d, long n);

using WeightVector = std::vector<Rational>;
void require_distinct(const WeightVector& w, const char* what);

std::ostream& operator<<(std::ostream& os, const Rational& r);

// Diagnostics on std::clog; off by default.
void set_verbose(bool on);
bool verbose();

void to_json(nlohmann::json& j, const Rational& r);
void from_json(const nlohmann::json& j, Rational& r);

}  // namespace gwc
