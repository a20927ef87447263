#include "gwc/numeric.hpp"

#include <atomic>
#include <map>
#include <mutex>

namespace gwc {

namespace {

std::mutex fact_mutex;
std::vector<mpz_class> fact_cache{mpz_class(1)};
long fact_bound = 64;

}  // namespace

Rational::Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw Error("division by zero");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational Rational::parse(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(mpz_class(s, 10));
        return Rational(mpz_class(s.substr(0, slash), 10), mpz_class(s.substr(slash + 1), 10));
    } catch (const std::invalid_argument&) {
        throw Error("malformed rational '" + s + "'");
    }
}

bool Rational::is_canonical() const {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return q_.get_den() > 0 && g == 1;
}

// Only active when built with GWC_AUDIT.
void Rational::audit() const {
#ifdef GWC_AUDIT
    if (!is_canonical()) throw Error("unreduced rational " + q_.get_str());
#endif
}

std::string Rational::str() const { return q_.get_str(); }

Rational& Rational::operator+=(const Rational& o) {
    q_ += o.q_;
    audit();
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    q_ -= o.q_;
    audit();
    return *this;
}

Rational& Rational::operator*=(const Rational& o) {
    q_ *= o.q_;
    audit();
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw Error("division by zero");
    q_ /= o.q_;
    audit();
    return *this;
}

Rational rat(long num, long den) {
    if (den == 0) throw Error("division by zero");
    return Rational(mpz_class(num), mpz_class(den));
}

Rational pow(const Rational& base, long exp) {
    if (exp < 0) {
        if (base.is_zero()) throw Error("division by zero");
        return Rational(1) / pow(base, -exp);
    }
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), base.num().get_mpz_t(), static_cast<unsigned long>(exp));
    mpz_pow_ui(d.get_mpz_t(), base.den().get_mpz_t(), static_cast<unsigned long>(exp));
    return Rational(n, d);
}

void set_factorial_cache_bound(long bound) {
    std::lock_guard<std::mutex> lock(fact_mutex);
    fact_bound = bound;
    if (static_cast<long>(fact_cache.size()) > bound + 1) fact_cache.resize(bound + 1);
}

long factorial_cache_bound() {
    std::lock_guard<std::mutex> lock(fact_mutex);
    return fact_bound;
}

mpz_class factorial(long n) {
    if (n < 0) throw Error("factorial of negative integer");
    {
        std::lock_guard<std::mutex> lock(fact_mutex);
        if (n <= fact_bound) {
            while (static_cast<long>(fact_cache.size()) <= n) {
                long k = static_cast<long>(fact_cache.size());
                fact_cache.push_back(fact_cache.back() * k);
            }
            return fact_cache[n];
        }
    }
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

mpz_class binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

mpz_class multinomial(const std::vector<long>& parts) {
    long n = 0;
    for (long p : parts) {
        if (p < 0) return 0;
        n += p;
    }
    mpz_class r = factorial(n);
    for (long p : parts) r /= factorial(p);
    return r;
}

Rational falling_factorial_inv(long d, long n) {
    if (d <= 0) throw Error("invalid tangency");
    if (n <= 0) throw Error("invalid exponent");
    mpz_class f = factorial(d - 1);
    mpz_class p;
    mpz_pow_ui(p.get_mpz_t(), f.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(mpz_class(1), p);
}

void require_distinct(const WeightVector& w, const char* what) {
    for (size_t i = 0; i < w.size(); ++i)
        for (size_t j = i + 1; j < w.size(); ++j)
            if (w[i] == w[j]) throw Error(what);
}

void to_json(nlohmann::json& j, const Rational& r) {
    j = nlohmann::json{{"num", r.num().get_str()}, {"den", r.den().get_str()}};
}

void from_json(const nlohmann::json& j, Rational& r) {
    if (j.is_object()) {
        r = Rational(mpz_class(j.at("num").get<std::string>(), 10),
                     mpz_class(j.at("den").get<std::string>(), 10));
    } else if (j.is_string()) {
        r = Rational::parse(j.get<std::string>());
    } else if (j.is_number_integer()) {
        r = Rational(j.get<long>());
    } else {
        throw Error("rational must be an object, string or integer");
    }
}

}  // namespace gwc

namespace gwc {

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

namespace {
std::atomic<bool> g_verbose{false};
}

void set_verbose(bool on) { g_verbose = on; }
bool verbose() { return g_verbose; }

}  // namespace gwc
