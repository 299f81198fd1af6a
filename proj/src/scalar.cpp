#include "dext/scalar.hpp"

#include <limits>
#include <regex>

#include "dext/errors.hpp"

namespace dext {

namespace {

thread_local std::uint32_t g_modulus = 0;

constexpr __int128 kMax = std::numeric_limits<std::int64_t>::max();
constexpr __int128 kMin = std::numeric_limits<std::int64_t>::min() + 1;  // keep negation safe

__int128 abs128(__int128 v) { return v < 0 ? -v : v; }

__int128 gcd128(__int128 a, __int128 b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::uint32_t mod_reduce(__int128 v, std::uint32_t p) {
    __int128 r = v % p;
    if (r < 0) r += p;
    return static_cast<std::uint32_t>(r);
}

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p) {
    // Extended Euclid; a != 0 mod p.
    std::int64_t t = 0, new_t = 1, r = p, new_r = a;
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::int64_t tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw FieldMismatch("element not invertible modulo " + std::to_string(p));
    if (t < 0) t += p;
    return static_cast<std::uint32_t>(t);
}

std::uint32_t mpz_mod_p(const mpz_class& z, std::uint32_t p) {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
    return static_cast<std::uint32_t>(r.get_ui());
}

bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

}  // namespace

std::uint32_t current_modulus() { return g_modulus; }

FieldScope::FieldScope(std::uint32_t modulus) : previous_(g_modulus) {
    if (modulus != 0 && !is_prime(modulus)) throw FieldMismatch("modulus is not prime: " + std::to_string(modulus));
    g_modulus = modulus;
}

FieldScope::~FieldScope() { g_modulus = previous_; }

std::uint32_t parse_field(const std::string& spec) {
    if (spec == "Q" || spec == "q" || spec == "QQ") return 0;
    static const std::regex re(R"(^(?:Fp[:(]?|F|GF\(?)(\d+)\)?$)");
    std::smatch m;
    if (!std::regex_match(spec, m, re)) throw ParseError("unrecognised field '" + spec + "' (use Q or Fp:p)");
    unsigned long long p = std::stoull(m[1].str());
    if (p > (1ULL << 31) || !is_prime(p)) throw ParseError("field modulus must be a prime <= 2^31: " + spec);
    return static_cast<std::uint32_t>(p);
}

std::string field_name(std::uint32_t modulus) {
    return modulus == 0 ? "Q" : "Fp:" + std::to_string(modulus);
}

Scalar::Scalar(long long v) : p_(current_modulus()) {
    if (p_ != 0) {
        n_ = mod_reduce(v, p_);
    } else if (v == std::numeric_limits<long long>::min()) {
        *this = make_big(mpq_class(mpz_class(std::to_string(v))));
    } else {
        n_ = v;
    }
}

Scalar Scalar::in_field(long long v, std::uint32_t p) {
    FieldScope scope(p);
    return Scalar(v);
}

Scalar Scalar::make_rational(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("division by zero");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    __int128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    Scalar s;
    s.p_ = 0;
    if (n >= kMin && n <= kMax && d <= kMax) {
        s.n_ = static_cast<std::int64_t>(n);
        s.d_ = static_cast<std::int64_t>(d);
        return s;
    }
    auto to_mpz = [](__int128 v) {
        bool neg = v < 0;
        unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
        mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
        mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
        mpz_class r = (hi << 64) + lo;
        return neg ? mpz_class(-r) : r;
    };
    return make_big(mpq_class(to_mpz(n), to_mpz(d)));
}

Scalar Scalar::make_big(mpq_class q) {
    q.canonicalize();
    Scalar s;
    s.p_ = 0;
    if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p()) {
        long nn = q.get_num().get_si();
        if (nn != std::numeric_limits<long>::min()) {
            s.n_ = nn;
            s.d_ = q.get_den().get_si();
            return s;
        }
    }
    s.big_ = std::make_shared<const mpq_class>(std::move(q));
    return s;
}

Scalar Scalar::from_mpq(const mpq_class& q) {
    std::uint32_t p = current_modulus();
    Scalar s = make_big(q);
    return p == 0 ? s : s.to_field(p);
}

Scalar Scalar::parse(const std::string& text) {
    static const std::regex re(R"(^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$)");
    std::smatch m;
    if (!std::regex_match(text, m, re)) throw ParseError("bad scalar literal '" + text + "'");
    mpq_class q(mpz_class(m[1].str()), m[2].matched ? mpz_class(m[2].str()) : mpz_class(1));
    if (q.get_den() == 0) throw ParseError("zero denominator in '" + text + "'");
    return from_mpq(q);
}

mpq_class Scalar::to_mpq() const {
    if (big_) return *big_;
    return mpq_class(mpz_class(static_cast<long>(n_)), mpz_class(static_cast<long>(d_)));
}

bool Scalar::is_zero() const { return !big_ && n_ == 0; }

bool Scalar::is_one() const { return !big_ && n_ == 1 && d_ == 1; }

std::string Scalar::str() const {
    if (big_) return big_->get_str();
    if (d_ == 1) return std::to_string(n_);
    return std::to_string(n_) + "/" + std::to_string(d_);
}

Scalar Scalar::to_field(std::uint32_t p) const {
    if (p == p_) return *this;
    if (p_ != 0) throw FieldMismatch("cannot mix " + field_name(p_) + " and " + field_name(p));
    std::uint32_t num, den;
    if (big_) {
        num = mpz_mod_p(big_->get_num(), p);
        den = mpz_mod_p(big_->get_den(), p);
    } else {
        num = mod_reduce(n_, p);
        den = mod_reduce(d_, p);
    }
    if (den == 0) throw FieldMismatch("denominator divisible by " + std::to_string(p));
    Scalar s;
    s.p_ = p;
    s.n_ = static_cast<std::int64_t>((static_cast<std::uint64_t>(num) * mod_inverse(den, p)) % p);
    s.d_ = 1;
    return s;
}

std::uint32_t Scalar::common_field(const Scalar& a, const Scalar& b) {
    if (a.p_ == b.p_) return a.p_;
    if (a.p_ == 0) return b.p_;
    if (b.p_ == 0) return a.p_;
    throw FieldMismatch("cannot mix " + field_name(a.p_) + " and " + field_name(b.p_));
}

Scalar Scalar::operator+(const Scalar& o) const {
    std::uint32_t p = common_field(*this, o);
    if (p != 0) {
        Scalar a = to_field(p), b = o.to_field(p);
        Scalar s;
        s.p_ = p;
        s.n_ = (a.n_ + b.n_) % p;
        return s;
    }
    if (!big_ && !o.big_) {
        if (d_ == 1 && o.d_ == 1) return make_rational(static_cast<__int128>(n_) + o.n_, 1);
        return make_rational(static_cast<__int128>(n_) * o.d_ + static_cast<__int128>(o.n_) * d_,
                             static_cast<__int128>(d_) * o.d_);
    }
    return make_big(to_mpq() + o.to_mpq());
}

Scalar Scalar::operator-() const {
    if (p_ != 0) {
        Scalar s = *this;
        s.n_ = (p_ - n_) % p_;
        return s;
    }
    if (big_) return make_big(-*big_);
    Scalar s = *this;
    s.n_ = -n_;
    return s;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
    std::uint32_t p = common_field(*this, o);
    if (p != 0) {
        Scalar a = to_field(p), b = o.to_field(p);
        Scalar s;
        s.p_ = p;
        s.n_ = static_cast<std::int64_t>((static_cast<std::uint64_t>(a.n_) * static_cast<std::uint64_t>(b.n_)) % p);
        return s;
    }
    if (!big_ && !o.big_) {
        if (n_ == 0 || o.n_ == 0) return make_rational(0, 1);
        return make_rational(static_cast<__int128>(n_) * o.n_, static_cast<__int128>(d_) * o.d_);
    }
    return make_big(to_mpq() * o.to_mpq());
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    if (p_ != 0) {
        Scalar s = *this;
        s.n_ = mod_inverse(static_cast<std::uint32_t>(n_), p_);
        return s;
    }
    if (big_) return make_big(1 / *big_);
    return make_rational(d_, n_);
}

Scalar Scalar::operator/(const Scalar& o) const {
    std::uint32_t p = common_field(*this, o);
    if (p != 0) return to_field(p) * o.to_field(p).inverse();
    return *this * o.inverse();
}

bool Scalar::operator==(const Scalar& o) const {
    std::uint32_t p = common_field(*this, o);
    if (p != 0) return to_field(p).n_ == o.to_field(p).n_;
    if (!big_ && !o.big_) return n_ == o.n_ && d_ == o.d_;
    return to_mpq() == o.to_mpq();
}

}  // namespace dext
