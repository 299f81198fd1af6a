#pragma once
// Exact field elements: rationals (modulus 0) or residues modulo a prime p.
//
// Rationals use an int64 numerator/denominator fast path and fall back to
// GMP's mpq_class when an intermediate result no longer fits. The ground
// field of newly created scalars is taken from a thread-local session
// setting (FieldScope), so a whole computation can be re-run over F_p.

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>

namespace dext {

// Modulus of the current thread's session field (0 = Q).
std::uint32_t current_modulus();

// RAII guard selecting the session field; restores the previous one.
class FieldScope {
public:
    explicit FieldScope(std::uint32_t modulus);
    ~FieldScope();
    FieldScope(const FieldScope&) = delete;
    FieldScope& operator=(const FieldScope&) = delete;

private:
    std::uint32_t previous_;
};

// Parses "Q", "Fp:7", "Fp(7)", "F7"; returns the modulus (0 for Q).
std::uint32_t parse_field(const std::string& spec);
std::string field_name(std::uint32_t modulus);

class Scalar {
public:
    Scalar() : p_(current_modulus()) {}
    Scalar(int v) : Scalar(static_cast<long long>(v)) {}
    Scalar(long long v);
    // Value v interpreted in F_p (p > 0) or Q (p == 0), ignoring the session.
    static Scalar in_field(long long v, std::uint32_t p);
    static Scalar from_mpq(const mpq_class& q);
    // "a", "-a", "a/b" (decimal integers).
    static Scalar parse(const std::string& text);

    std::uint32_t modulus() const { return p_; }
    bool is_zero() const;
    bool is_one() const;
    mpq_class to_mpq() const;
    std::string str() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }
    Scalar inverse() const;
    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

private:
    std::int64_t n_ = 0;
    std::int64_t d_ = 1;                     // > 0, gcd(n_, d_) = 1
    std::shared_ptr<const mpq_class> big_;   // set when the value left int64
    std::uint32_t p_ = 0;

    static Scalar make_rational(__int128 n, __int128 d);
    static Scalar make_big(mpq_class q);
    static std::uint32_t common_field(const Scalar& a, const Scalar& b);
    Scalar to_field(std::uint32_t p) const;
};

}  // namespace dext
