#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

namespace pbpois {

// Exact Gaussian rational a + b*i with a, b in Q. A plain rational is the
// special case b = 0. Both parts are kept in canonical GMP form (reduced,
// positive denominator).
class Scalar {
public:
    Scalar() = default;
    Scalar(long value) : re_(value) {}  // NOLINT(google-explicit-constructor)
    Scalar(long num, long den);
    explicit Scalar(mpq_class re, mpq_class im = 0);

    static Scalar imaginary_unit() { return Scalar(mpq_class(0), mpq_class(1)); }

    // Accepts the output of to_string(): "3/4", "-2", "1/2+5/3i", "-i", "7/2i".
    static Scalar parse(std::string_view text);

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const { return im_ == 0 && re_ == 1; }
    bool is_real() const { return sgn(im_) == 0; }
    bool is_integral() const;

    Scalar conj() const { return Scalar(re_, -im_); }
    // |z|^2, always rational.
    mpq_class norm() const { return re_ * re_ + im_ * im_; }

    Scalar operator-() const { return Scalar(-re_, -im_); }
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    // Throws std::domain_error on division by zero.
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    friend bool operator==(const Scalar& a, const Scalar& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

    // Lexicographic on (re, im); only used for deterministic tie-breaking.
    friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);

    std::string to_string() const;

    // Least common multiple of the denominators of both parts.
    mpz_class denominator_lcm() const;

private:
    mpq_class re_{0};
    mpq_class im_{0};
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace pbpois
