#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace pbpois {

inline constexpr int kMaxVariables = 16;

// Exponent vector over a fixed number of variables with cached total degree.
// Ordering is graded lexicographic: total degree first, then the exponent of
// x0, x1, ... (a larger exponent of an earlier variable is larger).
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(int nvars);
    Monomial(int nvars, std::span<const int> exponents);

    static Monomial variable(int nvars, int index, int power = 1);

    int nvars() const { return nvars_; }
    int degree() const { return degree_; }
    int exponent(int k) const { return exp_[static_cast<std::size_t>(k)]; }
    std::vector<int> exponents() const;

    bool is_one() const { return degree_ == 0; }

    Monomial operator*(const Monomial& o) const;
    // x^a / x_k, requires exponent(k) > 0.
    Monomial lowered(int k) const;
    Monomial raised(int k, int by = 1) const;
    // Same exponents with variable k removed (k must be absent) or inserted.
    Monomial with_exponent(int k, int e) const;

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.nvars_ == b.nvars_ && a.exp_ == b.exp_;
    }
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

private:
    std::array<std::uint8_t, kMaxVariables> exp_{};
    std::uint8_t nvars_ = 0;
    std::uint16_t degree_ = 0;
};

// All monomials of exact total degree `degree`, descending grlex.
std::vector<Monomial> monomials_of_degree(int nvars, int degree);

}  // namespace pbpois
