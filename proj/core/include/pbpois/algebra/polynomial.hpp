#pragma once

#include <functional>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "pbpois/algebra/monomial.hpp"
#include "pbpois/algebra/scalar.hpp"

namespace pbpois {

// Sparse multivariate polynomial with exact coefficients. Terms are kept in
// descending graded-lex order and never hold a zero coefficient.
class Polynomial {
public:
    using Terms = std::map<Monomial, Scalar, std::greater<>>;

    explicit Polynomial(int nvars = 0) : nvars_(nvars) {}

    static Polynomial constant(int nvars, const Scalar& c);
    static Polynomial variable(int nvars, int k);
    static Polynomial term(const Monomial& m, const Scalar& c);

    int nvars() const { return nvars_; }
    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    // -1 for the zero polynomial.
    int degree() const;
    bool is_homogeneous(int degree) const;
    Scalar coefficient(const Monomial& m) const;

    // Accumulates c*m, dropping the term if it cancels.
    void add_term(const Monomial& m, const Scalar& c);

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Scalar& c);
    Polynomial operator-() const;

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const Scalar& c) { return a *= c; }
    friend Polynomial operator*(const Scalar& c, Polynomial a) { return a *= c; }
    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    Polynomial partial(int k) const;
    Polynomial homogeneous_part(int degree) const;
    Polynomial truncated(int max_degree) const;
    Polynomial pow(int e) const;

    // Replaces x_k by images[k]; all images share one variable count. Terms of
    // degree above `max_degree` are discarded when max_degree >= 0.
    Polynomial substitute(std::span<const Polynomial> images, int max_degree = -1) const;

    // Moves variable k to index map[k] in a ring with new_nvars variables;
    // map[k] == -1 requires x_k to be absent.
    Polynomial remap_variables(int new_nvars, std::span<const int> map) const;

    // Sets x_k to the given value (the variable stays in the ring).
    Polynomial specialize(int k, const Scalar& value) const;

private:
    int nvars_;
    Terms terms_;
};

// Sums equal monomials, drops zeros. All monomials must share a variable count.
Polynomial poly_normalize(int nvars, std::span<const std::pair<Monomial, Scalar>> terms);
Polynomial poly_multiply(const Polynomial& p, const Polynomial& q);
Polynomial poly_partial(const Polynomial& p, int k);

}  // namespace pbpois
