#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "pbpois/algebra/monomial.hpp"
#include "pbpois/algebra/polynomial.hpp"
#include "pbpois/algebra/scalar.hpp"

namespace pbpois {

// Bit k set means the direction d/dx_k is present. Index sets are always
// stored sorted, so a set doubles as a canonical wedge monomial.
using DirectionSet = std::uint32_t;

int direction_count(DirectionSet s);
std::vector<int> direction_indices(DirectionSet s);
DirectionSet make_direction_set(std::span<const int> indices);

// Sign of d_S ^ d_T relative to d_{S u T}; 0 when S and T intersect.
int wedge_sign(DirectionSet s, DirectionSet t);

struct TermKey {
    DirectionSet dirs = 0;
    Monomial mono;

    friend bool operator==(const TermKey&, const TermKey&) = default;
};

// Directions lexicographic on sorted index tuples, then monomials in
// descending graded-lex order.
struct TermKeyLess {
    bool operator()(const TermKey& a, const TermKey& b) const;
};

// Polynomial p-vector field sum c * x^mono * d_{i1} ^ ... ^ d_{ip}.
// Grade-0 multivectors are plain polynomials.
class MultiVector {
public:
    using Terms = std::map<TermKey, Scalar, TermKeyLess>;

    MultiVector() = default;
    MultiVector(int nvars, int grade);

    static MultiVector from_polynomial(const Polynomial& f);
    // d/dx_k.
    static MultiVector basis_vector(int nvars, int k);
    // c * x^mono * d_{dirs[0]} ^ d_{dirs[1]} ^ ...; dirs may be unsorted, the
    // permutation sign is applied and repeated directions give zero.
    static MultiVector term(int nvars, std::span<const int> dirs, const Monomial& mono, const Scalar& c);
    // Sum over directions of `components[k] * d/dx_k`.
    static MultiVector vector_field(std::span<const Polynomial> components);
    // Radial (Euler) field sum x_k d/dx_k.
    static MultiVector radial(int nvars);

    int nvars() const { return nvars_; }
    int grade() const { return grade_; }
    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    // Highest coefficient degree; -1 for zero.
    int degree() const;
    bool is_homogeneous(int degree) const;

    void add_term(DirectionSet dirs, const Monomial& mono, const Scalar& c);
    Scalar coefficient(DirectionSet dirs, const Monomial& mono) const;
    // Coefficient polynomial of d_dirs.
    Polynomial component(DirectionSet dirs) const;
    std::vector<DirectionSet> direction_sets() const;
    // Grade 0 only.
    Polynomial as_polynomial() const;

    bool involves_variable(int k) const;
    bool involves_direction(int k) const;

    MultiVector& operator+=(const MultiVector& o);
    MultiVector& operator-=(const MultiVector& o);
    MultiVector& operator*=(const Scalar& c);
    MultiVector operator-() const;
    friend MultiVector operator+(MultiVector a, const MultiVector& b) { return a += b; }
    friend MultiVector operator-(MultiVector a, const MultiVector& b) { return a -= b; }
    friend MultiVector operator*(MultiVector a, const Scalar& c) { return a *= c; }
    friend MultiVector operator*(const Scalar& c, MultiVector a) { return a *= c; }
    friend MultiVector operator*(const Polynomial& f, const MultiVector& a);
    friend bool operator==(const MultiVector& a, const MultiVector& b) {
        return a.nvars_ == b.nvars_ && a.grade_ == b.grade_ && a.terms_ == b.terms_;
    }

    // Coefficient-wise d/dx_k.
    MultiVector partial(int k) const;
    MultiVector homogeneous_part(int degree) const;
    MultiVector truncated(int max_degree) const;
    // Same terms, relabelled as grade g; only meaningful for the zero field.
    MultiVector with_grade(int g) const;

    // Pushes the field through a change of variables: x_k is replaced by
    // coordinate_images[k] and d/dx_k by direction_images[k] (a vector field
    // in the target variables).
    MultiVector substitute(std::span<const Polynomial> coordinate_images,
                           std::span<const MultiVector> direction_images) const;
    // Moves variable and direction k to index map[k]; map[k] == -1 requires
    // both to be absent.
    MultiVector remap(int new_nvars, std::span<const int> map) const;

private:
    int nvars_ = 0;
    int grade_ = 0;
    Terms terms_;
};

MultiVector wedge(const MultiVector& a, const MultiVector& b);
// a^s for s >= 1.
MultiVector wedge_power(const MultiVector& a, int s);

// Schouten-Nijenhuis bracket. For A = a d_I and B = b d_J:
//   [A,B] = sum_k  dA/d(d_k) ^ dB/dx_k  -  (-1)^{(p-1)(q-1)} dB/d(d_k) ^ dA/dx_k
// with right derivatives in the odd variables d_k. This gives [d_k, f] = df/dx_k,
// the Lie bracket for p = q = 1 and both graded Leibniz rules.
MultiVector schouten(const MultiVector& a, const MultiVector& b);

MultiVector partial_multivector(const MultiVector& a, int k);

// <df, Pi> = sum a_ij (df/dx_i d_j - df/dx_j d_i) for Pi = sum_{i<j} a_ij d_i ^ d_j.
MultiVector contract(const MultiVector& pi, const Polynomial& f);

// 2r where r is the largest s with Pi^s != 0.
int generic_rank(const MultiVector& pi);

// [Pi, Pi].
MultiVector integrability_residual(const MultiVector& pi);
bool is_poisson(const MultiVector& pi);

}  // namespace pbpois
