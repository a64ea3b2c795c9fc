#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "pbpois/algebra/matrix.hpp"
#include "pbpois/eigen_data.hpp"
#include "pbpois/multivector.hpp"

namespace pbpois {

// Finite model of H^0(P^n, Lambda^p T P^n (twist)): p-vector fields in the
// n+1 homogeneous variables X_0..X_n with coefficients of degree p + twist,
// modulo the radial ideal R ^ {(p-1)-vectors of coefficient degree p-1+twist}.
//
// Ambient coordinates are indexed by every (direction set, monomial) pair in
// TermKeyLess order. The ideal is kept in reduced row echelon form with pivots
// taken at the earliest keys; the remaining keys form the canonical basis.
class SectionSpace {
public:
    // twist 0 accepts 1 <= p <= n+1 (p = n+1 is the zero space); twist 1
    // accepts p = 1 only.
    static std::shared_ptr<const SectionSpace> create(int n, int p, int twist);

    int n() const { return n_; }
    int grade() const { return p_; }
    int twist() const { return twist_; }
    int nvars() const { return n_ + 1; }
    int coefficient_degree() const { return p_ + twist_; }
    int dimension() const { return static_cast<int>(basis_cols_.size()); }
    int ambient_dimension() const { return static_cast<int>(keys_.size()); }
    int ideal_rank() const { return ideal_.rank(); }

    const std::vector<TermKey>& ambient_keys() const { return keys_; }
    MultiVector basis_element(int i) const;

    // Raises StructuralError when the grade or coefficient degree is wrong.
    ExactVector ambient_coordinates(const MultiVector& a) const;
    MultiVector from_ambient(const ExactVector& v) const;

    MultiVector canonical(const MultiVector& a) const;
    // Coordinates of the coset in the canonical basis.
    ExactVector coordinates(const MultiVector& a) const;
    MultiVector from_coordinates(const ExactVector& coords) const;
    bool in_ideal(const MultiVector& a) const;

    // One generator R ^ t for every monomial (p-1)-vector t.
    std::vector<MultiVector> ideal_generators() const;

private:
    SectionSpace(int n, int p, int twist);

    int n_;
    int p_;
    int twist_;
    std::vector<TermKey> keys_;
    std::map<TermKey, int, TermKeyLess> index_;
    Echelon ideal_;
    std::vector<int> basis_cols_;
};

using SectionSpacePtr = std::shared_ptr<const SectionSpace>;

SectionSpacePtr section_space(int n, int p, int twist);

// A coset in a SectionSpace, held by its canonical representative.
class GlobalSection {
public:
    GlobalSection(SectionSpacePtr space, MultiVector representative);

    const SectionSpacePtr& space() const { return space_; }
    const MultiVector& representative() const { return rep_; }
    ExactVector coordinates() const { return space_->coordinates(rep_); }
    bool is_zero() const { return rep_.is_zero(); }

    friend bool operator==(const GlobalSection& a, const GlobalSection& b) {
        return a.space_ == b.space_ && a.rep_ == b.rep_;
    }

private:
    SectionSpacePtr space_;
    MultiVector rep_;
};

GlobalSection reduce_to_canonical(const SectionSpacePtr& space, const MultiVector& a);

// Restriction to the affine chart X_chart = 1: d/dX_chart becomes
// -sum x_i d/dx_i and the remaining variables keep their relative order.
MultiVector chart_restrict(const MultiVector& homogeneous, int chart = 0);
MultiVector chart_restrict(const GlobalSection& s, int chart = 0);

// Pi = d/dX_n ^ Y for Y a section of T P^{n-1}(1); throws
// DegenerateInputError for Y = 0.
GlobalSection pullback_bivector(const GlobalSection& y);

// Seeded quadratic vector field on P^{m}, m = n_minus_1. Coefficients are
// uniform integers in [-9, 9] drawn with SplitMix64(seed), component by
// component, monomials in descending graded-lex order. With a prescribed
// linear part, the restriction to the chart X_0 = 1 vanishes at the origin
// and has linear part diag(lambda) there.
GlobalSection random_quadratic_field(int n_minus_1, std::uint64_t seed,
                                     const std::optional<EigenData>& linear_part = std::nullopt);

// Linear part at the origin of an affine vector field, as a matrix
// (row i = component d/dx_i, column j = coefficient of x_j).
ExactMatrix linear_part_at_origin(const MultiVector& affine_field);

}  // namespace pbpois
