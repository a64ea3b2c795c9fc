#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pbpois/eigen_data.hpp"
#include "pbpois/errors.hpp"
#include "pbpois/multivector.hpp"

namespace pbpois {

// Outcome of a bounded resonance search. When resonant, `relation` is a
// nonzero integer vector a with <a, lambda> = 0. Certificates produced by a
// monomial scan also carry the offending monomial exponent vector and the
// direction indices (0-based) whose eigenvalue <lambda, I> - sum lambda_dir
// vanishes; in that case relation = I - sum e_dir.
struct ResonanceCertificate {
    int order_bound = 0;
    bool resonant = false;
    std::vector<int> relation;
    std::optional<std::vector<int>> monomial;
    std::vector<int> directions;

    // Re-evaluates the defining relation exactly.
    bool verify(const EigenData& lambda) const;
    std::string describe() const;
};

class ResonanceError : public PreconditionError {
public:
    explicit ResonanceError(ResonanceCertificate cert);
    const ResonanceCertificate& certificate() const { return cert_; }

private:
    ResonanceCertificate cert_;
};

// Exhaustive search over nonzero a in Z^m with sum |a_i| <= bound. Vectors are
// visited by increasing L1 norm, then lexicographically, first nonzero entry
// positive; the first relation found is the witness.
ResonanceCertificate nonresonant_up_to_order(const EigenData& lambda, int bound);

// Exact test that 0 lies outside the convex hull of the eigenvalues viewed as
// points (Re, Im) of the plane.
bool in_poincare_domain(const EigenData& lambda);

// Y = sum lambda_i y_i d/dy_i.
MultiVector diagonal_field(const EigenData& lambda);

// <lambda, I> - sum_{k in dirs} lambda_k.
Scalar delta_eigenvalue(const EigenData& lambda, const Monomial& mono, DirectionSet dirs);

// [Y, A] for Y = diagonal_field(lambda), evaluated on the monomial basis where
// it acts diagonally. Grades 1 and 2 only.
MultiVector delta_apply(const EigenData& lambda, const MultiVector& a);

// Monomial basis scan of grade g, degrees [min_degree, max_degree]: reports the
// first basis element outside the diagonal family (y_i d_i, resp.
// y_i y_j d_i ^ d_j) with zero eigenvalue.
ResonanceCertificate scan_resonances(const EigenData& lambda, int grade, int max_degree, int min_degree = 0);

// Kernel of delta on fields of degree <= d: the diagonal family. Raises
// ResonanceError when the truncated space holds any other kernel element.
std::vector<MultiVector> kernel_delta(const EigenData& lambda, int grade, int d);

// Per-degree dimension count for the splitting ker + im of delta.
struct DirectSumDegree {
    int degree = 0;
    int total = 0;
    int kernel = 0;
    int image = 0;
    int intersection = 0;
};
std::vector<DirectSumDegree> direct_sum_check(const EigenData& lambda, int grade, int d);

// Unique preimage under delta with no kernel component.
MultiVector solve_homological(const EigenData& lambda, const MultiVector& gamma, int grade);

// V of degree <= d with W = Y ^ V, free coordinates set to zero. Requires
// W ^ Y = 0.
MultiVector derham_divide(const MultiVector& y, const MultiVector& w, int d);

struct Prop33Decomposition {
    MultiVector z;
    // (i, j) with i < j, 0-based.
    std::map<std::pair<int, int>, Scalar> diagonal_coefficients;
    // Solve trace: [Y, alpha0] = Y ^ v and v = v1 + [Y, z].
    MultiVector v;
    MultiVector v1;
    MultiVector residual;

    MultiVector diagonal_part(int nvars) const;
};

// alpha0 = Y ^ Z + sum a_ij y_i y_j d_i ^ d_j for Y = diagonal_field(lambda).
Prop33Decomposition decompose_alpha0(const EigenData& lambda, const MultiVector& alpha0, int d);

struct LinearizationStep {
    int degree;
    MultiVector correction;
};

struct LinearizationResult {
    EigenData lambda;
    int order = 0;
    // u = forward(y): u_i = y_i + higher order terms.
    std::vector<Polynomial> forward;
    // y = inverse(u), truncated at `order`.
    std::vector<Polynomial> inverse;
    // Field in the new coordinates, truncated at `order`.
    MultiVector transformed;
    // Terms of degree <= order of D(forward) . Y - Lambda . forward.
    MultiVector residual;
    std::vector<LinearizationStep> steps;
};

// Degree-by-degree formal linearisation up to `order`. The linear part must be
// diagonal in the given coordinates.
LinearizationResult formal_linearize(const MultiVector& yloc, int order);

// Pushes a vector field through a polynomial map u = phi(y):
// component i of D(phi) . field, as polynomials in y.
std::vector<Polynomial> pushforward_components(const std::vector<Polynomial>& phi, const MultiVector& field, int max_degree);

}  // namespace pbpois
