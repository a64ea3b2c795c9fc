#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pbpois/algebra/matrix.hpp"
#include "pbpois/eigen_data.hpp"
#include "pbpois/errors.hpp"
#include "pbpois/multivector.hpp"
#include "pbpois/poincare.hpp"
#include "pbpois/projective.hpp"

namespace pbpois {

// Exact matrix of a linear map between section spaces in their canonical
// bases (column j = image of basis element j).
struct LinearOperator {
    SectionSpacePtr source;
    SectionSpacePtr target;
    ExactMatrix matrix;

    ExactVector apply(const ExactVector& coords) const { return matrix.multiply(coords); }
};

// xi -> [Pi, xi] from H0(Lambda^2) to H0(Lambda^3).
LinearOperator bracket_operator(const GlobalSection& pi);
// xi -> Pi ^ xi from H0(Lambda^2) to H0(Lambda^4); zero target on P^3.
LinearOperator wedge_operator(const GlobalSection& pi);

class NotPoissonError : public HypothesisError {
public:
    explicit NotPoissonError(MultiVector residual);
    const MultiVector& residual() const { return residual_; }

private:
    MultiVector residual_;
};

enum class TangentKind { poisson, foliation };
const char* to_string(TangentKind k);

struct TangentSpaceResult {
    SectionSpacePtr ambient;
    TangentKind kind = TangentKind::poisson;
    int dimension = 0;
    std::vector<GlobalSection> basis;
    // Canonical coordinates of each basis element.
    std::vector<ExactVector> coordinates;
};

// Both reject a non-Poisson input with NotPoissonError.
TangentSpaceResult tangent_pois(const GlobalSection& pi);
TangentSpaceResult tangent_fol(const GlobalSection& pi);

// True iff every element of `sub` lies in the span of `super`.
bool tangent_contains(const TangentSpaceResult& super, const TangentSpaceResult& sub);

// xi = alpha[0] + x_f alpha[1] + x_f^2 alpha[2] + x_f^3 alpha[3] + d_f ^ beta
// with alpha[k] free of x_f and d_f and beta free of d_f.
struct ChartDecomposition {
    int fiber = 0;
    std::vector<MultiVector> alpha;
    MultiVector beta;

    MultiVector alpha_total() const;
    MultiVector reassemble() const;
};

// `xi` is an affine bivector; MalformedSectionError when the d_f-free part
// has x_f-degree above 3.
ChartDecomposition decompose_chart(const MultiVector& xi, int fiber);
// Restricts to the chart X_0 = 1 and splits along the last affine variable.
ChartDecomposition decompose_chart(const GlobalSection& xi);

struct Lemma21Check {
    bool eq1 = false;                         // d(alpha)/dx_f ^ Y = 0
    bool eq2 = false;                         // [Y, alpha] - d(beta)/dx_f ^ Y = 0
    bool alpha_wedge[3] = {false, false, false};  // alpha_i ^ Y = 0, i = 1..3
    bool alpha0_bracket = false;              // [alpha_0, Y] ^ Y = 0
    bool alpha0_wedge = false;                // alpha_0 ^ Y = 0
    bool foliation = false;                   // xi ^ Pi = 0

    // Consequences that hold for every tangent vector of T_Pi Pois.
    bool passed() const;
    // xi ^ Pi = 0 exactly when alpha_0 ^ Y = 0 (given the alpha_i, i >= 1).
    bool foliation_consistent() const { return foliation == alpha0_wedge; }
};

// Y: affine vector field free of x_f and d_f in the same variables as dec.
Lemma21Check verify_lemma21(const ChartDecomposition& dec, const MultiVector& y);

struct ChecklistItem {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct VerifyOptions {
    int linearization_order = 4;
    bool lemma_checks = true;
    // Negative-control hook, called on the kernel bases before containment.
    std::function<void(std::vector<ExactVector>& pois, std::vector<ExactVector>& fol)> tamper;
};

struct DeformationReport {
    std::uint64_t seed = 0;
    int n = 0;
    EigenData lambda;
    int order_bound = 0;

    std::string verdict;
    bool in_scope = true;
    std::vector<std::string> notes;
    std::vector<std::string> warnings;

    MultiVector y;
    MultiVector pi;
    int dim_pois = 0;
    int dim_fol = 0;
    bool fol_in_pois = false;
    bool pois_in_fol = false;
    std::vector<MultiVector> basis_pois;
    std::vector<MultiVector> basis_fol;
    std::vector<Lemma21Check> lemma;
    std::optional<MultiVector> offending;

    ResonanceCertificate certificate;
    std::vector<ChecklistItem> checklist;
    int expected_dimension = 0;

    std::map<std::string, double> timing_ms;

    bool lemma_passed() const;
};

// Pull-back instance Pi = d/dX_n ^ Y with Y = random_quadratic_field(n-1, seed,
// lambda). Verdicts: "theorem-verified", "counterexample-candidate" and, for
// n = 3, "degenerate-coincidence".
DeformationReport verify_pullback_theorem(int n, std::uint64_t seed, const EigenData& lambda, int order_bound,
                                          const VerifyOptions& options = {});

// The affine chart of Y (X_0 = 1) lifted into the n affine variables of P^n.
MultiVector pullback_chart_field(const GlobalSection& y);

}  // namespace pbpois
