#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "generators.hpp"
#include "pbpois/deformation.hpp"

using namespace pbpois;
using pbpois::testing::Gen;

namespace {

GlobalSection pullback(int n, std::uint64_t seed, const char* lambda) {
    return pullback_bivector(random_quadratic_field(n - 1, seed, EigenData::parse(lambda)));
}

// Cached n = 4 instance; the tangent computations dominate the suite.
struct Instance {
    GlobalSection y;
    GlobalSection pi;
    TangentSpaceResult pois;
    TangentSpaceResult fol;
};

const Instance& n4() {
    static const Instance inst = [] {
        GlobalSection y = random_quadratic_field(3, 7, EigenData::parse("2,5,23"));
        GlobalSection pi = pullback_bivector(y);
        return Instance{y, pi, tangent_pois(pi), tangent_fol(pi)};
    }();
    return inst;
}

}  // namespace

TEST(Operators, ZeroBivectorGivesZeroOperator) {
    GlobalSection zero(section_space(3, 2, 0), MultiVector(4, 2));
    LinearOperator op = bracket_operator(zero);
    EXPECT_EQ(op.matrix.nonzeros(), 0u);
    EXPECT_EQ(op.matrix.cols(), section_space(3, 2, 0)->dimension());
    EXPECT_EQ(op.matrix.rows(), section_space(3, 3, 0)->dimension());
}

TEST(Operators, BracketKillsPoissonInput) {
    GlobalSection pi = pullback(3, 1, "2,5");
    LinearOperator op = bracket_operator(pi);
    EXPECT_TRUE(is_zero(op.apply(pi.coordinates())));
}

TEST(Operators, WedgeVanishesOnP3) {
    GlobalSection pi = pullback(3, 2, "2,5");
    LinearOperator op = wedge_operator(pi);
    EXPECT_EQ(op.matrix.rows(), 0);
    EXPECT_EQ(op.target->dimension(), 0);
}

TEST(Operators, WedgeWithItselfVanishesForRankTwo) {
    GlobalSection pi = pullback(4, 3, "2,5,23");
    EXPECT_TRUE(is_zero(wedge_operator(pi).apply(pi.coordinates())));
}

TEST(Operators, ColumnsAgreeWithDirectComputation) {
    Gen g(301);
    GlobalSection pi = pullback(3, 4, "2,5");
    LinearOperator op = bracket_operator(pi);
    auto s = pi.space();
    for (int t = 0; t < 20; ++t) {
        MultiVector xi = g.homogeneous_multivector(4, 2, 2, 4);
        EXPECT_EQ(op.apply(s->coordinates(xi)), op.target->coordinates(schouten(pi.representative(), xi)));
    }
}

TEST(Tangent, ContainsPi) {
    const Instance& i = n4();
    std::vector<ExactVector> pi{i.pi.coordinates()};
    EXPECT_TRUE(span_contains(i.pois.coordinates, pi, i.pi.space()->dimension()));
    EXPECT_TRUE(span_contains(i.fol.coordinates, pi, i.pi.space()->dimension()));
}

TEST(Tangent, EqualSubspacesForNFour) {
    const Instance& i = n4();
    EXPECT_EQ(i.pois.dimension, 40);
    EXPECT_EQ(i.fol.dimension, i.pois.dimension);
    EXPECT_TRUE(tangent_contains(i.pois, i.fol));
    EXPECT_TRUE(tangent_contains(i.fol, i.pois));
    for (const auto& b : i.pois.basis) {
        EXPECT_TRUE(section_space(4, 3, 0)->canonical(schouten(i.pi.representative(), b.representative())).is_zero());
    }
}

TEST(Tangent, DegenerateCoincidenceForNThree) {
    GlobalSection pi = pullback(3, 5, "2,5");
    auto p = tangent_pois(pi), f = tangent_fol(pi);
    EXPECT_EQ(p.dimension, f.dimension);
    EXPECT_TRUE(tangent_contains(p, f));
    EXPECT_TRUE(tangent_contains(f, p));
}

TEST(Tangent, NonPoissonRejected) {
    auto s = section_space(3, 2, 0);
    std::vector<int> d12{1, 2}, d23{2, 3};
    MultiVector bad = MultiVector::term(4, d12, Monomial::variable(4, 1) * Monomial::variable(4, 3), Scalar(1)) +
                      MultiVector::term(4, d23, Monomial::variable(4, 2) * Monomial::variable(4, 2), Scalar(1));
    GlobalSection pi(s, bad);
    ASSERT_FALSE(section_space(3, 3, 0)->canonical(schouten(bad, bad)).is_zero());
    try {
        tangent_pois(pi);
        FAIL() << "expected NotPoissonError";
    } catch (const NotPoissonError& e) {
        EXPECT_FALSE(e.residual().is_zero());
    }
    EXPECT_THROW(tangent_fol(pi), NotPoissonError);
}

TEST(Tangent, SubspaceStableUnderColumnPermutation) {
    GlobalSection pi = pullback(3, 6, "2,5");
    LinearOperator op = bracket_operator(pi);
    const int c = op.matrix.cols();
    std::vector<int> order(static_cast<std::size_t>(c));
    std::iota(order.begin(), order.end(), 0);
    std::reverse(order.begin(), order.end());
    auto permuted = kernel_basis(op.matrix.permuted_columns(order));
    // Undo the permutation: permuted column k is original column order[k].
    std::vector<ExactVector> back;
    for (const auto& v : permuted) {
        ExactVector w(static_cast<std::size_t>(c));
        for (int k = 0; k < c; ++k) w[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = v[static_cast<std::size_t>(k)];
        back.push_back(w);
    }
    auto direct = tangent_pois(pi);
    EXPECT_EQ(static_cast<int>(back.size()), direct.dimension);
    EXPECT_TRUE(span_contains(direct.coordinates, back, c));
    EXPECT_TRUE(span_contains(back, direct.coordinates, c));
}

TEST(ChartDecomp, PiHasNoAlphaPart) {
    const Instance& i = n4();
    ChartDecomposition d = decompose_chart(i.pi);
    EXPECT_EQ(d.fiber, 3);
    for (const auto& a : d.alpha) EXPECT_TRUE(a.is_zero());
    EXPECT_EQ(d.beta, pullback_chart_field(i.y));
    Lemma21Check c = verify_lemma21(d, pullback_chart_field(i.y));
    EXPECT_TRUE(c.passed());
    EXPECT_TRUE(c.foliation_consistent());
}

TEST(ChartDecomp, FiberSquareExample) {
    const int m = 4;
    std::vector<int> d12{0, 1};
    MultiVector xi = MultiVector::term(m, d12, Monomial::variable(m, 3, 2), Scalar(1));
    ChartDecomposition d = decompose_chart(xi, 3);
    EXPECT_TRUE(d.alpha[0].is_zero());
    EXPECT_TRUE(d.alpha[1].is_zero());
    EXPECT_EQ(d.alpha[2], MultiVector::term(m, d12, Monomial(m), Scalar(1)));
    EXPECT_TRUE(d.alpha[3].is_zero());
    EXPECT_TRUE(d.beta.is_zero());
}

TEST(ChartDecomp, OverflowRejected) {
    const int m = 4;
    std::vector<int> d12{0, 1};
    MultiVector xi = MultiVector::term(m, d12, Monomial::variable(m, 3, 4), Scalar(1));
    EXPECT_THROW(decompose_chart(xi, 3), MalformedSectionError);
    EXPECT_THROW(decompose_chart(xi, 4), StructuralError);
}

TEST(ChartDecompProperty, Reassembles) {
    Gen g(302);
    for (int t = 0; t < 100; ++t) {
        const int m = g.integer(2, 4);
        const int fiber = g.integer(0, m - 1);
        MultiVector xi = g.multivector(m, 2, 3, 6);
        ChartDecomposition d = decompose_chart(xi, fiber);
        EXPECT_EQ(d.reassemble(), xi);
        for (const auto& a : d.alpha) {
            EXPECT_FALSE(a.involves_variable(fiber));
            EXPECT_FALSE(a.involves_direction(fiber));
        }
        EXPECT_FALSE(d.beta.involves_direction(fiber));
    }
}

TEST(Lemma, HoldsOnEveryTangentVector) {
    const Instance& i = n4();
    MultiVector y = pullback_chart_field(i.y);
    for (const auto& b : i.pois.basis) {
        Lemma21Check c = verify_lemma21(decompose_chart(b), y);
        EXPECT_TRUE(c.passed());
        EXPECT_TRUE(c.foliation_consistent());
        EXPECT_TRUE(c.foliation);
    }
}

TEST(Lemma, PerturbedKernelElementFails) {
    const Instance& i = n4();
    MultiVector y = pullback_chart_field(i.y);
    std::vector<int> d12{0, 1};
    MultiVector bump = MultiVector::term(4, d12, Monomial::variable(4, 3), Scalar(1));
    MultiVector xi = chart_restrict(i.pois.basis.front()) + bump;
    ASSERT_FALSE(schouten(chart_restrict(i.pi), xi).is_zero());
    Lemma21Check c = verify_lemma21(decompose_chart(xi, 3), y);
    EXPECT_FALSE(c.eq1 && c.eq2);
    EXPECT_FALSE(c.passed());
}

TEST(Verify, NFourTheoremVerified) {
    DeformationReport r = verify_pullback_theorem(4, 11, EigenData::parse("2,5,23"), 4);
    EXPECT_EQ(r.verdict, "theorem-verified");
    EXPECT_TRUE(r.in_scope);
    EXPECT_EQ(r.dim_pois, r.dim_fol);
    EXPECT_TRUE(r.fol_in_pois);
    EXPECT_TRUE(r.pois_in_fol);
    EXPECT_TRUE(r.lemma_passed());
    EXPECT_EQ(r.lemma.size(), static_cast<std::size_t>(r.dim_pois));
    EXPECT_EQ(r.expected_dimension, 40);
    EXPECT_FALSE(r.offending.has_value());
    for (const auto& item : r.checklist) EXPECT_TRUE(item.passed) << item.name << ": " << item.detail;
}

TEST(Verify, NThreeFlagged) {
    DeformationReport r = verify_pullback_theorem(3, 1, EigenData::parse("2,5"), 4);
    EXPECT_EQ(r.verdict, "degenerate-coincidence");
    EXPECT_FALSE(r.in_scope);
    ASSERT_FALSE(r.notes.empty());
    EXPECT_NE(r.notes.front().find("n<4 outside theorem scope"), std::string::npos);
}

TEST(Verify, TamperedRunIsCounterexampleCandidate) {
    VerifyOptions opts;
    opts.lemma_checks = false;
    opts.tamper = [](std::vector<ExactVector>& pois, std::vector<ExactVector>& fol) {
        (void)pois;
        ExactVector extra(fol.front().size());
        // First unit vector outside the span.
        for (std::size_t k = 0; k < extra.size(); ++k) {
            ExactVector e(extra.size());
            e[k] = Scalar(1);
            if (!span_contains(fol, std::span<const ExactVector>(&e, 1), static_cast<int>(e.size()))) {
                fol.push_back(e);
                return;
            }
        }
    };
    DeformationReport r = verify_pullback_theorem(4, 12, EigenData::parse("2,5,23"), 4, opts);
    EXPECT_EQ(r.verdict, "counterexample-candidate");
    EXPECT_FALSE(r.fol_in_pois);
    EXPECT_TRUE(r.offending.has_value());
}

TEST(Verify, PreconditionErrors) {
    EXPECT_THROW(verify_pullback_theorem(2, 1, EigenData::parse("2"), 4), PreconditionError);
    EXPECT_THROW(verify_pullback_theorem(4, 1, EigenData::parse("2,5,11,23"), 4), PreconditionError);
    EXPECT_THROW(verify_pullback_theorem(4, 1, EigenData::parse("1,-1,3"), 4), PreconditionError);
    EXPECT_THROW(verify_pullback_theorem(4, 1, EigenData::parse("1,2,3"), 4), ResonanceError);
}

TEST(Verify, DeterministicPerSeed) {
    DeformationReport a = verify_pullback_theorem(3, 9, EigenData::parse("2,5"), 4);
    DeformationReport b = verify_pullback_theorem(3, 9, EigenData::parse("2,5"), 4);
    EXPECT_EQ(a.basis_pois, b.basis_pois);
    EXPECT_EQ(a.pi, b.pi);
}
