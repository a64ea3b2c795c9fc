#include <gtest/gtest.h>

#include "generators.hpp"
#include "pbpois/expression.hpp"

using namespace pbpois;
using pbpois::testing::Gen;

namespace {

MultiVector aff(const char* s, int nvars = 4) { return parse_expression(s, ExpressionMode::affine, nvars); }

}  // namespace

TEST(Parse, ExampleBivector) {
    const int m = 4;
    std::vector<int> d{0, 1};
    MultiVector expected = MultiVector::term(m, d, Monomial::variable(m, 0) * Monomial::variable(m, 1), Scalar(1));
    EXPECT_EQ(aff("x1*x2*(e1^e2)"), expected);
    EXPECT_EQ(aff("x1*x2*e1^e2"), expected);
    EXPECT_EQ(aff("y1*y2*(e1^e2)"), expected);
    EXPECT_EQ(aff("-(e2^e1)*x2*x1"), expected);
}

TEST(Parse, Basics) {
    EXPECT_TRUE(aff("e1^e1").is_zero());
    EXPECT_EQ(aff("e1^e1").grade(), 2);
    EXPECT_EQ(aff("x1**3").as_polynomial(), Polynomial::variable(4, 0).pow(3));
    EXPECT_EQ(aff("3/4*i").as_polynomial(), Polynomial::constant(4, Scalar(mpq_class(0), mpq_class(3, 4))));
    EXPECT_EQ(aff("2 - 2"), MultiVector(4, 0));
    EXPECT_EQ(aff("(x1 + x2)*(x1 - x2)").as_polynomial(),
              Polynomial::variable(4, 0) * Polynomial::variable(4, 0) - Polynomial::variable(4, 1) * Polynomial::variable(4, 1));
    EXPECT_EQ(aff("0 + e1"), MultiVector::basis_vector(4, 0));
}

TEST(Parse, HomogeneousIndices) {
    MultiVector a = parse_expression("x0*e0", ExpressionMode::homogeneous, 3);
    std::vector<int> d{0};
    EXPECT_EQ(a, MultiVector::term(3, d, Monomial::variable(3, 0), Scalar(1)));
    EXPECT_THROW(parse_expression("x3", ExpressionMode::homogeneous, 3), ParseError);
    EXPECT_THROW(parse_expression("x0", ExpressionMode::affine, 3), ParseError);
}

TEST(Parse, ExpectedGradeLabelsZero) {
    EXPECT_EQ(parse_expression("0", ExpressionMode::affine, 3, 2).grade(), 2);
}

TEST(ParseErrors, GradeMismatch) {
    try {
        aff("x1*e1 + e1^e2");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 1);
        EXPECT_EQ(e.column(), 7);
        EXPECT_NE(std::string(e.what()).find("inconsistent grades"), std::string::npos);
    }
}

TEST(ParseErrors, PositionsAndExpectations) {
    try {
        aff("x1*(e1^");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 1);
        EXPECT_EQ(e.column(), 8);
        EXPECT_FALSE(e.expected().empty());
    }
    try {
        aff("x1 +\n  $");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2);
        EXPECT_EQ(e.column(), 3);
    }
    EXPECT_THROW(aff("e1*e2"), ParseError);
    EXPECT_THROW(aff("e1**2"), ParseError);
    EXPECT_THROW(aff("x1**x2"), ParseError);
    EXPECT_THROW(aff("x1**201"), ParseError);
    EXPECT_THROW(aff("1/0"), ParseError);
    EXPECT_THROW(aff("foo"), ParseError);
    EXPECT_THROW(aff("(x1"), ParseError);
    EXPECT_THROW(aff("x1 x2"), ParseError);
    EXPECT_THROW(aff("x5"), ParseError);
    EXPECT_THROW(aff(""), ParseError);
}

TEST(ParseErrors, Structural) {
    EXPECT_THROW(parse_mode("polar"), StructuralError);
    EXPECT_THROW(parse_expression("x1", ExpressionMode::affine, 10), StructuralError);
    EXPECT_THROW(parse_expression("x1", ExpressionMode::homogeneous, 0), StructuralError);
}

TEST(Format, Examples) {
    EXPECT_EQ(format_expression(MultiVector(3, 2), ExpressionMode::affine), "0");
    EXPECT_EQ(format_expression(aff("x1*x2*(e1^e2)"), ExpressionMode::affine), "x1*x2*e1^e2");
    EXPECT_EQ(format_expression(aff("3/4*x1**2*x2*e1^e2 - (1/2+i)*(e3^e4)"), ExpressionMode::affine),
              "3/4*x1**2*x2*e1^e2 - (1/2+i)*e3^e4");
    EXPECT_EQ(format_expression(parse_expression("x0*e0", ExpressionMode::homogeneous, 2), ExpressionMode::homogeneous), "x0*e0");
    EXPECT_EQ(format_scalar(Scalar::imaginary_unit()), "i");
    EXPECT_EQ(format_scalar(-Scalar::imaginary_unit()), "-i");
    EXPECT_EQ(format_scalar(Scalar(mpq_class(0), mpq_class(2, 3))), "2/3*i");
    EXPECT_EQ(format_scalar(Scalar(-5, 2)), "-5/2");
}

TEST(FormatProperty, RoundTrip) {
    Gen g(401);
    for (int t = 0; t < 200; ++t) {
        const ExpressionMode mode = g.coin() ? ExpressionMode::affine : ExpressionMode::homogeneous;
        const int nvars = g.integer(1, 6);
        const int grade = g.integer(0, std::min(3, nvars));
        MultiVector a = g.gaussian_multivector(nvars, grade, 4, 5);
        const std::string text = format_expression(a, mode);
        EXPECT_EQ(parse_expression(text, mode, nvars, grade), a) << text;
        EXPECT_EQ(format_expression(parse_expression(text, mode, nvars, grade), mode), text);
    }
}
