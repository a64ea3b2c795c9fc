#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pbpois/errors.hpp"
#include "pbpois/multivector.hpp"

namespace pbpois {

// homogeneous: x0..x9 and e0..e9 name variable / direction k.
// affine: x1..x9 (synonyms y1..y9) and e1..e9 name variable / direction k-1.
enum class ExpressionMode { homogeneous, affine };

ExpressionMode parse_mode(std::string_view text);
const char* to_string(ExpressionMode mode);

class ParseError : public Error {
public:
    ParseError(int line, int column, const std::string& message, std::vector<std::string> expected = {});
    int line() const { return line_; }
    int column() const { return column_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    int line_;
    int column_;
    std::vector<std::string> expected_;
};

// Grammar, loosest first:
//   sum     := wedge (('+' | '-') wedge)*
//   wedge   := product ('^' product)*
//   product := unary ('*' unary)*
//   unary   := ('-' | '+') unary | power
//   power   := atom ('**' INTEGER)?
//   atom    := INTEGER ('/' INTEGER)? | 'i' | variable | basis | '(' sum ')'
// `*` needs a grade-0 factor and `**` a grade-0 base. A zero summand takes
// the grade of the other summands. `expected_grade` labels a zero result.
MultiVector parse_expression(std::string_view text, ExpressionMode mode, int nvars,
                             std::optional<int> expected_grade = std::nullopt);

// Canonical text, e.g. "3/4*x1**2*x2*e1^e2 - (1/2+i)*e3". Terms follow the
// MultiVector order; the zero field prints as "0".
std::string format_expression(const MultiVector& a, ExpressionMode mode);
std::string format_scalar(const Scalar& c);

}  // namespace pbpois
