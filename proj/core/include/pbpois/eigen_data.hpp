#pragma once

#include <string>
#include <vector>

#include "pbpois/algebra/scalar.hpp"

namespace pbpois {

// Eigenvalue tuple (lambda_1, ..., lambda_m) of a diagonal linear part.
struct EigenData {
    std::vector<Scalar> values;

    int size() const { return static_cast<int>(values.size()); }
    const Scalar& operator[](int i) const { return values[static_cast<std::size_t>(i)]; }

    // <lambda, I> for an exponent vector I.
    Scalar pair(const std::vector<int>& exponents) const;

    // Comma separated scalars, e.g. "2,5,23" or "1+i,2-i,3".
    static EigenData parse(const std::string& text);
    std::string to_string() const;

    friend bool operator==(const EigenData&, const EigenData&) = default;
};

}  // namespace pbpois
