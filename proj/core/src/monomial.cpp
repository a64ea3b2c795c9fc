#include "pbpois/algebra/monomial.hpp"

#include <algorithm>
#include <functional>

#include "pbpois/errors.hpp"

namespace pbpois {

Monomial::Monomial(int nvars) : nvars_(static_cast<std::uint8_t>(nvars)) {
    if (nvars < 0 || nvars > kMaxVariables) throw StructuralError("variable count out of range");
}

Monomial::Monomial(int nvars, std::span<const int> exponents) : Monomial(nvars) {
    if (static_cast<int>(exponents.size()) != nvars) throw StructuralError("exponent vector length differs from variable count");
    int deg = 0;
    for (int k = 0; k < nvars; ++k) {
        int e = exponents[static_cast<std::size_t>(k)];
        if (e < 0 || e > 255) throw StructuralError("exponent out of range");
        exp_[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(e);
        deg += e;
    }
    degree_ = static_cast<std::uint16_t>(deg);
}

Monomial Monomial::variable(int nvars, int index, int power) {
    Monomial m(nvars);
    if (index < 0 || index >= nvars) throw StructuralError("variable index out of range");
    m.exp_[static_cast<std::size_t>(index)] = static_cast<std::uint8_t>(power);
    m.degree_ = static_cast<std::uint16_t>(power);
    return m;
}

std::vector<int> Monomial::exponents() const {
    return std::vector<int>(exp_.begin(), exp_.begin() + nvars_);
}

Monomial Monomial::operator*(const Monomial& o) const {
    if (nvars_ != o.nvars_) throw StructuralError("monomials over different variable counts");
    Monomial r(*this);
    for (int k = 0; k < nvars_; ++k) {
        int e = exp_[static_cast<std::size_t>(k)] + o.exp_[static_cast<std::size_t>(k)];
        if (e > 255) throw StructuralError("exponent overflow");
        r.exp_[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(e);
    }
    r.degree_ = static_cast<std::uint16_t>(degree_ + o.degree_);
    return r;
}

Monomial Monomial::lowered(int k) const {
    Monomial r(*this);
    --r.exp_[static_cast<std::size_t>(k)];
    --r.degree_;
    return r;
}

Monomial Monomial::raised(int k, int by) const {
    Monomial r(*this);
    r.exp_[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(r.exp_[static_cast<std::size_t>(k)] + by);
    r.degree_ = static_cast<std::uint16_t>(r.degree_ + by);
    return r;
}

Monomial Monomial::with_exponent(int k, int e) const {
    Monomial r(*this);
    r.degree_ = static_cast<std::uint16_t>(r.degree_ - r.exp_[static_cast<std::size_t>(k)] + e);
    r.exp_[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(e);
    return r;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (auto c = a.nvars_ <=> b.nvars_; c != 0) return c;
    if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
    for (int k = 0; k < a.nvars_; ++k) {
        if (auto c = a.exp_[static_cast<std::size_t>(k)] <=> b.exp_[static_cast<std::size_t>(k)]; c != 0) return c;
    }
    return std::strong_ordering::equal;
}

std::vector<Monomial> monomials_of_degree(int nvars, int degree) {
    std::vector<Monomial> out;
    std::vector<int> e(static_cast<std::size_t>(nvars), 0);
    std::function<void(int, int)> rec = [&](int k, int left) {
        if (k == nvars - 1) {
            e[static_cast<std::size_t>(k)] = left;
            out.emplace_back(nvars, e);
            return;
        }
        for (int a = left; a >= 0; --a) {
            e[static_cast<std::size_t>(k)] = a;
            rec(k + 1, left - a);
        }
    };
    if (nvars == 0) {
        if (degree == 0) out.emplace_back(0);
        return out;
    }
    rec(0, degree);
    return out;
}

}  // namespace pbpois
