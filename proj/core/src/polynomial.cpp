#include "pbpois/algebra/polynomial.hpp"

#include <algorithm>

#include "pbpois/errors.hpp"

namespace pbpois {

namespace {

void require_same_ring(int a, int b) {
    if (a != b) throw StructuralError("polynomials over different variable counts");
}

}  // namespace

Polynomial Polynomial::constant(int nvars, const Scalar& c) {
    Polynomial p(nvars);
    p.add_term(Monomial(nvars), c);
    return p;
}

Polynomial Polynomial::variable(int nvars, int k) {
    Polynomial p(nvars);
    p.add_term(Monomial::variable(nvars, k), Scalar(1));
    return p;
}

Polynomial Polynomial::term(const Monomial& m, const Scalar& c) {
    Polynomial p(m.nvars());
    p.add_term(m, c);
    return p;
}

int Polynomial::degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
}

bool Polynomial::is_homogeneous(int degree) const {
    for (const auto& [m, c] : terms_) {
        if (m.degree() != degree) return false;
    }
    return true;
}

Scalar Polynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar() : it->second;
}

void Polynomial::add_term(const Monomial& m, const Scalar& c) {
    if (m.nvars() != nvars_) throw StructuralError("monomial variable count differs from polynomial");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    require_same_ring(nvars_, o.nvars_);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    require_same_ring(nvars_, o.nvars_);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const Scalar& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

Polynomial Polynomial::operator-() const {
    Polynomial r(*this);
    for (auto& [m, v] : r.terms_) v = -v;
    return r;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    require_same_ring(a.nvars_, b.nvars_);
    Polynomial r(a.nvars_);
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    }
    return r;
}

Polynomial Polynomial::partial(int k) const {
    if (k < 0 || k >= nvars_) throw StructuralError("partial derivative index out of range");
    Polynomial r(nvars_);
    for (const auto& [m, c] : terms_) {
        int e = m.exponent(k);
        if (e == 0) continue;
        r.add_term(m.lowered(k), c * Scalar(e));
    }
    return r;
}

Polynomial Polynomial::homogeneous_part(int degree) const {
    Polynomial r(nvars_);
    for (const auto& [m, c] : terms_) {
        if (m.degree() == degree) r.terms_.emplace(m, c);
    }
    return r;
}

Polynomial Polynomial::truncated(int max_degree) const {
    Polynomial r(nvars_);
    for (const auto& [m, c] : terms_) {
        if (m.degree() <= max_degree) r.terms_.emplace(m, c);
    }
    return r;
}

Polynomial Polynomial::pow(int e) const {
    Polynomial r = constant(nvars_, Scalar(1));
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
}

Polynomial Polynomial::substitute(std::span<const Polynomial> images, int max_degree) const {
    if (static_cast<int>(images.size()) != nvars_) throw StructuralError("substitution needs one image per variable");
    int target = images.empty() ? 0 : images.front().nvars();
    for (const auto& img : images) require_same_ring(img.nvars(), target);

    // Cache powers of each image, truncated as we go.
    std::vector<std::vector<Polynomial>> powers(images.size());
    auto power = [&](int k, int e) -> const Polynomial& {
        auto& cache = powers[static_cast<std::size_t>(k)];
        if (cache.empty()) cache.push_back(constant(target, Scalar(1)));
        while (static_cast<int>(cache.size()) <= e) {
            Polynomial next = cache.back() * images[static_cast<std::size_t>(k)];
            if (max_degree >= 0) next = next.truncated(max_degree);
            cache.push_back(std::move(next));
        }
        return cache[static_cast<std::size_t>(e)];
    };

    Polynomial r(target);
    for (const auto& [m, c] : terms_) {
        Polynomial t = constant(target, c);
        for (int k = 0; k < nvars_ && !t.is_zero(); ++k) {
            int e = m.exponent(k);
            if (e == 0) continue;
            t = t * power(k, e);
            if (max_degree >= 0) t = t.truncated(max_degree);
        }
        r += t;
    }
    return r;
}

Polynomial Polynomial::remap_variables(int new_nvars, std::span<const int> map) const {
    if (static_cast<int>(map.size()) != nvars_) throw StructuralError("variable map has wrong length");
    Polynomial r(new_nvars);
    std::vector<int> e(static_cast<std::size_t>(new_nvars));
    for (const auto& [m, c] : terms_) {
        std::fill(e.begin(), e.end(), 0);
        for (int k = 0; k < nvars_; ++k) {
            int x = m.exponent(k);
            if (x == 0) continue;
            int target = map[static_cast<std::size_t>(k)];
            if (target < 0) throw StructuralError("remap drops a variable that is present");
            e[static_cast<std::size_t>(target)] += x;
        }
        r.add_term(Monomial(new_nvars, e), c);
    }
    return r;
}

Polynomial Polynomial::specialize(int k, const Scalar& value) const {
    Polynomial r(nvars_);
    for (const auto& [m, c] : terms_) {
        int e = m.exponent(k);
        Scalar f = c;
        for (int i = 0; i < e; ++i) f *= value;
        r.add_term(m.with_exponent(k, 0), f);
    }
    return r;
}

Polynomial poly_normalize(int nvars, std::span<const std::pair<Monomial, Scalar>> terms) {
    Polynomial p(nvars);
    for (const auto& [m, c] : terms) p.add_term(m, c);
    return p;
}

Polynomial poly_multiply(const Polynomial& p, const Polynomial& q) { return p * q; }

Polynomial poly_partial(const Polynomial& p, int k) { return p.partial(k); }

}  // namespace pbpois
