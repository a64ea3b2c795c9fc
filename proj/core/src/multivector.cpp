#include "pbpois/multivector.hpp"

#include <bit>
#include <string>

#include "pbpois/errors.hpp"

namespace pbpois {

namespace {

void require_same_ambient(const MultiVector& a, const MultiVector& b) {
    if (a.nvars() != b.nvars()) {
        throw StructuralError("multivectors over " + std::to_string(a.nvars()) + " and " + std::to_string(b.nvars()) +
                              " variables");
    }
}

// Number of elements of s strictly greater than k.
int count_above(DirectionSet s, int k) {
    return std::popcount(k + 1 >= 32 ? 0u : (s >> (k + 1)));
}

}  // namespace

int direction_count(DirectionSet s) { return std::popcount(s); }

std::vector<int> direction_indices(DirectionSet s) {
    std::vector<int> out;
    for (int k = 0; s != 0; ++k, s >>= 1) {
        if (s & 1u) out.push_back(k);
    }
    return out;
}

DirectionSet make_direction_set(std::span<const int> indices) {
    DirectionSet s = 0;
    for (int k : indices) s |= DirectionSet{1} << k;
    return s;
}

int wedge_sign(DirectionSet s, DirectionSet t) {
    if (s & t) return 0;
    int inversions = 0;
    for (DirectionSet rest = t; rest != 0; rest &= rest - 1) {
        int k = std::countr_zero(rest);
        inversions += count_above(s, k);
    }
    return (inversions & 1) ? -1 : 1;
}

bool TermKeyLess::operator()(const TermKey& a, const TermKey& b) const {
    if (a.dirs != b.dirs) {
        int ca = std::popcount(a.dirs);
        int cb = std::popcount(b.dirs);
        if (ca != cb) return ca < cb;
        // For equal sizes the set holding the lowest element of the symmetric
        // difference is lexicographically smaller.
        DirectionSet diff = a.dirs ^ b.dirs;
        DirectionSet lowest = diff & (~diff + 1);
        return (a.dirs & lowest) != 0;
    }
    return b.mono < a.mono;
}

MultiVector::MultiVector(int nvars, int grade) : nvars_(nvars), grade_(grade) {
    if (nvars < 0 || nvars > kMaxVariables) throw StructuralError("variable count out of range");
    if (grade < 0) throw StructuralError("negative grade");
}

MultiVector MultiVector::from_polynomial(const Polynomial& f) {
    MultiVector r(f.nvars(), 0);
    for (const auto& [m, c] : f.terms()) r.terms_.emplace(TermKey{0, m}, c);
    return r;
}

MultiVector MultiVector::basis_vector(int nvars, int k) {
    MultiVector r(nvars, 1);
    if (k < 0 || k >= nvars) throw StructuralError("direction index out of range");
    r.add_term(DirectionSet{1} << k, Monomial(nvars), Scalar(1));
    return r;
}

MultiVector MultiVector::term(int nvars, std::span<const int> dirs, const Monomial& mono, const Scalar& c) {
    MultiVector r(nvars, static_cast<int>(dirs.size()));
    DirectionSet acc = 0;
    int sign = 1;
    for (int k : dirs) {
        if (k < 0 || k >= nvars) throw StructuralError("direction index out of range");
        DirectionSet bit = DirectionSet{1} << k;
        sign *= wedge_sign(acc, bit);
        if (sign == 0) return r;
        acc |= bit;
    }
    r.add_term(acc, mono, sign > 0 ? c : -c);
    return r;
}

MultiVector MultiVector::vector_field(std::span<const Polynomial> components) {
    int n = static_cast<int>(components.size());
    MultiVector r(n, 1);
    for (int k = 0; k < n; ++k) {
        const Polynomial& f = components[static_cast<std::size_t>(k)];
        if (f.nvars() != n) throw StructuralError("vector field component over wrong variable count");
        for (const auto& [m, c] : f.terms()) r.add_term(DirectionSet{1} << k, m, c);
    }
    return r;
}

MultiVector MultiVector::radial(int nvars) {
    MultiVector r(nvars, 1);
    for (int k = 0; k < nvars; ++k) r.add_term(DirectionSet{1} << k, Monomial::variable(nvars, k), Scalar(1));
    return r;
}

int MultiVector::degree() const {
    int d = -1;
    for (const auto& [key, c] : terms_) d = std::max(d, key.mono.degree());
    return d;
}

bool MultiVector::is_homogeneous(int degree) const {
    for (const auto& [key, c] : terms_) {
        if (key.mono.degree() != degree) return false;
    }
    return true;
}

void MultiVector::add_term(DirectionSet dirs, const Monomial& mono, const Scalar& c) {
    if (mono.nvars() != nvars_) throw StructuralError("monomial variable count differs from multivector");
    if (std::popcount(dirs) != grade_) throw StructuralError("term grade differs from multivector grade");
    if (nvars_ < 32 && (dirs >> nvars_) != 0) throw StructuralError("direction index out of range");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(TermKey{dirs, mono}, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Scalar MultiVector::coefficient(DirectionSet dirs, const Monomial& mono) const {
    auto it = terms_.find(TermKey{dirs, mono});
    return it == terms_.end() ? Scalar() : it->second;
}

Polynomial MultiVector::component(DirectionSet dirs) const {
    Polynomial p(nvars_);
    for (const auto& [key, c] : terms_) {
        if (key.dirs == dirs) p.add_term(key.mono, c);
    }
    return p;
}

std::vector<DirectionSet> MultiVector::direction_sets() const {
    std::vector<DirectionSet> out;
    for (const auto& [key, c] : terms_) {
        if (out.empty() || out.back() != key.dirs) out.push_back(key.dirs);
    }
    return out;
}

Polynomial MultiVector::as_polynomial() const {
    if (grade_ != 0) throw StructuralError("only grade-0 multivectors are polynomials");
    return component(0);
}

bool MultiVector::involves_variable(int k) const {
    for (const auto& [key, c] : terms_) {
        if (key.mono.exponent(k) > 0) return true;
    }
    return false;
}

bool MultiVector::involves_direction(int k) const {
    for (const auto& [key, c] : terms_) {
        if (key.dirs & (DirectionSet{1} << k)) return true;
    }
    return false;
}

MultiVector& MultiVector::operator+=(const MultiVector& o) {
    require_same_ambient(*this, o);
    if (o.is_zero()) return *this;
    if (is_zero()) grade_ = o.grade_;
    if (grade_ != o.grade_) throw StructuralError("sum of multivectors of different grades");
    for (const auto& [key, c] : o.terms_) add_term(key.dirs, key.mono, c);
    return *this;
}

MultiVector& MultiVector::operator-=(const MultiVector& o) {
    return *this += -o;
}

MultiVector& MultiVector::operator*=(const Scalar& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [key, v] : terms_) v *= c;
    return *this;
}

MultiVector MultiVector::operator-() const {
    MultiVector r(*this);
    for (auto& [key, v] : r.terms_) v = -v;
    return r;
}

MultiVector operator*(const Polynomial& f, const MultiVector& a) {
    return wedge(MultiVector::from_polynomial(f), a);
}

MultiVector MultiVector::partial(int k) const {
    if (k < 0 || k >= nvars_) throw StructuralError("partial derivative index out of range");
    MultiVector r(nvars_, grade_);
    for (const auto& [key, c] : terms_) {
        int e = key.mono.exponent(k);
        if (e > 0) r.add_term(key.dirs, key.mono.lowered(k), c * Scalar(e));
    }
    return r;
}

MultiVector MultiVector::homogeneous_part(int degree) const {
    MultiVector r(nvars_, grade_);
    for (const auto& [key, c] : terms_) {
        if (key.mono.degree() == degree) r.terms_.emplace(key, c);
    }
    return r;
}

MultiVector MultiVector::truncated(int max_degree) const {
    MultiVector r(nvars_, grade_);
    for (const auto& [key, c] : terms_) {
        if (key.mono.degree() <= max_degree) r.terms_.emplace(key, c);
    }
    return r;
}

MultiVector MultiVector::with_grade(int g) const {
    if (!is_zero() && g != grade_) throw StructuralError("cannot regrade a nonzero multivector");
    return MultiVector(nvars_, g);
}

MultiVector MultiVector::substitute(std::span<const Polynomial> coordinate_images,
                                    std::span<const MultiVector> direction_images) const {
    if (static_cast<int>(coordinate_images.size()) != nvars_ || static_cast<int>(direction_images.size()) != nvars_) {
        throw StructuralError("substitution needs one image per variable");
    }
    int target = nvars_ == 0 ? 0 : coordinate_images.front().nvars();
    for (const auto& d : direction_images) {
        if (d.grade() != 1 && !d.is_zero()) throw StructuralError("direction images must be vector fields");
        if (d.nvars() != target) throw StructuralError("direction image over wrong variable count");
    }
    MultiVector r(target, grade_);
    for (DirectionSet dirs : direction_sets()) {
        Polynomial coef = component(dirs).substitute(coordinate_images);
        if (coef.is_zero()) continue;
        MultiVector frame = MultiVector::from_polynomial(Polynomial::constant(target, Scalar(1)));
        for (int k : direction_indices(dirs)) {
            const MultiVector& img = direction_images[static_cast<std::size_t>(k)];
            frame = wedge(frame, img.is_zero() ? img.with_grade(1) : img);
        }
        r += wedge(MultiVector::from_polynomial(coef), frame);
    }
    return r;
}

MultiVector MultiVector::remap(int new_nvars, std::span<const int> map) const {
    if (static_cast<int>(map.size()) != nvars_) throw StructuralError("variable map has wrong length");
    MultiVector r(new_nvars, grade_);
    std::vector<int> e(static_cast<std::size_t>(new_nvars));
    for (const auto& [key, c] : terms_) {
        std::fill(e.begin(), e.end(), 0);
        for (int k = 0; k < nvars_; ++k) {
            int x = key.mono.exponent(k);
            if (x == 0) continue;
            int t = map[static_cast<std::size_t>(k)];
            if (t < 0) throw StructuralError("remap drops a variable that is present");
            e[static_cast<std::size_t>(t)] += x;
        }
        std::vector<int> dirs;
        for (int k : direction_indices(key.dirs)) {
            int t = map[static_cast<std::size_t>(k)];
            if (t < 0) throw StructuralError("remap drops a direction that is present");
            dirs.push_back(t);
        }
        r += MultiVector::term(new_nvars, dirs, Monomial(new_nvars, e), c);
    }
    return r;
}

MultiVector wedge(const MultiVector& a, const MultiVector& b) {
    require_same_ambient(a, b);
    MultiVector r(a.nvars(), a.grade() + b.grade());
    if (a.grade() + b.grade() > a.nvars()) return r;
    for (const auto& [ka, ca] : a.terms()) {
        for (const auto& [kb, cb] : b.terms()) {
            int s = wedge_sign(ka.dirs, kb.dirs);
            if (s == 0) continue;
            Scalar c = ca * cb;
            r.add_term(ka.dirs | kb.dirs, ka.mono * kb.mono, s > 0 ? c : -c);
        }
    }
    return r;
}

MultiVector wedge_power(const MultiVector& a, int s) {
    if (s < 1) throw StructuralError("wedge power exponent must be positive");
    MultiVector r = a;
    for (int i = 1; i < s && !r.is_zero(); ++i) r = wedge(r, a);
    if (r.is_zero()) return MultiVector(a.nvars(), a.grade() * s);
    return r;
}

namespace {

// Accumulates sign * sum_k  dA/d(d_k) ^ dB/dx_k  into out.
void accumulate_half(const MultiVector& a, const MultiVector& b, int sign, MultiVector& out) {
    for (const auto& [ka, ca] : a.terms()) {
        for (DirectionSet rest = ka.dirs; rest != 0; rest &= rest - 1) {
            int k = std::countr_zero(rest);
            DirectionSet reduced = ka.dirs & ~(DirectionSet{1} << k);
            int s_right = (count_above(ka.dirs, k) & 1) ? -sign : sign;
            for (const auto& [kb, cb] : b.terms()) {
                int e = kb.mono.exponent(k);
                if (e == 0) continue;
                int ws = wedge_sign(reduced, kb.dirs);
                if (ws == 0) continue;
                Scalar c = ca * cb * Scalar(e);
                out.add_term(reduced | kb.dirs, ka.mono * kb.mono.lowered(k), s_right * ws > 0 ? c : -c);
            }
        }
    }
}

}  // namespace

MultiVector schouten(const MultiVector& a, const MultiVector& b) {
    require_same_ambient(a, b);
    const int p = a.grade();
    const int q = b.grade();
    if (p + q < 1) throw StructuralError("Schouten bracket of two functions is undefined");
    MultiVector r(a.nvars(), p + q - 1);
    if (p + q - 1 > a.nvars()) return r;
    accumulate_half(a, b, 1, r);
    int swap = (((p - 1) * (q - 1)) & 1) ? -1 : 1;
    accumulate_half(b, a, -swap, r);
    return r;
}

MultiVector partial_multivector(const MultiVector& a, int k) { return a.partial(k); }

MultiVector contract(const MultiVector& pi, const Polynomial& f) {
    if (pi.grade() != 2) throw ContractError("contraction needs a bivector, got grade " + std::to_string(pi.grade()));
    if (pi.nvars() != f.nvars()) throw StructuralError("bivector and function over different variable counts");
    const int n = pi.nvars();
    std::vector<Polynomial> df;
    for (int k = 0; k < n; ++k) df.push_back(f.partial(k));
    MultiVector r(n, 1);
    for (DirectionSet dirs : pi.direction_sets()) {
        std::vector<int> ij = direction_indices(dirs);
        Polynomial a = pi.component(dirs);
        const int i = ij[0];
        const int j = ij[1];
        Polynomial to_j = a * df[static_cast<std::size_t>(i)];
        Polynomial to_i = -(a * df[static_cast<std::size_t>(j)]);
        for (const auto& [m, c] : to_j.terms()) r.add_term(DirectionSet{1} << j, m, c);
        for (const auto& [m, c] : to_i.terms()) r.add_term(DirectionSet{1} << i, m, c);
    }
    return r;
}

int generic_rank(const MultiVector& pi) {
    if (pi.grade() != 2) throw StructuralError("rank is defined for bivectors");
    if (pi.is_zero()) return 0;
    int r = 1;
    MultiVector power = pi;
    while (2 * (r + 1) <= pi.nvars()) {
        power = wedge(power, pi);
        if (power.is_zero()) break;
        ++r;
    }
    return 2 * r;
}

MultiVector integrability_residual(const MultiVector& pi) {
    if (pi.grade() != 2) throw StructuralError("integrability residual is defined for bivectors");
    return schouten(pi, pi);
}

bool is_poisson(const MultiVector& pi) { return integrability_residual(pi).is_zero(); }

}  // namespace pbpois
