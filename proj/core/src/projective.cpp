#include "pbpois/projective.hpp"

#include <functional>
#include <mutex>
#include <string>
#include <tuple>

#include "pbpois/errors.hpp"
#include "pbpois/rng.hpp"

namespace pbpois {

namespace {

std::vector<DirectionSet> subsets_of_size(int n, int k) {
    std::vector<DirectionSet> out;
    std::vector<int> pick;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(pick.size()) == k) {
            out.push_back(make_direction_set(pick));
            return;
        }
        for (int i = start; i < n; ++i) {
            pick.push_back(i);
            rec(i + 1);
            pick.pop_back();
        }
    };
    rec(0);
    return out;
}

std::vector<MultiVector> monomial_fields(int nvars, int grade, int degree) {
    std::vector<MultiVector> out;
    for (DirectionSet dirs : subsets_of_size(nvars, grade)) {
        for (const Monomial& m : monomials_of_degree(nvars, degree)) {
            MultiVector t(nvars, grade);
            t.add_term(dirs, m, Scalar(1));
            out.push_back(std::move(t));
        }
    }
    return out;
}

}  // namespace

SectionSpace::SectionSpace(int n, int p, int twist) : n_(n), p_(p), twist_(twist) {
    const int nv = n + 1;
    for (DirectionSet dirs : subsets_of_size(nv, p)) {
        for (const Monomial& m : monomials_of_degree(nv, p + twist)) index_.emplace(TermKey{dirs, m}, 0);
    }
    int i = 0;
    for (auto& [key, idx] : index_) {
        idx = i++;
        keys_.push_back(key);
    }

    std::vector<ExactVector> rows;
    for (const MultiVector& g : ideal_generators()) rows.push_back(ambient_coordinates(g));
    ideal_ = row_reduce(ExactMatrix::from_rows(ambient_dimension(), rows));

    std::vector<bool> pivot(keys_.size(), false);
    for (int c : ideal_.pivot_cols) pivot[static_cast<std::size_t>(c)] = true;
    for (int c = 0; c < ambient_dimension(); ++c) {
        if (!pivot[static_cast<std::size_t>(c)]) basis_cols_.push_back(c);
    }
}

std::shared_ptr<const SectionSpace> SectionSpace::create(int n, int p, int twist) {
    if (n < 1 || n + 1 > kMaxVariables) throw CapabilityError("projective dimension out of supported range");
    if (twist == 0) {
        if (p < 1 || p > n + 1) throw CapabilityError("grade " + std::to_string(p) + " unsupported on P^" + std::to_string(n));
    } else if (twist == 1) {
        if (p != 1) throw CapabilityError("twist 1 is supported for vector fields only");
    } else {
        throw CapabilityError("twist must be 0 or 1");
    }
    return std::shared_ptr<const SectionSpace>(new SectionSpace(n, p, twist));
}

std::vector<MultiVector> SectionSpace::ideal_generators() const {
    const int nv = nvars();
    MultiVector radial = MultiVector::radial(nv);
    std::vector<MultiVector> gens;
    for (const MultiVector& t : monomial_fields(nv, p_ - 1, p_ - 1 + twist_)) {
        MultiVector g = wedge(radial, t);
        if (!g.is_zero()) gens.push_back(std::move(g));
    }
    return gens;
}

MultiVector SectionSpace::basis_element(int i) const {
    const TermKey& key = keys_[static_cast<std::size_t>(basis_cols_.at(static_cast<std::size_t>(i)))];
    MultiVector m(nvars(), p_);
    m.add_term(key.dirs, key.mono, Scalar(1));
    return m;
}

ExactVector SectionSpace::ambient_coordinates(const MultiVector& a) const {
    if (a.nvars() != nvars()) throw StructuralError("field has " + std::to_string(a.nvars()) + " variables, space needs " + std::to_string(nvars()));
    if (!a.is_zero() && a.grade() != p_) throw StructuralError("field grade " + std::to_string(a.grade()) + " differs from space grade " + std::to_string(p_));
    ExactVector v(keys_.size());
    for (const auto& [key, c] : a.terms()) {
        auto it = index_.find(key);
        if (it == index_.end()) throw StructuralError("coefficient degree differs from " + std::to_string(coefficient_degree()));
        v[static_cast<std::size_t>(it->second)] = c;
    }
    return v;
}

MultiVector SectionSpace::from_ambient(const ExactVector& v) const {
    MultiVector m(nvars(), p_);
    for (std::size_t i = 0; i < keys_.size(); ++i) {
        if (!v[i].is_zero()) m.add_term(keys_[i].dirs, keys_[i].mono, v[i]);
    }
    return m;
}

MultiVector SectionSpace::canonical(const MultiVector& a) const { return from_ambient(ideal_.reduce(ambient_coordinates(a))); }

ExactVector SectionSpace::coordinates(const MultiVector& a) const {
    ExactVector full = ideal_.reduce(ambient_coordinates(a));
    ExactVector out;
    out.reserve(basis_cols_.size());
    for (int c : basis_cols_) out.push_back(full[static_cast<std::size_t>(c)]);
    return out;
}

MultiVector SectionSpace::from_coordinates(const ExactVector& coords) const {
    if (coords.size() != basis_cols_.size()) throw StructuralError("coordinate vector length differs from section space dimension");
    ExactVector full(keys_.size());
    for (std::size_t i = 0; i < basis_cols_.size(); ++i) full[static_cast<std::size_t>(basis_cols_[i])] = coords[i];
    return from_ambient(full);
}

bool SectionSpace::in_ideal(const MultiVector& a) const { return is_zero(ideal_.reduce(ambient_coordinates(a))); }

SectionSpacePtr section_space(int n, int p, int twist) {
    static std::mutex mutex;
    static std::map<std::tuple<int, int, int>, SectionSpacePtr> cache;
    std::lock_guard lock(mutex);
    auto key = std::make_tuple(n, p, twist);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    SectionSpacePtr s = SectionSpace::create(n, p, twist);
    cache.emplace(key, s);
    return s;
}

GlobalSection::GlobalSection(SectionSpacePtr space, MultiVector representative)
    : space_(std::move(space)), rep_(space_->canonical(representative)) {}

GlobalSection reduce_to_canonical(const SectionSpacePtr& space, const MultiVector& a) { return GlobalSection(space, a); }

MultiVector chart_restrict(const MultiVector& homogeneous, int chart) {
    const int nv = homogeneous.nvars();
    if (chart < 0 || chart >= nv) throw StructuralError("chart index out of range");
    const int na = nv - 1;
    std::vector<Polynomial> coords;
    std::vector<MultiVector> dirs;
    MultiVector minus_radial = -MultiVector::radial(na);
    for (int k = 0, j = 0; k < nv; ++k) {
        if (k == chart) {
            coords.push_back(Polynomial::constant(na, Scalar(1)));
            dirs.push_back(minus_radial);
        } else {
            coords.push_back(Polynomial::variable(na, j));
            dirs.push_back(MultiVector::basis_vector(na, j));
            ++j;
        }
    }
    return homogeneous.substitute(coords, dirs);
}

MultiVector chart_restrict(const GlobalSection& s, int chart) { return chart_restrict(s.representative(), chart); }

GlobalSection pullback_bivector(const GlobalSection& y) {
    const SectionSpace& src = *y.space();
    if (src.grade() != 1 || src.twist() != 1) throw StructuralError("pull-back needs a section of T P^{n-1}(1)");
    if (y.is_zero()) throw DegenerateInputError("pull-back of the zero vector field");
    const int n = src.n() + 1;
    std::vector<int> embed;
    for (int k = 0; k < src.nvars(); ++k) embed.push_back(k);
    MultiVector lifted = y.representative().remap(n + 1, embed);
    MultiVector pi = wedge(MultiVector::basis_vector(n + 1, n), lifted);
    return GlobalSection(section_space(n, 2, 0), pi);
}

GlobalSection random_quadratic_field(int n_minus_1, std::uint64_t seed, const std::optional<EigenData>& linear_part) {
    const int m = n_minus_1;
    if (m < 1) throw StructuralError("quadratic fields need P^m with m >= 1");
    if (linear_part && linear_part->size() != m) {
        throw PreconditionError("prescribed linear part has " + std::to_string(linear_part->size()) + " eigenvalues, P^" +
                                std::to_string(m) + " needs " + std::to_string(m));
    }
    const int nv = m + 1;
    SplitMix64 rng(seed);
    std::vector<Polynomial> comps(static_cast<std::size_t>(nv), Polynomial(nv));
    const auto quadratics = monomials_of_degree(nv, 2);
    for (int k = 0; k < nv; ++k) {
        for (const Monomial& q : quadratics) comps[static_cast<std::size_t>(k)].add_term(q, Scalar(rng.uniform(-9, 9)));
    }
    if (linear_part) {
        const Monomial x0sq = Monomial::variable(nv, 0, 2);
        const Scalar c0 = comps[0].coefficient(x0sq);
        for (int i = 1; i < nv; ++i) {
            Polynomial& yi = comps[static_cast<std::size_t>(i)];
            yi.add_term(x0sq, -yi.coefficient(x0sq));
            for (int j = 1; j < nv; ++j) {
                Monomial x0xj = Monomial::variable(nv, 0) * Monomial::variable(nv, j);
                Scalar target = (i == j) ? (*linear_part)[i - 1] + c0 : Scalar(0);
                yi.add_term(x0xj, target - yi.coefficient(x0xj));
            }
        }
    }
    return GlobalSection(section_space(m, 1, 1), MultiVector::vector_field(comps));
}

ExactMatrix linear_part_at_origin(const MultiVector& affine_field) {
    if (affine_field.grade() != 1 && !affine_field.is_zero()) throw StructuralError("linear part needs a vector field");
    const int n = affine_field.nvars();
    ExactMatrix a(n, n);
    for (const auto& [key, c] : affine_field.terms()) {
        if (key.mono.degree() != 1) continue;
        int i = direction_indices(key.dirs).front();
        int j = 0;
        while (key.mono.exponent(j) == 0) ++j;
        a.set(i, j, c);
    }
    return a;
}

}  // namespace pbpois
