#include "pbpois/poincare.hpp"

#include <functional>
#include <sstream>

#include "pbpois/algebra/matrix.hpp"

namespace pbpois {

namespace {

std::string join_ints(const std::vector<int>& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ")";
    return os.str();
}

std::vector<DirectionSet> subsets(int n, int k) {
    std::vector<DirectionSet> out;
    for (DirectionSet s = 0; s < (DirectionSet{1} << n); ++s) {
        if (direction_count(s) == k) out.push_back(s);
    }
    std::sort(out.begin(), out.end(), [](DirectionSet a, DirectionSet b) {
        return TermKeyLess{}(TermKey{a, Monomial()}, TermKey{b, Monomial()});
    });
    return out;
}

bool is_diagonal_monomial(const Monomial& mono, DirectionSet dirs) {
    if (mono.degree() != direction_count(dirs)) return false;
    for (int k : direction_indices(dirs)) {
        if (mono.exponent(k) != 1) return false;
    }
    return true;
}

void require_local_field(const EigenData& lambda, const MultiVector& a) {
    if (a.nvars() != lambda.size()) {
        throw StructuralError("field has " + std::to_string(a.nvars()) + " variables but lambda has " +
                              std::to_string(lambda.size()) + " entries");
    }
}

mpq_class cross(const Scalar& a, const Scalar& b) { return a.re() * b.im() - a.im() * b.re(); }
mpq_class dot(const Scalar& a, const Scalar& b) { return a.re() * b.re() + a.im() * b.im(); }

}  // namespace

bool ResonanceCertificate::verify(const EigenData& lambda) const {
    if (!resonant) return true;
    if (relation.size() != lambda.values.size()) return false;
    bool nonzero = false;
    for (int a : relation) nonzero |= (a != 0);
    if (!nonzero || !lambda.pair(relation).is_zero()) return false;
    if (monomial) {
        std::vector<int> expect = *monomial;
        for (int d : directions) --expect[static_cast<std::size_t>(d)];
        if (expect != relation) return false;
    }
    return true;
}

std::string ResonanceCertificate::describe() const {
    if (!resonant) return "non-resonant up to order " + std::to_string(order_bound);
    std::string s = "resonant: relation a=" + join_ints(relation);
    if (monomial) {
        std::vector<int> dirs1;
        for (int d : directions) dirs1.push_back(d + 1);
        s += ", monomial y^" + join_ints(*monomial) + " with directions " + join_ints(dirs1);
    }
    return s;
}

ResonanceError::ResonanceError(ResonanceCertificate cert)
    : PreconditionError("resonance: " + cert.describe()), cert_(std::move(cert)) {}

ResonanceCertificate nonresonant_up_to_order(const EigenData& lambda, int bound) {
    if (bound < 1) throw StructuralError("resonance order bound must be >= 1");
    const int m = lambda.size();
    ResonanceCertificate cert;
    cert.order_bound = bound;
    std::vector<int> a(static_cast<std::size_t>(m), 0);

    // Visits vectors with sum |a_i| == total in lexicographic order.
    std::function<bool(int, int, bool)> rec = [&](int k, int left, bool lead_seen) -> bool {
        if (k == m) {
            if (left != 0) return false;
            return lambda.pair(a).is_zero();
        }
        const int lo = lead_seen ? -left : 0;
        for (int v = lo; v <= left; ++v) {
            a[static_cast<std::size_t>(k)] = v;
            if (rec(k + 1, left - std::abs(v), lead_seen || v != 0)) return true;
        }
        a[static_cast<std::size_t>(k)] = 0;
        return false;
    };
    for (int total = 1; total <= bound; ++total) {
        if (rec(0, total, false)) {
            cert.resonant = true;
            cert.relation = a;
            return cert;
        }
    }
    return cert;
}

bool in_poincare_domain(const EigenData& lambda) {
    const auto& p = lambda.values;
    if (p.empty()) return false;
    for (const auto& z : p) {
        if (z.is_zero()) return false;
    }
    const std::size_t n = p.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (sgn(cross(p[i], p[j])) == 0 && sgn(dot(p[i], p[j])) < 0) return false;
            for (std::size_t k = j + 1; k < n; ++k) {
                mpq_class area = cross(p[j] - p[i], p[k] - p[i]);
                if (sgn(area) == 0) continue;
                int s1 = sgn(cross(p[i], p[j]));
                int s2 = sgn(cross(p[j], p[k]));
                int s3 = sgn(cross(p[k], p[i]));
                bool nonneg = s1 >= 0 && s2 >= 0 && s3 >= 0;
                bool nonpos = s1 <= 0 && s2 <= 0 && s3 <= 0;
                if (nonneg || nonpos) return false;
            }
        }
    }
    return true;
}

MultiVector diagonal_field(const EigenData& lambda) {
    const int m = lambda.size();
    MultiVector y(m, 1);
    for (int i = 0; i < m; ++i) y.add_term(DirectionSet{1} << i, Monomial::variable(m, i), lambda[i]);
    return y;
}

Scalar delta_eigenvalue(const EigenData& lambda, const Monomial& mono, DirectionSet dirs) {
    Scalar e = lambda.pair(mono.exponents());
    for (int k : direction_indices(dirs)) e -= lambda[k];
    return e;
}

MultiVector delta_apply(const EigenData& lambda, const MultiVector& a) {
    if (a.grade() != 1 && a.grade() != 2) throw CapabilityError("delta acts on grades 1 and 2 only");
    require_local_field(lambda, a);
    MultiVector r(a.nvars(), a.grade());
    for (const auto& [key, c] : a.terms()) {
        Scalar e = delta_eigenvalue(lambda, key.mono, key.dirs);
        if (!e.is_zero()) r.add_term(key.dirs, key.mono, c * e);
    }
    return r;
}

ResonanceCertificate scan_resonances(const EigenData& lambda, int grade, int max_degree, int min_degree) {
    const int m = lambda.size();
    ResonanceCertificate cert;
    cert.order_bound = max_degree + grade;
    for (int deg = min_degree; deg <= max_degree; ++deg) {
        for (DirectionSet dirs : subsets(m, grade)) {
            for (const Monomial& mono : monomials_of_degree(m, deg)) {
                if (is_diagonal_monomial(mono, dirs)) continue;
                if (!delta_eigenvalue(lambda, mono, dirs).is_zero()) continue;
                cert.resonant = true;
                cert.monomial = mono.exponents();
                cert.directions = direction_indices(dirs);
                cert.relation = *cert.monomial;
                for (int k : cert.directions) --cert.relation[static_cast<std::size_t>(k)];
                return cert;
            }
        }
    }
    return cert;
}

std::vector<MultiVector> kernel_delta(const EigenData& lambda, int grade, int d) {
    if (grade != 1 && grade != 2) throw CapabilityError("delta acts on grades 1 and 2 only");
    ResonanceCertificate cert = scan_resonances(lambda, grade, d);
    if (cert.resonant) throw ResonanceError(cert);

    const int m = lambda.size();
    std::vector<MultiVector> kernel;
    if (d < grade) return kernel;
    for (DirectionSet dirs : subsets(m, grade)) {
        std::vector<int> idx = direction_indices(dirs);
        Monomial mono(m);
        for (int k : idx) mono = mono.raised(k);
        MultiVector t(m, grade);
        t.add_term(dirs, mono, Scalar(1));
        kernel.push_back(std::move(t));
    }
    for (const auto& row : direct_sum_check(lambda, grade, d)) {
        if (row.intersection != 0 || row.kernel + row.image != row.total) {
            throw ContractError("delta does not split at degree " + std::to_string(row.degree));
        }
    }
    return kernel;
}

std::vector<DirectSumDegree> direct_sum_check(const EigenData& lambda, int grade, int d) {
    const int m = lambda.size();
    std::vector<DirectSumDegree> out;
    for (int deg = 0; deg <= d; ++deg) {
        std::vector<TermKey> keys;
        std::map<TermKey, int, TermKeyLess> index;
        for (DirectionSet dirs : subsets(m, grade)) {
            for (const Monomial& mono : monomials_of_degree(m, deg)) {
                index.emplace(TermKey{dirs, mono}, static_cast<int>(keys.size()));
                keys.push_back(TermKey{dirs, mono});
            }
        }
        const int n = static_cast<int>(keys.size());
        std::vector<ExactVector> cols;
        for (const TermKey& key : keys) {
            MultiVector e(m, grade);
            e.add_term(key.dirs, key.mono, Scalar(1));
            MultiVector img = delta_apply(lambda, e);
            ExactVector col(static_cast<std::size_t>(n));
            for (const auto& [k2, c] : img.terms()) col[static_cast<std::size_t>(index.at(k2))] = c;
            cols.push_back(std::move(col));
        }
        ExactMatrix delta = ExactMatrix::from_columns(n, cols);
        std::vector<ExactVector> squared_cols;
        for (const auto& c : cols) squared_cols.push_back(delta.multiply(c));
        ExactMatrix delta2 = ExactMatrix::from_columns(n, squared_cols);

        DirectSumDegree row;
        row.degree = deg;
        row.total = n;
        row.image = rank(delta);
        row.kernel = static_cast<int>(kernel_basis(delta).size());
        // ker and im meet trivially iff rank(delta^2) == rank(delta).
        row.intersection = row.image - rank(delta2);
        out.push_back(row);
    }
    return out;
}

MultiVector solve_homological(const EigenData& lambda, const MultiVector& gamma, int grade) {
    if (grade != 1 && grade != 2) throw CapabilityError("delta acts on grades 1 and 2 only");
    if (gamma.is_zero()) return MultiVector(lambda.size(), grade);
    if (gamma.grade() != grade) throw StructuralError("right-hand side grade differs from requested grade");
    require_local_field(lambda, gamma);
    MultiVector r(gamma.nvars(), grade);
    std::string offending;
    for (const auto& [key, c] : gamma.terms()) {
        Scalar e = delta_eigenvalue(lambda, key.mono, key.dirs);
        if (e.is_zero()) {
            std::vector<int> dirs1;
            for (int k : direction_indices(key.dirs)) dirs1.push_back(k + 1);
            offending += (offending.empty() ? "" : ", ") + std::string("y^") + join_ints(key.mono.exponents()) +
                         " directions " + join_ints(dirs1);
            continue;
        }
        r.add_term(key.dirs, key.mono, c / e);
    }
    if (!offending.empty()) throw NotInImageError("right-hand side has kernel components: " + offending);
    return r;
}

MultiVector derham_divide(const MultiVector& y, const MultiVector& w, int d) {
    if (y.grade() != 1) throw StructuralError("de Rham division needs a vector field Y");
    const int m = y.nvars();
    if (w.nvars() != m) throw StructuralError("Y and W over different variable counts");
    if (w.is_zero()) return MultiVector(m, 1);
    if (w.grade() != 2) throw StructuralError("de Rham division needs a bivector W");
    if (!wedge(w, y).is_zero()) throw DivisionError("W ^ Y != 0; Y does not divide W");

    std::vector<TermKey> unknowns;
    for (int deg = d; deg >= 0; --deg) {
        for (int k = 0; k < m; ++k) {
            for (const Monomial& mono : monomials_of_degree(m, deg)) unknowns.push_back(TermKey{DirectionSet{1} << k, mono});
        }
    }
    std::map<TermKey, int, TermKeyLess> rows;
    std::vector<MultiVector> images;
    for (const TermKey& u : unknowns) {
        MultiVector e(m, 1);
        e.add_term(u.dirs, u.mono, Scalar(1));
        images.push_back(wedge(y, e));
        for (const auto& [key, c] : images.back().terms()) rows.emplace(key, 0);
    }
    for (const auto& [key, c] : w.terms()) rows.emplace(key, 0);
    int r = 0;
    for (auto& [key, idx] : rows) idx = r++;

    ExactMatrix a(r, static_cast<int>(unknowns.size()));
    for (std::size_t col = 0; col < images.size(); ++col) {
        for (const auto& [key, c] : images[col].terms()) a.set(rows.at(key), static_cast<int>(col), c);
    }
    ExactVector rhs(static_cast<std::size_t>(r));
    for (const auto& [key, c] : w.terms()) rhs[static_cast<std::size_t>(rows.at(key))] = c;

    auto x = solve(a, rhs);
    if (!x) throw DivisionError("no vector field of degree <= " + std::to_string(d) + " solves Y ^ V = W");
    MultiVector v(m, 1);
    for (std::size_t i = 0; i < unknowns.size(); ++i) v.add_term(unknowns[i].dirs, unknowns[i].mono, (*x)[i]);
    return v;
}

MultiVector Prop33Decomposition::diagonal_part(int nvars) const {
    MultiVector k(nvars, 2);
    for (const auto& [ij, a] : diagonal_coefficients) {
        Monomial mono = Monomial::variable(nvars, ij.first) * Monomial::variable(nvars, ij.second);
        k.add_term((DirectionSet{1} << ij.first) | (DirectionSet{1} << ij.second), mono, a);
    }
    return k;
}

Prop33Decomposition decompose_alpha0(const EigenData& lambda, const MultiVector& alpha0, int d) {
    const int m = lambda.size();
    if (!alpha0.is_zero() && alpha0.grade() != 2) throw StructuralError("alpha0 must be a bivector");
    require_local_field(lambda, alpha0);
    const MultiVector a0 = alpha0.is_zero() ? MultiVector(m, 2) : alpha0;
    const MultiVector y = diagonal_field(lambda);

    if (!wedge(schouten(a0, y), y).is_zero()) throw HypothesisError("[alpha0, Y] ^ Y != 0");
    for (int grade : {1, 2}) {
        ResonanceCertificate cert = scan_resonances(lambda, grade, d);
        if (cert.resonant) throw ResonanceError(cert);
    }

    Prop33Decomposition out;
    MultiVector w = delta_apply(lambda, a0);
    out.v = derham_divide(y, w, d);
    out.v1 = MultiVector(m, 1);
    MultiVector rest(m, 1);
    for (const auto& [key, c] : out.v.terms()) {
        if (is_diagonal_monomial(key.mono, key.dirs)) {
            out.v1.add_term(key.dirs, key.mono, c);
        } else {
            rest.add_term(key.dirs, key.mono, c);
        }
    }
    out.z = solve_homological(lambda, rest, 1);

    MultiVector k = a0 - wedge(y, out.z);
    for (const auto& [key, c] : k.terms()) {
        if (is_diagonal_monomial(key.mono, key.dirs)) {
            std::vector<int> ij = direction_indices(key.dirs);
            out.diagonal_coefficients.emplace(std::make_pair(ij[0], ij[1]), c);
        }
    }
    out.residual = k - out.diagonal_part(m);
    return out;
}

std::vector<Polynomial> pushforward_components(const std::vector<Polynomial>& phi, const MultiVector& field, int max_degree) {
    const int m = field.nvars();
    std::vector<Polynomial> comps;
    std::vector<Polynomial> f;
    for (int j = 0; j < m; ++j) f.push_back(field.component(DirectionSet{1} << j));
    for (const Polynomial& p : phi) {
        Polynomial acc(m);
        for (int j = 0; j < m; ++j) {
            if (f[static_cast<std::size_t>(j)].is_zero()) continue;
            acc += p.partial(j) * f[static_cast<std::size_t>(j)];
        }
        comps.push_back(max_degree >= 0 ? acc.truncated(max_degree) : acc);
    }
    return comps;
}

LinearizationResult formal_linearize(const MultiVector& yloc, int order) {
    if (yloc.grade() != 1) throw StructuralError("linearisation needs a vector field");
    if (order < 1) throw StructuralError("linearisation order must be >= 1");
    const int m = yloc.nvars();
    if (!yloc.homogeneous_part(0).is_zero()) throw HypothesisError("field does not vanish at the origin");

    EigenData lambda;
    MultiVector linear = yloc.homogeneous_part(1);
    for (int i = 0; i < m; ++i) lambda.values.push_back(linear.coefficient(DirectionSet{1} << i, Monomial::variable(m, i)));
    if (linear != diagonal_field(lambda)) {
        throw CapabilityError("linear part is not diagonal in the given coordinates");
    }
    ResonanceCertificate cert = scan_resonances(lambda, 1, order, 2);
    if (cert.resonant) throw ResonanceError(cert);

    const MultiVector nonlinear = yloc - linear;
    std::vector<Polynomial> psi(static_cast<std::size_t>(m), Polynomial(m));
    LinearizationResult out;
    out.lambda = lambda;
    out.order = order;

    for (int k = 2; k <= order; ++k) {
        MultiVector target = nonlinear.homogeneous_part(k);
        std::vector<Polynomial> dpsi_n = pushforward_components(psi, nonlinear, order);
        for (int i = 0; i < m; ++i) {
            const Polynomial part = dpsi_n[static_cast<std::size_t>(i)].homogeneous_part(k);
            for (const auto& [mono, c] : part.terms()) {
                target.add_term(DirectionSet{1} << i, mono, c);
            }
        }
        MultiVector correction = -solve_homological(lambda, target, 1);
        for (const auto& [key, c] : correction.terms()) {
            psi[static_cast<std::size_t>(direction_indices(key.dirs).front())].add_term(key.mono, c);
        }
        out.steps.push_back({k, correction});
    }

    for (int i = 0; i < m; ++i) out.forward.push_back(Polynomial::variable(m, i) + psi[static_cast<std::size_t>(i)]);

    // Conjugacy residual D(phi) . Y - Lambda . phi up to the order.
    std::vector<Polynomial> pushed = pushforward_components(out.forward, yloc, order);
    out.residual = MultiVector(m, 1);
    for (int i = 0; i < m; ++i) {
        Polynomial r = pushed[static_cast<std::size_t>(i)] - out.forward[static_cast<std::size_t>(i)] * lambda[i];
        const Polynomial low = r.truncated(order);
        for (const auto& [mono, c] : low.terms()) out.residual.add_term(DirectionSet{1} << i, mono, c);
    }

    // Inverse series by fixed-point iteration y = u - psi(y).
    std::vector<Polynomial> inv;
    for (int i = 0; i < m; ++i) inv.push_back(Polynomial::variable(m, i));
    for (int it = 1; it < order; ++it) {
        std::vector<Polynomial> next;
        for (int i = 0; i < m; ++i) {
            next.push_back((Polynomial::variable(m, i) - psi[static_cast<std::size_t>(i)].substitute(inv, order)).truncated(order));
        }
        inv = std::move(next);
    }
    out.inverse = inv;

    std::vector<Polynomial> in_u;
    for (const Polynomial& p : pushed) in_u.push_back(p.substitute(inv, order).truncated(order));
    out.transformed = MultiVector::vector_field(in_u);
    return out;
}

}  // namespace pbpois
