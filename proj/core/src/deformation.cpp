#include "pbpois/deformation.hpp"

#include <chrono>

namespace pbpois {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void require_bivector(const GlobalSection& pi) {
    const SectionSpace& s = *pi.space();
    if (s.grade() != 2 || s.twist() != 0) throw StructuralError("expected a global bivector on P^n");
}

LinearOperator build_operator(const GlobalSection& pi, int target_grade,
                              const std::function<MultiVector(const MultiVector&)>& image) {
    require_bivector(pi);
    LinearOperator op;
    op.source = pi.space();
    op.target = section_space(pi.space()->n(), target_grade, 0);
    const int cols = op.source->dimension();
    op.matrix = ExactMatrix(op.target->dimension(), cols);
    if (op.target->dimension() == 0) return op;
    for (int j = 0; j < cols; ++j) {
        ExactVector c = op.target->coordinates(image(op.source->basis_element(j)));
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (!c[i].is_zero()) op.matrix.set(static_cast<int>(i), j, c[i]);
        }
    }
    return op;
}

void require_poisson(const GlobalSection& pi) {
    require_bivector(pi);
    SectionSpacePtr three = section_space(pi.space()->n(), 3, 0);
    MultiVector r = three->canonical(schouten(pi.representative(), pi.representative()));
    if (!r.is_zero()) throw NotPoissonError(r);
}

TangentSpaceResult kernel_result(const GlobalSection& pi, TangentKind kind, const ExactMatrix& m) {
    TangentSpaceResult out;
    out.ambient = pi.space();
    out.kind = kind;
    out.coordinates = kernel_basis(m);
    out.dimension = static_cast<int>(out.coordinates.size());
    for (const ExactVector& v : out.coordinates) out.basis.emplace_back(out.ambient, out.ambient->from_coordinates(v));
    return out;
}

std::optional<ExactVector> first_outside(const std::vector<ExactVector>& super, const std::vector<ExactVector>& sub, int dim) {
    for (const ExactVector& v : sub) {
        if (!span_contains(super, std::span<const ExactVector>(&v, 1), dim)) return v;
    }
    return std::nullopt;
}

}  // namespace

NotPoissonError::NotPoissonError(MultiVector residual)
    : HypothesisError("bivector is not Poisson: [Pi, Pi] has " + std::to_string(residual.size()) + " nonzero terms"),
      residual_(std::move(residual)) {}

const char* to_string(TangentKind k) { return k == TangentKind::poisson ? "poisson" : "foliation"; }

LinearOperator bracket_operator(const GlobalSection& pi) {
    const MultiVector& p = pi.representative();
    return build_operator(pi, 3, [&](const MultiVector& xi) { return schouten(p, xi); });
}

LinearOperator wedge_operator(const GlobalSection& pi) {
    const MultiVector& p = pi.representative();
    return build_operator(pi, 4, [&](const MultiVector& xi) { return wedge(p, xi); });
}

TangentSpaceResult tangent_pois(const GlobalSection& pi) {
    require_poisson(pi);
    return kernel_result(pi, TangentKind::poisson, bracket_operator(pi).matrix);
}

TangentSpaceResult tangent_fol(const GlobalSection& pi) {
    require_poisson(pi);
    ExactMatrix stacked = ExactMatrix::vstack(bracket_operator(pi).matrix, wedge_operator(pi).matrix);
    return kernel_result(pi, TangentKind::foliation, stacked);
}

bool tangent_contains(const TangentSpaceResult& super, const TangentSpaceResult& sub) {
    if (super.ambient != sub.ambient) throw StructuralError("tangent spaces live in different section spaces");
    return span_contains(super.coordinates, sub.coordinates, super.ambient->dimension());
}

MultiVector ChartDecomposition::alpha_total() const {
    const int m = beta.nvars();
    MultiVector total(m, 2);
    for (std::size_t k = 0; k < alpha.size(); ++k) {
        total += Polynomial::variable(m, fiber).pow(static_cast<int>(k)) * alpha[k];
    }
    return total;
}

MultiVector ChartDecomposition::reassemble() const {
    const int m = beta.nvars();
    return alpha_total() + wedge(MultiVector::basis_vector(m, fiber), beta);
}

ChartDecomposition decompose_chart(const MultiVector& xi, int fiber) {
    const int m = xi.nvars();
    if (!xi.is_zero() && xi.grade() != 2) throw StructuralError("chart decomposition needs a bivector");
    if (fiber < 0 || fiber >= m) throw StructuralError("fiber variable out of range");
    ChartDecomposition dec;
    dec.fiber = fiber;
    dec.alpha.assign(4, MultiVector(m, 2));
    dec.beta = MultiVector(m, 1);
    const DirectionSet f = DirectionSet{1} << fiber;
    for (const auto& [key, c] : xi.terms()) {
        if (key.dirs & f) {
            const DirectionSet rest = key.dirs & ~f;
            dec.beta.add_term(rest, key.mono, c * Scalar(wedge_sign(f, rest)));
            continue;
        }
        const int k = key.mono.exponent(fiber);
        if (k > 3) {
            throw MalformedSectionError("d/dx_" + std::to_string(fiber + 1) + "-free part has x_" + std::to_string(fiber + 1) +
                                        "-degree " + std::to_string(k) + " > 3");
        }
        dec.alpha[static_cast<std::size_t>(k)].add_term(key.dirs, key.mono.with_exponent(fiber, 0), c);
    }
    return dec;
}

ChartDecomposition decompose_chart(const GlobalSection& xi) {
    MultiVector affine = chart_restrict(xi);
    return decompose_chart(affine, affine.nvars() - 1);
}

bool Lemma21Check::passed() const {
    return eq1 && eq2 && alpha_wedge[0] && alpha_wedge[1] && alpha_wedge[2] && alpha0_bracket;
}

Lemma21Check verify_lemma21(const ChartDecomposition& dec, const MultiVector& y) {
    if (y.nvars() != dec.beta.nvars()) throw StructuralError("Y and the decomposition use different variable counts");
    Lemma21Check r;
    const MultiVector alpha = dec.alpha_total();
    r.eq1 = wedge(partial_multivector(alpha, dec.fiber), y).is_zero();
    r.eq2 = (schouten(y, alpha) - wedge(partial_multivector(dec.beta, dec.fiber), y)).is_zero();
    for (int i = 1; i <= 3; ++i) r.alpha_wedge[i - 1] = wedge(dec.alpha[static_cast<std::size_t>(i)], y).is_zero();
    r.alpha0_bracket = wedge(schouten(dec.alpha[0], y), y).is_zero();
    r.alpha0_wedge = wedge(dec.alpha[0], y).is_zero();
    const MultiVector pi = wedge(MultiVector::basis_vector(y.nvars(), dec.fiber), y);
    r.foliation = wedge(dec.reassemble(), pi).is_zero();
    return r;
}

bool DeformationReport::lemma_passed() const {
    for (const Lemma21Check& c : lemma) {
        if (!c.passed()) return false;
    }
    return true;
}

MultiVector pullback_chart_field(const GlobalSection& y) {
    MultiVector affine = chart_restrict(y);
    const int m = affine.nvars();
    std::vector<int> embed;
    for (int k = 0; k < m; ++k) embed.push_back(k);
    return affine.remap(m + 1, embed);
}

DeformationReport verify_pullback_theorem(int n, std::uint64_t seed, const EigenData& lambda, int order_bound,
                                          const VerifyOptions& options) {
    if (n < 3) throw PreconditionError("pull-back verification needs n >= 3");
    if (lambda.size() != n - 1) {
        throw PreconditionError("lambda has " + std::to_string(lambda.size()) + " entries, n = " + std::to_string(n) +
                                " needs " + std::to_string(n - 1));
    }
    const auto t_total = Clock::now();
    DeformationReport rep;
    rep.seed = seed;
    rep.n = n;
    rep.lambda = lambda;
    rep.order_bound = order_bound;

    auto t0 = Clock::now();
    const bool domain = in_poincare_domain(lambda);
    if (!domain) throw PreconditionError("lambda " + lambda.to_string() + " is not in the Poincare domain");
    rep.certificate = nonresonant_up_to_order(lambda, order_bound);
    if (rep.certificate.resonant) throw ResonanceError(rep.certificate);
    rep.checklist.push_back({"poincare-domain", true, "0 outside the convex hull of " + lambda.to_string()});
    rep.checklist.push_back({"non-resonant", true, rep.certificate.describe()});
    rep.timing_ms["certify"] = ms_since(t0);

    t0 = Clock::now();
    GlobalSection y = random_quadratic_field(n - 1, seed, lambda);
    GlobalSection pi = pullback_bivector(y);
    rep.y = y.representative();
    rep.pi = pi.representative();
    const MultiVector y_aff = pullback_chart_field(y);
    MultiVector y_local = chart_restrict(y);
    ExactMatrix lin = linear_part_at_origin(y_local);
    ExactMatrix diag(n - 1, n - 1);
    for (int i = 0; i < n - 1; ++i) diag.set(i, i, lambda[i]);
    rep.checklist.push_back({"linear-part-diagonal", lin == diag, "linear part at the chart origin equals diag(lambda)"});
    bool invertible = true;
    for (const auto& l : lambda.values) invertible = invertible && !l.is_zero();
    rep.checklist.push_back({"isolated-singularity-surrogate", invertible && rank(lin) == n - 1, "linear part is invertible"});
    try {
        LinearizationResult lr = formal_linearize(y_local, options.linearization_order);
        rep.checklist.push_back({"formal-linearization", lr.residual.is_zero(),
                                 "conjugacy residual vanishes to order " + std::to_string(options.linearization_order)});
    } catch (const Error& e) {
        rep.checklist.push_back({"formal-linearization", false, e.what()});
    }
    rep.timing_ms["instance"] = ms_since(t0);

    t0 = Clock::now();
    TangentSpaceResult pois = tangent_pois(pi);
    rep.timing_ms["tangent-pois"] = ms_since(t0);
    t0 = Clock::now();
    TangentSpaceResult fol = tangent_fol(pi);
    rep.timing_ms["tangent-fol"] = ms_since(t0);

    if (options.tamper) {
        options.tamper(pois.coordinates, fol.coordinates);
        const SectionSpacePtr& s = pi.space();
        pois.basis.clear();
        fol.basis.clear();
        for (const auto& v : pois.coordinates) pois.basis.emplace_back(s, s->from_coordinates(v));
        for (const auto& v : fol.coordinates) fol.basis.emplace_back(s, s->from_coordinates(v));
        pois.dimension = static_cast<int>(pois.coordinates.size());
        fol.dimension = static_cast<int>(fol.coordinates.size());
    }
    rep.dim_pois = pois.dimension;
    rep.dim_fol = fol.dimension;
    for (const auto& g : pois.basis) rep.basis_pois.push_back(g.representative());
    for (const auto& g : fol.basis) rep.basis_fol.push_back(g.representative());

    t0 = Clock::now();
    const int dim = pi.space()->dimension();
    auto fol_out = first_outside(pois.coordinates, fol.coordinates, dim);
    auto pois_out = first_outside(fol.coordinates, pois.coordinates, dim);
    rep.fol_in_pois = !fol_out;
    rep.pois_in_fol = !pois_out;
    if (pois_out) {
        rep.offending = pi.space()->from_coordinates(*pois_out);
    } else if (fol_out) {
        rep.offending = pi.space()->from_coordinates(*fol_out);
    }
    rep.timing_ms["containment"] = ms_since(t0);

    if (options.lemma_checks) {
        t0 = Clock::now();
        for (const GlobalSection& xi : pois.basis) rep.lemma.push_back(verify_lemma21(decompose_chart(xi), y_aff));
        rep.timing_ms["lemma"] = ms_since(t0);
        rep.checklist.push_back({"lemma-checks", rep.lemma_passed(),
                                 std::to_string(rep.lemma.size()) + " tangent vectors checked"});
    }

    rep.expected_dimension = n + section_space(n - 1, 1, 1)->dimension();
    if (rep.dim_pois != rep.expected_dimension) {
        rep.warnings.push_back("tangent dimension " + std::to_string(rep.dim_pois) + " differs from the parameter count " +
                               std::to_string(rep.expected_dimension));
    }

    const bool equal = rep.fol_in_pois && rep.pois_in_fol;
    if (n == 3) {
        rep.in_scope = false;
        rep.notes.push_back("n<4 outside theorem scope: the wedge condition is vacuous on P^3");
        rep.verdict = equal ? "degenerate-coincidence" : "counterexample-candidate";
    } else {
        rep.verdict = equal ? "theorem-verified" : "counterexample-candidate";
    }
    rep.timing_ms["total"] = ms_since(t_total);
    return rep;
}

}  // namespace pbpois
