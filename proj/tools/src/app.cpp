#include "app.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <future>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "pbpois/deformation.hpp"
#include "pbpois/expression.hpp"
#include "pbpois/poincare.hpp"
#include "pbpois/projective.hpp"
#include "schema_data.hpp"

namespace pbpois::app {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

struct Config {
    std::string command;
    std::string mode = "affine";
    int vars = 0;
    int n = 4;
    std::optional<std::uint64_t> seed;
    std::string seeds;
    std::string lambda;
    int degree = 4;
    int order = 4;
    int grade = 2;
    bool no_bases = false;
    std::string out;
    std::string pi;
    std::vector<std::string> exprs;
};

// A mathematical negative: the report is complete but the exit code is 1.
struct Outcome {
    std::string verdict;
    int exit_code = kSuccess;
};

class UsageError : public Error {
public:
    using Error::Error;
};

json scalar_json(const Scalar& s) { return s.to_string(); }

json certificate_json(const ResonanceCertificate& c, const EigenData& lambda) {
    json j;
    j["order-bound"] = c.order_bound;
    j["resonant"] = c.resonant;
    j["relation"] = c.relation;
    if (c.monomial) {
        j["monomial"] = *c.monomial;
        std::vector<int> d;
        for (int k : c.directions) d.push_back(k + 1);
        j["directions"] = d;
    }
    j["lambda"] = lambda.to_string();
    j["description"] = c.describe();
    return j;
}

json strings(const std::vector<MultiVector>& fields, ExpressionMode mode) {
    json a = json::array();
    for (const auto& f : fields) a.push_back(format_expression(f, mode));
    return a;
}

json polys(const std::vector<Polynomial>& ps) {
    json a = json::array();
    for (const auto& p : ps) a.push_back(format_expression(MultiVector::from_polynomial(p), ExpressionMode::affine));
    return a;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
            throw UsageError("invalid seed '" + item + "' in --seeds");
        }
        out.push_back(std::stoull(item));
    }
    if (out.empty()) throw UsageError("--seeds needs at least one seed");
    return out;
}

EigenData parse_lambda(const std::string& text) {
    try {
        return EigenData::parse(text);
    } catch (const std::exception& e) {
        throw UsageError("invalid --lambda '" + text + "': " + e.what());
    }
}

int infer_vars(const std::vector<std::string>& exprs, ExpressionMode mode) {
    const int limit = mode == ExpressionMode::homogeneous ? 10 : 9;
    int used = 0;
    for (const auto& e : exprs) {
        MultiVector a = parse_expression(e, mode, limit);
        for (int k = 0; k < limit; ++k) {
            if (a.involves_variable(k) || a.involves_direction(k)) used = std::max(used, k + 1);
        }
    }
    return std::max(used, 1);
}

MultiVector parse_bivector(const std::string& text, ExpressionMode mode, int nvars) {
    MultiVector a = parse_expression(text, mode, nvars, 2);
    if (a.grade() != 2) throw UsageError("expected a bivector, got grade " + std::to_string(a.grade()));
    return a;
}

std::optional<EigenData> default_lambda(int n) {
    switch (n) {
        case 3: return EigenData::parse("2,5");
        case 4: return EigenData::parse("2,5,23");
        case 5: return EigenData::parse("2,21,32,35");
        default: return std::nullopt;
    }
}

json config_echo(const Config& c) {
    json j;
    j["command"] = c.command;
    j["mode"] = c.mode;
    j["vars"] = c.vars;
    j["n"] = c.n;
    j["seed"] = c.seed ? json(*c.seed) : json(nullptr);
    j["seeds"] = c.seeds;
    j["lambda"] = c.lambda;
    j["degree"] = c.degree;
    j["order"] = c.order;
    j["grade"] = c.grade;
    j["no-bases"] = c.no_bases;
    j["out"] = c.out;
    j["pi"] = c.pi;
    j["expressions"] = c.exprs;
    return j;
}

json empty_report(const Config& c) {
    json r;
    r["command"] = c.command;
    r["version"] = kVersion;
    r["seed"] = nullptr;
    r["config-echo"] = config_echo(c);
    r["verdict"] = "";
    r["dimensions"] = json::object();
    r["bases"] = json::object();
    r["certificates"] = json::array();
    r["timing-ms"] = json{{"total", 0.0}};
    r["details"] = json::object();
    r["exit-code"] = 0;
    return r;
}

Outcome cmd_check_poisson(Config& c, json& r) {
    const ExpressionMode mode = parse_mode(c.mode);
    if (c.vars == 0) c.vars = infer_vars(c.exprs, mode);
    MultiVector pi = parse_bivector(c.exprs.at(0), mode, c.vars);
    MultiVector res = integrability_residual(pi);
    r["dimensions"]["vars"] = c.vars;
    r["details"]["bivector"] = format_expression(pi, mode);
    r["details"]["residual"] = format_expression(res, mode);
    return res.is_zero() ? Outcome{"poisson", kSuccess} : Outcome{"not-poisson", kNegative};
}

Outcome cmd_rank(Config& c, json& r) {
    const ExpressionMode mode = parse_mode(c.mode);
    if (c.vars == 0) c.vars = infer_vars(c.exprs, mode);
    MultiVector pi = parse_bivector(c.exprs.at(0), mode, c.vars);
    r["dimensions"]["vars"] = c.vars;
    r["dimensions"]["rank"] = generic_rank(pi);
    r["details"]["bivector"] = format_expression(pi, mode);
    r["details"]["poisson"] = is_poisson(pi);
    return {"computed", kSuccess};
}

Outcome cmd_schouten(Config& c, json& r) {
    const ExpressionMode mode = parse_mode(c.mode);
    if (c.vars == 0) c.vars = infer_vars(c.exprs, mode);
    MultiVector a = parse_expression(c.exprs.at(0), mode, c.vars);
    MultiVector b = parse_expression(c.exprs.at(1), mode, c.vars);
    if (a.grade() + b.grade() < 1) throw UsageError("the bracket of two functions is not defined");
    MultiVector s = schouten(a, b);
    r["dimensions"]["vars"] = c.vars;
    r["dimensions"]["grade"] = a.grade() + b.grade() - 1;
    r["details"]["left"] = format_expression(a, mode);
    r["details"]["right"] = format_expression(b, mode);
    r["details"]["result"] = format_expression(s, mode);
    return {"computed", kSuccess};
}

GlobalSection tangent_input(Config& c, json& r) {
    if (c.n < 2 || c.n > 9) throw UsageError("--n must lie in [2, 9]");
    if (!c.pi.empty()) {
        c.mode = "homogeneous";
        MultiVector pi = parse_bivector(c.pi, ExpressionMode::homogeneous, c.n + 1);
        try {
            return GlobalSection(section_space(c.n, 2, 0), pi);
        } catch (const StructuralError& e) {
            throw UsageError(std::string("--pi is not a global bivector on P^n: ") + e.what());
        }
    }
    if (!c.seed) throw UsageError("give either --pi EXPR or --seed S for a pull-back instance");
    std::optional<EigenData> lam;
    if (!c.lambda.empty()) lam = parse_lambda(c.lambda);
    GlobalSection y = random_quadratic_field(c.n - 1, *c.seed, lam);
    r["seed"] = *c.seed;
    r["details"]["y"] = format_expression(y.representative(), ExpressionMode::homogeneous);
    return pullback_bivector(y);
}

Outcome cmd_tangent(Config& c, json& r, TangentKind kind) {
    GlobalSection pi = tangent_input(c, r);
    r["details"]["pi"] = format_expression(pi.representative(), ExpressionMode::homogeneous);
    r["dimensions"]["ambient"] = pi.space()->dimension();
    try {
        TangentSpaceResult t = kind == TangentKind::poisson ? tangent_pois(pi) : tangent_fol(pi);
        r["dimensions"]["tangent"] = t.dimension;
        r["details"]["kind"] = to_string(kind);
        if (!c.no_bases) {
            std::vector<MultiVector> reps;
            for (const auto& g : t.basis) reps.push_back(g.representative());
            r["bases"][kind == TangentKind::poisson ? "tangent-pois" : "tangent-fol"] = strings(reps, ExpressionMode::homogeneous);
        }
    } catch (const NotPoissonError& e) {
        r["details"]["residual"] = format_expression(e.residual(), ExpressionMode::homogeneous);
        return {"not-poisson", kNegative};
    }
    return {"computed", kSuccess};
}

json lemma_json(const Lemma21Check& l) {
    return json{{"eq1", l.eq1},
                {"eq2", l.eq2},
                {"alpha1-wedge-y", l.alpha_wedge[0]},
                {"alpha2-wedge-y", l.alpha_wedge[1]},
                {"alpha3-wedge-y", l.alpha_wedge[2]},
                {"alpha0-bracket-wedge-y", l.alpha0_bracket},
                {"alpha0-wedge-y", l.alpha0_wedge},
                {"xi-wedge-pi", l.foliation},
                {"passed", l.passed()}};
}

json run_json(const DeformationReport& d, bool with_bases, json& bases, json& timing) {
    json j;
    j["seed"] = d.seed;
    j["n"] = d.n;
    j["lambda"] = d.lambda.to_string();
    j["verdict"] = d.verdict;
    j["in-scope"] = d.in_scope;
    j["notes"] = d.notes;
    j["warnings"] = d.warnings;
    j["dimensions"] = json{{"tangent-pois", d.dim_pois}, {"tangent-fol", d.dim_fol}, {"expected", d.expected_dimension}};
    j["containment"] = json{{"fol-in-pois", d.fol_in_pois}, {"pois-in-fol", d.pois_in_fol}};
    j["lemma-passed"] = d.lemma_passed();
    json checks = json::array();
    for (const auto& l : d.lemma) checks.push_back(lemma_json(l));
    j["lemma-checks"] = checks;
    json list = json::array();
    for (const auto& item : d.checklist) list.push_back(json{{"name", item.name}, {"passed", item.passed}, {"detail", item.detail}});
    j["checklist"] = list;
    j["y"] = format_expression(d.y, ExpressionMode::homogeneous);
    j["pi"] = format_expression(d.pi, ExpressionMode::homogeneous);
    j["offending"] = d.offending ? json(format_expression(*d.offending, ExpressionMode::homogeneous)) : json(nullptr);
    if (with_bases) {
        const std::string tag = "[seed=" + std::to_string(d.seed) + "]";
        bases["tangent-pois" + tag] = strings(d.basis_pois, ExpressionMode::homogeneous);
        bases["tangent-fol" + tag] = strings(d.basis_fol, ExpressionMode::homogeneous);
    }
    json t(d.timing_ms);
    t["seed"] = d.seed;
    timing["runs"].push_back(t);
    return j;
}

Outcome cmd_verify(Config& c, json& r) {
    if (c.n < 3 || c.n > 9) throw UsageError("--n must lie in [3, 9]");
    if (c.order < 1) throw UsageError("--order must be >= 1");
    std::vector<std::uint64_t> seeds;
    if (!c.seeds.empty()) {
        seeds = parse_seed_list(c.seeds);
    } else {
        seeds.push_back(c.seed.value_or(1));
        c.seed = seeds.front();
    }
    EigenData lambda;
    if (c.lambda.empty()) {
        auto d = default_lambda(c.n);
        if (!d) throw UsageError("no default --lambda for n = " + std::to_string(c.n));
        lambda = *d;
        c.lambda = lambda.to_string();
    } else {
        lambda = parse_lambda(c.lambda);
    }
    if (lambda.size() != c.n - 1) {
        throw PreconditionError("--lambda has " + std::to_string(lambda.size()) + " entries; n = " + std::to_string(c.n) +
                                " needs n-1 = " + std::to_string(c.n - 1));
    }
    ResonanceCertificate cert = nonresonant_up_to_order(lambda, c.order);
    r["certificates"].push_back(certificate_json(cert, lambda));
    if (!in_poincare_domain(lambda)) throw PreconditionError("lambda " + lambda.to_string() + " is not in the Poincare domain");
    if (cert.resonant) throw ResonanceError(cert);

    VerifyOptions opts;
    opts.linearization_order = c.degree;
    std::vector<std::future<DeformationReport>> jobs;
    std::vector<DeformationReport> reports;
    const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    for (std::size_t start = 0; start < seeds.size(); start += workers) {
        jobs.clear();
        for (std::size_t i = start; i < std::min(seeds.size(), start + workers); ++i) {
            jobs.push_back(std::async(std::launch::async, [&, s = seeds[i]] { return verify_pullback_theorem(c.n, s, lambda, c.order, opts); }));
        }
        for (auto& f : jobs) reports.push_back(f.get());
    }

    json runs = json::array();
    json timing = json{{"runs", json::array()}};
    bool all_equal = true;
    bool lemma_ok = true;
    for (const auto& d : reports) {
        runs.push_back(run_json(d, !c.no_bases, r["bases"], timing));
        all_equal = all_equal && d.verdict != "counterexample-candidate";
        lemma_ok = lemma_ok && d.lemma_passed();
    }
    r["details"]["runs"] = runs;
    r["details"]["first-order-only"] = true;
    r["timing-ms"]["runs"] = timing["runs"];
    if (seeds.size() == 1) {
        r["seed"] = seeds.front();
        r["dimensions"]["tangent-pois"] = reports.front().dim_pois;
        r["dimensions"]["tangent-fol"] = reports.front().dim_fol;
        r["dimensions"]["expected"] = reports.front().expected_dimension;
    } else {
        r["seed"] = seeds;
    }
    r["dimensions"]["ambient"] = section_space(c.n, 2, 0)->dimension();
    r["dimensions"]["runs"] = static_cast<int>(reports.size());

    std::string verdict = c.n == 3 ? "degenerate-coincidence" : "theorem-verified";
    if (!all_equal) return {"counterexample-candidate", kNegative};
    if (!lemma_ok) return {"lemma-check-failed", kNegative};
    return {verdict, kSuccess};
}

Outcome cmd_delta_kernel(Config& c, json& r) {
    if (c.lambda.empty()) throw UsageError("--lambda is required");
    EigenData lambda = parse_lambda(c.lambda);
    if (c.grade != 1 && c.grade != 2) throw UsageError("--grade must be 1 or 2");
    if (c.degree < 0) throw UsageError("--deg must be >= 0");
    ResonanceCertificate cert = scan_resonances(lambda, c.grade, c.degree);
    r["certificates"].push_back(certificate_json(cert, lambda));
    std::vector<MultiVector> k = kernel_delta(lambda, c.grade, c.degree);
    r["dimensions"]["kernel"] = static_cast<int>(k.size());
    r["bases"]["kernel"] = strings(k, ExpressionMode::affine);
    json rows = json::array();
    for (const auto& d : direct_sum_check(lambda, c.grade, c.degree)) {
        rows.push_back(json{{"degree", d.degree}, {"total", d.total}, {"kernel", d.kernel}, {"image", d.image}, {"intersection", d.intersection}});
    }
    r["details"]["direct-sum"] = rows;
    return {"computed", kSuccess};
}

Outcome cmd_linearize(Config& c, json& r) {
    c.mode = "affine";
    if (c.vars == 0) c.vars = infer_vars(c.exprs, ExpressionMode::affine);
    MultiVector y = parse_expression(c.exprs.at(0), ExpressionMode::affine, c.vars, 1);
    if (y.grade() != 1) throw UsageError("expected a vector field, got grade " + std::to_string(y.grade()));
    if (c.order < 1) throw UsageError("--order must be >= 1");
    LinearizationResult lr = formal_linearize(y, c.order);
    r["certificates"].push_back(certificate_json(scan_resonances(lr.lambda, 1, c.order, 2), lr.lambda));
    r["dimensions"]["vars"] = c.vars;
    r["details"]["lambda"] = lr.lambda.to_string();
    r["details"]["forward"] = polys(lr.forward);
    r["details"]["inverse"] = polys(lr.inverse);
    r["details"]["transformed"] = format_expression(lr.transformed, ExpressionMode::affine);
    r["details"]["residual"] = format_expression(lr.residual, ExpressionMode::affine);
    json steps = json::array();
    for (const auto& s : lr.steps) steps.push_back(json{{"degree", s.degree}, {"correction", format_expression(s.correction, ExpressionMode::affine)}});
    r["details"]["steps"] = steps;
    return lr.residual.is_zero() ? Outcome{"linearized", kSuccess} : Outcome{"residual-nonzero", kNegative};
}

Outcome cmd_decompose(Config& c, json& r) {
    if (c.lambda.empty()) throw UsageError("--lambda is required");
    EigenData lambda = parse_lambda(c.lambda);
    c.mode = "affine";
    c.vars = lambda.size();
    MultiVector a0 = parse_bivector(c.exprs.at(0), ExpressionMode::affine, c.vars);
    for (int g : {1, 2}) r["certificates"].push_back(certificate_json(scan_resonances(lambda, g, c.degree), lambda));
    Prop33Decomposition d = decompose_alpha0(lambda, a0, c.degree);
    json coeffs = json::object();
    for (const auto& [ij, a] : d.diagonal_coefficients) {
        coeffs["a" + std::to_string(ij.first + 1) + std::to_string(ij.second + 1)] = scalar_json(a);
    }
    r["dimensions"]["vars"] = c.vars;
    r["details"]["z"] = format_expression(d.z, ExpressionMode::affine);
    r["details"]["diagonal-coefficients"] = coeffs;
    r["details"]["v"] = format_expression(d.v, ExpressionMode::affine);
    r["details"]["v1"] = format_expression(d.v1, ExpressionMode::affine);
    r["details"]["residual"] = format_expression(d.residual, ExpressionMode::affine);
    return d.residual.is_zero() ? Outcome{"decomposed", kSuccess} : Outcome{"residual-nonzero", kNegative};
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const UsageError*>(&e) || dynamic_cast<const ParseError*>(&e) || dynamic_cast<const StructuralError*>(&e)) {
        return kUsage;
    }
    if (dynamic_cast<const NotPoissonError*>(&e)) return kNegative;
    return kPrecondition;
}

std::string kind_of(const std::exception& e) {
    if (dynamic_cast<const ResonanceError*>(&e)) return "resonance";
    if (dynamic_cast<const ParseError*>(&e)) return "parse";
    if (dynamic_cast<const UsageError*>(&e)) return "usage";
    if (dynamic_cast<const StructuralError*>(&e)) return "structural";
    if (dynamic_cast<const NotPoissonError*>(&e)) return "not-poisson";
    if (dynamic_cast<const HypothesisError*>(&e)) return "hypothesis";
    if (dynamic_cast<const CapabilityError*>(&e)) return "capability";
    if (dynamic_cast<const PreconditionError*>(&e)) return "precondition";
    if (dynamic_cast<const DivisionError*>(&e)) return "division";
    if (dynamic_cast<const NotInImageError*>(&e)) return "not-in-image";
    return "error";
}

int default_degree(const std::map<std::string, std::string>* env) {
    std::optional<std::string> value;
    if (env) {
        auto it = env->find(kDegreeEnv);
        if (it != env->end()) value = it->second;
    } else if (const char* v = std::getenv(kDegreeEnv)) {
        value = v;
    }
    if (!value) return 4;
    if (value->empty() || value->size() > 3 || value->find_first_not_of("0123456789") != std::string::npos) {
        throw UsageError(std::string(kDegreeEnv) + " must be a nonnegative integer, got '" + *value + "'");
    }
    return std::stoi(*value);
}

}  // namespace

const json& report_schema() {
    static const json schema = json::parse(kReportSchema);
    return schema;
}

std::vector<std::string> validate(const json& value, const json& schema, const std::string& path) {
    std::vector<std::string> errors;
    auto type_ok = [&](const std::string& t) {
        if (t == "object") return value.is_object();
        if (t == "array") return value.is_array();
        if (t == "string") return value.is_string();
        if (t == "integer") return value.is_number_integer();
        if (t == "number") return value.is_number();
        if (t == "boolean") return value.is_boolean();
        if (t == "null") return value.is_null();
        return false;
    };
    if (schema.contains("type")) {
        const json& t = schema["type"];
        bool ok = false;
        if (t.is_string()) {
            ok = type_ok(t.get<std::string>());
        } else {
            for (const auto& x : t) ok = ok || type_ok(x.get<std::string>());
        }
        if (!ok) {
            errors.push_back(path + ": type " + std::string(value.type_name()) + " not allowed by " + t.dump());
            return errors;
        }
    }
    if (schema.contains("enum")) {
        const json& e = schema["enum"];
        if (std::find(e.begin(), e.end(), value) == e.end()) errors.push_back(path + ": value " + value.dump() + " not in enum");
    }
    if (value.is_object()) {
        if (schema.contains("required")) {
            for (const auto& k : schema["required"]) {
                if (!value.contains(k.get<std::string>())) errors.push_back(path + ": missing required key '" + k.get<std::string>() + "'");
            }
        }
        const json props = schema.value("properties", json::object());
        for (const auto& [k, v] : value.items()) {
            if (props.contains(k)) {
                auto sub = validate(v, props[k], path + "." + k);
                errors.insert(errors.end(), sub.begin(), sub.end());
            } else if (schema.contains("additionalProperties")) {
                const json& ap = schema["additionalProperties"];
                if (ap.is_boolean() && !ap.get<bool>()) {
                    errors.push_back(path + ": unexpected key '" + k + "'");
                } else if (ap.is_object()) {
                    auto sub = validate(v, ap, path + "." + k);
                    errors.insert(errors.end(), sub.begin(), sub.end());
                }
            }
        }
    }
    if (value.is_array() && schema.contains("items")) {
        for (std::size_t i = 0; i < value.size(); ++i) {
            auto sub = validate(value[i], schema["items"], path + "[" + std::to_string(i) + "]");
            errors.insert(errors.end(), sub.begin(), sub.end());
        }
    }
    return errors;
}

CliResult run(const std::vector<std::string>& args, const std::map<std::string, std::string>* env) {
    CliResult result;
    Config c;

    CLI::App cli{"Exact Schouten-bracket calculus on projective space and pull-back Poisson structures", "pbpois"};
    cli.require_subcommand(1);
    cli.set_version_flag("--version", kVersion);

    auto common = [&](CLI::App* sub) {
        sub->add_option("--out", c.out, "Write the JSON report to PATH instead of stdout");
    };
    auto expr_mode = [&](CLI::App* sub) {
        sub->add_option("--vars", c.vars, "Number of variables (default: inferred from the expression)")->check(CLI::Range(1, 10));
        sub->add_option("--mode", c.mode, "Variable naming: affine (x1..x9, e1..e9) or homogeneous (x0..x9, e0..e9)")
            ->check(CLI::IsMember({"affine", "homogeneous"}));
    };

    auto* check = cli.add_subcommand("check-poisson", "Integrability residual [Pi, Pi] of a bivector");
    check->add_option("expr", c.exprs, "Bivector expression")->required()->expected(1);
    expr_mode(check);
    common(check);

    auto* rank_cmd = cli.add_subcommand("rank", "Generic rank of a bivector");
    rank_cmd->add_option("expr", c.exprs, "Bivector expression")->required()->expected(1);
    expr_mode(rank_cmd);
    common(rank_cmd);

    auto* sch = cli.add_subcommand("schouten", "Schouten bracket of two multivectors");
    sch->add_option("exprs", c.exprs, "Two expressions")->required()->expected(2);
    expr_mode(sch);
    common(sch);

    for (const char* name : {"tangent-pois", "tangent-fol"}) {
        auto* t = cli.add_subcommand(name, std::string(name == std::string("tangent-pois") ? "Kernel of xi -> [Pi, xi]" : "Kernel of xi -> ([Pi, xi], Pi ^ xi)") +
                                               " on global bivectors of P^n");
        t->add_option("--n", c.n, "Projective dimension")->default_val(4);
        t->add_option("--pi", c.pi, "Homogeneous bivector (x0..xn, e0..en)");
        t->add_option("--seed", c.seed, "Seed of the pull-back instance");
        t->add_option("--lambda", c.lambda, "Prescribed eigenvalues of the pull-back instance");
        t->add_flag("--no-bases", c.no_bases, "Omit kernel bases from the report");
        common(t);
    }

    auto* verify = cli.add_subcommand("verify-pullback", "Check T_Pi Pois = T_F Fol on seeded pull-back instances");
    verify->add_option("--n", c.n, "Projective dimension")->default_val(4);
    auto* seed_opt = verify->add_option("--seed", c.seed, "Instance seed");
    verify->add_option("--seeds", c.seeds, "Comma separated seeds, run in parallel")->excludes(seed_opt);
    verify->add_option("--lambda", c.lambda, "Eigenvalues at the constructed singularity");
    verify->add_option("--order", c.order, "Resonance order bound")->default_val(4);
    auto* vdeg = verify->add_option("--degree", c.degree, "Linearization order of the local check");
    verify->add_flag("--no-bases", c.no_bases, "Omit kernel bases from the report");
    common(verify);

    auto* dk = cli.add_subcommand("delta-kernel", "Kernel of [Y, .] for Y = sum lambda_i y_i d_i");
    dk->add_option("--lambda", c.lambda, "Eigenvalues")->required();
    dk->add_option("--grade", c.grade, "Grade 1 or 2")->default_val(2);
    auto* dkdeg = dk->add_option("--deg", c.degree, "Truncation degree");
    common(dk);

    auto* lin = cli.add_subcommand("linearize", "Formal linearization of an affine vector field");
    lin->add_option("expr", c.exprs, "Vector field in y1..y9 / x1..x9 and e1..e9")->required()->expected(1);
    lin->add_option("--vars", c.vars, "Number of variables (default: inferred)")->check(CLI::Range(1, 9));
    auto* lorder = lin->add_option("--order", c.order, "Truncation order");
    common(lin);

    auto* dec = cli.add_subcommand("decompose-alpha0", "alpha0 = Y ^ Z + sum a_ij y_i y_j d_i ^ d_j");
    dec->add_option("expr", c.exprs, "Affine bivector alpha0")->required()->expected(1);
    dec->add_option("--lambda", c.lambda, "Eigenvalues")->required();
    auto* ddeg = dec->add_option("--deg", c.degree, "Truncation degree");
    common(dec);

    std::ostringstream out;
    std::ostringstream err;
    try {
        cli.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::ParseError& e) {
        const int code = cli.exit(e, out, err);
        result.exit_code = code == 0 ? kSuccess : kUsage;
        result.out = out.str();
        result.err = err.str();
        return result;
    }

    const auto t0 = Clock::now();
    json report;
    Outcome outcome;
    c.command = cli.get_subcommands().front()->get_name();
    try {
        const int deg = default_degree(env);
        if ((c.command == "verify-pullback" && vdeg->count() == 0) || (c.command == "delta-kernel" && dkdeg->count() == 0) ||
            (c.command == "decompose-alpha0" && ddeg->count() == 0)) {
            c.degree = deg;
        }
        if (c.command == "linearize" && lorder->count() == 0) c.order = deg;
        report = empty_report(c);
        if (c.command == "check-poisson") {
            outcome = cmd_check_poisson(c, report);
        } else if (c.command == "rank") {
            outcome = cmd_rank(c, report);
        } else if (c.command == "schouten") {
            outcome = cmd_schouten(c, report);
        } else if (c.command == "tangent-pois") {
            outcome = cmd_tangent(c, report, TangentKind::poisson);
        } else if (c.command == "tangent-fol") {
            outcome = cmd_tangent(c, report, TangentKind::foliation);
        } else if (c.command == "verify-pullback") {
            outcome = cmd_verify(c, report);
        } else if (c.command == "delta-kernel") {
            outcome = cmd_delta_kernel(c, report);
        } else if (c.command == "linearize") {
            outcome = cmd_linearize(c, report);
        } else {
            outcome = cmd_decompose(c, report);
        }
    } catch (const std::exception& e) {
        if (report.is_null()) report = empty_report(c);
        outcome.exit_code = exit_code_for(e);
        outcome.verdict = outcome.exit_code == kUsage ? "usage-error" : outcome.exit_code == kNegative ? "not-poisson" : "precondition-failed";
        json error{{"kind", kind_of(e)}, {"message", e.what()}};
        if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
            error["line"] = pe->line();
            error["column"] = pe->column();
            error["expected"] = pe->expected();
        }
        if (const auto* re = dynamic_cast<const ResonanceError*>(&e)) {
            bool present = false;
            for (const auto& cert : report["certificates"]) present = present || cert["resonant"].get<bool>();
            if (!present) {
                EigenData lam;
                try {
                    lam = EigenData::parse(c.lambda);
                } catch (const std::exception&) {
                }
                report["certificates"].push_back(certificate_json(re->certificate(), lam));
            }
        }
        report["error"] = error;
        err << "pbpois " << c.command << ": " << e.what() << "\n";
    }

    report["config-echo"] = config_echo(c);
    report["verdict"] = outcome.verdict;
    report["exit-code"] = outcome.exit_code;
    report["timing-ms"]["total"] = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();

    const std::string text = report.dump(2) + "\n";
    if (!c.out.empty()) {
        std::ofstream f(c.out);
        if (!f) {
            err << "pbpois: cannot write " << c.out << "\n";
            result.exit_code = kUsage;
            result.err = err.str();
            return result;
        }
        f << text;
    } else {
        out << text;
    }
    result.exit_code = outcome.exit_code;
    result.out = out.str();
    result.err = err.str();
    result.report = std::move(report);
    return result;
}

}  // namespace pbpois::app
