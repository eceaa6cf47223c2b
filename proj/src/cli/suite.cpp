#include "hlab/cli.hpp"

#include "hlab/calculus.hpp"
#include "hlab/forms.hpp"
#include "hlab/geometry.hpp"
#include "hlab/heat_kernel.hpp"
#include "hlab/quasi_invariance.hpp"
#include "hlab/ricci.hpp"
#include "hlab/rng.hpp"
#include "hlab/stochastics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

namespace hlab {

using nlohmann::json;

namespace {

struct Context {
    const Model& model;
    const ExperimentConfig& config;
    const json& params;
    std::uint64_t seed;

    MonteCarloSpec mc() const
    {
        MonteCarloSpec s;
        s.T = params.value("T", config.T);
        s.steps = params.value("steps", config.steps);
        s.replicas = params.value("replicas", config.replicas);
        s.seed = seed;
        return s;
    }

    QiSpec qi() const
    {
        const std::string rule = params.value("rule", std::string("left_point"));
        if (rule != "left_point" && rule != "midpoint") throw ConfigError("rule must be left_point or midpoint");
        return {mc(), rule == "midpoint" ? AreaRule::midpoint : AreaRule::left_point};
    }
};

using Records = std::vector<CheckRecord>;
using CheckFn = std::function<Records(const Context&)>;

struct CheckEntry {
    std::string name;
    std::string group;
    std::string description;
    CheckFn run;
};

std::uint64_t name_hash(const std::string& s)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    return h;
}

Vec random_vec(NormalStream& rng, int size)
{
    Vec v(size);
    for (int i = 0; i < size; ++i) v(i) = rng.normal();
    return v;
}

GroupElement random_element(const Model& m, NormalStream& rng) { return {random_vec(rng, m.n()), random_vec(rng, m.d())}; }

double max_gap(const GroupElement& x, const GroupElement& y)
{
    return std::max((x.w - y.w).cwiseAbs().maxCoeff(), (x.c - y.c).cwiseAbs().maxCoeff());
}

double scale_of(const GroupElement& x) { return 1.0 + std::max(x.w.cwiseAbs().maxCoeff(), x.c.cwiseAbs().maxCoeff()); }

Polynomial random_polynomial(const Model& model, NormalStream& rng, int terms, int max_degree)
{
    const int vars = model.n() + model.d();
    Polynomial p(vars);
    for (int t = 0; t < terms; ++t) {
        Polynomial::Exponents e(static_cast<std::size_t>(vars), 0);
        const int degree = static_cast<int>(rng.uniform() * (max_degree + 1));
        for (int k = 0; k < degree; ++k) ++e[static_cast<std::size_t>(std::min(vars - 1, static_cast<int>(rng.uniform() * vars)))];
        p.add_term(e, std::round(rng.normal() * 8.0) / 4.0);
    }
    return p;
}

Records group_identities(const Context& ctx)
{
    const Model& m = ctx.model;
    NormalStream rng(ctx.seed, 0, StreamTag::setup);
    const FormConstants k = compute_constants(m);
    double assoc = 0, bch = 0, comm = 0, dil = 0, product_excess = -1e300;
    for (int t = 0; t < 50; ++t) {
        const GroupElement g1 = random_element(m, rng), g2 = random_element(m, rng), g3 = random_element(m, rng);
        const GroupElement lhs = multiply(m, multiply(m, g1, g2), g3);
        const GroupElement rhs = multiply(m, g1, multiply(m, g2, g3));
        assoc = std::max(assoc, max_gap(lhs, rhs) / scale_of(lhs));
        const AlgebraElement b = bracket(m, log_map(g1), log_map(g2));
        const GroupElement via_bch{(g1.w + g2.w) + 0.5 * b.A, (g1.c + g2.c) + 0.5 * b.a};
        bch = std::max(bch, max_gap(multiply(m, g1, g2), via_bch));
        const GroupElement commutator = multiply(m, multiply(m, multiply(m, g1, g2), inverse(g1)), inverse(g2));
        comm = std::max(comm, max_gap(commutator, exp_map(b)) / scale_of(commutator));
        const double lambda = 0.5 + rng.uniform() * 2.0;
        const GroupElement d1 = dilate(lambda, multiply(m, g1, g2));
        dil = std::max(dil, max_gap(d1, multiply(m, dilate(lambda, g1), dilate(lambda, g2))) / scale_of(d1));
        const double n1 = gcm_norm(g1), n2 = gcm_norm(g2);
        product_excess = std::max(product_excess, gcm_norm(multiply(m, g1, g2)) - (n1 + n2 + 0.5 * k.c_constant * n1 * n2));
    }
    CheckRecord product{"group/product_norm", "|g1 g2| <= |g1| + |g2| + (C/2) |g1| |g2|", product_excess, 0.0, 0, 0, -product_excess,
                        "max excess <= 0", product_excess <= 1e-12};
    return {exact("group/associativity", "(g1 g2) g3 = g1 (g2 g3)", assoc, 0.0, 1e-12),
            exact("group/bch", "g1 g2 = g1 + g2 + [g1, g2] / 2", bch, 0.0, 0.0),
            exact("group/commutator", "g1 g2 g1^{-1} g2^{-1} = exp([g1, g2])", comm, 0.0, 1e-12),
            exact("group/dilation_homomorphism", "dilate(l, g1 g2) = dilate(l, g1) dilate(l, g2)", dil, 0.0, 1e-12), product};
}

Records norm_constants(const Context& ctx)
{
    const Model& m = ctx.model;
    const FormConstants k = compute_constants(m);
    NormalStream rng(ctx.seed, 0, StreamTag::setup);
    double excess = -1e300;
    for (int t = 0; t < 200; ++t) {
        const AlgebraElement h1{random_vec(rng, m.n()), random_vec(rng, m.d())};
        const AlgebraElement h2{random_vec(rng, m.n()), random_vec(rng, m.d())};
        excess = std::max(excess, gcm_norm(bracket(m, h1, h2)) - k.c_constant * gcm_norm(h1) * gcm_norm(h2));
    }
    Records out{
        CheckRecord{"forms/uniform_bracket", "uniform norm lower <= upper", k.uniform_lower, k.uniform_upper, 0, 0,
                    k.uniform_upper - k.uniform_lower, "lhs <= rhs", k.uniform_lower <= k.uniform_upper * (1 + 1e-12)},
        CheckRecord{"forms/bracket_continuity", "|[h1, h2]| <= C |h1| |h2|", excess, 0.0, 0, 0, -excess, "max excess <= 0", excess <= 1e-12},
    };
    double q2 = 0;
    const std::vector<double> q{1.0, 0.5, 1.0 / 3.0};
    for (double x : q) q2 += x * x;
    out.push_back(exact("forms/hs_real_heisenberg", "|omega|_2^2 = 2n", hs_norm_sq(make_real_heisenberg(3)), 6.0, 1e-12));
    out.push_back(exact("forms/hs_weighted_q", "|omega|_2^2 = 2 sum q_j^2", hs_norm_sq(make_weighted_q(q)), 2.0 * q2, 1e-12));
    const Model alpha = make_real_heisenberg(1);
    out.push_back(exact("forms/hs_block_sequence", "|omega|_2^2 = |alpha|_2^2 sum q_j^2", hs_norm_sq(make_block_sequence(alpha, q)),
                        hs_norm_sq(alpha) * q2, 1e-12));
    return out;
}

Records gaussian_identities(const Context& ctx)
{
    const GaussianIdentityReport r = gaussian_identity_checks(ctx.model, static_cast<int>(std::max<std::size_t>(1000, ctx.mc().replicas)), ctx.seed);
    return {against_value("forms/gaussian_form_moment", "E|omega(w, w')|^2 = |omega|_2^2", Estimate{r.form_estimate, r.form_se, 0}, r.form_exact),
            against_value("forms/gaussian_functional", "E|omega(w, .)|^2 = |omega|_2^2", Estimate{r.functional_estimate, r.functional_se, 0},
                          r.functional_exact)};
}

Records generator_identities(const Context& ctx)
{
    const Model& m = ctx.model;
    NormalStream rng(ctx.seed, 0, StreamTag::setup);
    double decomposition = 0, commutator = 0;
    for (int t = 0; t < 20; ++t) {
        const Polynomial f = random_polynomial(m, rng, 5, 4);
        decomposition = std::max(decomposition, generator_L(m, f).distance(generator_L_decomposed(m, f)));
        const AlgebraElement h{random_vec(rng, m.n()), random_vec(rng, m.d())};
        const AlgebraElement k{random_vec(rng, m.n()), random_vec(rng, m.d())};
        const Polynomial lhs = left_invariant_derivative(m, h, left_invariant_derivative(m, k, f)) -
                               left_invariant_derivative(m, k, left_invariant_derivative(m, h, f));
        commutator = std::max(commutator, lhs.distance(left_invariant_derivative(m, bracket(m, h, k), f)));
    }
    return {exact("calculus/generator_decomposition", "L = sum of squares = flat Laplacians + mixed terms", decomposition, 0.0, 1e-12),
            exact("calculus/vector_field_commutator", "h~k~f - k~h~f = [h, k]~f", commutator, 0.0, 1e-12)};
}

Records ricci(const Context& ctx)
{
    Records out = ricci_closed_form_checks();
    const RicciForm step2 = ricci_step2(ctx.model);
    const StructureRicci generic = ricci_structure_constants(ctx.model);
    out.push_back(exact("ricci/structure_constants", "step-2 Ricci form = generic left-invariant formula",
                        (step2.matrix - generic.form.matrix).cwiseAbs().maxCoeff(), 0.0, 1e-10));
    out.push_back(exact("ricci/k_omega", "k(omega) = -(1/2) sup |omega(., A)|^2 = smallest Ricci eigenvalue on H", k_omega(ctx.model),
                        step2.k_lower, 1e-10));
    return out;
}

Records geometry(const Context& ctx)
{
    const Model& m = ctx.model;
    Records out;
    NormalStream rng(ctx.seed, 0, StreamTag::setup);
    const Vec A = random_vec(rng, m.n());
    const GroupElement flat{A, Vec::Zero(m.d())};
    const DistanceEstimate line = optimize_distance(m, GroupElement::identity(m), flat, 8, 100);
    out.push_back(exact("geometry/straight_line", "d(e, (A, 0)) = |A|", line.estimate, A.norm(), 1e-6));

    if (m.n() >= 2) {
        Vec e1 = Vec::Zero(m.n()), e2 = Vec::Zero(m.n());
        e1(0) = 1.0;
        e2(1) = 1.0;
        const DiscretePath loop = horizontal_loop(m, e1, e2, 100000);
        const GroupElement end = loop.points.back();
        const double endpoint_gap = std::max(end.w.cwiseAbs().maxCoeff(), (end.c - std::numbers::pi * m.form(e1, e2)).cwiseAbs().maxCoeff());
        out.push_back(exact("geometry/loop_endpoint", "loop ends at (0, pi omega(A, B))", endpoint_gap, 0.0, 1e-6));
        out.push_back(exact("geometry/loop_length", "loop length 2 pi for orthonormal A, B", path_length(m, loop), 2.0 * std::numbers::pi, 1e-6));
    }

    std::vector<double> times;
    std::vector<Vec> pts;
    for (int i = 0; i <= 40; ++i) {
        times.push_back(i / 40.0);
        pts.push_back(i == 0 ? Vec::Zero(m.n()) : Vec(pts.back() + 0.2 * random_vec(rng, m.n())));
    }
    const DiscretePath lift = horizontal_lift(m, times, pts, Vec::Zero(m.d()));
    const double base = path_length(m, lift);
    double scaling = 0.0;
    for (double lambda : {0.5, 2.0, 3.7}) scaling = std::max(scaling, std::abs(path_length(m, dilate_path(lambda, lift)) - lambda * base) / (lambda * base));
    out.push_back(exact("geometry/dilation_scaling", "length(dilate(l, path)) = l length(path)", scaling, 0.0, 1e-10));

    if (form_rank(m) == m.d()) {
        double worst = 1e300;
        for (int t = 0; t < 5; ++t) {
            GroupElement target{random_vec(rng, m.n()), random_vec(rng, m.d())};
            const DistanceEstimate est = optimize_distance(m, GroupElement::identity(m), target, 16, 200);
            worst = std::min(worst, cc_upper(m, target).value - est.estimate);
        }
        out.push_back(CheckRecord{"geometry/cc_upper_dominates", "cc_upper >= optimized path length", worst, 0.0, 0, 0, worst, "min gap >= 0",
                                  worst >= -1e-9});
    }
    return out;
}

Records brownian_moments(const Context& ctx) { return driving_moment_checks(ctx.model, ctx.mc()); }
Records area_variance(const Context& ctx) { return {area_variance_check(ctx.model, ctx.mc())}; }
Records qv(const Context& ctx) { return {quadratic_variation_check(ctx.model, ctx.mc())}; }
Records midpoint(const Context& ctx) { return midpoint_gap_check(ctx.model, ctx.mc()); }

Records cmk(const Context& ctx)
{
    return {cmk_check(ctx.params.value("lambda", 1.0), ctx.mc()).record};
}

Records exp_moment(const Context& ctx)
{
    const FormConstants k = compute_constants(ctx.model);
    return {exp_moment_area(ctx.model, ctx.params.value("lambda", 0.3), k.gamma, ctx.mc()).record};
}

Records supermartingale(const Context& ctx)
{
    MonteCarloSpec s = ctx.mc();
    s.T = ctx.params.value("T", 0.5);
    return {supermartingale_check(ctx.model, s)};
}

Records refinement(const Context& ctx)
{
    MonteCarloSpec s = ctx.mc();
    s.steps = ctx.params.value("steps", 16);
    s.replicas = ctx.params.value("replicas", std::min<std::size_t>(s.replicas, 2000));
    const ConvergenceReport rep = refinement_convergence(ctx.model, s, ctx.params.value("halvings", 3));
    const double worst = *std::min_element(rep.ratios.begin(), rep.ratios.end());
    const double threshold = std::numbers::sqrt2 * 0.8;
    return {CheckRecord{"stochastics/refinement", "RMS gap of M_T shrinks by sqrt(2) per halving", worst, threshold, 0, 0, worst - threshold,
                        "min ratio >= 0.8 sqrt(2)", rep.pass}};
}

Records projection(const Context& ctx)
{
    const json model_spec = ctx.params.value("model", json{{"catalog", "block-sequence"}, {"params", {{"J", 16}}}});
    const Model m = build_model(model_spec);
    MonteCarloSpec s = ctx.mc();
    s.replicas = ctx.params.value("replicas", std::min<std::size_t>(s.replicas, 1000));
    const std::vector<int> sizes = ctx.params.value("sizes", std::vector<int>{2, 4, 8, 16});
    const ProjectionTrend t = projection_convergence(m, sizes, s);
    Records out;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        const Estimate& e = t.max_sq_gap[i];
        const double prev = i == 0 ? e.mean : t.max_sq_gap[i - 1].mean;
        out.push_back(CheckRecord{"stochastics/projection_gap/m=" + std::to_string(sizes[i]), "E max_t |g - g_m|^2 decreases in m", e.mean, prev,
                                  e.se, 0, prev - e.mean, "strictly below previous size", i == 0 || e.mean < prev});
    }
    out.push_back(CheckRecord{"stochastics/projection_identity", "g_P^{-1} pi_P(g) = (0, (1/2) sum [omega(B, dB) - omega(PB, PdB)])",
                              t.identity_exact ? 1.0 : 0.0, 1.0, 0, 0, 0, "exact rational equality", t.identity_exact});
    return out;
}

Records rotation(const Context& ctx) { return basis_rotation_check(ctx.model, ctx.mc()); }
Records domination(const Context& ctx) { return {domination_check(ctx.model, ctx.params.value("m", 1), ctx.mc())}; }

Records heat_equation(const Context& ctx)
{
    Records out;
    for (const NamedPolynomial& f : heat_polynomial_suite(ctx.model)) out.push_back(heat_equation_check(ctx.model, f, ctx.mc(), ctx.params.value("intervals", 16)));
    return out;
}

Records inversion(const Context& ctx)
{
    const EndpointSample s = sample_nu(ctx.model, ctx.mc());
    return inversion_check(ctx.model, s, heat_polynomial_suite(ctx.model));
}

Records exp_rho(const Context& ctx)
{
    const EndpointSample s = sample_nu(ctx.model, ctx.mc());
    return {exp_rho_moment(ctx.model, ctx.params.value("epsilon", 0.05), s).record};
}

Records area_moments(const Context& ctx) { return moment_report(ctx.model, sample_nu(ctx.model, ctx.mc())); }

Records growth(const Context& ctx)
{
    Records out;
    const std::vector<double> times = ctx.params.value("times", std::vector<double>{0.25, 0.5, 1.0, 2.0});
    for (double p : {2.0, 4.0}) out.push_back(moment_growth(ctx.model, p, times, ctx.mc()).record);
    return out;
}

Records scaling(const Context& ctx)
{
    MonteCarloSpec s = ctx.mc();
    s.T = ctx.params.value("T", 2.0);
    return scaling_check(ctx.model, s);
}

CMPath default_cm_path(const Model& m, double T)
{
    AlgebraElement mid = AlgebraElement::zero(m), end = AlgebraElement::zero(m);
    mid.A(0) = 0.5;
    if (m.n() > 1) mid.A(1) = -0.25;
    mid.a(0) = 0.2;
    end.A(0) = 0.25;
    if (m.n() > 1) end.A(1) = 0.5;
    end.a(0) = -0.3;
    return CMPath({0.0, T / 2, T}, {AlgebraElement::zero(m), mid, end});
}

std::vector<PathFunctional> default_functionals(const Model& m, double T)
{
    const Polynomial w1 = w_coordinate(m, 0);
    const Polynomial c1 = c_coordinate(m, 0);
    const Polynomial second = m.n() > 1 ? w_coordinate(m, 1) : w1;
    return {
        {"one", {T}, {constant_polynomial(m, 1.0)}},
        {"w1_at_T", {T}, {w1}},
        {"c_half_T_times_w2_T", {T / 2, T}, {c1, second}},
    };
}

Records qi_normalization(const Context& ctx)
{
    QiSpec q = ctx.qi();
    q.mc.steps += q.mc.steps % 2;
    Records out{ztilde_normalization(ctx.model, default_cm_path(ctx.model, q.mc.T), q)};
    for (const QiCase& c : qi_case_suite(ctx.model)) {
        CheckRecord r = zeta_normalization(ctx.model, c.h, q);
        r.name += "/" + c.name;
        out.push_back(r);
    }
    return out;
}

Records path_qi(const Context& ctx)
{
    QiSpec q = ctx.qi();
    q.mc.steps += q.mc.steps % 2;
    const CMPath k = default_cm_path(ctx.model, q.mc.T);
    Records out;
    for (const PathFunctional& F : default_functionals(ctx.model, q.mc.T)) out.push_back(path_qi_check(ctx.model, k, F, q));
    return out;
}

Records heat_qi(const Context& ctx)
{
    Records out;
    for (const QiCase& c : qi_case_suite(ctx.model)) out.push_back(heat_qi_check(ctx.model, c.h, c.f, c.name, ctx.qi()));
    return out;
}

Records right_qi(const Context& ctx)
{
    Records out;
    for (const QiCase& c : qi_case_suite(ctx.model)) out.push_back(right_qi_check(ctx.model, c.h, c.f, c.name, ctx.qi()));
    return out;
}

Records density_moment(const Context& ctx)
{
    QiSpec q = ctx.qi();
    q.mc.steps += q.mc.steps % 2;
    const CMPath k = default_cm_path(ctx.model, q.mc.T);
    return {density_moment_probe(ctx.model, k, 1.0, q).record, density_moment_probe(ctx.model, k, 2.0, q).record};
}

Records ibp_path_checks(const Context& ctx)
{
    QiSpec q = ctx.qi();
    q.mc.steps += q.mc.steps % 2;
    const CMPath k = default_cm_path(ctx.model, q.mc.T);
    Records out;
    for (const PathFunctional& F : default_functionals(ctx.model, q.mc.T)) out.push_back(ibp_path(ctx.model, k, F, q));
    return out;
}

Records ibp_heat_checks(const Context& ctx)
{
    Records out;
    for (const QiCase& c : qi_case_suite(ctx.model)) out.push_back(ibp_heat(ctx.model, c.h, c.f, c.name, ctx.qi()));
    return out;
}

Records ibp_heat_left_checks(const Context& ctx)
{
    Records out;
    for (const QiCase& c : qi_case_suite(ctx.model)) out.push_back(ibp_heat_left(ctx.model, c.h, c.f, c.name, ctx.qi()));
    return out;
}

Records gradient_adjoint(const Context& ctx)
{
    const Model& m = ctx.model;
    const Polynomial u = w_coordinate(m, 0) + c_coordinate(m, 0);
    const Polynomial v = constant_polynomial(m, 1.0) + w_coordinate(m, m.n() > 1 ? 1 : 0);
    return gradient_adjoint_check(m, qi_case_suite(m)[2].h, u, v, ctx.qi());
}

Records lp_bound(const Context& ctx)
{
    AlgebraElement h = AlgebraElement::zero(ctx.model);
    h.A(0) = 1.0;
    const double d = lp_distance(ctx.model, h);
    Records out;
    for (double p : {1.5, 2.0}) {
        Records r = lp_bound_dual_check(ctx.model, h, p, lp_test_suite(ctx.model), ctx.mc(), d);
        out.insert(out.end(), r.begin(), r.end());
    }
    return out;
}

Records lsi(const Context& ctx)
{
    Records out;
    for (const NamedTest& f : lsi_test_suite(ctx.model)) out.push_back(lsi_check(ctx.model, f, ctx.mc()));
    const Model flat = Model::zero(ctx.model.n(), ctx.model.d());
    CheckRecord abelian = lsi_check(flat, {"abelian_one_plus_half_w1", constant_polynomial(flat, 1.0) + 0.5 * w_coordinate(flat, 0)}, ctx.mc());
    out.push_back(abelian);
    return out;
}

const std::vector<CheckEntry>& registry()
{
    static const std::vector<CheckEntry> entries{
        {"group_identities", "forms", "Associativity, g1 g2 = g1 + g2 + [g1, g2]/2, commutator = exp of bracket, dilation homomorphism, product norm bound.", group_identities},
        {"norm_constants", "forms", "Bracket continuity constant, uniform norm bracket, Hilbert-Schmidt norms 2n, 2 sum q^2 and |alpha|^2 sum q^2.", norm_constants},
        {"gaussian_identities", "forms", "E|omega(w, w')|^2 and E|omega(w, .)|^2 equal |omega|_2^2 for independent standard Gaussians.", gaussian_identities},
        {"generator", "forms", "Generator as a sum of squares equals its flat-Laplacian decomposition; vector-field commutator equals the bracket field.", generator_identities},
        {"ricci", "forms", "Ricci(A, a) = -(1/2) sum |omega(A, e_j)|^2 + (1/4) sum <omega(e_i, e_j), a>^2, matched against the generic structure-constant formula and closed forms.", ricci},
        {"geometry", "forms", "d(e, (A, 0)) = |A|, loop endpoint (0, pi omega(A, B)) with length 2 pi, dilation scales horizontal length, cc_upper dominates.", geometry},
        {"brownian_moments", "stochastics", "Brownian mean, variance, covariance min(s, t), centred g(T), E|w(T)|^2 = nT, uncorrelated area increments.", brownian_moments},
        {"area_variance", "stochastics", "E|M_T|^2 = (T^2/2) |omega|_2^2 for the Ito area.", area_variance},
        {"quadratic_variation", "stochastics", "E|M_T|^2 = E<M>_T.", qv},
        {"midpoint_gap", "stochastics", "Left-point and midpoint area sums coincide: sum omega(dB, dB)/2 = 0.", midpoint},
        {"cameron_martin_kac", "stochastics", "E exp((lambda^2/2) int_0^T b^2) = cos(lambda T)^(-1/2).", cmk},
        {"exp_moment_area", "stochastics", "E exp(lambda |M_T|) <= 2 exp(2 c(k) lambda^2 d T^2 |omega|_2^2), k = 2 lambda d sqrt(gamma) T.", exp_moment},
        {"supermartingale", "stochastics", "E exp(2 N_T - 2 <N>_T) <= 1 for N the first area component.", supermartingale},
        {"refinement", "stochastics", "Strong convergence of the area under coupled grid refinement.", refinement},
        {"projection", "stochastics", "E max_t |g - g_m|^2 decreases in m; projection defect identity in exact arithmetic.", projection},
        {"basis_rotation", "stochastics", "Moments of M_T unchanged under an orthogonal change of basis of H.", rotation},
        {"domination", "stochastics", "Smaller Gaussian covariance gives smaller monotone moments of the W-norm.", domination},
        {"heat_equation", "heat", "nu_T(f) = f(e) + (1/2) int_0^T nu_t(L f) dt for eight polynomials.", heat_equation},
        {"inversion", "heat", "nu_T is invariant under g -> g^{-1}.", inversion},
        {"exp_rho_moment", "heat", "E exp((eps/T) rho^2(g(T))) finite and stable in the sample size.", exp_rho},
        {"area_moments", "heat", "E|M_T|^2 closed form and E|M_T|^4 <= 81 (E|M_T|^2)^2.", area_moments},
        {"moment_growth", "heat", "E|M_T|^p grows like T^p (regression slope p +- 0.5).", growth},
        {"scaling", "heat", "g(T) has the law of (sqrt T w(1), sqrt T B0(1) + T M(1)/2); the area part scales like the dilation.", scaling},
        {"qi_normalization", "qi", "E Z~_k = 1 and E zeta_h = 1, zeta with energy term -|A|^2/(2T).", qi_normalization},
        {"path_qi", "qi", "E F(k g) = E[Z~_k F(g)] for path functionals.", path_qi},
        {"heat_qi", "qi", "E f(h g(T)) = E[f(g(T)) zeta_h].", heat_qi},
        {"right_qi", "qi", "E f(g(T) h) = E[f(g(T)^{-1}) zeta_{h^{-1}}].", right_qi},
        {"density_moment", "qi", "E Z~_k = 1 and E Z~_k^2 finite and stable.", density_moment},
        {"ibp_path", "ibp", "E (k^ F)(g) = E[F(g) z_k], z_k = int <A', dB> + <a' - omega(B, A'), dB0>.", ibp_path_checks},
        {"ibp_heat", "ibp", "E (h^ f)(g(T)) = E[f(g(T)) z_h] with k(t) = (t/T) h.", ibp_heat_checks},
        {"ibp_heat_left", "ibp", "E (h~ f)(g(T)) = -E[f(g(T)^{-1}) z_h].", ibp_heat_left_checks},
        {"gradient_adjoint", "ibp", "Leibniz rule for h~ and E[(h~u) v] = E[u (-h~v + z^l v)].", gradient_adjoint},
        {"lsi", "lsi", "Ent(f^2) <= 2 ((1 - e^{-kT}) / k) E|grad f|^2 with k = k(omega); abelian limit 2T.", lsi},
        {"lp_bound", "lsi", "E f(h g(T)) <= exp(c(k T) (p - 1) d^2 / (2T)) |f|_{L^q}, c(t) = t / (e^t - 1).", lp_bound},
    };
    return entries;
}

const CheckEntry& find_entry(const std::string& name)
{
    for (const CheckEntry& e : registry())
        if (e.name == name) return e;
    throw ConfigError("unknown check: " + name);
}

} // namespace

std::vector<std::string> check_names()
{
    std::vector<std::string> out;
    for (const CheckEntry& e : registry()) out.push_back(e.name);
    return out;
}

std::vector<std::string> check_group(const std::string& group)
{
    if (group == "all") return check_names();
    std::vector<std::string> out;
    for (const CheckEntry& e : registry())
        if (e.group == group) out.push_back(e.name);
    if (out.empty()) throw ConfigError("unknown check group: " + group);
    return out;
}

std::string describe_check(const std::string& name)
{
    const CheckEntry& e = find_entry(name);
    return e.name + " [" + e.group + "]: " + e.description;
}

bool Report::pass() const
{
    return std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.pass; });
}

Report run(const ExperimentConfig& config)
{
    const Model model = build_model(config.model);
    Report report;
    json names = json::array();
    for (const CheckRequest& r : config.checks) names.push_back(r.name);
    report.environment = {{"seed", config.seed},   {"T", config.T},         {"steps", config.steps},
                          {"replicas", config.replicas}, {"model", config.model}, {"checks", names},
                          {"version", "1.0.0"}};
    for (const CheckRequest& request : config.checks) {
        const CheckEntry& entry = find_entry(request.name);
        const Context ctx{model, config, request.params, splitmix64(config.seed ^ name_hash(request.name))};
        try {
            Records records = entry.run(ctx);
            report.records.insert(report.records.end(), records.begin(), records.end());
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            report.records.push_back(CheckRecord{request.name + "/error", entry.description, 0, 0, 0, 0, 0, std::string("error: ") + e.what(), false});
        }
    }
    return report;
}

} // namespace hlab
