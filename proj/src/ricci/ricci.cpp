#include "hlab/ricci.hpp"
#include "hlab/forms.hpp"
#include "hlab/rng.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>

namespace hlab {

namespace {

using cd = std::complex<double>;

double smallest_eigenvalue(const Mat& S)
{
    Eigen::SelfAdjointEigenSolver<Mat> eig(S, Eigen::EigenvaluesOnly);
    return eig.eigenvalues()(0);
}

double largest_eigenvalue(const Mat& S)
{
    Eigen::SelfAdjointEigenSolver<Mat> eig(S, Eigen::EigenvaluesOnly);
    return eig.eigenvalues()(eig.eigenvalues().size() - 1);
}

Vec stack(const Vec& A, const Vec& a)
{
    Vec x(A.size() + a.size());
    x << A, a;
    return x;
}

// Structure constants: bracket[g](al, be) = c^g_{al be} on the basis of H x C.
struct Structure {
    int dim;
    std::vector<Mat> bracket;

    explicit Structure(const Model& model) : dim(model.n() + model.d())
    {
        bracket.assign(static_cast<std::size_t>(dim), Mat::Zero(dim, dim));
        for (int l = 0; l < model.d(); ++l)
            bracket[static_cast<std::size_t>(model.n() + l)].topLeftCorner(model.n(), model.n()) = model.omega()[static_cast<std::size_t>(l)];
    }

    // Matrix of Y -> [X, Y].
    Mat ad(const Vec& X) const
    {
        Mat out = Mat::Zero(dim, dim);
        for (int g = 0; g < dim; ++g) out.row(g) = X.transpose() * bracket[static_cast<std::size_t>(g)];
        return out;
    }
};

struct Quadratic {
    double value;
    double trace_adstar;
    double trace_ad_sq;
};

Quadratic structure_quadratic(const Structure& s, const Vec& X)
{
    const Mat adX = s.ad(X);
    const Vec adstar_XX = adX.transpose() * X;
    Quadratic q{0.0, s.ad(adstar_XX).trace(), (adX * adX).trace()};
    double star = 0.0;
    double plain = 0.0;
    for (int y = 0; y < s.dim; ++y) {
        const Mat adY = s.ad(Vec::Unit(s.dim, y));
        star += (adY.transpose() * X).squaredNorm();
        plain += (adY * X).squaredNorm();
    }
    q.value = q.trace_adstar - 0.5 * q.trace_ad_sq + 0.25 * star - 0.5 * plain;
    return q;
}

Vec random_vec(NormalStream& rng, int size)
{
    Vec v(size);
    for (int i = 0; i < size; ++i) v(i) = rng.normal();
    return v;
}

} // namespace

double RicciForm::quadratic(const Vec& A, const Vec& a) const
{
    const Vec x = stack(A, a);
    if (x.size() != matrix.rows()) throw DimensionError("argument does not match Ricci form size");
    return x.dot(matrix * x);
}

RicciForm ricci_step2(const Model& model)
{
    const int n = model.n();
    const int d = model.d();
    RicciForm r;
    r.matrix = Mat::Zero(n + d, n + d);
    Mat horizontal = Mat::Zero(n, n);
    for (const Mat& W : model.omega()) horizontal += W * W.transpose();
    r.matrix.topLeftCorner(n, n) = -0.5 * horizontal;
    for (int l = 0; l < d; ++l)
        for (int m = 0; m < d; ++m)
            r.matrix(n + l, n + m) = 0.25 * model.omega()[static_cast<std::size_t>(l)].cwiseProduct(model.omega()[static_cast<std::size_t>(m)]).sum();
    r.k_lower = smallest_eigenvalue(r.matrix);
    return r;
}

StructureRicci ricci_structure_constants(const Model& model)
{
    const Structure s(model);
    const int N = s.dim;
    StructureRicci out;
    out.form.matrix = Mat::Zero(N, N);
    std::vector<double> diag(static_cast<std::size_t>(N));
    auto note = [&](const Quadratic& q) {
        out.max_trace_adstar = std::max(out.max_trace_adstar, std::abs(q.trace_adstar));
        out.max_trace_ad_sq = std::max(out.max_trace_ad_sq, std::abs(q.trace_ad_sq));
        return q.value;
    };
    for (int i = 0; i < N; ++i) diag[static_cast<std::size_t>(i)] = note(structure_quadratic(s, Vec::Unit(N, i)));
    for (int i = 0; i < N; ++i) {
        out.form.matrix(i, i) = diag[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < N; ++j) {
            const double both = note(structure_quadratic(s, Vec::Unit(N, i) + Vec::Unit(N, j)));
            const double off = 0.5 * (both - diag[static_cast<std::size_t>(i)] - diag[static_cast<std::size_t>(j)]);
            out.form.matrix(i, j) = out.form.matrix(j, i) = off;
        }
    }
    out.form.k_lower = smallest_eigenvalue(out.form.matrix);
    return out;
}

AlgebraElement ad_star(const Model& model, const AlgebraElement& X, const AlgebraElement& Y)
{
    check_conforms(model, X);
    check_conforms(model, Y);
    const Structure s(model);
    const Vec v = s.ad(stack(X.A, X.a)).transpose() * stack(Y.A, Y.a);
    return {v.head(model.n()), v.tail(model.d())};
}

AlgebraElement covariant_derivative(const Model& model, const AlgebraElement& X, const AlgebraElement& Y)
{
    const AlgebraElement br = bracket(model, X, Y);
    const AlgebraElement sx = ad_star(model, X, Y);
    const AlgebraElement sy = ad_star(model, Y, X);
    return {0.5 * (br.A - sx.A - sy.A), 0.5 * (br.a - sx.a - sy.a)};
}

double k_projected(const Model& model, int m)
{
    if (m < 1 || m > model.n()) throw DimensionError("projection size must lie in [1, n]");
    Mat S = Mat::Zero(m, m);
    for (const Mat& W : model.omega()) {
        const Mat block = W.topLeftCorner(m, m);
        S += block.transpose() * block;
    }
    return -0.5 * std::max(0.0, largest_eigenvalue(S));
}

double k_omega(const Model& model) { return k_projected(model, model.n()); }

double c_function(double t)
{
    if (std::abs(t) < 1e-6) return 1.0 - t / 2.0 + t * t / 12.0;
    return t / std::expm1(t);
}

std::vector<CheckRecord> ricci_closed_form_checks()
{
    std::vector<CheckRecord> out;
    NormalStream rng(0xc0ffee, 0, StreamTag::setup);

    for (int n = 1; n <= 5; ++n) {
        const RicciForm r = ricci_step2(make_real_heisenberg(n));
        Mat expected = Mat::Zero(2 * n + 1, 2 * n + 1);
        expected.topLeftCorner(2 * n, 2 * n) = -0.5 * Mat::Identity(2 * n, 2 * n);
        expected(2 * n, 2 * n) = 0.5 * n;
        out.push_back(exact("ricci.real_heisenberg.n" + std::to_string(n), "Ric = diag(-I/2, n/2) on the real Heisenberg group",
                            (r.matrix - expected).cwiseAbs().maxCoeff(), 0.0, 1e-10));
    }

    {
        const std::vector<double> q{1.0, 0.5, 1.0 / 3.0};
        const RicciForm r = ricci_step2(make_weighted_q(q));
        const Vec h = random_vec(rng, 6);
        const double c = rng.normal();
        double trq2 = 0.0, qh = 0.0;
        for (std::size_t j = 0; j < q.size(); ++j) {
            trq2 += q[j] * q[j];
            qh += q[j] * q[j] * (h(2 * j) * h(2 * j) + h(2 * j + 1) * h(2 * j + 1));
        }
        out.push_back(exact("ricci.weighted_q", "Ric(h,c) = (c^2 tr Q^2 - |Qh|^2)/2", r.quadratic(h, Vec::Constant(1, c)),
                            0.5 * (c * c * trq2 - qh), 1e-10));
    }

    for (int n = 1; n <= 3; ++n) {
        const ComplexModel cm = make_complex_heisenberg(n);
        const RicciForm r = ricci_step2(cm.model);
        const Vec z = random_vec(rng, 4 * n);
        const Vec c = random_vec(rng, 2);
        out.push_back(exact("ricci.complex_heisenberg.n" + std::to_string(n), "Ric(z,c) = n|c|^2 - |z|^2", r.quadratic(z, c),
                            n * c.squaredNorm() - z.squaredNorm(), 1e-10));

        // Complex-bilinear evaluation with the realification factor 2.
        const Eigen::VectorXcd A = complexify(z);
        const cd a(c(0), c(1));
        const CMat& M = cm.form.comps.front();
        double centre = 0.0, horizontal = 0.0;
        for (int j = 0; j < cm.form.dim; ++j)
            for (int k = 0; k < cm.form.dim; ++k) centre += std::norm(a * std::conj(M(k, j)));
        for (int k = 0; k < cm.form.dim; ++k) horizontal += std::norm((M.row(k) * A)(0));
        out.push_back(exact("ricci.complex_factor.n" + std::to_string(n), "realified Ric = 2 x complex-bilinear formula", r.quadratic(z, c),
                            2.0 * (0.25 * centre - 0.5 * horizontal), 1e-10));
    }

    {
        const std::vector<double> q{1.0, 0.5};
        const ComplexModel cm = make_weighted_q_conjugated(q);
        const RicciForm r = ricci_step2(cm.model);
        const Vec k = random_vec(rng, 8);
        const Vec c = random_vec(rng, 2);
        double trq2 = 0.0, qk = 0.0;
        for (int copy = 0; copy < 2; ++copy)
            for (std::size_t j = 0; j < q.size(); ++j) {
                const auto base = static_cast<Eigen::Index>(2 * (static_cast<std::size_t>(copy) * q.size() + j));
                qk += q[j] * q[j] * (k(base) * k(base) + k(base + 1) * k(base + 1));
            }
        for (double v : q) trq2 += v * v;
        out.push_back(exact("ricci.weighted_q_conjugated", "Ric(k1,k2,c) = |c|^2 tr Q^2 - |Qk1|^2 - |Qk2|^2", r.quadratic(k, c),
                            c.squaredNorm() * trq2 - qk, 1e-10));
    }

    {
        std::vector<Mat> alpha_omega;
        for (int l = 0; l < 2; ++l) {
            Mat W(3, 3);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) W(i, j) = rng.normal();
            alpha_omega.push_back(W - W.transpose());
        }
        const Model alpha(3, 2, alpha_omega);
        const std::vector<double> q{1.0, 0.5, 1.0 / 3.0};
        const RicciForm r = ricci_step2(make_block_sequence(alpha, q));
        const RicciForm ra = ricci_step2(alpha);
        const Vec v = random_vec(rng, 9);
        const Vec c = random_vec(rng, 2);
        double expected = 0.0;
        for (std::size_t j = 0; j < q.size(); ++j) expected += q[j] * q[j] * ra.quadratic(v.segment(static_cast<Eigen::Index>(3 * j), 3), c);
        out.push_back(exact("ricci.block_sequence", "Ric(v,c) = sum_j q_j^2 Ric_alpha(v_j, c)", r.quadratic(v, c), expected, 1e-10));
    }

    {
        // Path space over V = C^2 with the symplectic form and eta = delta_1.
        const int J = 200;
        const ComplexForm alpha = complex_symplectic_form(1);
        const GridMeasure eta = GridMeasure::dirac(1.0);
        const ComplexModel cm = make_path_space(alpha, eta, J);
        const RicciForm r = ricci_step2(cm.model);
        Eigen::VectorXcd x(J * 2);
        for (int i = 0; i < J * 2; ++i) {
            // Coefficients decay like a finite-energy path.
            const double decay = 1.0 / (1 + i / 2);
            const double re = rng.normal() * decay;
            const double im = rng.normal() * decay;
            x(i) = cd(re, im);
        }
        const Vec c = random_vec(rng, 2);
        const cd cz(c(0), c(1));

        auto h_at = [&](double s) {
            Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2);
            for (int j = 0; j < J; ++j) v += sine_basis(j + 1, s) * x.segment(2 * j, 2);
            return v;
        };
        const CMat& A = alpha.comps.front();
        double pairing_sq = 0.0;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) pairing_sq += std::norm(cz * std::conj(A(a, b)));
        double centre = 0.0, horizontal = 0.0;
        for (std::size_t i = 0; i < eta.nodes.size(); ++i)
            for (std::size_t k = 0; k < eta.nodes.size(); ++k) {
                const double s = eta.nodes[i], t = eta.nodes[k];
                const double wgt = eta.weights[i] * eta.weights[k];
                centre += wgt * std::pow(std::min(s, t), 2);
                const Eigen::VectorXcd hs = h_at(s), ht = h_at(t);
                cd tr(0.0, 0.0);
                for (int b = 0; b < 2; ++b) {
                    const cd alpha_s = (hs.transpose() * A.col(b))(0);
                    const cd alpha_t = (ht.transpose() * A.col(b))(0);
                    tr += alpha_s * std::conj(alpha_t);
                }
                horizontal += wgt * std::min(s, t) * tr.real();
            }
        const double expected = 0.5 * centre * pairing_sq - horizontal;
        const double got = r.quadratic(realify(x), c);
        CheckRecord rec = exact("ricci.path_space.delta1", "path-space Ricci form, eta = delta_1, truncated sine basis", got, expected,
                                1e-2 * std::max(1.0, std::abs(expected)));
        rec.rule = "|lhs-rhs| <= 1e-2 relative";
        out.push_back(rec);
    }
    return out;
}

} // namespace hlab
