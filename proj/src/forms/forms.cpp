#include "hlab/forms.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hlab {

namespace {

using cd = std::complex<double>;

void require_positive(const std::vector<double>& q)
{
    if (q.empty()) throw std::invalid_argument("weight sequence must be non-empty");
    for (double v : q)
        if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("weights must be positive");
}

// [[0, D], [-D, 0]] on C^{2J} for a diagonal D.
ComplexForm paired_form(const std::vector<double>& diag)
{
    const int J = static_cast<int>(diag.size());
    CMat M = CMat::Zero(2 * J, 2 * J);
    for (int j = 0; j < J; ++j) {
        M(j, J + j) = diag[static_cast<std::size_t>(j)];
        M(J + j, j) = -diag[static_cast<std::size_t>(j)];
    }
    return {2 * J, 1, {M}};
}

} // namespace

std::vector<cd> ComplexForm::apply(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) const
{
    if (u.size() != dim || v.size() != dim) throw DimensionError("complex form arguments have wrong length");
    std::vector<cd> out;
    out.reserve(comps.size());
    for (const CMat& M : comps) out.push_back(u.transpose() * M * v);
    return out;
}

double ComplexForm::hs_norm_sq() const
{
    double s = 0.0;
    for (const CMat& M : comps) s += M.cwiseAbs2().sum();
    return s;
}

Model realify(const ComplexForm& form, Vec w_weights)
{
    const int n = 2 * form.dim;
    const int d = 2 * form.dim_c;
    std::vector<Mat> omega(static_cast<std::size_t>(d), Mat::Zero(n, n));
    const cd unit[2] = {cd(1.0, 0.0), cd(0.0, 1.0)};
    for (int l = 0; l < form.dim_c; ++l) {
        const CMat& M = form.comps[static_cast<std::size_t>(l)];
        for (int j = 0; j < form.dim; ++j)
            for (int k = 0; k < form.dim; ++k) {
                if (M(j, k) == cd(0.0, 0.0)) continue;
                for (int e = 0; e < 2; ++e)
                    for (int f = 0; f < 2; ++f) {
                        const cd v = unit[e] * unit[f] * M(j, k);
                        omega[static_cast<std::size_t>(2 * l)](2 * j + e, 2 * k + f) = v.real();
                        omega[static_cast<std::size_t>(2 * l + 1)](2 * j + e, 2 * k + f) = v.imag();
                    }
            }
    }
    return Model(n, d, std::move(omega), std::move(w_weights));
}

Eigen::VectorXcd complexify(const Vec& real)
{
    Eigen::VectorXcd z(real.size() / 2);
    for (Eigen::Index k = 0; k < z.size(); ++k) z(k) = cd(real(2 * k), real(2 * k + 1));
    return z;
}

Vec realify(const Eigen::VectorXcd& z)
{
    Vec out(2 * z.size());
    for (Eigen::Index k = 0; k < z.size(); ++k) {
        out(2 * k) = z(k).real();
        out(2 * k + 1) = z(k).imag();
    }
    return out;
}

Model make_real_heisenberg(int n_complex)
{
    if (n_complex < 1) throw std::invalid_argument("n_complex must be at least 1");
    return make_weighted_q(std::vector<double>(static_cast<std::size_t>(n_complex), 1.0));
}

ComplexForm complex_symplectic_form(int pairs)
{
    if (pairs < 1) throw std::invalid_argument("need at least one pair");
    return paired_form(std::vector<double>(static_cast<std::size_t>(pairs), 1.0));
}

ComplexModel make_complex_heisenberg(int n)
{
    ComplexForm form = complex_symplectic_form(n);
    Model model = realify(form);
    const double hs = form.hs_norm_sq();
    return {std::move(model), std::move(form), hs};
}

Model make_weighted_q(const std::vector<double>& q)
{
    require_positive(q);
    const int J = static_cast<int>(q.size());
    Mat W = Mat::Zero(2 * J, 2 * J);
    Vec weights(2 * J);
    for (int j = 0; j < J; ++j) {
        // Im(q w conj z) = q (y1 x2 - x1 y2) for w = x1 + i y1, z = x2 + i y2.
        W(2 * j, 2 * j + 1) = -q[static_cast<std::size_t>(j)];
        W(2 * j + 1, 2 * j) = q[static_cast<std::size_t>(j)];
        weights(2 * j) = weights(2 * j + 1) = q[static_cast<std::size_t>(j)];
    }
    return Model(2 * J, 1, {W}, weights);
}

ComplexModel make_weighted_q_conjugated(const std::vector<double>& q)
{
    require_positive(q);
    ComplexForm form = paired_form(q);
    const int J = static_cast<int>(q.size());
    Vec weights(4 * J);
    for (int copy = 0; copy < 2; ++copy)
        for (int j = 0; j < J; ++j) weights(2 * (copy * J + j)) = weights(2 * (copy * J + j) + 1) = q[static_cast<std::size_t>(j)];
    Model model = realify(form, weights);
    const double hs = form.hs_norm_sq();
    return {std::move(model), std::move(form), hs};
}

Model make_block_sequence(const Model& alpha, const std::vector<double>& q)
{
    require_positive(q);
    const int m = alpha.n();
    const int J = static_cast<int>(q.size());
    std::vector<Mat> omega(static_cast<std::size_t>(alpha.d()), Mat::Zero(m * J, m * J));
    Vec weights(m * J);
    for (int j = 0; j < J; ++j) {
        const double qj = q[static_cast<std::size_t>(j)];
        for (int l = 0; l < alpha.d(); ++l)
            omega[static_cast<std::size_t>(l)].block(j * m, j * m, m, m) = qj * alpha.omega()[static_cast<std::size_t>(l)];
        weights.segment(j * m, m) = qj * alpha.w_weights();
    }
    return Model(m * J, alpha.d(), std::move(omega), weights);
}

GridMeasure GridMeasure::lebesgue(int points)
{
    if (points < 1) throw std::invalid_argument("need at least one grid point");
    GridMeasure eta;
    for (int i = 0; i < points; ++i) {
        eta.nodes.push_back((i + 0.5) / points);
        eta.weights.push_back(1.0 / points);
    }
    return eta;
}

GridMeasure GridMeasure::dirac(double at) { return {{at}, {1.0}}; }

double sine_basis(int j, double s)
{
    const double freq = (j - 0.5) * std::numbers::pi;
    return std::numbers::sqrt2 * std::sin(freq * s) / freq;
}

Mat path_space_gram(const GridMeasure& eta, int J)
{
    if (J < 1) throw std::invalid_argument("basis count must be positive");
    if (eta.nodes.empty() || eta.nodes.size() != eta.weights.size()) throw std::invalid_argument("empty or malformed measure");
    const auto points = static_cast<Eigen::Index>(eta.nodes.size());
    Mat L(points, J);
    Vec w(points);
    for (Eigen::Index i = 0; i < points; ++i) {
        const double s = eta.nodes[static_cast<std::size_t>(i)];
        if (s < 0.0 || s > 1.0) throw std::invalid_argument("measure nodes must lie in [0, 1]");
        w(i) = eta.weights[static_cast<std::size_t>(i)];
        for (int j = 0; j < J; ++j) L(i, j) = sine_basis(j + 1, s);
    }
    return L.transpose() * w.asDiagonal() * L;
}

ComplexModel make_path_space(const ComplexForm& alpha, const GridMeasure& eta, int J)
{
    const Mat gram = path_space_gram(eta, J);
    const int dv = alpha.dim;
    ComplexForm form{J * dv, alpha.dim_c, {}};
    for (const CMat& A : alpha.comps) {
        CMat M = CMat::Zero(J * dv, J * dv);
        for (int j = 0; j < J; ++j)
            for (int k = 0; k < J; ++k)
                if (gram(j, k) != 0.0) M.block(j * dv, k * dv, dv, dv) = gram(j, k) * A;
        form.comps.push_back(std::move(M));
    }
    Model model = realify(form);
    const double hs = form.hs_norm_sq();
    return {std::move(model), std::move(form), hs};
}

std::vector<std::string> catalog_names()
{
    return {"real-heisenberg", "complex-heisenberg", "weighted-q", "block-sequence", "path-space"};
}

} // namespace hlab
