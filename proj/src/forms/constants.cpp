#include "hlab/forms.hpp"
#include "hlab/replicas.hpp"
#include "hlab/rng.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hlab {

namespace {

double spectral_norm(const Mat& M)
{
    if (M.size() == 0) return 0.0;
    return Eigen::JacobiSVD<Mat>(M).singularValues()(0);
}

// Largest eigenvalue of Omega_c^T Omega_c for Omega_c = sum_l c_l Omega_l.
double centre_direction_value(const std::vector<Mat>& omega, const Vec& c)
{
    Mat Oc = Mat::Zero(omega.front().rows(), omega.front().cols());
    for (std::size_t l = 0; l < omega.size(); ++l) Oc += c(static_cast<Eigen::Index>(l)) * omega[l];
    const Mat S = Oc.transpose() * Oc;
    Eigen::SelfAdjointEigenSolver<Mat> eig(S, Eigen::EigenvaluesOnly);
    return std::max(0.0, eig.eigenvalues().maxCoeff());
}

// Best value of sup_{|u|=|v|=1} |(u^T M_l v)_l| found by alternating
// top-singular-vector updates from several starts. Always attained, hence a
// valid lower bound.
double bilinear_sup_lower(const std::vector<Mat>& omega, std::uint64_t seed)
{
    const Eigen::Index n = omega.front().rows();
    const auto d = static_cast<Eigen::Index>(omega.size());
    auto best_partner = [&](const Vec& u, bool left) {
        Mat K(d, n);
        for (Eigen::Index l = 0; l < d; ++l) {
            const Mat& M = omega[static_cast<std::size_t>(l)];
            if (left)
                K.row(l) = u.transpose() * M;
            else
                K.row(l) = (M * u).transpose();
        }
        Eigen::JacobiSVD<Mat> svd(K, Eigen::ComputeFullV);
        return std::pair<double, Vec>(svd.singularValues()(0), svd.matrixV().col(0));
    };

    std::vector<Vec> starts;
    for (Eigen::Index i = 0; i < std::min<Eigen::Index>(n, 8); ++i) starts.push_back(Vec::Unit(n, i));
    NormalStream rng(seed, 0, StreamTag::forms);
    for (int s = 0; s < 8; ++s) {
        Vec u(n);
        for (Eigen::Index i = 0; i < n; ++i) u(i) = rng.normal();
        starts.push_back(u.normalized());
    }

    double best = 0.0;
    for (Vec u : starts) {
        double value = 0.0;
        for (int it = 0; it < 200; ++it) {
            auto [sv, v] = best_partner(u, true);
            auto [su, u_next] = best_partner(v, false);
            u = u_next;
            const bool settled = su - value <= 1e-14 * std::max(1.0, su);
            value = std::max(sv, su);
            if (settled) break;
        }
        best = std::max(best, value);
    }
    return best;
}

struct Bracket {
    double lower;
    double upper;
};

Bracket uniform_bracket(const std::vector<Mat>& omega)
{
    if (omega.size() == 1) {
        const double s = spectral_norm(omega.front());
        return {s, s};
    }
    double upper_sq = 0.0;
    for (const Mat& M : omega) upper_sq += std::pow(spectral_norm(M), 2);
    const double upper = std::sqrt(upper_sq);
    const double lower = std::min(bilinear_sup_lower(omega, 0x5eed), upper);
    return {lower, upper};
}

struct GammaResult {
    double value;
    bool approximate;
};

GammaResult gamma_sup(const std::vector<Mat>& omega)
{
    const auto d = static_cast<Eigen::Index>(omega.size());
    const double step = std::numbers::pi / 180.0;
    if (d == 1) return {centre_direction_value(omega, Vec::Ones(1)), false};

    auto direction = [d](const Vec& angles) {
        Vec c(d);
        if (d == 2) {
            c << std::cos(angles(0)), std::sin(angles(0));
        } else {
            c << std::sin(angles(0)) * std::cos(angles(1)), std::sin(angles(0)) * std::sin(angles(1)), std::cos(angles(0));
        }
        return c;
    };

    if (d <= 3) {
        Vec best_angles = Vec::Zero(d - 1);
        double best = -1.0;
        const int outer = 180;
        const int inner = d == 2 ? 1 : 360;
        for (int i = 0; i <= outer; ++i)
            for (int j = 0; j < inner; ++j) {
                Vec angles(d - 1);
                angles(0) = i * step;
                if (d == 3) angles(1) = j * step;
                const double v = centre_direction_value(omega, direction(angles));
                if (v > best) {
                    best = v;
                    best_angles = angles;
                }
            }
        // Local pattern ascent from the best grid point.
        for (double h = step; h > 1e-12; h *= 0.5) {
            bool moved = true;
            while (moved) {
                moved = false;
                for (Eigen::Index a = 0; a < d - 1; ++a)
                    for (double sgn : {1.0, -1.0}) {
                        Vec trial = best_angles;
                        trial(a) += sgn * h;
                        const double v = centre_direction_value(omega, direction(trial));
                        if (v > best) {
                            best = v;
                            best_angles = trial;
                            moved = true;
                        }
                    }
            }
        }
        return {best, false};
    }

    NormalStream rng(0x9a77a, 0, StreamTag::forms);
    double best = 0.0;
    for (int s = 0; s < 20000; ++s) {
        Vec c(d);
        for (Eigen::Index l = 0; l < d; ++l) c(l) = rng.normal();
        best = std::max(best, centre_direction_value(omega, c.normalized()));
    }
    return {best, true};
}

} // namespace

double hs_norm_sq(const Model& model)
{
    double s = 0.0;
    for (const Mat& M : model.omega()) s += M.squaredNorm();
    return s;
}

FormConstants compute_constants(const Model& model)
{
    FormConstants k;
    k.hs_norm_sq = hs_norm_sq(model);
    k.c2 = model.w_weights().sum();
    if (model.is_abelian()) return k;

    const Vec scale = model.w_weights().cwiseSqrt().cwiseInverse();
    std::vector<Mat> normalized;
    for (const Mat& M : model.omega()) normalized.push_back(scale.asDiagonal() * M * scale.asDiagonal());

    const Bracket uniform = uniform_bracket(normalized);
    k.uniform_lower = uniform.lower;
    k.uniform_upper = uniform.upper;

    const Bracket c = uniform_bracket(model.omega());
    k.c_constant = c.upper;
    k.c_lower = c.lower;

    const GammaResult g = gamma_sup(model.omega());
    k.gamma = g.value;
    k.gamma_approximate = g.approximate;
    return k;
}

int form_rank(const Model& model)
{
    const int n = model.n();
    const int pairs = n * (n - 1) / 2;
    if (pairs == 0) return 0;
    Mat images(model.d(), pairs);
    int col = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++col)
            for (int l = 0; l < model.d(); ++l) images(l, col) = model.omega()[static_cast<std::size_t>(l)](i, j);
    Eigen::ColPivHouseholderQR<Mat> qr(images);
    qr.setThreshold(1e-12);
    return static_cast<int>(qr.rank());
}

GaussianIdentityReport gaussian_identity_checks(const Model& model, int samples, std::uint64_t seed)
{
    if (samples < 1000) throw std::invalid_argument("need at least 1000 samples");
    const int n = model.n();
    const int d = model.d();

    NormalStream setup(seed, 0, StreamTag::setup);
    Vec u(n);
    for (int i = 0; i < n; ++i) u(i) = setup.normal();

    const ReplicaTable table = run_replicas(static_cast<std::size_t>(samples), 2, [&](std::size_t r, std::span<double> out) {
        NormalStream rng(seed, r, StreamTag::forms);
        Vec w(n), v(n), value(d);
        for (int i = 0; i < n; ++i) w(i) = rng.normal();
        for (int i = 0; i < n; ++i) v(i) = rng.normal();
        model.apply(w.data(), v.data(), value.data());
        out[0] = value.squaredNorm();
        const double pairing = u.dot(w);
        out[1] = pairing * pairing;
    });
    const Estimate form = table.column_estimate(0);
    const Estimate functional = table.column_estimate(1);
    return {form.mean, form.se, hs_norm_sq(model), functional.mean, functional.se, u.squaredNorm()};
}

} // namespace hlab
