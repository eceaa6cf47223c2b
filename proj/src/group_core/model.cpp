#include "hlab/group.hpp"

#include <cmath>
#include <string>

namespace hlab {

namespace {

constexpr double kSymmetricTolerance = 1e-12;

} // namespace

Model::Model(int n, int d, std::vector<Mat> omega, Vec w_weights)
    : n_(n), d_(d), omega_(std::move(omega)), weights_(std::move(w_weights))
{
    if (n < 1 || d < 1) throw DimensionError("model dimensions must be positive");
    if (static_cast<int>(omega_.size()) != d) throw DimensionError("expected " + std::to_string(d) + " omega components");
    if (weights_.size() == 0) weights_ = Vec::Ones(n);
    if (weights_.size() != n) throw DimensionError("w_weights must have length n");
    for (double lam : weights_)
        if (!(lam > 0.0) || !std::isfinite(lam)) throw std::invalid_argument("w_weights must be positive and finite");

    for (int l = 0; l < d; ++l) {
        Mat& W = omega_[l];
        if (W.rows() != n || W.cols() != n) throw DimensionError("omega components must be n x n");
        if (!W.allFinite()) throw std::invalid_argument("omega entries must be finite");
        const double sym = (0.5 * (W + W.transpose())).cwiseAbs().maxCoeff();
        if (sym > kSymmetricTolerance) throw std::invalid_argument("omega component is not skew-symmetric");
        W = 0.5 * (W - W.transpose());
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (W(i, j) != 0.0) entries_.push_back({l, i, j, W(i, j)});
    }
}

Model Model::zero(int n, int d)
{
    return Model(n, d, std::vector<Mat>(static_cast<std::size_t>(d), Mat::Zero(n, n)));
}

Vec Model::form(const Vec& x, const Vec& y) const
{
    if (x.size() != n_ || y.size() != n_) throw DimensionError("form arguments must have length n");
    Vec out(d_);
    apply(x.data(), y.data(), out.data());
    return out;
}

Model Model::truncated(int m) const
{
    if (m < 1 || m > n_) throw DimensionError("projection size must lie in [1, n]");
    std::vector<Mat> blocks;
    blocks.reserve(omega_.size());
    for (const Mat& W : omega_) blocks.push_back(W.topLeftCorner(m, m));
    return Model(m, d_, std::move(blocks), weights_.head(m));
}

} // namespace hlab
