#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <vector>

namespace hlab {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Skew form on R^n with values in R^d, stored as d skew component matrices,
// plus the weights of the W-norm on the w-part.
class Model {
public:
    Model(int n, int d, std::vector<Mat> omega, Vec w_weights = Vec());

    static Model zero(int n, int d);

    int n() const { return n_; }
    int d() const { return d_; }
    const std::vector<Mat>& omega() const { return omega_; }
    const Vec& w_weights() const { return weights_; }
    bool is_abelian() const { return entries_.empty(); }

    // out[l] = sum_{i<j} W_l(i,j) (x_i y_j - x_j y_i). Pairing the two
    // orderings keeps omega(x, x) == 0 and omega(x, y) == -omega(y, x) exact.
    template <class S>
    void apply(const S* x, const S* y, S* out) const
    {
        for (int l = 0; l < d_; ++l) out[l] = S(0);
        for (const Entry& e : entries_) out[e.comp] += S(e.value) * (x[e.row] * y[e.col] - x[e.col] * y[e.row]);
    }

    Vec form(const Vec& x, const Vec& y) const;

    // First m coordinates of H only.
    Model truncated(int m) const;

private:
    struct Entry {
        int comp;
        int row;
        int col;
        double value;
    };

    int n_;
    int d_;
    std::vector<Mat> omega_;
    Vec weights_;
    std::vector<Entry> entries_;
};

struct GroupElement {
    Vec w;
    Vec c;

    static GroupElement identity(const Model& m) { return {Vec::Zero(m.n()), Vec::Zero(m.d())}; }
    bool operator==(const GroupElement& o) const { return w == o.w && c == o.c; }
};

struct AlgebraElement {
    Vec A;
    Vec a;

    static AlgebraElement zero(const Model& m) { return {Vec::Zero(m.n()), Vec::Zero(m.d())}; }
    bool operator==(const AlgebraElement& o) const { return A == o.A && a == o.a; }
};

Vec evaluate_form(const Model& model, const Vec& w1, const Vec& w2);

GroupElement multiply(const Model& model, const GroupElement& g1, const GroupElement& g2);
GroupElement inverse(const GroupElement& g);
AlgebraElement bracket(const Model& model, const AlgebraElement& h1, const AlgebraElement& h2);
GroupElement exp_map(const AlgebraElement& h);
AlgebraElement log_map(const GroupElement& g);
AlgebraElement left_translate(const Model& model, const GroupElement& g, const AlgebraElement& h);
GroupElement dilate(double lambda, const GroupElement& g);
AlgebraElement dilate(double lambda, const AlgebraElement& h);

// Coordinate-wise vector operations on the shared chart.
GroupElement add(const GroupElement& g1, const GroupElement& g2);
GroupElement subtract(const GroupElement& g1, const GroupElement& g2);
GroupElement scale(double s, const GroupElement& g);

double gcm_norm(const AlgebraElement& h);
double gcm_norm(const GroupElement& g);
double w_norm(const Model& model, const Vec& w);
double banach_norm(const Model& model, const GroupElement& g);

void check_conforms(const Model& model, const GroupElement& g);
void check_conforms(const Model& model, const AlgebraElement& h);

} // namespace hlab
