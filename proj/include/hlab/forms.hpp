#pragma once

#include "hlab/group.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hlab {

using CMat = Eigen::MatrixXcd;

// Complex bilinear skew form on C^dim with values in C^dim_c.
struct ComplexForm {
    int dim = 0;
    int dim_c = 0;
    std::vector<CMat> comps;

    std::vector<std::complex<double>> apply(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) const;
    double hs_norm_sq() const;
};

// Realification: coordinate 2k is Re z_k, 2k+1 is Im z_k; same for the centre.
Model realify(const ComplexForm& form, Vec w_weights = Vec());
Eigen::VectorXcd complexify(const Vec& real);
Vec realify(const Eigen::VectorXcd& z);

struct ComplexModel {
    Model model;
    ComplexForm form;
    double complex_hs_norm_sq;
};

Model make_real_heisenberg(int n_complex);
ComplexModel make_complex_heisenberg(int n);
// Non-conjugated: Im<w, z>_Q on C^J. Conjugated: <w1, conj z2>_Q - <w2, conj z1>_Q on K_Q x K_Q.
Model make_weighted_q(const std::vector<double>& q);
ComplexModel make_weighted_q_conjugated(const std::vector<double>& q);
Model make_block_sequence(const Model& alpha, const std::vector<double>& q);

// Real signed measure on [0,1] given by weighted nodes.
struct GridMeasure {
    std::vector<double> nodes;
    std::vector<double> weights;

    static GridMeasure lebesgue(int points);
    static GridMeasure dirac(double at);
};

double sine_basis(int j, double s);
Mat path_space_gram(const GridMeasure& eta, int J);
ComplexModel make_path_space(const ComplexForm& alpha, const GridMeasure& eta, int J);

// Complex 2-dim form alpha((v1, v2), (u1, u2)) = v1 u2 - v2 u1.
ComplexForm complex_symplectic_form(int pairs);

struct FormConstants {
    double hs_norm_sq = 0.0;
    double uniform_lower = 0.0;
    double uniform_upper = 0.0;
    double c_constant = 0.0;
    double c_lower = 0.0;
    double gamma = 0.0;
    bool gamma_approximate = false;
    double c2 = 0.0;
};

double hs_norm_sq(const Model& model);
FormConstants compute_constants(const Model& model);
// Span of {omega(e_i, e_j)} equals R^d.
int form_rank(const Model& model);

struct GaussianIdentityReport {
    double form_estimate;
    double form_se;
    double form_exact;
    double functional_estimate;
    double functional_se;
    double functional_exact;
};

GaussianIdentityReport gaussian_identity_checks(const Model& model, int samples, std::uint64_t seed);

std::vector<std::string> catalog_names();

} // namespace hlab
