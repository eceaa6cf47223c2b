#include "hlab/forms.hpp"

#include <doctest.h>

#include <complex>
#include <numeric>

using namespace hlab;

TEST_CASE("Hilbert-Schmidt norms of the catalog families")
{
    for (int n = 1; n <= 5; ++n) CHECK(hs_norm_sq(make_real_heisenberg(n)) == doctest::Approx(2.0 * n).epsilon(1e-12));
    const std::vector<double> q{1.0, 0.5, 1.0 / 3.0};
    const double q2 = std::inner_product(q.begin(), q.end(), q.begin(), 0.0);
    CHECK(hs_norm_sq(make_weighted_q(q)) == doctest::Approx(2.0 * q2).epsilon(1e-12));
    const Model alpha = make_real_heisenberg(1);
    CHECK(hs_norm_sq(make_block_sequence(alpha, q)) == doctest::Approx(hs_norm_sq(alpha) * q2).epsilon(1e-12));
}

TEST_CASE("complex Heisenberg realifies to four times the complex norm")
{
    const ComplexModel cm = make_complex_heisenberg(2);
    CHECK(cm.model.n() == 8);
    CHECK(cm.model.d() == 2);
    CHECK(cm.complex_hs_norm_sq == doctest::Approx(4.0));
    CHECK(hs_norm_sq(cm.model) == doctest::Approx(4.0 * cm.complex_hs_norm_sq));
}

TEST_CASE("realify and complexify are inverse")
{
    Eigen::VectorXcd z(2);
    z << std::complex<double>(1, 2), std::complex<double>(-3, 0.5);
    const Vec r = realify(z);
    CHECK(r.size() == 4);
    CHECK(r(1) == 2.0);
    CHECK(complexify(r) == z);
}

TEST_CASE("realified form agrees with the complex form")
{
    const ComplexForm form = complex_symplectic_form(1);
    const Model m = realify(form);
    Eigen::VectorXcd u(2), v(2);
    u << std::complex<double>(0.3, -1.0), std::complex<double>(2.0, 0.25);
    v << std::complex<double>(-0.5, 0.5), std::complex<double>(1.0, 1.5);
    const auto z = form.apply(u, v);
    const Vec r = m.form(realify(u), realify(v));
    CHECK(r(0) == doctest::Approx(z[0].real()));
    CHECK(r(1) == doctest::Approx(z[0].imag()));
}

TEST_CASE("path-space norm converges to |alpha|^2 / 6 for Lebesgue eta")
{
    const ComplexForm alpha = complex_symplectic_form(1);
    const ComplexModel ps = make_path_space(alpha, GridMeasure::lebesgue(400), 200);
    const double target = alpha.hs_norm_sq() / 6.0;
    CHECK(std::abs(ps.complex_hs_norm_sq - target) / target < 1e-3);
}

TEST_CASE("path-space gram for a point mass is rank one")
{
    const Mat G = path_space_gram(GridMeasure::dirac(0.5), 10);
    Eigen::SelfAdjointEigenSolver<Mat> es(G);
    CHECK(es.eigenvalues().head(9).cwiseAbs().maxCoeff() < 1e-12);
    // Sum of the sine expansion of min(s, s) at s = 1/2.
    CHECK(G.trace() == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("constants on 3D Heisenberg")
{
    const FormConstants k = compute_constants(make_real_heisenberg(1));
    CHECK(k.hs_norm_sq == doctest::Approx(2.0));
    CHECK(k.gamma == doctest::Approx(1.0));
    CHECK(k.uniform_lower <= k.uniform_upper);
    CHECK(k.c_constant > 0.0);
    CHECK(form_rank(make_real_heisenberg(1)) == 1);
    CHECK(form_rank(Model::zero(2, 1)) == 0);
}

TEST_CASE("Gaussian identities")
{
    const GaussianIdentityReport r = gaussian_identity_checks(make_real_heisenberg(2), 20000, 3);
    CHECK(r.form_exact == doctest::Approx(4.0));
    CHECK(std::abs(r.form_estimate - r.form_exact) <= 4.0 * r.form_se);
    CHECK(std::abs(r.functional_estimate - r.functional_exact) <= 4.0 * r.functional_se);
}

TEST_CASE("catalog lists the five families")
{
    CHECK(catalog_names().size() == 5);
}

TEST_CASE("invalid parameters")
{
    CHECK_THROWS_AS(make_real_heisenberg(0), std::invalid_argument);
    CHECK_THROWS_AS(make_weighted_q({1.0, -1.0}), std::invalid_argument);
    CHECK_THROWS_AS(path_space_gram(GridMeasure::dirac(1.5), 4), std::invalid_argument);
}
