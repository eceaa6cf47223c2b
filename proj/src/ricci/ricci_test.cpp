#include "hlab/forms.hpp"
#include "hlab/ricci.hpp"
#include "hlab/rng.hpp"

#include <doctest.h>

using namespace hlab;

namespace {

Model random_model(NormalStream& rng)
{
    const int n = 2 + static_cast<int>(rng.uniform() * 4);
    const int d = 1 + static_cast<int>(rng.uniform() * 3);
    std::vector<Mat> omega;
    for (int l = 0; l < d; ++l) {
        Mat W(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) W(i, j) = rng.normal();
        omega.push_back(W - W.transpose());
    }
    return Model(n, d, omega);
}

} // namespace

TEST_CASE("real Heisenberg Ricci form is diag(-1/2 I, n/2)")
{
    for (int n = 1; n <= 5; ++n) {
        const RicciForm r = ricci_step2(make_real_heisenberg(n));
        Mat expected = Mat::Zero(2 * n + 1, 2 * n + 1);
        expected.diagonal().head(2 * n).setConstant(-0.5);
        expected(2 * n, 2 * n) = 0.5 * n;
        CHECK((r.matrix - expected).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("step-2 formula equals the structure-constant formula")
{
    NormalStream rng(21, 0);
    for (int t = 0; t < 30; ++t) {
        const Model m = random_model(rng);
        const StructureRicci generic = ricci_structure_constants(m);
        CHECK((ricci_step2(m).matrix - generic.form.matrix).cwiseAbs().maxCoeff() < 1e-10);
        CHECK(generic.max_trace_adstar < 1e-12);
    }
}

TEST_CASE("k(omega)")
{
    CHECK(k_omega(make_real_heisenberg(1)) == -0.5);
    CHECK(k_omega(Model::zero(3, 1)) == 0.0);
    CHECK(k_projected(make_real_heisenberg(1), 2) == doctest::Approx(-0.5));
}

TEST_CASE("c_function")
{
    CHECK(c_function(0.0) == 1.0);
    CHECK(c_function(-0.5) == doctest::Approx(1.2707470412683).epsilon(1e-12));
    CHECK(c_function(1e-12) == doctest::Approx(1.0));
    CHECK(c_function(2.0) == doctest::Approx(2.0 / (std::exp(2.0) - 1.0)));
}

TEST_CASE("quadratic form evaluates the matrix")
{
    const RicciForm r = ricci_step2(make_real_heisenberg(1));
    Vec A(2), a(1);
    A << 1.0, 2.0;
    a << 3.0;
    CHECK(r.quadratic(A, a) == doctest::Approx(-0.5 * 5.0 + 0.5 * 9.0));
}

TEST_CASE("closed forms for every catalog family")
{
    for (const CheckRecord& rec : ricci_closed_form_checks()) {
        INFO(rec.name);
        CHECK(rec.pass);
    }
}

TEST_CASE("covariant derivative is torsion free")
{
    const Model m = make_real_heisenberg(1);
    const AlgebraElement X{Vec::Unit(2, 0), Vec::Zero(1)}, Y{Vec::Unit(2, 1), Vec::Zero(1)};
    const AlgebraElement lhs = covariant_derivative(m, X, Y), rhs = covariant_derivative(m, Y, X);
    const AlgebraElement b = bracket(m, X, Y);
    CHECK((lhs.A - rhs.A - b.A).norm() < 1e-14);
    CHECK((lhs.a - rhs.a - b.a).norm() < 1e-14);
}
