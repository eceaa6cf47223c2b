#include "hlab/forms.hpp"
#include "hlab/group.hpp"
#include "hlab/model_json.hpp"
#include "hlab/rng.hpp"

#include <doctest.h>

using namespace hlab;

namespace {

Model heisenberg()
{
    Mat W = Mat::Zero(2, 2);
    W(0, 1) = 1.0;
    W(1, 0) = -1.0;
    return Model(2, 1, {W});
}

Vec v(std::initializer_list<double> xs)
{
    Vec out(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) out(i++) = x;
    return out;
}

Vec random_vec(NormalStream& rng, int n)
{
    Vec out(n);
    for (int i = 0; i < n; ++i) out(i) = rng.normal();
    return out;
}

} // namespace

TEST_CASE("group law on 3D Heisenberg matches hand computation")
{
    const Model m = heisenberg();
    const GroupElement g1{v({1, 0}), v({0})};
    const GroupElement g2{v({0, 1}), v({0})};
    const GroupElement p = multiply(m, g1, g2);
    CHECK(p.w == v({1, 1}));
    CHECK(p.c(0) == 0.5);
    CHECK(multiply(m, g2, g1).c(0) == -0.5);
}

TEST_CASE("identity, inverse and exp/log")
{
    const Model m = heisenberg();
    const GroupElement g{v({0.3, -1.2}), v({2.5})};
    const GroupElement e = GroupElement::identity(m);
    CHECK(multiply(m, g, e) == g);
    CHECK(multiply(m, e, g) == g);
    CHECK(multiply(m, g, inverse(g)) == e);
    CHECK(multiply(m, inverse(g), g) == e);
    CHECK(exp_map(log_map(g)) == g);
}

TEST_CASE("form is skew and vanishes on the diagonal bit-exactly")
{
    const Model m = make_real_heisenberg(3);
    NormalStream rng(7, 0);
    for (int t = 0; t < 100; ++t) {
        const Vec x = random_vec(rng, m.n()), y = random_vec(rng, m.n());
        CHECK(m.form(x, x).cwiseAbs().maxCoeff() == 0.0);
        CHECK(m.form(x, y) == -m.form(y, x));
    }
}

TEST_CASE("bracket is bilinear and skew, with centre in the kernel")
{
    const Model m = heisenberg();
    const AlgebraElement h1{v({1, 2}), v({3})};
    const AlgebraElement h2{v({-1, 0.5}), v({4})};
    const AlgebraElement b = bracket(m, h1, h2);
    CHECK(b.A.isZero());
    CHECK(b.a(0) == doctest::Approx(1 * 0.5 - 2 * -1));
    const AlgebraElement central{v({0, 0}), v({1})};
    CHECK(bracket(m, central, h1).a.isZero());
    CHECK(bracket(m, h2, h1).a(0) == -b.a(0));
}

TEST_CASE("dilation")
{
    const Model m = heisenberg();
    const GroupElement g{v({1, 0}), v({1})};
    CHECK(dilate(2.0, g) == GroupElement{v({2, 0}), v({4})});
    CHECK(dilate(1.0, g) == g);
    const GroupElement g1{v({0.7, -0.1}), v({0.4})}, g2{v({1.5, 2.0}), v({-0.25})};
    const GroupElement lhs = dilate(1.75, multiply(m, g1, g2));
    const GroupElement rhs = multiply(m, dilate(1.75, g1), dilate(1.75, g2));
    CHECK((lhs.w - rhs.w).norm() < 1e-14);
    CHECK((lhs.c - rhs.c).norm() < 1e-14);
    CHECK_THROWS_AS(dilate(0.0, g), std::invalid_argument);
}

TEST_CASE("commutator of group elements is the exponential of the bracket")
{
    const Model m = make_real_heisenberg(2);
    NormalStream rng(11, 0);
    for (int t = 0; t < 20; ++t) {
        const GroupElement g1{random_vec(rng, m.n()), random_vec(rng, m.d())};
        const GroupElement g2{random_vec(rng, m.n()), random_vec(rng, m.d())};
        const GroupElement lhs = multiply(m, multiply(m, multiply(m, g1, g2), inverse(g1)), inverse(g2));
        const GroupElement rhs = exp_map(bracket(m, log_map(g1), log_map(g2)));
        CHECK((lhs.w - rhs.w).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((lhs.c - rhs.c).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("norms")
{
    const Model m = heisenberg();
    const GroupElement g{v({3, 4}), v({12})};
    CHECK(gcm_norm(g) == doctest::Approx(13.0));
    CHECK(w_norm(m, v({3, 4})) == doctest::Approx(5.0));
}

TEST_CASE("dimension and validity errors")
{
    const Model m = heisenberg();
    CHECK_THROWS_AS(multiply(m, GroupElement{v({1}), v({0})}, GroupElement::identity(m)), DimensionError);
    CHECK_THROWS_AS(Model(2, 2, {Mat::Zero(2, 2)}), DimensionError);
    Mat sym = Mat::Ones(2, 2);
    CHECK_THROWS_AS(Model(2, 1, {sym}), std::invalid_argument);
    CHECK_THROWS_AS(m.truncated(3), DimensionError);
}

TEST_CASE("truncation keeps the leading block")
{
    const Model m = make_real_heisenberg(2);
    const Model t = m.truncated(2);
    CHECK(t.n() == 2);
    CHECK(t.omega()[0] == m.omega()[0].topLeftCorner(2, 2));
}

TEST_CASE("json round trip")
{
    const Model m = make_real_heisenberg(2);
    const Model back = model_from_json(to_json(m));
    CHECK(back.n() == m.n());
    CHECK(back.d() == m.d());
    for (int l = 0; l < m.d(); ++l) CHECK(back.omega()[l] == m.omega()[l]);
    const GroupElement g{v({1, 2, 3, 4}), v({-0.5})};
    CHECK(group_element_from_json(to_json(g)) == g);
}
