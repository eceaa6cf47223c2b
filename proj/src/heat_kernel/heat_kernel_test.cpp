#include "hlab/calculus.hpp"
#include "hlab/forms.hpp"
#include "hlab/heat_kernel.hpp"

#include <doctest.h>

using namespace hlab;

TEST_CASE("endpoint samples are reproducible and tag-separated")
{
    const Model m = make_real_heisenberg(1);
    const MonteCarloSpec spec{1.0, 20, 50, 4};
    const EndpointSample a = sample_nu(m, spec), b = sample_nu(m, spec), c = sample_nu(m, spec, StreamTag::lhs);
    REQUIRE(a.size() == 50);
    CHECK(a.elements == b.elements);
    CHECK_FALSE(a.elements == c.elements);
    for (std::size_t r = 0; r < a.size(); ++r) CHECK(a.areas[r].size() == m.d());
}

TEST_CASE("second moment of the centre matches its closed form")
{
    const Model m = make_real_heisenberg(1);
    const Polynomial c = c_coordinate(m, 0);
    const CheckRecord r = heat_equation_check(m, {"c1_sq", c * c}, {1.0, 32, 6000, 10});
    // E c(1)^2 = E B0(1)^2 + E|M_1|^2 / 4 = 1 + 1/4.
    CHECK(std::abs(r.lhs - 1.25) <= 4.0 * r.se_lhs);
    CHECK(r.rhs == doctest::Approx(1.25).epsilon(0.05));
    CHECK(r.pass);
}

TEST_CASE("weak heat equation on the polynomial suite")
{
    const Model m = make_real_heisenberg(1);
    const auto suite = heat_polynomial_suite(m);
    CHECK(suite.size() == 8);
    for (const NamedPolynomial& f : suite) {
        CHECK(f.f.degree() <= 4);
        const CheckRecord r = heat_equation_check(m, f, {1.0, 16, 1500, 11});
        INFO(r.name);
        CHECK(r.pass);
    }
}

TEST_CASE("inversion invariance")
{
    const Model m = make_real_heisenberg(2);
    const EndpointSample s = sample_nu(m, {1.0, 20, 3000, 12});
    for (const CheckRecord& r : inversion_check(m, s, heat_polynomial_suite(m))) {
        INFO(r.name);
        CHECK(r.pass);
    }
}

TEST_CASE("odd polynomials flip sign under inversion")
{
    const Model m = make_real_heisenberg(1);
    const EndpointSample s = sample_nu(m, {1.0, 10, 20, 1});
    const Polynomial w1 = w_coordinate(m, 0);
    for (const GroupElement& g : s.elements) CHECK(evaluate(w1, inverse(g)) == -evaluate(w1, g));
}

TEST_CASE("area moments and hypercontractive bound")
{
    const Model m = make_real_heisenberg(1);
    for (const CheckRecord& r : moment_report(m, sample_nu(m, {1.0, 30, 4000, 13}))) {
        INFO(r.name);
        CHECK(r.pass);
    }
}

TEST_CASE("exponential moment of rho squared is stable for small epsilon")
{
    const Model m = make_real_heisenberg(1);
    const ExpRhoReport r = exp_rho_moment(m, 0.05, sample_nu(m, {1.0, 20, 4000, 14}));
    CHECK(r.sizes.size() == 3);
    CHECK(r.stable);
    CHECK(r.estimates.back().mean > 1.0);
}

TEST_CASE("area moments grow like T^p")
{
    const Model m = make_real_heisenberg(1);
    const GrowthReport g = moment_growth(m, 2.0, {0.25, 0.5, 1.0, 2.0}, {1.0, 20, 2000, 15});
    CHECK(g.slope == doctest::Approx(2.0).epsilon(0.1));
    CHECK(g.record.pass);
}

TEST_CASE("Brownian scaling of the endpoint")
{
    for (const CheckRecord& r : scaling_check(make_real_heisenberg(1), {2.0, 20, 3000, 16})) {
        INFO(r.name);
        CHECK(r.pass);
    }
}
