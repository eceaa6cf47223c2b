#include "hlab/forms.hpp"
#include "hlab/replicas.hpp"
#include "hlab/rng.hpp"
#include "hlab/stats.hpp"
#include "hlab/stochastics.hpp"

#include <doctest.h>

#include <cmath>

using namespace hlab;

TEST_CASE("Philox4x32-10 known-answer vectors")
{
    using W = std::array<std::uint32_t, 4>;
    CHECK(philox4x32({0, 0, 0, 0}, {0, 0}) == W{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
          W{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
          W{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("normal streams are addressed by seed, replica and tag")
{
    NormalStream a(1, 5), b(1, 5), c(1, 6), d(1, 5, StreamTag::lhs);
    const double x = a.normal();
    CHECK(x == b.normal());
    CHECK(x != c.normal());
    CHECK(x != d.normal());
    NormalStream u(3, 0);
    for (int i = 0; i < 1000; ++i) {
        const double v = u.uniform();
        CHECK((v > 0.0 && v < 1.0));
    }
}

TEST_CASE("normal stream moments")
{
    std::vector<double> xs, sq;
    NormalStream s(17, 0);
    for (int i = 0; i < 200000; ++i) {
        const double x = s.normal();
        xs.push_back(x);
        sq.push_back(x * x);
    }
    const Estimate m = estimate(xs), v = estimate(sq);
    CHECK(std::abs(m.mean) < 4.0 * m.se);
    CHECK(std::abs(v.mean - 1.0) < 4.0 * v.se);
}

TEST_CASE("estimate and log_mean_exp")
{
    const std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
    const Estimate e = estimate(xs);
    CHECK(e.mean == 2.5);
    CHECK(e.se == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
    const std::vector<double> logs{1000.0, 1000.0};
    const LogMeanExp l = log_mean_exp(logs);
    CHECK(l.log_mean == doctest::Approx(1000.0));
    const std::vector<double> small{std::log(1.0), std::log(3.0)};
    CHECK(log_mean_exp(small).mean == doctest::Approx(2.0));
}

TEST_CASE("check records apply their tolerance rules")
{
    CHECK(against_value("x", "", Estimate{1.0, 0.1, 10}, 1.3).pass);
    CHECK_FALSE(against_value("x", "", Estimate{1.0, 0.1, 10}, 1.5).pass);
    CHECK(one_sided("x", "", Estimate{2.0, 0.1, 10}, Estimate{1.0, 0.0, 0}, 20.0).pass);
    CHECK_FALSE(one_sided("x", "", Estimate{2.0, 0.1, 10}, Estimate{1.0, 0.0, 0}).pass);
    CHECK(exact("x", "", 1.0, 1.0, 0.0).pass);
}

TEST_CASE("serial reference and parallel replica kernels agree bit for bit")
{
    const Model m = make_real_heisenberg(2);
    const TimeGrid grid(1.0, 40);
    auto kernel = [&](std::size_t r, std::span<double> out) {
        NormalStream rng(99, r);
        const GPath g = simulate_g(m, grid, rng);
        out[0] = g.end().c(0);
        out[1] = g.end().w.squaredNorm();
    };
    const ReplicaTable serial = run_replicas(500, 2, kernel, Execution::serial);
    for (int w : {1, 3, 8}) {
        set_workers(w);
        const ReplicaTable parallel = run_replicas(500, 2, kernel, Execution::parallel);
        CHECK(parallel.data() == serial.data());
    }
    set_workers(1);
}

TEST_CASE("replica exceptions propagate")
{
    auto failing = [](std::size_t r, std::span<double>) {
        if (r == 7) throw std::runtime_error("boom");
    };
    CHECK_THROWS_AS(run_replicas(20, 1, failing, Execution::parallel), std::runtime_error);
}

TEST_CASE("area and centre from explicit increments")
{
    const Model m = make_real_heisenberg(1);
    const TimeGrid grid(1.0, 2);
    Table inc = Table::Zero(2, 3);
    inc(0, 0) = 1.0;
    inc(1, 1) = 1.0;
    inc(1, 2) = 0.25;
    const GPath g = simulate_g(m, driving_from_increments(grid, inc, 2));
    const double w12 = m.form(Vec::Unit(2, 0), Vec::Unit(2, 1))(0);
    CHECK(g.M(1, 0) == 0.0);
    CHECK(g.M(2, 0) == w12);
    CHECK(g.end().c(0) == 0.25 + 0.5 * w12);
    CHECK(g.end().w == Vec::Ones(2));
    CHECK(stratonovich_gap(m, g.driving) == 0.0);
}

TEST_CASE("time grid")
{
    const TimeGrid grid(2.0, 8);
    CHECK(grid.dt() == 0.25);
    CHECK(grid.index_of(1.0) == 4);
    CHECK_THROWS(grid.index_of(0.3));
}

TEST_CASE("area variance on 3D Heisenberg")
{
    const CheckRecord r = area_variance_check(make_real_heisenberg(1), {1.0, 50, 4000, 1});
    CHECK(r.rhs == 1.0);
    CHECK(r.pass);
}

TEST_CASE("quadratic variation and midpoint gap")
{
    const Model m = make_real_heisenberg(1);
    CHECK(quadratic_variation_check(m, {1.0, 50, 3000, 2}).pass);
    for (const CheckRecord& r : midpoint_gap_check(m, {1.0, 50, 200, 2})) CHECK(r.pass);
}

TEST_CASE("driving moments")
{
    for (const CheckRecord& r : driving_moment_checks(make_real_heisenberg(1), {1.0, 20, 4000, 3})) {
        INFO(r.name);
        CHECK(r.pass);
    }
}

TEST_CASE("Cameron-Martin-Kac closed form")
{
    const CmkReport r = cmk_check(1.0, {1.0, 200, 4000, 5});
    CHECK(r.target == doctest::Approx(std::pow(std::cos(1.0), -0.5)));
    CHECK(r.record.pass);
    CHECK_THROWS(cmk_check(2.0, {1.0, 10, 10, 5}));
}

TEST_CASE("exponential area moment and supermartingale")
{
    const Model m = make_real_heisenberg(1);
    const ExpMomentReport e = exp_moment_area(m, 0.2, 1.0, {1.0, 50, 2000, 6});
    CHECK(e.record.pass);
    CHECK(e.plain_mean <= e.bound);
    CHECK(supermartingale_check(m, {0.5, 50, 2000, 6}).pass);
}

TEST_CASE("projection defect identity is exact and the error decreases")
{
    const Model m = make_block_sequence(make_real_heisenberg(1), {1.0, 0.25, 1.0 / 9.0, 1.0 / 16.0});
    NormalStream rng(12, 0);
    const DrivingPath p = sample_driving(m, TimeGrid(1.0, 30), rng);
    for (int k : {2, 4, 6}) CHECK(projection_identity_exact(m, p, k));
    const Projection proj = project_g(m, simulate_g(m, p), 4);
    CHECK((proj.defect_c - proj.defect_sum).cwiseAbs().maxCoeff() < 1e-12);
    const ProjectionTrend trend = projection_convergence(m, {2, 4, 6}, {1.0, 30, 200, 12});
    CHECK(trend.strictly_decreasing);
    CHECK(trend.identity_exact);
}

TEST_CASE("refinement convergence")
{
    CHECK(refinement_convergence(make_real_heisenberg(1), {1.0, 16, 400, 7}, 3).pass);
}

TEST_CASE("basis rotation and domination")
{
    const Model m = make_real_heisenberg(2);
    for (const CheckRecord& r : basis_rotation_check(m, {1.0, 30, 2000, 8})) CHECK(r.pass);
    CHECK(domination_check(m, 2, {1.0, 30, 2000, 8}).pass);
}

TEST_CASE("abelian model has no area")
{
    const Model flat = Model::zero(2, 1);
    NormalStream rng(1, 0);
    const GPath g = simulate_g(flat, TimeGrid(1.0, 10), rng);
    CHECK(g.M.isZero());
}
