#include "support.hpp"

#include <zsched/analytic.hpp>
#include <zsched/errors.hpp>
#include <zsched/fap.hpp>

#include <doctest.h>

using namespace zsched;

namespace {

struct Row {
    double D, e1, e2, v1;
};

constexpr Row kRows[] = {{1000, 600, 600, 1.0}, {1000, 620, 725, 1.1}, {1000, 580, 790, 1.2},
                         {1000, 545, 855, 1.3}, {1000, 520, 925, 1.4}, {1000, 500, 1010, 1.5},
                         {500, 610, 735, 1.1},  {500, 530, 900, 1.3},  {500, 475, 1110, 1.5},
                         {250, 590, 765, 1.1},  {250, 495, 1020, 1.3}, {250, 435, 1430, 1.5},
                         {165, 575, 785, 1.1},  {165, 465, 1170, 1.3}, {165, 400, 2000, 1.5}};

// Exhaustive scan of f1 on a 10^-4 grid.
double brute_force_f1(const std::vector<StreamSpec>& specs)
{
    double best = -1, arg = 0;
    for (int k = 0; k <= 10000; ++k) {
        const double f1 = k / 10000.0;
        const std::vector<double> f = {f1, 1 - f1};
        const double v = analytic::total_revenue(specs, f);
        if (v > best) {
            best = v;
            arg = f1;
        }
    }
    return arg;
}

} // namespace

TEST_SUITE("fap") {

TEST_CASE("one stream takes the whole processor")
{
    const std::vector<StreamSpec> one = {StreamSpec(0.1, 1, 1, 1)};
    const fap::FapResult r = fap::optimize(one);
    CHECK(r.f_star.size() == 1);
    CHECK(r.f_star[0] == 1.0);
}

TEST_CASE("symmetric row splits evenly")
{
    const fap::FapResult r = fap::optimize(testing::e1_streams());
    CHECK(std::abs(r.f_star[0] - 0.5) <= 0.02);
}

TEST_CASE("two-stream optimum matches an exhaustive scan")
{
    for (const Row& row : kRows) {
        const auto specs = testing::two_streams(row.D, row.e1, row.e2, row.v1);
        const fap::FapResult r = fap::optimize(specs);
        INFO("D=" << row.D << " e1=" << row.e1 << " e2=" << row.e2);
        CHECK(std::abs(r.f_star[0] - brute_force_f1(specs)) <= 2e-3);
        CHECK(r.f_star[0] + r.f_star[1] == 1.0);
        CHECK(std::abs(r.v_star - analytic::total_revenue(specs, r.f_star.values())) <= 1e-10 * r.v_star);
        CHECK(r.evaluations > 0);
    }
}

TEST_CASE("multi-stream search beats a simplex grid")
{
    const std::vector<StreamSpec> specs = {StreamSpec(0.004, 50, 100, 50), StreamSpec(0.004, 100, 200, 100),
                                           StreamSpec(0.004, 200, 400, 200)};
    const fap::FapResult r = fap::optimize(specs);
    double best = 0;
    for (int i = 0; i <= 50; ++i) {
        for (int j = 0; i + j <= 50; ++j) {
            const std::vector<double> f = {i / 50.0, j / 50.0, (50 - i - j) / 50.0};
            best = std::max(best, analytic::total_revenue(specs, f));
        }
    }
    CHECK(r.v_star >= best * (1 - 1e-6));
    CHECK(r.local_optima >= 1);
    double sum = 0;
    for (double x : r.f_star.values()) {
        CHECK(x >= 0);
        sum += x;
    }
    CHECK(std::abs(sum - 1) <= 1e-12);
}

TEST_CASE("swapping identical streams swaps their shares")
{
    const StreamSpec a(0.004, 100, 300, 2.0), b(0.004, 100, 300, 2.0), c(0.003, 250, 500, 1.0);
    const std::vector<StreamSpec> abc = {a, c, b}, cab = {c, a, b};
    const auto r1 = fap::optimize(abc);
    const auto r2 = fap::optimize(cab);
    CHECK(r1.f_star[0] == doctest::Approx(r2.f_star[1]).epsilon(2e-3));
    CHECK(r1.f_star[1] == doctest::Approx(r2.f_star[0]).epsilon(2e-3));
    CHECK(r1.v_star == doctest::Approx(r2.v_star).epsilon(1e-9));
}

TEST_CASE("tolerance and allocation validation")
{
    CHECK_THROWS_AS(fap::optimize(testing::e1_streams(), 0.0), ConfigError);
    CHECK_THROWS_AS(fap::optimize(testing::e1_streams(), 0.5), ConfigError);
    CHECK_THROWS_AS(AllocationVector({0.5, 0.6}), ConfigError);
    CHECK_THROWS_AS(AllocationVector({-0.1, 1.1}), ConfigError);
    CHECK(AllocationVector::uniform(4)[2] == 0.25);
    CHECK(AllocationVector::vertex(3, 1)[1] == 1.0);
}

TEST_CASE("batched revenue matches the scalar path")
{
    const auto specs = testing::two_streams(500, 530, 900, 1.3);
    const std::vector<double> rows = {0.0, 1.0, 0.25, 0.75, 0.63, 0.37};
    const auto v = fap::revenue_batch(specs, rows);
    REQUIRE(v.size() == 3);
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(v[k] == doctest::Approx(analytic::total_revenue(specs, std::span(rows).subspan(2 * k, 2))).epsilon(1e-14));
    }
}

}
