#include "support.hpp"

#include <zsched/analytic.hpp>
#include <zsched/errors.hpp>
#include <zsched/policyz.hpp>

#include <doctest.h>

using namespace zsched;
using testing::rel_close;

TEST_SUITE("policyz") {

TEST_CASE("index limits and edges")
{
    const StreamSpec s = StreamSpec::from_interarrival(350, 600, 1000, 1.0);
    const double vs = 1.0 / 600;
    CHECK(rel_close(policyz::priority(s, 0.5, 1'000'000), vs, 1e-6));
    CHECK(policyz::priority(s, 0.0, 1) == vs);
    CHECK(policyz::priority(s, 0.5, 1) < vs);
    CHECK(policyz::priority(s, 0.5, 1) > 0);
}

TEST_CASE("index approaches its limit like 1/l")
{
    // 1 - Z/(vs) = s f pi0(r, sf, d) / ((sf + l d) pi0(r, sf + l d, d)) ~ s f pi0 D / l.
    const StreamSpec s = StreamSpec::from_interarrival(350, 50, 10000, 1.0);
    const double pi0 = analytic::pi0(analytic::QueueParams(s.arrival_rate(), 0.9 * s.service_rate(), s.deadline_rate()));
    const double vs = s.service_rate();
    for (std::size_t l : {100'000, 1'000'000, 10'000'000}) {
        const double gap = 1 - policyz::priority(s, 0.9, l) / vs;
        CHECK(rel_close(gap * static_cast<double>(l), 0.9 * s.service_rate() * pi0 * 10000, 2e-2));
    }
}

TEST_CASE("closed form equals the value-difference composition")
{
    for (double D : {165.0, 1000.0, 3200.0}) {
        for (double e : {50.0, 600.0, 2000.0}) {
            const StreamSpec s = StreamSpec::from_interarrival(350, e, D, 1.3);
            for (double f : {0.1, 0.5, 0.9}) {
                for (std::size_t l : {1, 2, 10, 100}) {
                    const double a = policyz::priority(s, f, l);
                    const double b = policyz::priority_from_value_difference(s, f, l);
                    INFO("D=" << D << " e=" << e << " f=" << f << " l=" << l);
                    CHECK(rel_close(a, b, 1e-12));
                }
            }
        }
    }
}

TEST_CASE("table bounds, monotonicity and lookups")
{
    const auto specs = testing::e1_streams();
    const auto table = policyz::build_table(specs, AllocationVector({0.5, 0.5}), 200);
    CHECK(table.max_length() == 200);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(table.limit_value(i) == 1.0 / 600);
        for (std::size_t l = 1; l <= 200; ++l) {
            CHECK(table.index(i, l) <= 1.0 / 600);
            if (l > 1) {
                CHECK(table.index(i, l) >= table.index(i, l - 1));
            }
            CHECK(table.index(i, l) == doctest::Approx(policyz::priority(specs[i], 0.5, l)).epsilon(1e-12));
        }
        CHECK(rel_close(table.index(i, 200), 1.0 / 600, 0.01));
        CHECK(table.index(i, 201) == table.limit_value(i));
        CHECK(table.index(i, 100000) == table.limit_value(i));
    }
    // Identical streams give identical rows.
    for (std::size_t l = 1; l <= 200; ++l) {
        CHECK(table.index(0, l) == table.index(1, l));
    }
}

TEST_CASE("select")
{
    const std::vector<StreamSpec> specs = {StreamSpec(0.01, 100, 200, 10.0), StreamSpec(0.01, 100, 200, 1.0)};
    const auto table = policyz::build_table(specs, AllocationVector({0.5, 0.5}), 64);
    const std::vector<std::size_t> empty = {0, 0}, only2 = {0, 5}, both = {3, 7};
    CHECK_FALSE(policyz::select(table, empty).has_value());
    CHECK(policyz::select(table, only2) == 1u);
    REQUIRE(table.index(0, 3) > table.index(1, 7));
    CHECK(policyz::select(table, both) == 0u);

    const auto sym = policyz::build_table(testing::e1_streams(), AllocationVector({0.5, 0.5}), 1);
    const std::vector<std::size_t> tie = {4, 4}, longer = {1, 9};
    CHECK(policyz::select(sym, tie) == 0u);
    CHECK(policyz::select(sym, longer) == 1u);
}

TEST_CASE("scaling rewards scales indices and keeps decisions")
{
    const auto base = testing::two_streams(500, 530, 900, 1.3);
    const auto scaled = testing::two_streams(500, 530, 900, 1.3 * 7, 7.0);
    const AllocationVector f({0.63, 0.37});
    const auto t1 = policyz::build_table(base, f, 50);
    const auto t2 = policyz::build_table(scaled, f, 50);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t l = 1; l <= 50; ++l) {
            CHECK(rel_close(t2.index(i, l), 7.0 * t1.index(i, l), 1e-12));
        }
    }
    for (std::size_t a = 0; a < 12; ++a) {
        for (std::size_t b = 0; b < 12; ++b) {
            const std::vector<std::size_t> q = {a, b};
            CHECK(policyz::select(t1, q) == policyz::select(t2, q));
        }
    }
}

TEST_CASE("table validation")
{
    const auto specs = testing::e1_streams();
    CHECK_THROWS_AS(policyz::build_table(specs, AllocationVector({1.0}), 10), ConfigError);
    CHECK_THROWS_AS(policyz::build_table(specs, AllocationVector({0.5, 0.5}), 0), ConfigError);
    const auto t = policyz::build_table(specs, AllocationVector({0.5, 0.5}), 10);
    const std::vector<std::size_t> wrong = {1, 2, 3};
    CHECK_THROWS_AS((void)policyz::select(t, wrong), ConfigError);
}

}
