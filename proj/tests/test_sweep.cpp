#include <doctest.h>

#include "g2sim/errors.hpp"
#include "g2sim/sweep.hpp"

#include <cmath>

using namespace g2sim;

namespace {

SweepSpec base_spec(SweepKind kind, double alpha = 0.1, int P = 6)
{
    SweepSpec s;
    s.kind = kind;
    s.base.alpha = alpha;
    s.base.P = TruncationOrder(P);
    return s;
}

std::vector<double> grid(double start, double stop, double step)
{
    std::vector<double> v;
    for (int i = 0; start + i * step <= stop + 1e-18; ++i)
        v.push_back(start + i * step);
    return v;
}

} // namespace

TEST_CASE("1D sweep equals the tau_c = 0 slice of the map bit for bit")
{
    auto line = base_spec(SweepKind::G2Tau);
    line.tau = grid(-300e-9, 300e-9, 50e-9);
    line.base.tauc = 0.0;
    auto map = base_spec(SweepKind::G2Map);
    map.tau = line.tau;
    map.tauc = grid(-100e-9, 100e-9, 50e-9);
    map.threads = 3;

    const auto a = sweep(line);
    const auto b = sweep(map);
    REQUIRE(b.size() == a.size() * map.tauc.size());
    for (const auto& row : b) {
        if (map.tauc[row.taucIndex] != 0.0)
            continue;
        CHECK(row.value == a[row.tauIndex].value);
    }
    // tau-major order
    CHECK(b[0].tauIndex == 0);
    CHECK(b[1].taucIndex == 1);
    CHECK(b[map.tauc.size()].tauIndex == 1);
}

TEST_CASE("thread count does not change any value")
{
    auto s = base_spec(SweepKind::G2Map, 1.2, 8);
    s.base.basis = ProjectionBasis::AD;
    s.tau = grid(-200e-9, 200e-9, 40e-9);
    s.tauc = grid(-200e-9, 200e-9, 100e-9);
    s.threads = 1;
    const auto one = sweep(s);
    for (int t : {2, 5, 16}) {
        s.threads = t;
        const auto many = sweep(s);
        REQUIRE(many.size() == one.size());
        for (std::size_t i = 0; i < one.size(); ++i) {
            CHECK(many[i].value == one[i].value);
            CHECK(many[i].tauIndex == one[i].tauIndex);
            CHECK(many[i].taucIndex == one[i].taucIndex);
        }
    }
}

TEST_CASE("undefined points are flagged, not fatal")
{
    auto s = base_spec(SweepKind::Converge, 0.5, 10);
    s.base.tau = 500e-9;
    s.orders = {1, 2, 3, 4};
    const auto rows = sweep(s);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].status == RowStatus::Undefined);
    CHECK_FALSE(rows[0].message.empty());
    CHECK(rows[1].status == RowStatus::Ok);
    CHECK(rows[1].value == 0.0);
    CHECK(rows[2].value > 0.0);
    CHECK(rows[3].P == 4);
}

TEST_CASE("R_cd sweep")
{
    auto s = base_spec(SweepKind::RcdTau, 0.1, 10);
    s.tau = {-1e-6, 0.0, 1e-6};
    const auto rows = sweep(s);
    CHECK(rows[1].value == doctest::Approx(0.5).epsilon(0.02));
    CHECK(std::abs(rows[0].value - 1.0) < 1e-6);
    CHECK(rows[0].value == rows[2].value);
}

TEST_CASE("grid preconditions")
{
    auto s = base_spec(SweepKind::G2Tau);
    CHECK_THROWS_AS(sweep(s), UsageError);
    s.tau = {0.0, 0.0};
    CHECK_THROWS_AS(sweep(s), UsageError);
    s.tau = {1.0, 0.0};
    CHECK_THROWS_AS(sweep(s), UsageError);
    s.tau = {0.0};
    s.threads = 0;
    CHECK_THROWS_AS(sweep(s), UsageError);

    auto c = base_spec(SweepKind::Converge);
    c.orders = {3, 2};
    CHECK_THROWS_AS(sweep(c), UsageError);
    c.orders = {21};
    CHECK_THROWS_AS(sweep(c), ConfigError);
}
