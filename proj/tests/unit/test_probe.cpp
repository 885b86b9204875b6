#include <cmath>

#include <gtest/gtest.h>

#include "wgof/probe.hpp"

namespace {

using namespace wgof;

TEST(Regime, KnownIndices)
{
    const auto w = RateRule::parse("1.2*n^-0.25");
    auto ks = regime_check(StatisticSpec::ks(), w);
    EXPECT_EQ(ks.regime, "non-degenerate");
    EXPECT_EQ(ks.target_index, 2.0);
    EXPECT_EQ(regime_check(StatisticSpec::ad_sup(), w).regime, "degenerate");
    EXPECT_EQ(regime_check(StatisticSpec::ad_log(), w).target_index, 2.0);
    EXPECT_EQ(regime_check(StatisticSpec::ad_int(), w).target_index, 1.0);
    EXPECT_EQ(regime_check(StatisticSpec::bs(0.05), w).target_index, 0.5);
    // w_n of larger order than sqrt(log n / n): weighted statistic degenerates.
    EXPECT_EQ(regime_check(StatisticSpec::weighted_tau(0.25), w).regime, "degenerate");
    const auto narrow = RateRule::parse("1.2*n^-0.5*log(n)^0.5*loglog(n)^-0.5");
    const auto c = regime_check(StatisticSpec::weighted_tau(0.25), narrow);
    EXPECT_EQ(c.regime, "non-degenerate");
    EXPECT_DOUBLE_EQ(c.target_index, 1.0);
    EXPECT_TRUE(regime_check(StatisticSpec::weighted_tau(0.25), RateRule::parse("n^-0.5*log(n)^0.5")).ambiguous);
}

TEST(Regime, EickerJaeschkeBranches)
{
    const auto w = RateRule::parse("n^-0.1");
    // sqrt(kappa_o) ~ n^-1/4 is of smaller order than w.
    EXPECT_EQ(regime_check(StatisticSpec::ej(RateRule::kappa_o()), w).regime, "degenerate");
    const auto small_w = RateRule::parse("n^-0.4");
    EXPECT_EQ(regime_check(StatisticSpec::ej(RateRule::kappa_o()), small_w).target_index, 0.5);
    const auto same = regime_check(StatisticSpec::ej(RateRule::kappa_o()), RateRule::parse("3*n^-0.25"));
    EXPECT_EQ(same.regime, "undetermined");
    EXPECT_TRUE(same.ambiguous);
    EXPECT_EQ(regime_check(StatisticSpec::ks(), RateRule::parse("n^-0.6")).regime, "undetermined");
}

TEST(Probe, ValidationAndReliabilityGuard)
{
    ProbeSpec p{StatisticSpec::ks(), RateRule::parse("1.2*n^-0.25"), {1000, 10000, 100000}, 1000000, 1};
    EXPECT_THROW(p.validate(), ProbeError);
    p.n_grid = {100, 50};
    EXPECT_THROW(p.validate(), ProbeError);
    ProbeSpec q{StatisticSpec::ad_sup(), RateRule::parse("n^-0.3"), {10, 100}, 100, 1};
    EXPECT_NO_THROW(q.validate());
    q.w_rule = RateRule::parse("n^-0.6");
    EXPECT_THROW(q.validate(), ProbeError);
}

TEST(Probe, TailProbabilityMatchesLimitLaw)
{
    // P(sqrt(n) D_n >= 1.2238) ~ 0.1 for large n.
    const auto e = tail_probability(StatisticSpec::ks(), 400, 1.2238, 20000, 3, 2);
    EXPECT_NEAR(e.p_hat, 0.1, 5 * e.stderr_ + 0.01);
    EXPECT_TRUE(e.reliable);
    const auto rare = tail_probability(StatisticSpec::ks(), 50, 3.0, 1000, 3, 1);
    EXPECT_FALSE(rare.reliable);
    EXPECT_FALSE(rare.warning.empty());
}

TEST(Probe, BatchEqualsSeparateRuns)
{
    const auto w = RateRule::parse("0.3*n^-0.25");
    ProbeSpec a{StatisticSpec::ad_int(), w, {20, 80}, 3000, 5};
    ProbeSpec b{StatisticSpec::ks(), w, {80, 160}, 2000, 5};
    const auto batch = index_estimate_batch({a, b}, 2);
    const auto sa = index_estimate(a, 1);
    const auto sb = index_estimate(b, 3);
    ASSERT_EQ(batch[0].size(), 2u);
    for (std::size_t i = 0; i < 2; ++i) {
        EXPECT_EQ(batch[0][i].tail.hits, sa[i].tail.hits);
        EXPECT_EQ(batch[1][i].tail.hits, sb[i].tail.hits);
        EXPECT_EQ(batch[1][i].index, sb[i].index);
    }
    EXPECT_NEAR(sa[0].threshold, std::sqrt(20.0) * 0.3 * std::pow(20.0, -0.25), 1e-14);
}

}  // namespace
