#include "doctest.h"

#include <cmath>

#include "lppcond/series.hpp"

using namespace lppcond;

TEST_CASE("one-point density closed forms") {
    QuadSettings qs;
    qs.n_max = 2;
    qs.q_override = 16;
    for (double T : {0.5, 1.0, 2.0}) {
        CHECK(density_and_tail(1, 1, T, qs).density
              == doctest::Approx(std::exp(-T)).epsilon(1e-8));
        CHECK(density_and_tail(2, 1, T, qs).density
              == doctest::Approx(T * std::exp(-T)).epsilon(1e-8));
        CHECK(density_and_tail(1, 2, T, qs).density
              == doctest::Approx(T * std::exp(-T)).epsilon(1e-8));
    }
}

TEST_CASE("one-point upper tails") {
    QuadSettings qs;
    qs.n_max = 2;
    qs.q_override = 16;
    // L(1,1) is a single mean-1 exponential.
    CHECK(density_and_tail(1, 1, 1.5, qs).tail == doctest::Approx(std::exp(-1.5)).epsilon(1e-8));
    // Tails are monotone in the threshold.
    QuadSettings qd;
    double prev = 1.0;
    for (double T : {4.0, 6.0, 8.0, 10.0}) {
        const DensityTail dt = density_and_tail(3, 3, T, qd);
        CHECK(dt.tail > 0.0);
        CHECK(dt.tail < prev);
        prev = dt.tail;
    }
}

TEST_CASE("series bookkeeping") {
    const ObservationPlan plan = single_plan(2, 2, 3.0);
    QuadSettings qs;
    qs.n_max = 3;
    qs.q_override = 16;
    const SeriesResult r = eval_Q(plan, qs);
    CHECK(r.n_max == 3);
    CHECK(r.included_terms.size() == 3); // n = 1, 2, 3
    CHECK(r.value > 0.0);
    CHECK(r.total_error() >= r.conv_estimate);
}

TEST_CASE("normalization shift rescales the series") {
    ObservationPlan plan = single_plan(2, 2, 3.0);
    QuadSettings qs;
    qs.n_max = 1;
    qs.q_override = 16;
    const double v0 = eval_Q(plan, qs).value;
    plan.log_Z = 3.0;
    const double v1 = eval_Q(plan, qs).value;
    CHECK(v1 * std::exp(3.0) == doctest::Approx(v0).epsilon(1e-12));
}

TEST_CASE("plan validation") {
    CHECK_THROWS_AS(multi_plan({1, 2}, {1, 2}, {2.0, 1.0}), HypothesisError); // decreasing T
    CHECK_THROWS_AS(multi_plan({1, 2}, {1, 2}, {-1.0, 1.0}), HypothesisError);
    CHECK_THROWS_AS(multi_plan({1, 2}, {2, 2}, {1.0, 1.0}), HypothesisError); // equal (N, T)
    CHECK_THROWS_AS(multi_plan({1}, {1, 2}, {1.0, 2.0}), ShapeError);
}

TEST_CASE("scaled plan coordinates") {
    const ModelParams p = make_params(1, 1, 5);
    const RegionQuery q{0.5, 0.35, 0.7, 0.43};
    const ObservationPlan plan = scaled_plan(p, q, 0.25, 0.25, 8.0);
    REQUIRE(plan.m == 3);
    CHECK(plan.M[0] == 4);  // ceil(0.5 * 8)
    CHECK(plan.N[0] == 3);  // ceil(0.35 * 8)
    CHECK(plan.M[2] == 8);
    CHECK(plan.N[2] == 8);
    CHECK(plan.T[2] == doctest::Approx(40.0));
    CHECK(plan.T[0] == doctest::Approx(h_linear(p, 0.5, 0.35) * 8.0
                                       + std::sqrt(2.0) * p.sigma * 0.25 * std::sqrt(8.0)));
    CHECK(plan.scaled);
    CHECK(plan.log_Z == doctest::Approx(z_normalization(p, 8.0).log_Z));
}

TEST_CASE("deformation identity in the trailing-point region") {
    const ModelParams p = make_params(1, 1, 5);
    const RegionQuery q{0.5, 0.35, 0.6, 0.55}; // R2
    QuadSettings qs;
    qs.q_override = 14;
    qs.radii_mode = RadiiMode::Spread;
    const IdentityReport rep = verify_identity("QQ111-a", p, q, 4.0, qs);
    CHECK(rep.id == "QQ111-a");
    CHECK(rep.residual < 1e-2);
    CHECK_FALSE(rep.terms.empty());
    CHECK_THROWS_AS(verify_identity("QQ999", p, q, 4.0, qs), ConfigError);
}

TEST_CASE("identity selection by region") {
    CHECK(identities_for_region(RegionTag::R1) == std::vector<std::string>{"QQ111-a"});
    CHECK(identities_for_region(RegionTag::R2) == std::vector<std::string>{"QQ111-a"});
    CHECK(identities_for_region(RegionTag::R3) == std::vector<std::string>{"QQ111-b"});
    CHECK(identities_for_region(RegionTag::R4) == std::vector<std::string>{"QQ111-b"});
    CHECK(identities_for_region(RegionTag::R5) == std::vector<std::string>{"QQ111-c"});
    CHECK(identities_for_region(RegionTag::R6)
          == std::vector<std::string>{"QQ111-d", "QQ121"});
    CHECK(identities_for_region(RegionTag::R7)
          == std::vector<std::string>{"QQ111-d", "QQ121"});
}

TEST_CASE("deformed leading term agrees with the direct one") {
    const ModelParams p = make_params(1, 1, 5);
    const RegionQuery q{0.5, 0.35, 0.6, 0.55};
    const ObservationPlan plan = scaled_plan(p, q, 0.0, 0.0, 4.0);
    QuadSettings direct;
    direct.q_override = 16;
    direct.radii_mode = RadiiMode::Spread;
    const double v_direct = eval_Q_n(plan, {1, 1, 1}, direct).real();
    QuadSettings def;
    def.q_override = 16;
    const double v_def = q111_deformed(plan, def).real();
    CHECK(v_def == doctest::Approx(v_direct).epsilon(0.05));
}

TEST_CASE("asymptotic leading mode") {
    const ModelParams p = make_params(1, 1, 5);
    const RegionQuery q{0.6, 0.5, 0.8, 0.6}; // R5
    const ObservationPlan plan = scaled_plan(p, q, 0.0, 0.0, 8.0);
    QuadSettings qs;
    qs.asymptotic_leading = true;
    qs.q_override = 32;
    qs.radii_mode = RadiiMode::Steepest;
    const ConditionalResult cr = conditional_probability(plan, qs);
    CHECK(cr.probability > 0.0);
    CHECK(cr.probability < 1.0);
    bool flagged = false;
    for (const auto& w : cr.numerator.warnings)
        if (w.find("AsymptoticLeading") != std::string::npos) flagged = true;
    CHECK(flagged);
}
