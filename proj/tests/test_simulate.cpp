#include <doctest.h>

#include <cmath>

#include "shootout/simulate.hpp"

using namespace shootout;

namespace {

const std::uint64_t kTrials = 1000000;

double binomial_sigma(double x, double n) { return std::sqrt(x * (1 - x) / n); }

} // namespace

TEST_CASE("identical seeds give bit-identical results") {
    const auto model = convert_model<double>(brams_preset());
    const auto a = simulate(mechanism::catch_up(), 5, model, 42, 200000);
    const auto b = simulate(mechanism::catch_up(), 5, model, 42, 200000);
    CHECK(a == b);
    const auto c = simulate(mechanism::catch_up(), 5, model, 43, 200000);
    CHECK(a != c);
}

TEST_CASE("results are independent of the worker count") {
    const auto model = convert_model<double>(brams_preset());
    const auto one = simulate(mechanism::adjusted_catch_up(), 5, model, 7, 300000, 1);
    const auto three = simulate(mechanism::adjusted_catch_up(), 5, model, 7, 300000, 3);
    CHECK(one == three);
}

TEST_CASE("two-round catch-up matches the exact engine within 3 sigma") {
    const auto exact = brams_preset();
    const auto result = simulate(mechanism::catch_up(), 2, convert_model<double>(exact), 42, kTrials);

    const double overall = (double)overall_win_prob(mechanism::catch_up(), 2, exact).to_long_double();
    CHECK(std::abs(result.p_a_win() - overall) <= 3 * binomial_sigma(overall, kTrials));

    const auto dist = enumerate(mechanism::catch_up(), 2, exact);
    const auto pairs = {
        std::pair{result.p_regular_a_win(), dist.a_win},
        std::pair{result.p_regular_b_win(), dist.b_win},
        std::pair{result.p_tie(), dist.tie},
        std::pair{result.p_tie_a_first_sd(), dist.tie_a_first_sd},
        std::pair{result.p_tie_b_first_sd(), dist.tie_b_first_sd},
    };
    for (const auto& [empirical, expected] : pairs) {
        const double x = (double)expected.to_long_double();
        CHECK(std::abs(empirical - x) <= 3 * binomial_sigma(x, kTrials));
    }
}

TEST_CASE("symmetric rates leave no measurable order advantage") {
    const auto model = scoring_model<double>::uniform(0.7, 0.7, {0.7, 0.7});
    for (const auto& m : {mechanism::standard(), mechanism::catch_up()}) {
        const auto result = simulate(m, 5, model, 99, kTrials);
        const double sigma = binomial_sigma(0.5, kTrials);
        CHECK(std::abs(result.p_a_win() - result.p_b_win()) <= 2 * 3 * sigma);
    }
}

TEST_CASE("mean kick count matches the exact expectation") {
    const auto exact = brams_preset();
    const auto result = simulate(mechanism::catch_up(), 5, convert_model<double>(exact), 5, kTrials);
    const double expected = (double)expected_total_kicks(mechanism::catch_up(), 5, exact).to_long_double();
    CHECK(std::abs(result.mean_kicks() - expected) <= 3 * result.kick_stderr());
    CHECK(result.kick_stderr() > 0);
    CHECK(result.kick_stderr() < 0.02);
}

TEST_CASE("simulation argument validation") {
    const auto model = convert_model<double>(brams_preset());
    CHECK_THROWS_AS(simulate(mechanism::catch_up(), 5, model, 1, 0), std::invalid_argument);
    const auto degenerate = scoring_model<double>::uniform(1.0, 1.0, {1.0, 1.0});
    CHECK_THROWS_AS(simulate(mechanism::catch_up(), 5, degenerate, 1, 10), degenerate_model_error);
    CHECK(simulation_result::rng_name == std::string("mt19937_64"));
}
