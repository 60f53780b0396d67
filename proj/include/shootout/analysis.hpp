// Fairness analysis over mechanisms and scoring models.
//
// Fairness follows the coin-toss definition: a mechanism is fairer the closer
// P(A wins) is to 1/2, where A is the team kicking the very first penalty.
// This header produces the data behind the comparison tables and figures:
// the rounds x mechanism fairness grid, win-probability sweeps in q, the
// empirical-rate bars, sudden-death alpha thresholds, and the (p, q) region
// boundary where the adjusted rule stays fairest.

#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "shootout/engine.hpp"

namespace shootout {

template <class T>
struct fairness_report {
    mechanism mech;
    int rounds;
    T win_prob_a;
    T bias;  // win_prob_a - 1/2
};

template <class T>
fairness_report<T> fairness_bias(const mechanism& mech, int rounds,
                                 const scoring_model<T>& model) {
    T w = overall_win_prob(mech, rounds, model);
    T bias = w - T(1) / T(2);
    return {mech, rounds, std::move(w), std::move(bias)};
}

// The three production candidates, in the column order used everywhere.
inline std::array<mechanism, 3> compared_mechanisms() {
    return {mechanism::catch_up(), mechanism::adjusted_catch_up(), mechanism::alternating()};
}

template <class T>
struct fairness_grid {
    static constexpr int max_rounds = 8;
    // win_prob_a[r-1][c]: rounds r in 1..8, columns catch-up, adjusted, alternating.
    std::array<std::array<T, 3>, max_rounds> win_prob_a;
};

template <class T>
fairness_grid<T> table3(const scoring_model<T>& model) {
    if (!model.is_uniform())
        throw std::invalid_argument("table3: needs a uniform model (rounds vary per row)");
    fairness_grid<T> grid;
    const auto mechs = compared_mechanisms();
    for (int rounds = 1; rounds <= fairness_grid<T>::max_rounds; ++rounds)
        for (std::size_t c = 0; c < mechs.size(); ++c)
            grid.win_prob_a[static_cast<std::size_t>(rounds - 1)][c] =
                overall_win_prob(mechs[c], rounds, model);
    return grid;
}

template <class T>
struct sweep_point {
    T q;
    T win_prob_a;
};

// One curve point per q; sudden death uses the same (p, q) pair when
// sd_follows is set, otherwise the supplied fixed pair.
template <class T>
std::vector<sweep_point<T>> sweep_q(const mechanism& mech, int rounds, const T& p,
                                    std::span<const T> q_grid, bool sd_follows = true,
                                    round_rates<T> fixed_sd = {}) {
    std::vector<sweep_point<T>> curve;
    curve.reserve(q_grid.size());
    for (std::size_t i = 0; i < q_grid.size(); ++i) {
        const T& q = q_grid[i];
        if (q > p) throw std::invalid_argument("sweep_q: q must not exceed p");
        if (i > 0 && q < q_grid[i - 1]) throw std::invalid_argument("sweep_q: q grid must be ordered");
        const round_rates<T> sd = sd_follows ? round_rates<T>{p, q} : fixed_sd;
        const auto model = scoring_model<T>::uniform(p, q, sd);
        curve.push_back({q, overall_win_prob(mech, rounds, model)});
    }
    return curve;
}

template <class T>
struct empirical_bar_group {
    round_rates<T> sudden_death;
    std::array<T, 3> win_prob_a;  // catch-up, adjusted, alternating
};

// Win probabilities under a per-round empirical model, one group of three
// bars per candidate sudden-death pair.
template <class T>
std::vector<empirical_bar_group<T>> empirical_bars(const scoring_model<T>& per_round_model,
                                                   std::span<const round_rates<T>> sd_pairs) {
    if (per_round_model.is_uniform())
        throw std::invalid_argument("empirical_bars: needs a per-round model");
    std::vector<empirical_bar_group<T>> groups;
    groups.reserve(sd_pairs.size());
    const auto mechs = compared_mechanisms();
    const int rounds = per_round_model.regular_rounds();
    for (const auto& sd : sd_pairs) {
        scoring_model<T> model =
            scoring_model<T>::per_round(per_round_model.per_round_rates(), sd);
        empirical_bar_group<T> g{sd, {}};
        for (std::size_t c = 0; c < mechs.size(); ++c)
            g.win_prob_a[c] = overall_win_prob(mechs[c], rounds, model);
        groups.push_back(std::move(g));
    }
    return groups;
}

template <class T>
T tie_probability(const mechanism& mech, int rounds, const scoring_model<T>& model) {
    return enumerate(mech, rounds, model).tie;
}

enum class rival_rule { catch_up, alternating };

struct threshold_result {
    rival_rule comparison;
    bool found;                // false: the adjusted rule never stops being fairer
    long double alpha_star;    // valid when found; in [1/2, 1]
};

// Largest sudden-death first-mover win probability alpha for which the
// adjusted catch-up rule is still at least as fair as the rival under the
// given regular-phase model. Both fairness gaps are affine in alpha, so the
// comparison flips at most once on [1/2, 1]; the flip is located by bisection
// to 1e-9.
inline threshold_result alpha_threshold(rival_rule comparison, const exact_model& model,
                                        int rounds = 5) {
    const auto dist_cu = enumerate(mechanism::catch_up(), rounds, model);
    const outcome_distribution<rational> dist_rival =
        comparison == rival_rule::catch_up
            ? dist_cu
            : enumerate(mechanism::alternating(), rounds, model);

    // Q(alpha) = base + slope * alpha for each rule. The adjusted rule sends
    // B first into sudden death with the whole tie mass; the rival splits it.
    const auto ld = [](const rational& r) { return r.to_long_double(); };
    const long double adj_base = ld(dist_cu.a_win + dist_cu.tie);
    const long double adj_slope = -ld(dist_cu.tie);
    const long double rival_base = ld(dist_rival.a_win + dist_rival.tie_b_first_sd);
    const long double rival_slope = ld(dist_rival.tie_a_first_sd - dist_rival.tie_b_first_sd);

    const auto adjusted_no_less_fair = [&](long double alpha) {
        const long double gap_adj = std::abs(adj_base + adj_slope * alpha - 0.5L);
        const long double gap_rival = std::abs(rival_base + rival_slope * alpha - 0.5L);
        return gap_adj <= gap_rival;
    };

    // No flip on [1/2, 1] (either always at least as fair, or never): no threshold.
    if (adjusted_no_less_fair(1.0L) || !adjusted_no_less_fair(0.5L))
        return {comparison, false, 0.0L};

    long double lo = 0.5L, hi = 1.0L;
    while (hi - lo > 1e-9L) {
        const long double mid = (lo + hi) / 2;
        (adjusted_no_less_fair(mid) ? lo : hi) = mid;
    }
    return {comparison, true, (lo + hi) / 2};
}

// Smallest q with W(p, q) >= alpha_star: inverts the sudden-death closed form.
// The fairer-region band for a given p is { q : q_min <= q <= p }.
template <class T>
T region_boundary(const T& p, const T& alpha_star) {
    const T den = T(1) - alpha_star - p + T(2) * alpha_star * p;
    if (den == T(0)) throw std::domain_error("region_boundary: singular at these inputs");
    return (T(1) - T(2) * alpha_star + alpha_star * p) / den;
}

} // namespace shootout
