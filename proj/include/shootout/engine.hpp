// Exact outcome computation for penalty shootouts.
//
// enumerate() walks every kick-outcome sequence of the regular phase (4^rounds
// leaves) and classifies each by final score, splitting the tied mass by which
// team the mechanism sends first into sudden death. The sudden death stage is
// never enumerated: once reached, all rules considered here alternate the
// order round by round, so the first kicker's winning probability has the
// closed form
//
//     W = (1 - q + p q) / (2 - p - q + 2 p q)
//
// and the overall winning probability composes as
//
//     Q(A) = P(A wins regular) + P(tie, A first) W + P(tie, B first) (1 - W).
//
// All functions are templates over the probability scalar: `rational` for
// exact fractions, `long double`/`double` for dense parameter sweeps.

#pragma once

#include <stdexcept>

#include "shootout/history.hpp"
#include "shootout/mechanism.hpp"
#include "shootout/scoring.hpp"

namespace shootout {

class degenerate_model_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class enumeration_limit_error : public std::length_error {
public:
    using std::length_error::length_error;
};

// 2^(2*rounds) sequences; 12 rounds = 2^24 is the enforced ceiling.
inline constexpr int max_enumeration_rounds = 12;

template <class T>
struct outcome_distribution {
    T a_win{};
    T b_win{};
    T tie{};
    T tie_a_first_sd{};  // tied and A opens sudden death
    T tie_b_first_sd{};  // tied and B opens sudden death
};

namespace detail {

template <class T>
struct branch_weights {
    // Indexed by (first scored, second scored) packed as 2*fs + ss.
    T w[4];
};

template <class T>
branch_weights<T> weights_for(const round_rates<T>& r) {
    const T np = T(1) - r.p;
    const T nq = T(1) - r.q;
    branch_weights<T> b;
    b.w[0] = np * nq;   // miss, miss
    b.w[1] = np * r.q;  // miss, score
    b.w[2] = r.p * nq;  // score, miss
    b.w[3] = r.p * r.q; // score, score
    return b;
}

template <class T>
void check_enumerate_args(int rounds, const scoring_model<T>& model) {
    if (rounds < 1) throw std::invalid_argument("enumerate: rounds must be >= 1");
    if (rounds > max_enumeration_rounds)
        throw enumeration_limit_error("enumerate: rounds above the 2^24-sequence ceiling");
    if (!model.is_uniform() && model.regular_rounds() != rounds)
        throw std::invalid_argument("enumerate: per-round model length must equal rounds");
}

template <class T, class Leaf>
void walk_sequences(const mechanism& mech, int rounds,
                    const std::vector<branch_weights<T>>& weights, shootout_history& h,
                    int score_a, int score_b, const T& prob, const Leaf& leaf) {
    const int round = h.rounds_played() + 1;
    if (round > rounds) {
        leaf(score_a, score_b, prob);
        return;
    }
    const team first = first_kicker_unchecked(mech, round, h);
    const auto& bw = weights[static_cast<std::size_t>(round - 1)];
    for (int branch = 0; branch < 4; ++branch) {
        const bool first_scored = (branch & 2) != 0;
        const bool second_scored = (branch & 1) != 0;
        const round_record rec{first, first_scored ? kick::scored : kick::missed,
                               second_scored ? kick::scored : kick::missed};
        h.push(rec);
        walk_sequences(mech, rounds, weights, h, score_a + rec.goals(team::a),
                       score_b + rec.goals(team::b), prob * bw.w[branch], leaf);
        h.pop();
    }
}

template <class T>
std::vector<branch_weights<T>> per_round_weights(int rounds, const scoring_model<T>& model) {
    std::vector<branch_weights<T>> weights;
    weights.reserve(static_cast<std::size_t>(rounds));
    for (int r = 1; r <= rounds; ++r) weights.push_back(weights_for(model.rates_for_round(r)));
    return weights;
}

} // namespace detail

template <class T>
outcome_distribution<T> enumerate(const mechanism& mech, int rounds,
                                  const scoring_model<T>& model) {
    detail::check_enumerate_args(rounds, model);
    const auto weights = detail::per_round_weights(rounds, model);
    outcome_distribution<T> dist;
    shootout_history h(rounds);
    h.reserve(rounds);
    detail::walk_sequences(mech, rounds, weights, h, 0, 0, T(1),
                           [&](int score_a, int score_b, const T& prob) {
                               if (score_a > score_b) {
                                   dist.a_win += prob;
                               } else if (score_b > score_a) {
                                   dist.b_win += prob;
                               } else {
                                   dist.tie += prob;
                                   if (first_kicker_unchecked(mech, rounds + 1, h) == team::a)
                                       dist.tie_a_first_sd += prob;
                                   else
                                       dist.tie_b_first_sd += prob;
                               }
                           });
    return dist;
}

// First sudden-death kicker's overall winning probability.
template <class T>
T sudden_death_win_prob(const T& p, const T& q) {
    const T resolve = p + q - T(2) * p * q;
    if (resolve == T(0))
        throw degenerate_model_error("sudden death never resolves: p and q both 0 or both 1");
    return (T(1) - q + p * q) / (T(2) - p - q + T(2) * p * q);
}

template <class T>
T sudden_death_win_prob(const round_rates<T>& sd) {
    return sudden_death_win_prob(sd.p, sd.q);
}

template <class T>
T expected_sudden_death_rounds(const T& p, const T& q) {
    const T resolve = p + q - T(2) * p * q;
    if (resolve == T(0))
        throw degenerate_model_error("sudden death never resolves: p and q both 0 or both 1");
    return T(1) / resolve;
}

template <class T>
T overall_win_prob(const mechanism& mech, int rounds, const scoring_model<T>& model) {
    const outcome_distribution<T> dist = enumerate(mech, rounds, model);
    const T alpha = sudden_death_win_prob(model.sudden_death());
    return dist.a_win + dist.tie_a_first_sd * alpha + dist.tie_b_first_sd * (T(1) - alpha);
}

// Expected number of kicks actually taken. Within the regular phase a kick is
// only taken while the outcome is still open (a lead larger than the other
// team's remaining kicks ends the shootout mid-phase); a sudden-death round
// always takes both kicks, so the tie mass contributes 2 E[SD rounds].
template <class T>
T expected_total_kicks(const mechanism& mech, int rounds, const scoring_model<T>& model) {
    detail::check_enumerate_args(rounds, model);
    const auto weights = detail::per_round_weights(rounds, model);

    T kicks{};
    T tie_prob{};
    shootout_history h(rounds);
    h.reserve(rounds);

    auto recurse = [&](auto&& self, int score_a, int score_b, const T& prob) -> void {
        const int round = h.rounds_played() + 1;
        if (round > rounds) {
            tie_prob += prob;
            kicks += prob * T(2 * rounds);
            return;
        }
        const team first = first_kicker_unchecked(mech, round, h);
        const team second = other(first);
        const auto& bw = weights[static_cast<std::size_t>(round - 1)];
        for (int branch = 0; branch < 4; ++branch) {
            const bool first_scored = (branch & 2) != 0;
            const bool second_scored = (branch & 1) != 0;
            const round_record rec{first, first_scored ? kick::scored : kick::missed,
                                   second_scored ? kick::scored : kick::missed};
            const T w = prob * bw.w[branch];

            // After the round's first kick: the first kicker has rounds-round
            // kicks left, the second kicker still has this round's kick too.
            int sa = score_a + (first == team::a && first_scored ? 1 : 0);
            int sb = score_b + (first == team::b && first_scored ? 1 : 0);
            const int rem_first = rounds - round;
            const int rem_second = rounds - round + 1;
            if (lead_unassailable(first == team::a ? sa : sb, first == team::a ? sb : sa,
                                  rem_first, rem_second)) {
                kicks += w * T(2 * round - 1);
                continue;
            }
            sa += second == team::a && second_scored ? 1 : 0;
            sb += second == team::b && second_scored ? 1 : 0;
            if (lead_unassailable(sa, sb, rounds - round, rounds - round)) {
                kicks += w * T(2 * round);
                continue;
            }
            h.push(rec);
            self(self, sa, sb, w);
            h.pop();
        }
    };
    recurse(recurse, 0, 0, T(1));

    if (!(tie_prob == T(0)))
        kicks += tie_prob * T(2) * expected_sudden_death_rounds(model.sudden_death().p,
                                                                model.sudden_death().q);
    return kicks;
}

} // namespace shootout
