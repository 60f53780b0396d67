// Strategy-proofness checking by backward induction.
//
// A mechanism is manipulable when some team, at some reachable kick of the
// regular phase, wins more often by deliberately missing than by kicking
// honestly (everything afterwards played honestly either way). The deviation
// model is a single kick missed on purpose; continuation values at the tie
// boundary use the sudden-death closed form with the mechanism's first
// sudden-death kicker. Sudden-death kicks themselves are not checked: under
// every rule here a deliberate miss in sudden death either loses outright or
// forfeits a winning chance while leaving the order rules no more favorable.
//
// With a rational model, values and comparisons are exact; with a floating
// model a 1e-12 slack guards the strict inequality.

#pragma once

#include <string>
#include <type_traits>
#include <vector>

#include "shootout/engine.hpp"

namespace shootout {

struct decision_state {
    int round = 0;
    int kick_in_round = 0;  // 0 = round's first kick, 1 = second
    team kicker = team::a;
    int score_a = 0;
    int score_b = 0;
    std::string state_string;  // compact encoding, see encode_decision_state
};

// Complete rounds as 3-char groups "ASS.BMM", then '+' and the pending
// round's first kicker, plus its result when the second kick is pending:
// "ASS.BMM+B" (B about to open round 3), "ASS.BMM+BS" (B scored, A to reply).
inline std::string encode_decision_state(const shootout_history& h, team round_first,
                                         int kick_in_round, kick first_result) {
    std::string s;
    for (const auto& rec : h.rounds()) {
        if (!s.empty()) s += '.';
        s += team_char(rec.first_kicker);
        s += kick_char(rec.first_result);
        s += kick_char(rec.second_result);
    }
    s += '+';
    s += team_char(round_first);
    if (kick_in_round == 1) s += kick_char(first_result);
    return s;
}

template <class T>
struct manipulation_case {
    decision_state state;
    T honest_value;  // deviating team's winning probability when honest
    T miss_value;    // and when missing on purpose
};

template <class T>
struct manipulation_report {
    mechanism mech;
    int rounds = 0;
    round_rates<T> rates{};
    bool strategy_proof = true;
    std::vector<manipulation_case<T>> violations;
};

namespace detail {

template <class T>
struct strategy_checker {
    const mechanism& mech;
    int rounds;
    T p, q, alpha;
    manipulation_report<T>& report;
    shootout_history history;

    static constexpr double slack = 1e-12;

    bool strictly_better(const T& miss, const T& honest) const {
        if constexpr (std::is_same_v<T, rational>)
            return miss > honest;
        else
            return static_cast<double>(miss - honest) > slack;
    }

    T value_for(team t, const T& v_a) const { return t == team::a ? v_a : T(1) - v_a; }

    void record(const decision_state& ds, const T& honest, const T& miss) {
        report.strategy_proof = false;
        report.violations.push_back({ds, honest, miss});
    }

    // P(A wins | start of round `round`, everyone honest from here), with the
    // side effect of checking both of the round's kicks for profitable
    // deliberate misses. Decided prefixes are value constants and hold no
    // decision states.
    T round_value(int round, int score_a, int score_b) {
        if (round > rounds)
            return value_for(first_kicker_unchecked(mech, rounds + 1, history), alpha);

        const team first = first_kicker_unchecked(mech, round, history);
        const team second = other(first);
        const int rem_after_first = rounds - round;
        const int rem_second_pending = rounds - round + 1;

        auto after_first = [&](kick first_result) -> T {
            const int sa = score_a + (first == team::a && scored(first_result) ? 1 : 0);
            const int sb = score_b + (first == team::b && scored(first_result) ? 1 : 0);
            const int sf = first == team::a ? sa : sb;
            const int ss = first == team::a ? sb : sa;
            if (lead_unassailable(sf, ss, rem_after_first, rem_second_pending))
                return sa > sb ? T(1) : T(0);

            auto after_second = [&](kick second_result) -> T {
                const int sa2 = sa + (second == team::a && scored(second_result) ? 1 : 0);
                const int sb2 = sb + (second == team::b && scored(second_result) ? 1 : 0);
                if (lead_unassailable(sa2, sb2, rem_after_first, rem_after_first))
                    return sa2 > sb2 ? T(1) : T(0);
                history.push({first, first_result, second_result});
                const T v = round_value(round + 1, sa2, sb2);
                history.pop();
                return v;
            };

            const T v_score = after_second(kick::scored);
            const T v_miss = after_second(kick::missed);
            const T honest = q * value_for(second, v_score) + (T(1) - q) * value_for(second, v_miss);
            const T deliberate = value_for(second, v_miss);
            if (strictly_better(deliberate, honest))
                record({round, 1, second, sa, sb,
                        encode_decision_state(history, first, 1, first_result)},
                       honest, deliberate);
            return q * v_score + (T(1) - q) * v_miss;
        };

        const T v_score = after_first(kick::scored);
        const T v_miss = after_first(kick::missed);
        const T honest = p * value_for(first, v_score) + (T(1) - p) * value_for(first, v_miss);
        const T deliberate = value_for(first, v_miss);
        if (strictly_better(deliberate, honest))
            record({round, 0, first, score_a, score_b,
                    encode_decision_state(history, first, 0, kick::scored)},
                   honest, deliberate);
        return p * v_score + (T(1) - p) * v_miss;
    }
};

} // namespace detail

template <class T>
manipulation_report<T> check_strategy_proofness(const mechanism& mech, int rounds,
                                                const scoring_model<T>& model) {
    if (!model.is_uniform())
        throw std::invalid_argument("check_strategy_proofness: needs a uniform model");
    if (rounds < 1 || rounds > max_enumeration_rounds)
        throw std::invalid_argument("check_strategy_proofness: rounds out of range");

    manipulation_report<T> report{mech, rounds, model.uniform_rates(), true, {}};
    detail::strategy_checker<T> checker{mech,
                                        rounds,
                                        model.uniform_rates().p,
                                        model.uniform_rates().q,
                                        sudden_death_win_prob(model.sudden_death()),
                                        report,
                                        shootout_history(rounds)};
    checker.history.reserve(rounds);
    checker.round_value(1, 0, 0);
    return report;
}

} // namespace shootout
