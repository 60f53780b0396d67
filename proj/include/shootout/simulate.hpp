// Seeded Monte Carlo oracle for the exact engine.
//
// Trials are partitioned into fixed-size blocks; each block runs on its own
// mt19937_64 seeded from the master seed via splitmix64, and block tallies
// are integers, so results are bit-identical for any worker count and
// reproducible across platforms.

#pragma once

#include <cmath>
#include <cstdint>
#include <future>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "shootout/engine.hpp"

namespace shootout {

struct simulation_result {
    std::uint64_t trials = 0;

    // Overall winners, sudden death played out.
    std::uint64_t a_wins = 0;
    std::uint64_t b_wins = 0;

    // Regular-phase classification of the same trials.
    std::uint64_t regular_a_wins = 0;
    std::uint64_t regular_b_wins = 0;
    std::uint64_t ties_a_first_sd = 0;
    std::uint64_t ties_b_first_sd = 0;

    std::uint64_t sum_kicks = 0;
    std::uint64_t sum_kicks_sq = 0;

    static constexpr const char* rng_name = "mt19937_64";
    static constexpr std::uint64_t block_size = 1u << 16;

    double p_a_win() const { return double(a_wins) / double(trials); }
    double p_b_win() const { return double(b_wins) / double(trials); }
    double p_regular_a_win() const { return double(regular_a_wins) / double(trials); }
    double p_regular_b_win() const { return double(regular_b_wins) / double(trials); }
    double p_tie() const { return double(ties_a_first_sd + ties_b_first_sd) / double(trials); }
    double p_tie_a_first_sd() const { return double(ties_a_first_sd) / double(trials); }
    double p_tie_b_first_sd() const { return double(ties_b_first_sd) / double(trials); }
    double mean_kicks() const { return double(sum_kicks) / double(trials); }
    double kick_stderr() const {
        const double n = double(trials);
        const double mean = mean_kicks();
        const double var = double(sum_kicks_sq) / n - mean * mean;
        return std::sqrt(var > 0 ? var / n : 0.0);
    }

    friend bool operator==(const simulation_result&, const simulation_result&) = default;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// 53-bit uniform in [0, 1); avoids std::uniform_real_distribution, whose
// output is not pinned down by the standard.
inline double uniform01(std::mt19937_64& rng) {
    return double(rng() >> 11) * 0x1.0p-53;
}

struct sim_tally {
    std::uint64_t a_wins = 0, b_wins = 0;
    std::uint64_t regular_a_wins = 0, regular_b_wins = 0;
    std::uint64_t ties_a_first_sd = 0, ties_b_first_sd = 0;
    std::uint64_t sum_kicks = 0, sum_kicks_sq = 0;

    void merge(const sim_tally& o) {
        a_wins += o.a_wins;
        b_wins += o.b_wins;
        regular_a_wins += o.regular_a_wins;
        regular_b_wins += o.regular_b_wins;
        ties_a_first_sd += o.ties_a_first_sd;
        ties_b_first_sd += o.ties_b_first_sd;
        sum_kicks += o.sum_kicks;
        sum_kicks_sq += o.sum_kicks_sq;
    }
};

inline sim_tally simulate_block(const mechanism& mech, int rounds,
                                const scoring_model<double>& model, std::uint64_t block_seed,
                                std::uint64_t count) {
    std::mt19937_64 rng(block_seed);
    sim_tally tally;
    shootout_history h(rounds);
    h.reserve(rounds + 8);

    for (std::uint64_t trial = 0; trial < count; ++trial) {
        h.clear();
        int score_a = 0, score_b = 0;
        int kicks = 0;
        int winner = -1;  // 0 = A, 1 = B

        for (int round = 1; round <= rounds && winner < 0; ++round) {
            const team first = first_kicker_unchecked(mech, round, h);
            const team second = other(first);
            const auto& rates = model.rates_for_round(round);

            const bool first_scored = uniform01(rng) < rates.p;
            ++kicks;
            if (first_scored) ++(first == team::a ? score_a : score_b);
            const int sf = first == team::a ? score_a : score_b;
            const int ss = first == team::a ? score_b : score_a;
            if (lead_unassailable(sf, ss, rounds - round, rounds - round + 1)) {
                winner = score_a > score_b ? 0 : 1;
                break;
            }

            const bool second_scored = uniform01(rng) < rates.q;
            ++kicks;
            if (second_scored) ++(second == team::a ? score_a : score_b);
            h.push({first, first_scored ? kick::scored : kick::missed,
                    second_scored ? kick::scored : kick::missed});
            if (lead_unassailable(score_a, score_b, rounds - round, rounds - round)) {
                winner = score_a > score_b ? 0 : 1;
                break;
            }
        }

        if (winner < 0) {
            // Tied after the regular phase: record the split, play sudden death.
            const team sd_first = first_kicker_unchecked(mech, rounds + 1, h);
            if (sd_first == team::a)
                ++tally.ties_a_first_sd;
            else
                ++tally.ties_b_first_sd;
            for (int round = rounds + 1; winner < 0; ++round) {
                const team first = first_kicker_unchecked(mech, round, h);
                const auto& sd = model.sudden_death();
                const bool first_scored = uniform01(rng) < sd.p;
                const bool second_scored = uniform01(rng) < sd.q;
                kicks += 2;
                if (first_scored != second_scored)
                    winner = (first_scored ? first : other(first)) == team::a ? 0 : 1;
                else
                    h.push({first, first_scored ? kick::scored : kick::missed,
                            second_scored ? kick::scored : kick::missed});
            }
        } else {
            if (winner == 0)
                ++tally.regular_a_wins;
            else
                ++tally.regular_b_wins;
        }

        if (winner == 0)
            ++tally.a_wins;
        else
            ++tally.b_wins;
        tally.sum_kicks += static_cast<std::uint64_t>(kicks);
        tally.sum_kicks_sq += static_cast<std::uint64_t>(kicks) * static_cast<std::uint64_t>(kicks);
    }
    return tally;
}

} // namespace detail

inline simulation_result simulate(const mechanism& mech, int rounds,
                                  const scoring_model<double>& model, std::uint64_t seed,
                                  std::uint64_t trials, int workers = 1) {
    if (trials < 1) throw std::invalid_argument("simulate: trials must be >= 1");
    if (rounds < 1) throw std::invalid_argument("simulate: rounds must be >= 1");
    if (!model.is_uniform() && model.regular_rounds() != rounds)
        throw std::invalid_argument("simulate: per-round model length must equal rounds");
    const auto& sd = model.sudden_death();
    if (sd.p + sd.q - 2.0 * sd.p * sd.q == 0.0)
        throw degenerate_model_error("simulate: sudden death never resolves");
    if (workers < 1) workers = 1;

    const std::uint64_t blocks =
        (trials + simulation_result::block_size - 1) / simulation_result::block_size;
    auto run_block = [&](std::uint64_t b) {
        const std::uint64_t start = b * simulation_result::block_size;
        const std::uint64_t count = std::min(simulation_result::block_size, trials - start);
        return detail::simulate_block(mech, rounds, model, detail::splitmix64(seed + b), count);
    };

    detail::sim_tally total;
    if (workers == 1 || blocks <= 1) {
        for (std::uint64_t b = 0; b < blocks; ++b) total.merge(run_block(b));
    } else {
        std::vector<std::future<detail::sim_tally>> futures;
        futures.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            futures.push_back(std::async(std::launch::async, [&, w] {
                detail::sim_tally part;
                for (std::uint64_t b = static_cast<std::uint64_t>(w); b < blocks;
                     b += static_cast<std::uint64_t>(workers))
                    part.merge(run_block(b));
                return part;
            }));
        }
        for (auto& f : futures) total.merge(f.get());
    }

    simulation_result result;
    result.trials = trials;
    result.a_wins = total.a_wins;
    result.b_wins = total.b_wins;
    result.regular_a_wins = total.regular_a_wins;
    result.regular_b_wins = total.regular_b_wins;
    result.ties_a_first_sd = total.ties_a_first_sd;
    result.ties_b_first_sd = total.ties_b_first_sd;
    result.sum_kicks = total.sum_kicks;
    result.sum_kicks_sq = total.sum_kicks_sq;
    return result;
}

} // namespace shootout
