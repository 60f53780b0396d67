// Published reference values for the five-round fairness analysis, bundled
// for --check modes and the acceptance suite. Comparison tolerances:
// three-decimal table values ±5e-4, plotted figure data ±1e-9, threshold
// values ±5e-4, boundary points ±1e-3.

#pragma once

#include <array>
#include <string_view>

namespace shootout::reference {

// Win probability of the first-kicking team, rounds 1..8, columns
// catch-up / adjusted catch-up / alternating, at p = 3/4, q = 2/3.
inline constexpr double table3[8][3] = {
    {0.526, 0.526, 0.526}, {0.516, 0.495, 0.511}, {0.518, 0.515, 0.519},
    {0.513, 0.501, 0.508}, {0.514, 0.509, 0.515}, {0.512, 0.504, 0.507},
    {0.512, 0.507, 0.513}, {0.511, 0.504, 0.506},
};
inline constexpr double table3_tolerance = 5e-4;

struct sweep_point_ref {
    std::string_view mech;
    double p;
    double q;
    double win_prob_a;
};

// Spot points read off the published five-round sweep curves.
inline constexpr std::array<sweep_point_ref, 12> figure1 = {{
    {"catchup", 0.65, 0.50, 0.525300273437499},
    {"catchup", 0.65, 0.60, 0.50826933714379},
    {"catchup", 0.70, 0.64, 0.510082556872903},
    {"catchup", 0.75, 0.50, 0.5440673828125},
    {"catchup", 0.80, 0.68, 0.521450823146908},
    {"adj-catchup", 0.65, 0.55, 0.509626121726755},
    {"adj-catchup", 0.70, 0.60, 0.510087774337661},
    {"adj-catchup", 0.75, 0.62, 0.51415063884375},
    {"adj-catchup", 0.80, 0.50, 0.537739999999999},
    {"abba", 0.70, 0.53, 0.52901426747192},
    {"abba", 0.75, 0.66, 0.516290983419461},
    {"abba", 0.80, 0.65, 0.527839379396225},
}};
inline constexpr double figure_tolerance = 1e-9;

struct empirical_bar_ref {
    // Sudden-death pair, then catch-up / adjusted / alternating values under
    // the round-dependent empirical rates.
    long long sd_p_num, sd_p_den, sd_q_num, sd_q_den;
    double win_prob_a[3];
};

inline constexpr std::array<empirical_bar_ref, 3> figure2 = {{
    {2, 3, 3, 5, {0.52794530463813, 0.523678538465, 0.538255247188209}},
    {3, 4, 2, 3, {0.527520306595316, 0.522355273859421, 0.536959358460168}},
    {3, 4, 3, 5, {0.525470719259806, 0.515973723584129, 0.530709830562039}},
}};

struct tie_ref {
    std::string_view label;          // "2/3;3/5" style or "empirical"
    long long p_num, p_den, q_num, q_den;  // zeros for the empirical preset
    double catch_up_tie;             // identical for the adjusted rule
    double alternating_tie;
};

inline constexpr std::array<tie_ref, 4> figure4 = {{
    {"2/3;3/5", 2, 3, 3, 5, 0.264607078189, 0.256832263375},
    {"3/4;2/3", 3, 4, 2, 3, 0.283733603395, 0.274731545782},
    {"3/4;3/5", 3, 4, 3, 5, 0.2809675, 0.266798125},
    {"empirical", 0, 0, 0, 0, 0.289133316319, 0.2831516870768},
}};

// Sudden-death thresholds below which the adjusted rule is fairer than the
// named rival (empirical regular-phase rates), and the q boundary at p = 3/4
// from the published region plot.
inline constexpr double alpha_vs_catch_up = 0.6569;
inline constexpr double alpha_vs_alternating = 0.6252;
inline constexpr double alpha_tolerance = 5e-4;
inline constexpr double boundary_q_at_p075_vs_catch_up = 0.309276;
inline constexpr double boundary_q_at_p075_vs_alternating = 0.388473;
inline constexpr double boundary_tolerance = 1e-3;

struct complexity_ref {
    std::string_view mech;
    int worst_case_depth;
    int best_case_leaf_depth;  // -1: not pinned
};

inline constexpr std::array<complexity_ref, 5> complexity_depths = {{
    {"standard", 0, -1},
    {"abba", 1, -1},
    {"catchup", 2, -1},
    {"adj-catchup", 3, 2},
    {"composite(4,abba,catchup)", 3, -1},
}};

struct replay_ref {
    std::string_view mech;
    std::string_view kicks;          // two kicks per round, rounds '.'-separated
    std::string_view first_kickers;  // one char per round
};

// The worked 7-round example schedule (5 regular rounds, 3-3, then two
// sudden-death rounds; the first kicker's team wins in round 7).
inline constexpr std::array<replay_ref, 4> table1 = {{
    {"standard", "SS.MM.SS.SM.MS.SS.SM", "AAAAAAA"},
    {"abba", "SS.MM.SS.MS.MS.SS.SM", "ABABABA"},
    {"catchup", "SS.MM.SS.MS.SM.SS.MS", "ABABBAB"},
    {"adj-catchup", "SS.MM.SS.MS.SM.SS.SM", "ABABBBA"},
}};

} // namespace shootout::reference
