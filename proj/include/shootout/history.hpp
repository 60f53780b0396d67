// Teams, kick outcomes, round records and shootout histories.
//
// A shootout is a sequence of rounds with two kicks each: the round's first
// kicker and then the other team. Histories also carry the length of the
// regular phase (5 in real soccer) because the rules behave differently once
// the sudden death stage begins.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace shootout {

enum class team : std::uint8_t { a, b };

constexpr team other(team t) { return t == team::a ? team::b : team::a; }

constexpr char team_char(team t) { return t == team::a ? 'A' : 'B'; }

inline std::string to_string(team t) { return t == team::a ? "A" : "B"; }

enum class kick : std::uint8_t { scored, missed };

constexpr bool scored(kick k) { return k == kick::scored; }

constexpr char kick_char(kick k) { return scored(k) ? 'S' : 'M'; }

struct round_record {
    team first_kicker;
    kick first_result;
    kick second_result;

    constexpr team second_kicker() const { return other(first_kicker); }

    constexpr int goals(team t) const {
        int g = 0;
        if (t == first_kicker && scored(first_result)) g = 1;
        if (t == second_kicker() && scored(second_result)) g = 1;
        return g;
    }

    friend constexpr bool operator==(const round_record&, const round_record&) = default;
};

class shootout_history {
public:
    explicit shootout_history(int regular_rounds = 5) : regular_rounds_(regular_rounds) {
        if (regular_rounds < 1)
            throw std::invalid_argument("shootout_history: regular_rounds must be >= 1");
    }

    int regular_rounds() const { return regular_rounds_; }
    int rounds_played() const { return static_cast<int>(rounds_.size()); }

    // 1-based, matching round numbering everywhere else.
    const round_record& round(int r) const { return rounds_.at(static_cast<std::size_t>(r - 1)); }

    std::span<const round_record> rounds() const { return rounds_; }

    void push(const round_record& rec) { rounds_.push_back(rec); }
    void pop() { rounds_.pop_back(); }
    void clear() { rounds_.clear(); }
    void reserve(int n) { rounds_.reserve(static_cast<std::size_t>(n)); }

    int score(team t) const {
        int s = 0;
        for (const auto& r : rounds_) s += r.goals(t);
        return s;
    }

    friend bool operator==(const shootout_history&, const shootout_history&) = default;

private:
    int regular_rounds_;
    std::vector<round_record> rounds_;
};

// True once one side's lead exceeds the other's remaining regular-phase kicks.
constexpr bool lead_unassailable(int score_a, int score_b, int remaining_a, int remaining_b) {
    return score_a > score_b + remaining_b || score_b > score_a + remaining_a;
}

// Earliest-decision scan over complete rounds: the regular phase ends as soon
// as a lead can no longer be caught; a completed sudden-death round decides
// whenever its two kicks differ.
inline std::optional<team> decided_winner(const shootout_history& h) {
    const int regular = h.regular_rounds();
    int score_a = 0;
    int score_b = 0;
    for (int r = 1; r <= h.rounds_played(); ++r) {
        const round_record& rec = h.round(r);
        score_a += rec.goals(team::a);
        score_b += rec.goals(team::b);
        if (r <= regular) {
            const int remaining = regular - r;
            if (lead_unassailable(score_a, score_b, remaining, remaining))
                return score_a > score_b ? team::a : team::b;
        } else if (score_a != score_b) {
            return score_a > score_b ? team::a : team::b;
        }
    }
    return std::nullopt;
}

// "SS.MM.SM" -> kick outcomes in kick order, two per round.
inline std::vector<kick> parse_kick_string(std::string_view text) {
    std::vector<kick> kicks;
    for (char c : text) {
        switch (c) {
            case 'S': case 's': kicks.push_back(kick::scored); break;
            case 'M': case 'm': kicks.push_back(kick::missed); break;
            case '.': case ' ': break;
            default:
                throw std::invalid_argument(std::string("kick string: unexpected character '") + c + "'");
        }
    }
    return kicks;
}

inline std::string format_kick_string(std::span<const kick> kicks) {
    std::string s;
    for (std::size_t i = 0; i < kicks.size(); ++i) {
        if (i > 0 && i % 2 == 0) s += '.';
        s += kick_char(kicks[i]);
    }
    return s;
}

} // namespace shootout
