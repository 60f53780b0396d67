// Shootout mechanisms: who kicks first in each round.
//
// Every rule is a pure function of the round number and the history of the
// preceding rounds:
//
//   standard      A kicks first in every round, sudden death included.
//   alternating   strict ABBA by round parity, sudden death included.
//   catch_up      the order mirrors the previous round, except when the
//                 previous first kicker missed while the second scored, in
//                 which case the order is kept.
//   adjusted      catch_up during the regular phase, then B is guaranteed
//   catch_up      the first sudden-death kick and the order alternates
//                 from there on.
//   composite     one rule before a switch round, another from it onward.
//                 The after-rule is re-rooted: it treats the switch round
//                 as its own round 1, except that a catch-up after-rule
//                 seeds itself by applying its transition to the last
//                 before-rule round instead of defaulting to A.

#pragma once

#include <cctype>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "shootout/history.hpp"

namespace shootout {

class inconsistent_history_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class mechanism {
public:
    enum class kind { standard, alternating, catch_up, adjusted_catch_up, composite };

    static mechanism standard() { return mechanism(kind::standard); }
    static mechanism alternating() { return mechanism(kind::alternating); }
    static mechanism catch_up() { return mechanism(kind::catch_up); }
    static mechanism adjusted_catch_up() { return mechanism(kind::adjusted_catch_up); }

    static mechanism composite(int switch_round, mechanism before, mechanism after) {
        if (switch_round < 2)
            throw std::invalid_argument("composite: switch_round must be >= 2");
        mechanism m(kind::composite);
        m.switch_round_ = switch_round;
        m.before_ = std::make_shared<mechanism>(std::move(before));
        m.after_ = std::make_shared<mechanism>(std::move(after));
        if (m.nesting_depth() > 4)
            throw std::invalid_argument("composite: nesting depth exceeds 4");
        return m;
    }

    kind variant() const { return kind_; }
    int switch_round() const { return switch_round_; }
    const mechanism& before() const { return *before_; }
    const mechanism& after() const { return *after_; }

    int nesting_depth() const {
        if (kind_ != kind::composite) return 0;
        return 1 + std::max(before_->nesting_depth(), after_->nesting_depth());
    }

    std::string to_string() const {
        switch (kind_) {
            case kind::standard: return "standard";
            case kind::alternating: return "abba";
            case kind::catch_up: return "catchup";
            case kind::adjusted_catch_up: return "adj-catchup";
            case kind::composite:
                return "composite(" + std::to_string(switch_round_) + "," +
                       before_->to_string() + "," + after_->to_string() + ")";
        }
        return {};
    }

    static mechanism parse(std::string_view text);

    friend bool operator==(const mechanism& x, const mechanism& y) {
        if (x.kind_ != y.kind_) return false;
        if (x.kind_ != kind::composite) return true;
        return x.switch_round_ == y.switch_round_ && *x.before_ == *y.before_ &&
               *x.after_ == *y.after_;
    }

private:
    explicit mechanism(kind k) : kind_(k) {}

    kind kind_;
    int switch_round_ = 0;
    std::shared_ptr<const mechanism> before_;
    std::shared_ptr<const mechanism> after_;
};

namespace detail {

inline team catch_up_transition(const round_record& prev) {
    const bool keep_order = !scored(prev.first_result) && scored(prev.second_result);
    return keep_order ? prev.first_kicker : other(prev.first_kicker);
}

// base_round: the global round this (possibly re-rooted) rule treats as its
// local round 1. Top-level calls use base_round = 1.
inline team first_kicker_rec(const mechanism& m, int round, const shootout_history& h,
                             int base_round) {
    const int local = round - base_round + 1;
    switch (m.variant()) {
        case mechanism::kind::standard:
            return team::a;
        case mechanism::kind::alternating:
            return local % 2 == 1 ? team::a : team::b;
        case mechanism::kind::catch_up:
            if (local == 1 && base_round == 1) return team::a;
            return catch_up_transition(h.round(round - 1));
        case mechanism::kind::adjusted_catch_up: {
            const int regular = h.regular_rounds();
            if (round <= regular) {
                if (local == 1 && base_round == 1) return team::a;
                return catch_up_transition(h.round(round - 1));
            }
            // B opens sudden death, then strict alternation.
            return (round - regular) % 2 == 1 ? team::b : team::a;
        }
        case mechanism::kind::composite:
            if (local < m.switch_round())
                return first_kicker_rec(m.before(), round, h, base_round);
            return first_kicker_rec(m.after(), round, h, base_round + m.switch_round() - 1);
    }
    throw std::logic_error("first_kicker: unhandled mechanism kind");
}

} // namespace detail

// No validation: callers guarantee the history is consistent with the
// mechanism and holds at least round-1 rounds. Every rule reads at most the
// round-1 record, so rounds recorded beyond that are ignored. Enumeration and
// replay build consistent histories by construction.
inline team first_kicker_unchecked(const mechanism& m, int round, const shootout_history& h) {
    return detail::first_kicker_rec(m, round, h, 1);
}

inline bool consistent_with(const mechanism& m, const shootout_history& h) {
    for (int r = 1; r <= h.rounds_played(); ++r)
        if (h.round(r).first_kicker != first_kicker_unchecked(m, r, h)) return false;
    return true;
}

// Strict variant: rejects round numbers out of step with the history and
// histories whose recorded kick order contradicts the mechanism.
inline team first_kicker(const mechanism& m, int round, const shootout_history& h) {
    if (round < 1) throw std::domain_error("first_kicker: round must be >= 1");
    if (h.rounds_played() != round - 1)
        throw std::domain_error("first_kicker: history must hold exactly round-1 rounds");
    if (!consistent_with(m, h))
        throw inconsistent_history_error(
            "first_kicker: recorded kick order contradicts the mechanism");
    return first_kicker_unchecked(m, round, h);
}

struct scheduled_round {
    int round;
    team first;
    kick first_result;
    kick second_result;

    friend bool operator==(const scheduled_round&, const scheduled_round&) = default;
};

// Assigns a flat list of kick outcomes (in kick order) to the kickers the
// mechanism dictates, replaying the shootout round by round. No early
// termination is applied: externally supplied schedules are replayed whole.
inline std::vector<scheduled_round> replay_schedule(const mechanism& m,
                                                    std::span<const kick> kicks,
                                                    int regular_rounds = 5) {
    if (kicks.size() % 2 != 0)
        throw std::domain_error("replay_schedule: kick list must have even length");
    std::vector<scheduled_round> out;
    shootout_history h(regular_rounds);
    const int rounds = static_cast<int>(kicks.size() / 2);
    out.reserve(static_cast<std::size_t>(rounds));
    h.reserve(rounds);
    for (int r = 1; r <= rounds; ++r) {
        const team first = first_kicker_unchecked(m, r, h);
        const round_record rec{first, kicks[static_cast<std::size_t>(2 * r - 2)],
                               kicks[static_cast<std::size_t>(2 * r - 1)]};
        out.push_back({r, first, rec.first_result, rec.second_result});
        h.push(rec);
    }
    return out;
}

namespace detail {

inline void skip_spaces(std::string_view text, std::size_t& i) {
    while (i < text.size() && text[i] == ' ') ++i;
}

inline mechanism parse_mechanism_rec(std::string_view text, std::size_t& i) {
    skip_spaces(text, i);
    std::size_t start = i;
    while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '-'))
        ++i;
    const std::string_view word = text.substr(start, i - start);
    if (word == "standard") return mechanism::standard();
    if (word == "abba") return mechanism::alternating();
    if (word == "catchup") return mechanism::catch_up();
    if (word == "adj-catchup") return mechanism::adjusted_catch_up();
    if (word == "composite") {
        skip_spaces(text, i);
        if (i >= text.size() || text[i] != '(')
            throw std::invalid_argument("mechanism: expected '(' after composite");
        ++i;
        skip_spaces(text, i);
        std::size_t num_start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == num_start) throw std::invalid_argument("mechanism: expected switch round");
        const int k = std::stoi(std::string(text.substr(num_start, i - num_start)));
        skip_spaces(text, i);
        if (i >= text.size() || text[i] != ',')
            throw std::invalid_argument("mechanism: expected ',' after switch round");
        ++i;
        mechanism before = parse_mechanism_rec(text, i);
        skip_spaces(text, i);
        if (i >= text.size() || text[i] != ',')
            throw std::invalid_argument("mechanism: expected ',' between sub-rules");
        ++i;
        mechanism after = parse_mechanism_rec(text, i);
        skip_spaces(text, i);
        if (i >= text.size() || text[i] != ')')
            throw std::invalid_argument("mechanism: expected ')'");
        ++i;
        return mechanism::composite(k, std::move(before), std::move(after));
    }
    throw std::invalid_argument("mechanism: unknown rule '" + std::string(word) + "'");
}

} // namespace detail

inline mechanism mechanism::parse(std::string_view text) {
    std::size_t i = 0;
    mechanism m = detail::parse_mechanism_rec(text, i);
    detail::skip_spaces(text, i);
    if (i != text.size())
        throw std::invalid_argument("mechanism: trailing characters in '" + std::string(text) + "'");
    return m;
}

} // namespace shootout
