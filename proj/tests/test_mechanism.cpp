#include <doctest.h>

#include <functional>

#include "shootout/mechanism.hpp"
#include "shootout/reference_data.hpp"

using namespace shootout;

namespace {

// Visits all 4^rounds outcome patterns with first kickers assigned by mech.
void for_all_histories(const mechanism& mech, int rounds,
                       const std::function<void(const shootout_history&)>& visit,
                       int regular_rounds = 5) {
    shootout_history h(regular_rounds);
    std::function<void()> rec = [&] {
        if (h.rounds_played() == rounds) {
            visit(h);
            return;
        }
        const team first = first_kicker_unchecked(mech, h.rounds_played() + 1, h);
        for (int b = 0; b < 4; ++b) {
            h.push({first, (b & 2) ? kick::scored : kick::missed,
                    (b & 1) ? kick::scored : kick::missed});
            rec();
            h.pop();
        }
    };
    rec();
}

} // namespace

TEST_CASE("team and kick basics") {
    CHECK(other(team::a) == team::b);
    CHECK(other(team::b) == team::a);
    CHECK(other(other(team::a)) == team::a);
    const round_record r{team::b, kick::scored, kick::missed};
    CHECK(r.second_kicker() == team::a);
    CHECK(r.goals(team::b) == 1);
    CHECK(r.goals(team::a) == 0);
}

TEST_CASE("first kicker: defining cases") {
    shootout_history h(5);

    SUBCASE("standard is always A") {
        for (int r = 1; r <= 3; ++r) {
            CHECK(first_kicker(mechanism::standard(), r, h) == team::a);
            h.push({team::a, kick::scored, kick::scored});
        }
    }
    SUBCASE("alternating follows parity, sudden death included") {
        CHECK(first_kicker_unchecked(mechanism::alternating(), 7, h) == team::a);
        CHECK(first_kicker_unchecked(mechanism::alternating(), 6, h) == team::b);
    }
    SUBCASE("catch-up keeps the order after first-missed-second-scored") {
        h.push({team::a, kick::missed, kick::scored});
        CHECK(first_kicker(mechanism::catch_up(), 2, h) == team::a);
    }
    SUBCASE("catch-up mirrors otherwise") {
        h.push({team::a, kick::scored, kick::scored});
        CHECK(first_kicker(mechanism::catch_up(), 2, h) == team::b);
    }
    SUBCASE("adjusted catch-up hands B the first sudden-death kick") {
        for_all_histories(mechanism::adjusted_catch_up(), 5, [&](const shootout_history& full) {
            CHECK(first_kicker_unchecked(mechanism::adjusted_catch_up(), 6, full) == team::b);
        });
    }
}

TEST_CASE("first kicker argument validation") {
    shootout_history h(5);
    CHECK_THROWS_AS(first_kicker(mechanism::catch_up(), 0, h), std::domain_error);
    CHECK_THROWS_AS(first_kicker(mechanism::catch_up(), 2, h), std::domain_error);
    // Round 2 under catch-up after (A scored first) must be B first.
    h.push({team::a, kick::scored, kick::scored});
    h.push({team::a, kick::scored, kick::scored});
    CHECK_THROWS_AS(first_kicker(mechanism::catch_up(), 3, h), inconsistent_history_error);
    CHECK_NOTHROW(first_kicker_unchecked(mechanism::catch_up(), 3, h));
}

TEST_CASE("catch-up mirror property over all histories") {
    for (int rounds = 1; rounds <= 5; ++rounds) {
        for_all_histories(mechanism::catch_up(), rounds, [&](const shootout_history& h) {
            const round_record& prev = h.round(rounds);
            const team next = first_kicker_unchecked(mechanism::catch_up(), rounds + 1, h);
            const bool keep = !scored(prev.first_result) && scored(prev.second_result);
            CHECK(next == (keep ? prev.first_kicker : other(prev.first_kicker)));
        });
    }
}

TEST_CASE("adjusted catch-up equals catch-up on the regular phase") {
    for_all_histories(mechanism::catch_up(), 5, [&](const shootout_history& h) {
        shootout_history prefix(5);
        for (int r = 1; r <= 5; ++r) {
            CHECK(first_kicker_unchecked(mechanism::adjusted_catch_up(), r, prefix) ==
                  first_kicker_unchecked(mechanism::catch_up(), r, prefix));
            prefix.push(h.round(r));
        }
    });
}

TEST_CASE("alternating depends only on round parity") {
    for (int rounds = 0; rounds <= 7; ++rounds) {
        for_all_histories(mechanism::alternating(), rounds, [&](const shootout_history& h) {
            CHECK(first_kicker_unchecked(mechanism::alternating(), rounds + 1, h) ==
                  ((rounds + 1) % 2 == 1 ? team::a : team::b));
        });
    }
}

TEST_CASE("composite re-roots the after-rule at the switch round") {
    const auto comp = mechanism::composite(4, mechanism::alternating(), mechanism::catch_up());
    // Rounds 1-3 alternate; from round 4 the catch-up transition applies,
    // seeded from round 3's record rather than restarting at A.
    shootout_history h(5);
    h.push({team::a, kick::scored, kick::scored});
    h.push({team::b, kick::missed, kick::missed});
    CHECK(first_kicker_unchecked(comp, 1, shootout_history(5)) == team::a);
    CHECK(first_kicker_unchecked(comp, 3, h) == team::a);
    h.push({team::a, kick::missed, kick::scored});  // keep-order case
    CHECK(first_kicker_unchecked(comp, 4, h) == team::a);
    h.pop();
    h.push({team::a, kick::scored, kick::scored});  // mirror case
    CHECK(first_kicker_unchecked(comp, 4, h) == team::b);
}

TEST_CASE("mechanism text form round-trips") {
    const char* forms[] = {"standard", "abba", "catchup", "adj-catchup",
                           "composite(4,abba,catchup)",
                           "composite(3,composite(2,standard,abba),catchup)"};
    for (const char* f : forms) CHECK(mechanism::parse(f).to_string() == f);
    CHECK(mechanism::parse("composite(4, abba, catchup)") ==
          mechanism::parse("composite(4,abba,catchup)"));

    CHECK_THROWS_AS(mechanism::parse("abab"), std::invalid_argument);
    CHECK_THROWS_AS(mechanism::parse("composite(1,abba,catchup)"), std::invalid_argument);
    CHECK_THROWS_AS(mechanism::parse("composite(4,abba)"), std::invalid_argument);
    CHECK_THROWS_AS(mechanism::parse("abba extra"), std::invalid_argument);
    // Nesting depth capped at 4.
    std::string deep = "catchup";
    for (int i = 0; i < 4; ++i) deep = "composite(2,abba," + deep + ")";
    CHECK_NOTHROW(mechanism::parse(deep));
    CHECK_THROWS_AS(mechanism::parse("composite(2,abba," + deep + ")"), std::invalid_argument);
}

TEST_CASE("decided_winner handles both phases") {
    shootout_history h(5);
    // 3-0 after three rounds: B cannot catch up.
    for (int i = 0; i < 3; ++i) h.push({team::a, kick::scored, kick::missed});
    CHECK(decided_winner(h) == team::a);

    shootout_history tied(5);
    for (int i = 0; i < 5; ++i)
        tied.push({team::a, i < 3 ? kick::scored : kick::missed, i < 3 ? kick::scored : kick::missed});
    CHECK(tied.score(team::a) == 3);
    CHECK(tied.score(team::b) == 3);
    CHECK(!decided_winner(tied).has_value());

    tied.push({team::b, kick::missed, kick::scored});  // sudden death round differs
    CHECK(decided_winner(tied) == team::a);
}

TEST_CASE("replay reproduces the published example schedule") {
    for (const auto& ref : reference::table1) {
        CAPTURE(ref.mech);
        const auto mech = mechanism::parse(std::string(ref.mech));
        const auto kicks = parse_kick_string(ref.kicks);
        REQUIRE(kicks.size() == 14);
        const auto schedule = replay_schedule(mech, kicks);
        REQUIRE(schedule.size() == 7);
        shootout_history h(5);
        for (int r = 0; r < 7; ++r) {
            CHECK(team_char(schedule[r].first) == ref.first_kickers[r]);
            CHECK(schedule[r].first_result == kicks[2 * r]);
            CHECK(schedule[r].second_result == kicks[2 * r + 1]);
            h.push({schedule[r].first, schedule[r].first_result, schedule[r].second_result});
        }
        // Tied 3-3 after the regular phase, decided in round 7 for the team
        // kicking the very first penalty.
        shootout_history regular(5);
        for (int r = 0; r < 5; ++r)
            regular.push({schedule[r].first, schedule[r].first_result, schedule[r].second_result});
        CHECK(regular.score(team::a) == 3);
        CHECK(regular.score(team::b) == 3);
        CHECK(!decided_winner(regular).has_value());
        CHECK(decided_winner(h) == team::a);
    }
}

TEST_CASE("replay of the standard rule keeps strict A-B order") {
    const auto kicks = parse_kick_string("SM.MS.SS");
    const auto schedule = replay_schedule(mechanism::standard(), kicks);
    for (const auto& r : schedule) CHECK(r.first == team::a);
}

TEST_CASE("replay edge cases") {
    CHECK(replay_schedule(mechanism::catch_up(), std::vector<kick>{}).empty());
    const std::vector<kick> odd{kick::scored};
    CHECK_THROWS_AS(replay_schedule(mechanism::catch_up(), odd), std::domain_error);
    CHECK_THROWS_AS(parse_kick_string("SX"), std::invalid_argument);
    CHECK(format_kick_string(parse_kick_string("SS.MM.SM")) == "SS.MM.SM");
}
