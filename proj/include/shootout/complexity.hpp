// Mechanism complexity as minimal binary-question count.
//
// The measure: someone who knows only the rules must name the next round's
// first kicker by asking yes/no questions about the shootout so far
// (including the next round's number). The complexity of a mechanism is the
// depth of the shallowest correct question tree, relative to a declared
// predicate library. Lower bounds are only meaningful against such a library;
// the default one contains exactly the questions the standard rules need:
// round parity, sudden-death membership, the previous round's first kicker,
// the previous round's keep-order outcome, and round-number thresholds.
//
// min_depth() reduces every consistent history to its predicate signature,
// then finds the exact minimal worst-case depth by recursive splitting with
// memoization; ties between predicates break by library order, so the
// witness plan is deterministic.

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "shootout/history.hpp"
#include "shootout/mechanism.hpp"

namespace shootout {

struct predicate {
    std::string id;
    // Total on every consistent history: predicates about the previous round
    // answer "no" at round 1.
    std::function<bool(int round, const shootout_history&)> eval;
};

inline std::vector<predicate> default_predicate_library() {
    std::vector<predicate> lib;
    lib.push_back({"next_round_even", [](int r, const shootout_history&) { return r % 2 == 0; }});
    lib.push_back({"sudden_death_stage",
                   [](int r, const shootout_history& h) { return r > h.regular_rounds(); }});
    lib.push_back({"prev_round_first_kicker_was_a", [](int r, const shootout_history& h) {
                       return r > 1 && h.round(r - 1).first_kicker == team::a;
                   }});
    lib.push_back({"prev_round_first_missed_second_scored", [](int r, const shootout_history& h) {
                       return r > 1 && !scored(h.round(r - 1).first_result) &&
                              scored(h.round(r - 1).second_result);
                   }});
    for (int k = 1; k <= 8; ++k)
        lib.push_back({"next_round_le_" + std::to_string(k),
                       [k](int r, const shootout_history&) { return r <= k; }});
    return lib;
}

class question_plan {
public:
    static constexpr int max_allowed_depth = 6;

    static question_plan leaf(team t) {
        question_plan p;
        p.root_ = std::make_shared<node>(node{t, {}, nullptr, nullptr});
        return p;
    }

    static question_plan branch(predicate pred, question_plan if_true, question_plan if_false) {
        question_plan p;
        p.root_ = std::make_shared<node>(node{team::a, std::move(pred),
                                              std::move(if_true.root_), std::move(if_false.root_)});
        if (p.depth() > max_allowed_depth)
            throw std::invalid_argument("question_plan: depth exceeds " +
                                        std::to_string(max_allowed_depth));
        if (id_used_below(*p.root_->yes, p.root_->pred->id) ||
            id_used_below(*p.root_->no, p.root_->pred->id))
            throw std::invalid_argument("question_plan: predicate '" + p.root_->pred->id +
                                        "' repeats on a root-to-leaf path");
        return p;
    }

    bool is_leaf() const { return !root_->pred.has_value(); }
    team leaf_team() const { return root_->label; }
    const predicate& question() const { return *root_->pred; }
    question_plan if_true() const { return wrap(root_->yes); }
    question_plan if_false() const { return wrap(root_->no); }

    int depth() const { return node_depth(*root_); }
    int min_leaf_depth() const { return node_min_leaf(*root_); }

    team evaluate(int round, const shootout_history& h) const {
        const node* n = root_.get();
        while (n->pred.has_value()) n = n->pred->eval(round, h) ? n->yes.get() : n->no.get();
        return n->label;
    }

    // "if sudden_death_stage then (if next_round_even then B else A) else ..."
    std::string to_text() const { return node_text(*root_); }

private:
    struct node {
        team label;  // meaningful for leaves
        std::optional<predicate> pred;
        std::shared_ptr<const node> yes;
        std::shared_ptr<const node> no;
    };

    question_plan() = default;

    static question_plan wrap(std::shared_ptr<const node> n) {
        question_plan p;
        p.root_ = std::move(n);
        return p;
    }

    static bool id_used_below(const node& n, const std::string& id) {
        if (!n.pred.has_value()) return false;
        if (n.pred->id == id) return true;
        return id_used_below(*n.yes, id) || id_used_below(*n.no, id);
    }

    static int node_depth(const node& n) {
        if (!n.pred.has_value()) return 0;
        return 1 + std::max(node_depth(*n.yes), node_depth(*n.no));
    }

    static int node_min_leaf(const node& n) {
        if (!n.pred.has_value()) return 0;
        return 1 + std::min(node_min_leaf(*n.yes), node_min_leaf(*n.no));
    }

    static std::string node_text(const node& n) {
        if (!n.pred.has_value()) return n.label == team::a ? "A" : "B";
        auto wrap_sub = [](const node& sub) {
            std::string t = node_text(sub);
            return sub.pred.has_value() ? "(" + t + ")" : t;
        };
        return "if " + n.pred->id + " then " + wrap_sub(*n.yes) + " else " + wrap_sub(*n.no);
    }

    std::shared_ptr<const node> root_;
};

struct complexity_result {
    mechanism mech;
    int horizon = 0;
    int max_depth = 0;
    bool decidable = false;         // false: no correct plan within max_depth
    int worst_case_depth = 0;       // meaningful when decidable
    int best_case_leaf_depth = 0;   // shallowest leaf of the witness
    std::optional<question_plan> witness;
};

namespace detail {

// Visits every (round, history) instance: all 4^(r-1) outcome patterns with
// first kickers assigned by the mechanism, for every round r <= horizon.
template <class Visit>
void for_each_instance(const mechanism& mech, int horizon, int regular_rounds, Visit&& visit) {
    shootout_history h(regular_rounds);
    h.reserve(horizon);
    auto rec = [&](auto&& self) -> void {
        const int round = h.rounds_played() + 1;
        visit(round, static_cast<const shootout_history&>(h));
        if (round >= horizon) return;
        const team first = first_kicker_unchecked(mech, round, h);
        for (int branch = 0; branch < 4; ++branch) {
            h.push({first, (branch & 2) != 0 ? kick::scored : kick::missed,
                    (branch & 1) != 0 ? kick::scored : kick::missed});
            self(self);
            h.pop();
        }
    };
    rec(rec);
}

struct signature_key {
    std::vector<std::uint64_t> bits;
    friend bool operator==(const signature_key&, const signature_key&) = default;
    friend bool operator<(const signature_key& x, const signature_key& y) { return x.bits < y.bits; }
};

struct subset_hash {
    std::size_t operator()(const std::vector<std::uint64_t>& v) const {
        std::size_t h = 1469598103934665603ull;
        for (std::uint64_t w : v) {
            h ^= static_cast<std::size_t>(w);
            h *= 1099511628211ull;
        }
        return h;
    }
};

} // namespace detail

inline bool verify_plan(const question_plan& plan, const mechanism& mech, int horizon,
                        int regular_rounds = 5) {
    if (horizon < 1 || horizon > 10)
        throw std::invalid_argument("verify_plan: horizon must be in 1..10");
    bool ok = true;
    detail::for_each_instance(mech, horizon, regular_rounds,
                              [&](int round, const shootout_history& h) {
                                  if (ok && plan.evaluate(round, h) !=
                                                first_kicker_unchecked(mech, round, h))
                                      ok = false;
                              });
    return ok;
}

inline complexity_result min_depth(const mechanism& mech, std::span<const predicate> library,
                                   int horizon, int max_depth, int regular_rounds = 5) {
    if (library.empty()) throw std::invalid_argument("min_depth: library must not be empty");
    if (max_depth < 0 || max_depth > 4)
        throw std::invalid_argument("min_depth: max_depth must be in 0..4");
    if (horizon < 1 || horizon > 10)
        throw std::invalid_argument("min_depth: horizon must be in 1..10");

    complexity_result result{mech, horizon, max_depth, false, 0, 0, std::nullopt};

    // Distinct predicate signatures with their required answers. A signature
    // mapped to both teams means no plan over this library can be correct.
    std::map<detail::signature_key, team> groups;
    bool conflict = false;
    detail::for_each_instance(
        mech, horizon, regular_rounds, [&](int round, const shootout_history& h) {
            if (conflict) return;
            detail::signature_key key;
            key.bits.assign((library.size() + 63) / 64, 0);
            for (std::size_t j = 0; j < library.size(); ++j)
                if (library[j].eval(round, h)) key.bits[j / 64] |= std::uint64_t(1) << (j % 64);
            const team label = first_kicker_unchecked(mech, round, h);
            auto [it, inserted] = groups.emplace(std::move(key), label);
            if (!inserted && it->second != label) conflict = true;
        });
    if (conflict) return result;

    const std::size_t n = groups.size();
    std::vector<detail::signature_key> sigs;
    std::vector<team> labels;
    sigs.reserve(n);
    labels.reserve(n);
    for (auto& [key, label] : groups) {
        sigs.push_back(key);
        labels.push_back(label);
    }

    using subset = std::vector<std::uint64_t>;
    const std::size_t words = (n + 63) / 64;
    subset all(words, 0);
    for (std::size_t i = 0; i < n; ++i) all[i / 64] |= std::uint64_t(1) << (i % 64);

    auto for_each_member = [&](const subset& s, auto&& fn) {
        for (std::size_t w = 0; w < words; ++w)
            for (std::uint64_t bits = s[w]; bits != 0; bits &= bits - 1)
                fn(w * 64 + static_cast<std::size_t>(__builtin_ctzll(bits)));
    };

    auto uniform_label = [&](const subset& s) -> std::optional<team> {
        std::optional<team> label;
        bool mixed = false;
        for_each_member(s, [&](std::size_t i) {
            if (!label)
                label = labels[i];
            else if (*label != labels[i])
                mixed = true;
        });
        return mixed ? std::nullopt : label;
    };

    auto split = [&](const subset& s, std::size_t pred_index) {
        std::pair<subset, subset> parts{subset(words, 0), subset(words, 0)};
        for_each_member(s, [&](std::size_t i) {
            const bool bit =
                (sigs[i].bits[pred_index / 64] >> (pred_index % 64)) & std::uint64_t(1);
            (bit ? parts.first : parts.second)[i / 64] |= std::uint64_t(1) << (i % 64);
        });
        return parts;
    };

    auto is_empty = [](const subset& s) {
        return std::all_of(s.begin(), s.end(), [](std::uint64_t w) { return w == 0; });
    };

    std::unordered_map<subset, int, detail::subset_hash> memo;
    auto depth_of = [&](auto&& self, const subset& s) -> int {
        if (uniform_label(s)) return 0;
        if (auto it = memo.find(s); it != memo.end()) return it->second;
        int best = std::numeric_limits<int>::max();
        for (std::size_t j = 0; j < library.size() && best > 1; ++j) {
            const auto [on, off] = split(s, j);
            if (is_empty(on) || is_empty(off)) continue;
            const int d = 1 + std::max(self(self, on), self(self, off));
            best = std::min(best, d);
        }
        memo.emplace(s, best);
        return best;
    };

    const int depth = depth_of(depth_of, all);
    if (depth > max_depth) return result;

    // Rebuild the witness, taking the first predicate (library order) that
    // attains the minimum at every node.
    auto build = [&](auto&& self, const subset& s) -> question_plan {
        if (auto label = uniform_label(s)) return question_plan::leaf(*label);
        const int d = depth_of(depth_of, s);
        for (std::size_t j = 0; j < library.size(); ++j) {
            const auto [on, off] = split(s, j);
            if (is_empty(on) || is_empty(off)) continue;
            if (1 + std::max(depth_of(depth_of, on), depth_of(depth_of, off)) == d)
                return question_plan::branch(library[j], self(self, on), self(self, off));
        }
        throw std::logic_error("min_depth: witness reconstruction failed");
    };

    result.decidable = true;
    result.worst_case_depth = depth;
    result.witness = build(build, all);
    result.best_case_leaf_depth = result.witness->min_leaf_depth();
    return result;
}

} // namespace shootout
