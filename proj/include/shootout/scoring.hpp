// Scoring models: order-dependent success probabilities.
//
// The first kicker of a round scores with probability p, the second with
// q <= p. Rates are either one (p, q) pair for every round or a per-round
// list; the sudden death stage always has its own fixed pair.
//
// Models parse from and serialize to a flat key-value config:
//
//   mode = uniform            |  mode = per_round
//   p = 3/4                   |  per_round = 79/100:72/100, 82/100:77/100, ...
//   q = 2/3                   |
//   sudden_death = 3/4:2/3
//
// Probabilities are written as fractions or decimals; both parse exactly.

#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "shootout/rational.hpp"

namespace shootout {

template <class T>
struct round_rates {
    T p;  // first kicker's scoring probability
    T q;  // second kicker's scoring probability

    friend bool operator==(const round_rates&, const round_rates&) = default;
};

namespace detail {

template <class T>
void validate_rates(const round_rates<T>& r, const char* what) {
    if (r.p < T(0) || r.p > T(1) || r.q < T(0) || r.q > T(1))
        throw std::invalid_argument(std::string(what) + ": probabilities must lie in [0, 1]");
    if (r.q > r.p)
        throw std::invalid_argument(std::string(what) + ": q must not exceed p");
}

} // namespace detail

template <class T>
class scoring_model {
public:
    static scoring_model uniform(T p, T q, round_rates<T> sudden_death) {
        scoring_model m;
        m.uniform_ = {std::move(p), std::move(q)};
        m.sudden_death_ = std::move(sudden_death);
        detail::validate_rates(m.uniform_, "scoring model");
        detail::validate_rates(m.sudden_death_, "sudden death rates");
        return m;
    }

    static scoring_model per_round(std::vector<round_rates<T>> rates,
                                   round_rates<T> sudden_death) {
        if (rates.empty())
            throw std::invalid_argument("scoring model: per-round list must not be empty");
        scoring_model m;
        m.per_round_ = std::move(rates);
        m.sudden_death_ = std::move(sudden_death);
        for (const auto& r : m.per_round_) detail::validate_rates(r, "scoring model");
        detail::validate_rates(m.sudden_death_, "sudden death rates");
        return m;
    }

    bool is_uniform() const { return per_round_.empty(); }

    // Per-round models fix the number of regular rounds they can model.
    int regular_rounds() const { return static_cast<int>(per_round_.size()); }

    const round_rates<T>& rates_for_round(int round) const {
        if (is_uniform()) return uniform_;
        if (round < 1 || round > regular_rounds())
            throw std::out_of_range("scoring model: no rates for round " + std::to_string(round));
        return per_round_[static_cast<std::size_t>(round - 1)];
    }

    const round_rates<T>& uniform_rates() const {
        if (!is_uniform()) throw std::logic_error("scoring model: not a uniform model");
        return uniform_;
    }

    const std::vector<round_rates<T>>& per_round_rates() const { return per_round_; }
    const round_rates<T>& sudden_death() const { return sudden_death_; }

    friend bool operator==(const scoring_model&, const scoring_model&) = default;

private:
    scoring_model() = default;

    round_rates<T> uniform_{};
    std::vector<round_rates<T>> per_round_;
    round_rates<T> sudden_death_{};
};

using exact_model = scoring_model<rational>;

template <class T>
scoring_model<T> convert_model(const exact_model& m) {
    auto conv = [](const rational& r) { return static_cast<T>(r.to_long_double()); };
    round_rates<T> sd{conv(m.sudden_death().p), conv(m.sudden_death().q)};
    if (m.is_uniform())
        return scoring_model<T>::uniform(conv(m.uniform_rates().p), conv(m.uniform_rates().q), sd);
    std::vector<round_rates<T>> rates;
    rates.reserve(m.per_round_rates().size());
    for (const auto& r : m.per_round_rates()) rates.push_back({conv(r.p), conv(r.q)});
    return scoring_model<T>::per_round(std::move(rates), sd);
}

// Baseline pair used throughout the fairness literature on shootouts.
inline exact_model brams_preset() {
    return exact_model::uniform(rational(3, 4), rational(2, 3), {rational(3, 4), rational(2, 3)});
}

// Observed per-round success rates (Apesteguia & Palacios-Huerta 2010),
// first and second kicker, rounds 1-5.
inline exact_model apesteguia2010_preset() {
    std::vector<round_rates<rational>> rates = {
        {rational(79, 100), rational(72, 100)}, {rational(82, 100), rational(77, 100)},
        {rational(77, 100), rational(64, 100)}, {rational(74, 100), rational(68, 100)},
        {rational(74, 100), rational(67, 100)},
    };
    return exact_model::per_round(std::move(rates), {rational(3, 4), rational(2, 3)});
}

class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline rational parse_probability(std::string_view text, const char* key) {
    auto r = rational::parse(trim(text));
    if (!r) throw config_error(std::string("model config: bad value for ") + key);
    return *r;
}

inline round_rates<rational> parse_pair(std::string_view text, const char* key) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos)
        throw config_error(std::string("model config: expected p:q pair for ") + key);
    return {parse_probability(text.substr(0, colon), key),
            parse_probability(text.substr(colon + 1), key)};
}

} // namespace detail

inline exact_model parse_model_config(std::string_view text) {
    std::string mode;
    std::optional<rational> p, q;
    std::vector<round_rates<rational>> per_round;
    std::optional<round_rates<rational>> sudden_death;

    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        line = detail::trim(line);
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw config_error("model config: expected 'key = value' line: " + std::string(line));
        const std::string_view key = detail::trim(line.substr(0, eq));
        const std::string_view value = detail::trim(line.substr(eq + 1));
        if (key == "mode") {
            mode = std::string(value);
        } else if (key == "p") {
            p = detail::parse_probability(value, "p");
        } else if (key == "q") {
            q = detail::parse_probability(value, "q");
        } else if (key == "sudden_death") {
            sudden_death = detail::parse_pair(value, "sudden_death");
        } else if (key == "per_round") {
            std::size_t i = 0;
            while (i < value.size()) {
                std::size_t comma = value.find(',', i);
                if (comma == std::string_view::npos) comma = value.size();
                per_round.push_back(detail::parse_pair(value.substr(i, comma - i), "per_round"));
                i = comma + 1;
            }
        } else {
            throw config_error("model config: unknown key '" + std::string(key) + "'");
        }
    }

    if (!sudden_death) throw config_error("model config: missing sudden_death");
    try {
        if (mode == "uniform") {
            if (!p || !q) throw config_error("model config: uniform mode needs p and q");
            return exact_model::uniform(*p, *q, *sudden_death);
        }
        if (mode == "per_round") {
            if (per_round.empty()) throw config_error("model config: per_round mode needs rates");
            return exact_model::per_round(std::move(per_round), *sudden_death);
        }
    } catch (const std::invalid_argument& e) {
        throw config_error(std::string("model config: ") + e.what());
    }
    throw config_error("model config: mode must be 'uniform' or 'per_round'");
}

inline exact_model load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open model file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model_config(buf.str());
}

inline std::string serialize_model_config(const exact_model& m) {
    std::ostringstream out;
    if (m.is_uniform()) {
        out << "mode = uniform\n";
        out << "p = " << m.uniform_rates().p.to_string() << "\n";
        out << "q = " << m.uniform_rates().q.to_string() << "\n";
    } else {
        out << "mode = per_round\n";
        out << "per_round = ";
        for (std::size_t i = 0; i < m.per_round_rates().size(); ++i) {
            if (i > 0) out << ", ";
            const auto& r = m.per_round_rates()[i];
            out << r.p.to_string() << ":" << r.q.to_string();
        }
        out << "\n";
    }
    out << "sudden_death = " << m.sudden_death().p.to_string() << ":"
        << m.sudden_death().q.to_string() << "\n";
    return out.str();
}

// Resolves a --model argument: a known preset name or a config file path.
inline exact_model resolve_model(const std::string& name_or_path) {
    if (name_or_path == "brams") return brams_preset();
    if (name_or_path == "apesteguia2010") return apesteguia2010_preset();
    return load_model_file(name_or_path);
}

} // namespace shootout
