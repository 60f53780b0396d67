// Command-line front end: reproduces the fairness tables and figure data for
// penalty-shootout mechanisms, checks them against bundled published values,
// and runs the complexity, strategy-proofness, simulation and replay tools.
//
// Exit codes: 0 success, 1 failed --check or computation error, 2 bad
// configuration or file I/O.

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "shootout/analysis.hpp"
#include "shootout/complexity.hpp"
#include "shootout/reference_data.hpp"
#include "shootout/simulate.hpp"
#include "shootout/strategy.hpp"

using nlohmann::json;
using namespace shootout;

namespace {

constexpr const char* tool_version = "shootout 0.1.0";

constexpr int exit_ok = 0;
constexpr int exit_check_failed = 1;
constexpr int exit_config_error = 2;

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

std::string fmt12(long double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12Lg", v);
    return buf;
}

// Everything needed to tie emitted data files back to the run that made them.
struct run_manifest {
    std::string command;
    std::string arithmetic;
    std::string config_digest;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> rng;
    std::vector<std::string> outputs;

    json to_json() const {
        json j{{"version", tool_version},
               {"command", command},
               {"arithmetic", arithmetic},
               {"config_digest", config_digest}};
        if (seed) j["seed"] = *seed;
        if (rng) j["rng"] = *rng;
        j["outputs"] = outputs;
        return j;
    }

    std::string reference_line() const {
        std::string line = "# manifest: digest=" + config_digest;
        if (!outputs.empty()) line += " file=" + manifest_filename(outputs.front());
        return line;
    }

    static std::string manifest_filename(const std::string& data_file) {
        return data_file + ".manifest.json";
    }
};

void write_manifest_files(const run_manifest& m) {
    for (const auto& out : m.outputs) {
        std::ofstream f(run_manifest::manifest_filename(out));
        if (!f) throw config_error("cannot write manifest next to " + out);
        f << m.to_json().dump(2) << "\n";
    }
}

struct csv_table {
    std::string name;  // file name when writing into a directory
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

void write_csv(const csv_table& t, const run_manifest& m, std::ostream& os) {
    os << m.reference_line() << "\n";
    for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
    os << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
        os << "\n";
    }
}

// Options shared by every subcommand per the external-interface contract.
struct common_options {
    std::string model;
    std::string out;
    std::string format = "csv";
    bool check = false;
    std::uint64_t seed = 1;
};

void add_common(CLI::App* cmd, common_options& o, const std::string& default_model,
                const std::string& default_format) {
    o.model = default_model;
    o.format = default_format;
    cmd->add_option("--model", o.model, "scoring model: preset name (brams, apesteguia2010) or config file")
        ->capture_default_str();
    cmd->add_option("--out", o.out, "output path (directory for multi-file commands); stdout if omitted");
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_flag("--check", o.check, "compare against bundled published values; nonzero exit on mismatch");
    cmd->add_option("--seed", o.seed, "PRNG seed (simulation)")->capture_default_str();
}

// Emits a single-table command result as CSV or JSON, to --out or stdout.
int emit(const common_options& o, const csv_table& table, const json& as_json, run_manifest m) {
    if (!o.out.empty()) m.outputs.push_back(o.out);
    if (o.format == "json") {
        json j = as_json;
        j["manifest"] = m.to_json();
        if (o.out.empty()) {
            std::cout << j.dump(2) << "\n";
        } else {
            std::ofstream f(o.out);
            if (!f) throw config_error("cannot write " + o.out);
            f << j.dump(2) << "\n";
            write_manifest_files(m);
        }
    } else {
        if (o.out.empty()) {
            write_csv(table, m, std::cout);
        } else {
            std::ofstream f(o.out);
            if (!f) throw config_error("cannot write " + o.out);
            write_csv(table, m, f);
            write_manifest_files(m);
        }
    }
    return exit_ok;
}

struct check_session {
    bool all_passed = true;

    bool expect(const std::string& name, long double computed, long double expected,
                long double tolerance) {
        const bool ok = std::abs(computed - expected) <= tolerance;
        all_passed &= ok;
        std::printf("[%s] %s: computed=%s expected=%s tol=%s\n", ok ? "PASS" : "FAIL",
                    name.c_str(), fmt12(computed).c_str(), fmt12((long double)expected).c_str(),
                    fmt12(tolerance).c_str());
        return ok;
    }

    bool expect_true(const std::string& name, bool ok) {
        all_passed &= ok;
        std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", name.c_str());
        return ok;
    }

    int exit_code() const { return all_passed ? exit_ok : exit_check_failed; }
};

std::string mech_label(const mechanism& m) { return m.to_string(); }

const char* column_names[3] = {"catch_up", "adjusted_catch_up", "alternating"};

run_manifest make_manifest(const std::string& command, const std::string& arithmetic,
                           const exact_model& model) {
    return {command, arithmetic, fnv1a_hex(serialize_model_config(model)), std::nullopt,
            std::nullopt, {}};
}

// ---------------------------------------------------------------- table3 --

int run_table3(const common_options& o) {
    const exact_model model = resolve_model(o.model);
    if (!model.is_uniform())
        throw config_error("table3 needs a uniform model (rounds vary per row)");
    const auto grid = table3(model);

    if (o.check) {
        check_session s;
        for (int r = 1; r <= 8; ++r)
            for (int c = 0; c < 3; ++c)
                s.expect("table3 rounds=" + std::to_string(r) + " " + column_names[c],
                         grid.win_prob_a[r - 1][c].to_long_double(), reference::table3[r - 1][c],
                         reference::table3_tolerance);
        return s.exit_code();
    }

    csv_table t;
    t.header = {"rounds"};
    for (const char* c : column_names) {
        t.header.push_back(c);
        t.header.push_back(std::string(c) + "_exact");
    }
    json rows_json = json::array();
    for (int r = 1; r <= 8; ++r) {
        std::vector<std::string> row{std::to_string(r)};
        json jr{{"rounds", r}};
        for (int c = 0; c < 3; ++c) {
            const rational& v = grid.win_prob_a[r - 1][c];
            row.push_back(fmt12(v.to_long_double()));
            row.push_back(v.to_string());
            jr[column_names[c]] = (double)v.to_long_double();
            jr[std::string(column_names[c]) + "_exact"] = v.to_string();
        }
        t.rows.push_back(std::move(row));
        rows_json.push_back(std::move(jr));
    }
    return emit(o, t, json{{"table", "win_prob_a_by_rounds"}, {"rows", rows_json}},
                make_manifest("table3", "rational", model));
}

// ----------------------------------------------------------------- sweep --

int run_sweep(const common_options& o, std::vector<std::string> mechs, double p, double q_min,
              double q_max, double q_step, int rounds, const std::string& fixed_sd) {
    if (mechs.empty()) mechs = {"catchup", "adj-catchup", "abba"};

    if (o.check) {
        check_session s;
        for (const auto& pt : reference::figure1) {
            const mechanism m = mechanism::parse(std::string(pt.mech));
            const long double q = pt.q;
            const std::span<const long double> grid(&q, 1);
            const auto curve = sweep_q<long double>(m, 5, pt.p, grid);
            s.expect("figure1 " + std::string(pt.mech) + " p=" + fmt12(pt.p) + " q=" + fmt12(pt.q),
                     curve.at(0).win_prob_a, pt.win_prob_a, reference::figure_tolerance);
        }
        return s.exit_code();
    }

    bool sd_follows = fixed_sd.empty();
    round_rates<long double> sd{};
    if (!sd_follows) {
        const auto pair = detail::parse_pair(fixed_sd, "--sd");
        sd = {pair.p.to_long_double(), pair.q.to_long_double()};
    }
    if (q_max < 0) q_max = p;

    std::vector<long double> grid;
    for (int i = 0;; ++i) {
        const long double q = (long double)q_min + (long double)i * (long double)q_step;
        if (q > (long double)q_max + 1e-12L) break;
        grid.push_back(q);
    }

    run_manifest m{"sweep", "long double",
                   fnv1a_hex("uniform sweep p=" + fmt12(p) + " sd=" + (sd_follows ? "follows" : fixed_sd)),
                   std::nullopt, std::nullopt, {}};
    const bool to_dir = !o.out.empty();
    if (to_dir) std::filesystem::create_directories(o.out);

    for (const auto& name : mechs) {
        const mechanism mech = mechanism::parse(name);
        const auto curve =
            sweep_q<long double>(mech, rounds, p, grid, sd_follows, sd);
        char fname[128];
        std::snprintf(fname, sizeof fname, "sweep_%s_p%.4g_r%d.%s", name.c_str(), p, rounds,
                      o.format.c_str());
        csv_table t;
        t.name = fname;
        t.header = {"q", "win_prob_a"};
        json points = json::array();
        for (const auto& pt : curve) {
            t.rows.push_back({fmt12(pt.q), fmt12(pt.win_prob_a)});
            points.push_back({{"q", (double)pt.q}, {"win_prob_a", (double)pt.win_prob_a}});
        }
        json j{{"mechanism", name}, {"p", p}, {"rounds", rounds}, {"points", points}};

        if (!to_dir) {
            std::cout << "# " << fname << "\n";
            if (o.format == "json") {
                j["manifest"] = m.to_json();
                std::cout << j.dump(2) << "\n";
            } else {
                write_csv(t, m, std::cout);
            }
            continue;
        }
        const std::string path = (std::filesystem::path(o.out) / fname).string();
        run_manifest file_m = m;
        file_m.outputs.push_back(path);
        std::ofstream f(path);
        if (!f) throw config_error("cannot write " + path);
        if (o.format == "json") {
            j["manifest"] = file_m.to_json();
            f << j.dump(2) << "\n";
        } else {
            write_csv(t, file_m, f);
        }
        write_manifest_files(file_m);
    }
    return exit_ok;
}

// ------------------------------------------------------------- empirical --

int run_empirical(const common_options& o, const std::string& sd_pairs_arg) {
    const exact_model model = resolve_model(o.model);
    if (model.is_uniform())
        throw config_error("empirical needs a per-round model (e.g. --model apesteguia2010)");

    std::vector<round_rates<rational>> sd_pairs;
    {
        std::string_view rest = sd_pairs_arg;
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            sd_pairs.push_back(detail::parse_pair(rest.substr(0, comma), "--sd-pairs"));
            rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        }
    }

    const auto groups = empirical_bars<rational>(model, sd_pairs);

    if (o.check) {
        check_session s;
        for (const auto& ref : reference::figure2) {
            const round_rates<rational> sd{rational(ref.sd_p_num, ref.sd_p_den),
                                           rational(ref.sd_q_num, ref.sd_q_den)};
            const std::span<const round_rates<rational>> one(&sd, 1);
            const auto g = empirical_bars<rational>(model, one).at(0);
            for (int c = 0; c < 3; ++c)
                s.expect("figure2 sd=" + sd.p.to_string() + ";" + sd.q.to_string() + " " +
                             column_names[c],
                         g.win_prob_a[c].to_long_double(), ref.win_prob_a[c],
                         reference::figure_tolerance);
        }
        return s.exit_code();
    }

    csv_table t;
    t.header = {"sd_p", "sd_q"};
    for (const char* c : column_names) {
        t.header.push_back(c);
        t.header.push_back(std::string(c) + "_exact");
    }
    json rows = json::array();
    for (const auto& g : groups) {
        std::vector<std::string> row{g.sudden_death.p.to_string(), g.sudden_death.q.to_string()};
        json jr{{"sd_p", g.sudden_death.p.to_string()}, {"sd_q", g.sudden_death.q.to_string()}};
        for (int c = 0; c < 3; ++c) {
            row.push_back(fmt12(g.win_prob_a[c].to_long_double()));
            row.push_back(g.win_prob_a[c].to_string());
            jr[column_names[c]] = (double)g.win_prob_a[c].to_long_double();
            jr[std::string(column_names[c]) + "_exact"] = g.win_prob_a[c].to_string();
        }
        t.rows.push_back(std::move(row));
        rows.push_back(std::move(jr));
    }
    return emit(o, t, json{{"table", "empirical_win_prob_a"}, {"rows", rows}},
                make_manifest("empirical", "rational", model));
}

// ---------------------------------------------------------------- region --

int run_region(const common_options& o, double p_min, double p_max, double p_step) {
    const exact_model model = resolve_model(o.model);
    if (model.is_uniform())
        throw config_error("region needs a per-round model (e.g. --model apesteguia2010)");
    const auto vs_cu = alpha_threshold(rival_rule::catch_up, model);
    const auto vs_ab = alpha_threshold(rival_rule::alternating, model);
    if (!vs_cu.found || !vs_ab.found)
        throw std::runtime_error("region: no threshold crossing found for this model");

    if (o.check) {
        check_session s;
        s.expect("alpha vs catch-up", vs_cu.alpha_star, reference::alpha_vs_catch_up,
                 reference::alpha_tolerance);
        s.expect("alpha vs alternating", vs_ab.alpha_star, reference::alpha_vs_alternating,
                 reference::alpha_tolerance);
        s.expect("boundary q_min(p=0.75) vs catch-up",
                 region_boundary(0.75L, vs_cu.alpha_star),
                 reference::boundary_q_at_p075_vs_catch_up, reference::boundary_tolerance);
        s.expect("boundary q_min(p=0.75) vs alternating",
                 region_boundary(0.75L, vs_ab.alpha_star),
                 reference::boundary_q_at_p075_vs_alternating, reference::boundary_tolerance);
        bool roundtrip = true;
        for (long double p = 0.5L; p <= 1.0L + 1e-12L; p += 0.01L)
            for (long double a : {vs_cu.alpha_star, vs_ab.alpha_star}) {
                const long double q = region_boundary(p, a);
                if (std::abs(sudden_death_win_prob(p, q) - a) > 1e-12L) roundtrip = false;
            }
        s.expect_true("round trip W(p, q_min(p, alpha)) = alpha to 1e-12 on p grid", roundtrip);
        return s.exit_code();
    }

    csv_table t;
    t.header = {"p", "q_min_vs_catch_up", "q_min_vs_alternating"};
    json rows = json::array();
    for (long double p = p_min; p <= (long double)p_max + 1e-12L; p += p_step) {
        const long double qc = region_boundary(p, vs_cu.alpha_star);
        const long double qa = region_boundary(p, vs_ab.alpha_star);
        t.rows.push_back({fmt12(p), fmt12(qc), fmt12(qa)});
        rows.push_back({{"p", (double)p},
                        {"q_min_vs_catch_up", (double)qc},
                        {"q_min_vs_alternating", (double)qa}});
    }
    json j{{"alpha_vs_catch_up", (double)vs_cu.alpha_star},
           {"alpha_vs_alternating", (double)vs_ab.alpha_star},
           {"rows", rows}};
    return emit(o, t, j, make_manifest("region", "long double", model));
}

// ------------------------------------------------------------------ ties --

int run_ties(const common_options& o) {
    const exact_model empirical = resolve_model(o.model);

    auto config_model = [&](const reference::tie_ref& ref) {
        if (ref.p_den == 0) return empirical;
        return exact_model::uniform(rational(ref.p_num, ref.p_den), rational(ref.q_num, ref.q_den),
                                    {rational(ref.p_num, ref.p_den), rational(ref.q_num, ref.q_den)});
    };

    check_session s;
    csv_table t;
    t.header = {"config", "catch_up_tie", "catch_up_tie_exact", "alternating_tie",
                "alternating_tie_exact"};
    json rows = json::array();
    for (const auto& ref : reference::figure4) {
        const exact_model m = config_model(ref);
        const int rounds = m.is_uniform() ? 5 : m.regular_rounds();
        const rational cu = tie_probability(mechanism::catch_up(), rounds, m);
        const rational ab = tie_probability(mechanism::alternating(), rounds, m);
        if (o.check) {
            s.expect("figure4 " + std::string(ref.label) + " catch-up", cu.to_long_double(),
                     ref.catch_up_tie, reference::figure_tolerance);
            s.expect("figure4 " + std::string(ref.label) + " alternating", ab.to_long_double(),
                     ref.alternating_tie, reference::figure_tolerance);
            continue;
        }
        t.rows.push_back({std::string(ref.label), fmt12(cu.to_long_double()), cu.to_string(),
                          fmt12(ab.to_long_double()), ab.to_string()});
        rows.push_back({{"config", std::string(ref.label)},
                        {"catch_up_tie", (double)cu.to_long_double()},
                        {"catch_up_tie_exact", cu.to_string()},
                        {"alternating_tie", (double)ab.to_long_double()},
                        {"alternating_tie_exact", ab.to_string()}});
    }
    if (o.check) return s.exit_code();
    return emit(o, t, json{{"table", "sudden_death_probability"}, {"rows", rows}},
                make_manifest("ties", "rational", empirical));
}

// ------------------------------------------------------------ complexity --

json plan_to_json(const question_plan& plan) {
    if (plan.is_leaf()) return json{{"team", plan.leaf_team() == team::a ? "A" : "B"}};
    return json{{"ask", plan.question().id},
                {"yes", plan_to_json(plan.if_true())},
                {"no", plan_to_json(plan.if_false())}};
}

int run_complexity(const common_options& o, const std::string& mech_arg, int horizon,
                   int max_depth, int regular_rounds) {
    const auto library = default_predicate_library();

    if (o.check) {
        check_session s;
        for (const auto& ref : reference::complexity_depths) {
            const mechanism m = mechanism::parse(std::string(ref.mech));
            const auto result = min_depth(m, library, horizon, max_depth, regular_rounds);
            bool ok = result.decidable && result.worst_case_depth == ref.worst_case_depth &&
                      (ref.best_case_leaf_depth < 0 ||
                       result.best_case_leaf_depth == ref.best_case_leaf_depth) &&
                      verify_plan(*result.witness, m, horizon, regular_rounds);
            s.expect_true("complexity " + std::string(ref.mech) + " worst=" +
                              std::to_string(ref.worst_case_depth),
                          ok);
        }
        return s.exit_code();
    }

    const mechanism m = mechanism::parse(mech_arg);
    const auto result = min_depth(m, library, horizon, max_depth, regular_rounds);
    json j{{"mechanism", mech_label(m)},
           {"horizon", result.horizon},
           {"max_depth", result.max_depth},
           {"decidable", result.decidable}};
    if (result.decidable) {
        j["worst_case_depth"] = result.worst_case_depth;
        j["best_case_leaf_depth"] = result.best_case_leaf_depth;
        j["witness_text"] = result.witness->to_text();
        j["witness"] = plan_to_json(*result.witness);
        j["witness_verified"] = verify_plan(*result.witness, m, horizon, regular_rounds);
    }
    csv_table t;
    t.header = {"mechanism", "decidable", "worst_case_depth", "best_case_leaf_depth", "witness"};
    t.rows.push_back({mech_label(m), result.decidable ? "true" : "false",
                      std::to_string(result.worst_case_depth),
                      std::to_string(result.best_case_leaf_depth),
                      result.decidable ? "\"" + result.witness->to_text() + "\"" : ""});
    return emit(o, t, j, {"complexity", "exact", fnv1a_hex(mech_label(m)), std::nullopt,
                          std::nullopt, {}});
}

// -------------------------------------------------------------- strategy --

int run_strategy(const common_options& o, const std::string& mech_arg, const std::string& p_arg,
                 const std::string& q_arg, int rounds) {
    const auto parse_prob = [](const std::string& s, const char* what) {
        auto r = rational::parse(s);
        if (!r) throw config_error(std::string("strategy: bad probability for ") + what);
        return *r;
    };
    const rational p = parse_prob(p_arg, "-p");
    const rational q = parse_prob(q_arg, "-q");
    const exact_model model = exact_model::uniform(p, q, {p, q});

    if (o.check) {
        check_session s;
        for (const char* name : {"abba", "catchup", "adj-catchup"}) {
            const auto report = check_strategy_proofness(mechanism::parse(name), rounds, model);
            s.expect_true(std::string("strategy-proof ") + name + " at p=" + p.to_string() +
                              " q=" + q.to_string(),
                          report.strategy_proof);
        }
        return s.exit_code();
    }

    const mechanism m = mechanism::parse(mech_arg);
    const auto report = check_strategy_proofness(m, rounds, model);
    json violations = json::array();
    for (const auto& v : report.violations)
        violations.push_back({{"state", v.state.state_string},
                              {"round", v.state.round},
                              {"kick_in_round", v.state.kick_in_round + 1},
                              {"kicker", v.state.kicker == team::a ? "A" : "B"},
                              {"score_a", v.state.score_a},
                              {"score_b", v.state.score_b},
                              {"honest_value", (double)v.honest_value.to_long_double()},
                              {"honest_value_exact", v.honest_value.to_string()},
                              {"miss_value", (double)v.miss_value.to_long_double()},
                              {"miss_value_exact", v.miss_value.to_string()}});
    json j{{"mechanism", mech_label(m)},
           {"rounds", rounds},
           {"p", p.to_string()},
           {"q", q.to_string()},
           {"strategy_proof", report.strategy_proof},
           {"violations", violations}};
    csv_table t;
    t.header = {"mechanism", "strategy_proof", "violations"};
    t.rows.push_back({mech_label(m), report.strategy_proof ? "true" : "false",
                      std::to_string(report.violations.size())});
    return emit(o, t, j,
                make_manifest("strategy", "rational", model));
}

// -------------------------------------------------------------- simulate --

int run_simulate(const common_options& o, const std::string& mech_arg, int rounds,
                 std::uint64_t trials, int workers) {
    const exact_model exact = resolve_model(o.model);
    const auto model = convert_model<double>(exact);
    const mechanism m = mechanism::parse(mech_arg);
    const auto result = simulate(m, rounds, model, o.seed, trials, workers);

    if (o.check) {
        check_session s;
        const long double exact_win = overall_win_prob(m, rounds, exact).to_long_double();
        const long double sigma = std::sqrt(exact_win * (1 - exact_win) / (long double)trials);
        s.expect("simulate p_a_win vs exact (3 sigma)", result.p_a_win(), (double)exact_win,
                 3 * sigma);
        const long double exact_kicks = expected_total_kicks(m, rounds, exact).to_long_double();
        s.expect("simulate mean kicks vs exact (3 stderr)", result.mean_kicks(),
                 (double)exact_kicks, 3 * result.kick_stderr());
        return s.exit_code();
    }

    json j{{"mechanism", mech_label(m)},
           {"rounds", rounds},
           {"seed", o.seed},
           {"trials", trials},
           {"rng", simulation_result::rng_name},
           {"block_size", simulation_result::block_size},
           {"a_wins", result.a_wins},
           {"b_wins", result.b_wins},
           {"regular_a_wins", result.regular_a_wins},
           {"regular_b_wins", result.regular_b_wins},
           {"ties_a_first_sd", result.ties_a_first_sd},
           {"ties_b_first_sd", result.ties_b_first_sd},
           {"p_a_win", result.p_a_win()},
           {"p_b_win", result.p_b_win()},
           {"p_tie", result.p_tie()},
           {"mean_kicks", result.mean_kicks()},
           {"kick_stderr", result.kick_stderr()}};
    csv_table t;
    t.header = {"mechanism", "trials", "p_a_win", "p_b_win", "p_tie", "mean_kicks"};
    t.rows.push_back({mech_label(m), std::to_string(trials), fmt12(result.p_a_win()),
                      fmt12(result.p_b_win()), fmt12(result.p_tie()), fmt12(result.mean_kicks())});
    run_manifest manifest = make_manifest("simulate", "double", exact);
    manifest.seed = o.seed;
    manifest.rng = simulation_result::rng_name;
    return emit(o, t, j, std::move(manifest));
}

// ---------------------------------------------------------------- replay --

int run_replay(const common_options& o, const std::string& mech_arg, const std::string& kicks_arg,
               int regular_rounds) {
    if (o.check) {
        check_session s;
        for (const auto& ref : reference::table1) {
            const mechanism m = mechanism::parse(std::string(ref.mech));
            const auto kicks = parse_kick_string(ref.kicks);
            const auto schedule = replay_schedule(m, kicks, regular_rounds);
            bool ok = schedule.size() == ref.first_kickers.size();
            for (std::size_t r = 0; ok && r < schedule.size(); ++r)
                ok = team_char(schedule[r].first) == ref.first_kickers[r];
            s.expect_true("replay " + std::string(ref.mech) + " first kickers " +
                              std::string(ref.first_kickers),
                          ok);
        }
        return s.exit_code();
    }

    const mechanism m = mechanism::parse(mech_arg);
    const auto kicks = parse_kick_string(kicks_arg);
    const auto schedule = replay_schedule(m, kicks, regular_rounds);

    csv_table t;
    t.header = {"round", "first_kicker", "first_result", "second_result", "score_a", "score_b"};
    json rows = json::array();
    shootout_history h(regular_rounds);
    for (const auto& r : schedule) {
        h.push({r.first, r.first_result, r.second_result});
        t.rows.push_back({std::to_string(r.round), std::string(1, team_char(r.first)),
                          std::string(1, kick_char(r.first_result)),
                          std::string(1, kick_char(r.second_result)),
                          std::to_string(h.score(team::a)), std::to_string(h.score(team::b))});
        rows.push_back({{"round", r.round},
                        {"first_kicker", std::string(1, team_char(r.first))},
                        {"first_result", std::string(1, kick_char(r.first_result))},
                        {"second_result", std::string(1, kick_char(r.second_result))},
                        {"score_a", h.score(team::a)},
                        {"score_b", h.score(team::b)}});
    }
    const auto winner = decided_winner(h);
    json j{{"mechanism", mech_label(m)},
           {"regular_rounds", regular_rounds},
           {"rounds", rows},
           {"decided", winner.has_value()},
           {"winner", winner ? std::string(1, team_char(*winner)) : ""}};
    return emit(o, t, j, {"replay", "exact", fnv1a_hex(kicks_arg), std::nullopt, std::nullopt, {}});
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Penalty shootout mechanism analysis"};
    app.set_version_flag("--version", tool_version);
    app.require_subcommand(1);
    bool error_json = false;
    app.add_flag("--error-json", error_json, "emit errors as JSON on stderr");

    std::string command_summary;
    for (int i = 1; i < argc; ++i) command_summary += std::string(i > 1 ? " " : "") + argv[i];

    int exit_code = exit_ok;
    auto guard = [&](auto&& fn) {
        try {
            exit_code = fn();
        } catch (const config_error& e) {
            if (error_json)
                std::cerr << json{{"error", {{"type", "config"}, {"message", e.what()}}}}.dump()
                          << "\n";
            else
                std::cerr << "error: " << e.what() << "\n";
            exit_code = exit_config_error;
        } catch (const std::exception& e) {
            if (error_json)
                std::cerr << json{{"error", {{"type", "runtime"}, {"message", e.what()}}}}.dump()
                          << "\n";
            else
                std::cerr << "error: " << e.what() << "\n";
            exit_code = exit_check_failed;
        }
    };

    // table3
    auto* table3_cmd = app.add_subcommand("table3", "fairness grid: rounds 1..8 x mechanism");
    static common_options table3_opts;
    add_common(table3_cmd, table3_opts, "brams", "csv");
    table3_cmd->callback([&] { guard([&] { return run_table3(table3_opts); }); });

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "win probability curves as q varies");
    static common_options sweep_opts;
    static std::vector<std::string> sweep_mechs;
    static double sweep_p = 0.75, sweep_qmin = 0.5, sweep_qmax = -1, sweep_qstep = 0.01;
    static int sweep_rounds = 5;
    static std::string sweep_sd;
    add_common(sweep_cmd, sweep_opts, "brams", "csv");
    sweep_cmd->add_option("--mech", sweep_mechs, "mechanisms (default: all three candidates)");
    sweep_cmd->add_option("-p,--p", sweep_p, "first kicker success probability")->capture_default_str();
    sweep_cmd->add_option("--q-min", sweep_qmin, "grid start")->capture_default_str();
    sweep_cmd->add_option("--q-max", sweep_qmax, "grid end (default: p)");
    sweep_cmd->add_option("--q-step", sweep_qstep, "grid step")->capture_default_str();
    sweep_cmd->add_option("--rounds", sweep_rounds, "regular rounds")->capture_default_str();
    sweep_cmd->add_option("--sd", sweep_sd, "fixed sudden-death pair p:q (default: follows p,q)");
    sweep_cmd->callback([&] {
        guard([&] {
            return run_sweep(sweep_opts, sweep_mechs, sweep_p, sweep_qmin, sweep_qmax, sweep_qstep,
                             sweep_rounds, sweep_sd);
        });
    });

    // empirical
    auto* empirical_cmd = app.add_subcommand("empirical", "win probabilities under per-round rates");
    static common_options empirical_opts;
    static std::string sd_pairs = "2/3:3/5,3/4:2/3,3/4:3/5";
    add_common(empirical_cmd, empirical_opts, "apesteguia2010", "csv");
    empirical_cmd->add_option("--sd-pairs", sd_pairs, "comma-separated sudden-death p:q pairs")
        ->capture_default_str();
    empirical_cmd->callback(
        [&] { guard([&] { return run_empirical(empirical_opts, sd_pairs); }); });

    // region
    auto* region_cmd = app.add_subcommand("region", "sudden-death (p,q) region boundaries");
    static common_options region_opts;
    static double region_pmin = 0.5, region_pmax = 1.0, region_pstep = 0.01;
    add_common(region_cmd, region_opts, "apesteguia2010", "csv");
    region_cmd->add_option("--p-min", region_pmin, "")->capture_default_str();
    region_cmd->add_option("--p-max", region_pmax, "")->capture_default_str();
    region_cmd->add_option("--p-step", region_pstep, "")->capture_default_str();
    region_cmd->callback([&] {
        guard([&] { return run_region(region_opts, region_pmin, region_pmax, region_pstep); });
    });

    // ties
    auto* ties_cmd = app.add_subcommand("ties", "probability of reaching sudden death");
    static common_options ties_opts;
    add_common(ties_cmd, ties_opts, "apesteguia2010", "csv");
    ties_cmd->callback([&] { guard([&] { return run_ties(ties_opts); }); });

    // complexity
    auto* complexity_cmd = app.add_subcommand("complexity", "minimal binary-question count");
    static common_options complexity_opts;
    static std::string complexity_mech = "catchup";
    static int complexity_horizon = 8, complexity_max_depth = 4, complexity_rounds = 5;
    add_common(complexity_cmd, complexity_opts, "brams", "json");
    complexity_cmd->add_option("--mech", complexity_mech, "mechanism")->capture_default_str();
    complexity_cmd->add_option("--horizon", complexity_horizon, "rounds to verify over (<= 10)")
        ->capture_default_str();
    complexity_cmd->add_option("--max-depth", complexity_max_depth, "search budget (<= 4)")
        ->capture_default_str();
    complexity_cmd->add_option("--rounds", complexity_rounds, "regular rounds")->capture_default_str();
    complexity_cmd->callback([&] {
        guard([&] {
            return run_complexity(complexity_opts, complexity_mech, complexity_horizon,
                                  complexity_max_depth, complexity_rounds);
        });
    });

    // strategy
    auto* strategy_cmd = app.add_subcommand("strategy", "strategy-proofness report");
    static common_options strategy_opts;
    static std::string strategy_mech = "catchup", strategy_p = "3/4", strategy_q = "2/3";
    static int strategy_rounds = 5;
    add_common(strategy_cmd, strategy_opts, "brams", "json");
    strategy_cmd->add_option("--mech", strategy_mech, "mechanism")->capture_default_str();
    strategy_cmd->add_option("-p,--p", strategy_p, "first kicker probability (fraction or decimal)")
        ->capture_default_str();
    strategy_cmd->add_option("-q,--q", strategy_q, "second kicker probability")->capture_default_str();
    strategy_cmd->add_option("--rounds", strategy_rounds, "regular rounds")->capture_default_str();
    strategy_cmd->callback([&] {
        guard([&] {
            return run_strategy(strategy_opts, strategy_mech, strategy_p, strategy_q,
                                strategy_rounds);
        });
    });

    // simulate
    auto* simulate_cmd = app.add_subcommand("simulate", "seeded Monte Carlo runs");
    static common_options simulate_opts;
    static std::string simulate_mech = "catchup";
    static int simulate_rounds = 5, simulate_workers = 1;
    static std::uint64_t simulate_trials = 1000000;
    add_common(simulate_cmd, simulate_opts, "brams", "json");
    simulate_cmd->add_option("--mech", simulate_mech, "mechanism")->capture_default_str();
    simulate_cmd->add_option("--rounds", simulate_rounds, "regular rounds")->capture_default_str();
    simulate_cmd->add_option("--trials", simulate_trials, "number of shootouts")->capture_default_str();
    simulate_cmd->add_option("--workers", simulate_workers, "worker threads (result-invariant)")
        ->capture_default_str();
    simulate_cmd->callback([&] {
        guard([&] {
            return run_simulate(simulate_opts, simulate_mech, simulate_rounds, simulate_trials,
                                simulate_workers);
        });
    });

    // replay
    auto* replay_cmd = app.add_subcommand("replay", "induced schedule for a kick string");
    static common_options replay_opts;
    static std::string replay_mech = "adj-catchup", replay_kicks;
    static int replay_rounds = 5;
    add_common(replay_cmd, replay_opts, "brams", "csv");
    replay_cmd->add_option("--mech", replay_mech, "mechanism")->capture_default_str();
    replay_cmd->add_option("--kicks", replay_kicks, "kick outcomes, e.g. SS.MM.SS");
    replay_cmd->add_option("--rounds", replay_rounds, "regular rounds")->capture_default_str();
    replay_cmd->callback([&] {
        guard([&] { return run_replay(replay_opts, replay_mech, replay_kicks, replay_rounds); });
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    return exit_code;
}
