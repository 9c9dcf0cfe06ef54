#include "gsyn/blocksworld.hpp"
#include "gsyn/digest.hpp"
#include "gsyn/errors.hpp"
#include "gsyn/game.hpp"
#include "gsyn/oracle.hpp"
#include "gsyn/product.hpp"
#include "gsyn/randgen.hpp"
#include "gsyn/sim.hpp"
#include "gsyn/synthesis.hpp"
#include "gsyn/values.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace {

constexpr const char* kVersion = "0.1.0";

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw gsyn::input_error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw gsyn::input_error("cannot write " + path);
    out << content;
}

std::string header_comment(const std::string& digest) {
    return std::string("# gsyn ") + kVersion + "\n# input-digest " + digest + "\n";
}

nlohmann::ordered_json solution_to_json(const gsyn::admissible_solution& sol,
                                        const std::string& problem_digest) {
    nlohmann::ordered_json j;
    j["tool"] = "gsyn";
    j["version"] = kVersion;
    j["problem_digest"] = problem_digest;
    j["l_star"] = sol.l_star;
    j["val"] = sol.val;
    j["coalv"] = sol.plan.coalv;
    j["level_of"] = sol.plan.level_of;
    j["coalitions"] = sol.plan.coalitions;
    nlohmann::ordered_json plans = nlohmann::ordered_json::array();
    for (const gsyn::state_plan& p : sol.plan.plans) {
        nlohmann::ordered_json jp;
        jp["level"] = p.level;
        nlohmann::ordered_json admitted = nlohmann::ordered_json::array();
        for (const gsyn::coalition_action& c : p.admitted)
            admitted.push_back({{"coalition", c.coalition}, {"actions", c.actions}});
        jp["admitted"] = admitted;
        jp["values"] = p.cand_value;
        jp["replies"] = p.cand_argmin;
        plans.push_back(jp);
    }
    j["plans"] = plans;
    j["interior"] = sol.interior;
    return j;
}

gsyn::admissible_solution solution_from_json(const nlohmann::json& j,
                                             const std::string& problem_digest) {
    if (!j.contains("problem_digest") || j["problem_digest"].get<std::string>() != problem_digest)
        throw gsyn::input_error("solution was computed for a different problem file");
    gsyn::admissible_solution sol;
    sol.l_star = j.at("l_star").get<int>();
    sol.val = j.at("val").get<std::vector<std::vector<int>>>();
    sol.plan.success = true;
    sol.plan.coalv = j.at("coalv").get<std::vector<std::vector<int>>>();
    sol.plan.level_of = j.at("level_of").get<std::vector<int>>();
    sol.plan.coalitions = j.at("coalitions").get<std::vector<std::vector<int>>>();
    for (const auto& jp : j.at("plans")) {
        gsyn::state_plan p;
        p.level = jp.at("level").get<int>();
        for (const auto& jc : jp.at("admitted")) {
            gsyn::coalition_action c;
            c.coalition = jc.at("coalition").get<int>();
            c.actions = jc.at("actions").get<std::vector<int>>();
            p.admitted.push_back(std::move(c));
        }
        p.cand_value = jp.at("values").get<std::vector<std::vector<int>>>();
        p.cand_argmin = jp.at("replies").get<std::vector<std::vector<int>>>();
        sol.plan.plans.push_back(std::move(p));
    }
    sol.interior = j.at("interior").get<std::vector<std::vector<int>>>();
    return sol;
}

std::string vec_str(const std::vector<int>& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
}

struct solve_flags {
    std::string input;
    std::string out = "-";
    bool full_product = false;
    long long state_budget = 1'000'000;
    int level = -1;
    std::vector<std::string> coalitions;
};

gsyn::synthesis_options coalition_options(const gsyn::problem_spec& spec,
                                          const std::vector<std::string>& flags) {
    gsyn::synthesis_options opts;
    for (const std::string& text : flags) {
        std::vector<int> members;
        std::istringstream in(text);
        std::string part;
        while (std::getline(in, part, ','))
            members.push_back(std::stoi(part) - 1);
        if (members.empty() || members[0] != 0)
            throw gsyn::input_error("coalition must start with player 1: " + text);
        for (int m : members)
            if (m < 0 || m >= spec.game.num_players())
                throw gsyn::input_error("coalition names an unknown player: " + text);
        opts.coalitions.push_back(std::move(members));
    }
    return opts;
}

int cmd_solve(const solve_flags& f) {
    std::string raw = read_file(f.input);
    std::string digest = gsyn::digest_hex(raw);
    gsyn::problem_spec spec = gsyn::load_problem(raw);
    gsyn::product_options popts;
    popts.full_product = f.full_product;
    popts.state_budget = static_cast<size_t>(f.state_budget);
    gsyn::product_game product = gsyn::build_product(spec, popts);
    std::vector<std::vector<int>> val = gsyn::compute_all_values(product);
    gsyn::synthesis_options sopts = coalition_options(spec, f.coalitions);

    if (f.level >= 0) {
        gsyn::level_result res = gsyn::synthesize_level(product, val, f.level, sopts);
        std::cout << header_comment(digest);
        std::cout << "level " << f.level << (res.success ? " reachable" : " not reachable")
                  << " from the initial state\n";
        std::cout << "candidate evaluations " << res.candidate_evaluations << "\n";
        return 0;
    }

    gsyn::admissible_solution sol = gsyn::synthesize(product, val, sopts);
    std::cout << header_comment(digest);
    std::cout << "product states " << product.num_states() << "\n";
    std::cout << "l_star " << sol.l_star << "\n";
    std::vector<int> v0_val, v0_coalv, v0_rank;
    for (int p = 0; p < product.num_players(); ++p) {
        v0_val.push_back(sol.val[static_cast<size_t>(p)][static_cast<size_t>(product.initial)]);
        v0_coalv.push_back(sol.plan.coalv[static_cast<size_t>(p)][static_cast<size_t>(product.initial)]);
        v0_rank.push_back(gsyn::rank_of(product, p, product.initial));
    }
    std::cout << "initial rank " << vec_str(v0_rank) << "\n";
    std::cout << "initial val " << vec_str(v0_val) << "\n";
    std::cout << "initial coalv " << vec_str(v0_coalv) << "\n";
    std::cout << "candidate evaluations " << sol.candidate_evaluations << "\n";

    nlohmann::ordered_json j = solution_to_json(sol, digest);
    if (f.out != "-") {
        write_file(f.out, j.dump(2) + "\n");
        std::cout << "solution written to " << f.out << "\n";
    }
    return 0;
}

struct verify_flags {
    std::string input;
    uint64_t seed = 0;
    bool have_seed = false;
    int count = 1;
    long long budget = 10'000'000;
};

int verify_one(const gsyn::problem_spec& spec, long long budget_cap, std::mt19937_64& rng) {
    gsyn::product_game product = gsyn::build_product(spec);
    std::vector<std::vector<int>> val = gsyn::compute_all_values(product);
    int failures = 0;

    bool values_ok = true;
    for (int p = 0; p < product.num_players() && values_ok; ++p)
        for (int v = 0; v < product.num_states() && values_ok; ++v) {
            gsyn::oracle_budget budget{budget_cap, 0};
            int ov = gsyn::oracle_value(product, p, v, budget);
            if (ov != val[static_cast<size_t>(p)][static_cast<size_t>(v)]) values_ok = false;
        }
    std::cout << (values_ok ? "pass" : "FAIL") << " value agreement with exhaustive search\n";
    failures += values_ok ? 0 : 1;

    std::vector<int> leader = gsyn::msw_strategy(product, 0, val[0]);
    gsyn::oracle_budget budget{budget_cap, 0};
    bool undominated = true;
    gsyn::for_each_reachable_strategy(product, 0, product.initial, budget,
                                      [&](const std::vector<int>& other) {
                                          auto verdict = gsyn::strictly_dominates(product, 0, other, leader);
                                          if (verdict.dominates) undominated = false;
                                      });
    std::cout << (undominated ? "pass" : "FAIL") << " no strategy strictly dominates the leader policy\n";
    failures += undominated ? 0 : 1;

    bool lemma1_ok = true;
    for (int rep = 0; rep < 5; ++rep) {
        for (int p = 0; p < product.num_players(); ++p) {
            std::vector<int> strat = gsyn::random_strategy(rng, product, p);
            if (!gsyn::check_lemma1(product, p, strat, product.initial)) lemma1_ok = false;
        }
    }
    std::cout << (lemma1_ok ? "pass" : "FAIL") << " a minimal outcome attains the guaranteed rank\n";
    failures += lemma1_ok ? 0 : 1;

    bool discards_ok = true;
    for (int level = 0; level <= product.rank_max[0] && discards_ok; ++level) {
        gsyn::level_result res = gsyn::synthesize_level(product, val, level);
        for (const gsyn::level_report& round : res.rounds)
            for (const gsyn::discard_record& d : round.discarded) {
                const std::vector<int>& members =
                    res.coalitions[static_cast<size_t>(d.cand.coalition)];
                if (gsyn::is_rational(product, res.coalv, val, d.state, members, d.cand.actions))
                    discards_ok = false;
            }
    }
    std::cout << (discards_ok ? "pass" : "FAIL") << " every discarded coalition action is irrational\n";
    failures += discards_ok ? 0 : 1;

    return failures;
}

int cmd_verify(const verify_flags& f) {
    std::mt19937_64 rng(f.have_seed ? f.seed : 0);
    int failures = 0;
    if (!f.input.empty()) {
        std::string raw = read_file(f.input);
        std::cout << header_comment(gsyn::digest_hex(raw));
        gsyn::problem_spec spec = gsyn::load_problem(raw);
        failures = verify_one(spec, f.budget, rng);
    } else {
        std::cout << "# gsyn " << kVersion << "\n# seed " << f.seed << "\n";
        for (int i = 0; i < f.count; ++i) {
            gsyn::problem_spec spec = gsyn::random_problem(rng);
            std::cout << "instance " << (i + 1) << " of " << f.count << "\n";
            failures += verify_one(spec, f.budget, rng);
        }
    }
    return failures == 0 ? 0 : 3;
}

struct simulate_flags {
    std::string input;
    std::string solution;
    std::string out = "-";
    int horizon = 0;
    std::string format = "text";
};

int cmd_simulate(const simulate_flags& f) {
    if (f.horizon < 1) throw gsyn::input_error("horizon must be at least 1");
    std::string raw = read_file(f.input);
    std::string digest = gsyn::digest_hex(raw);
    gsyn::problem_spec spec = gsyn::load_problem(raw);
    nlohmann::json j = nlohmann::json::parse(read_file(f.solution), nullptr, true);
    gsyn::admissible_solution sol = solution_from_json(j, digest);
    gsyn::product_game product = gsyn::build_product(spec);
    gsyn::sim_trace t = gsyn::simulate(product, sol, f.horizon);
    gsyn::trace_format fmt = f.format == "csv" ? gsyn::trace_format::csv : gsyn::trace_format::text;
    write_file(f.out, header_comment(digest) + gsyn::render_trace(t, fmt));
    return 0;
}

int cmd_blocksworld(const std::string& out, bool small) {
    gsyn::problem_spec spec = small ? gsyn::build_blocksworld_small() : gsyn::build_blocksworld();
    std::string payload = gsyn::save_problem_text(spec);
    write_file(out, header_comment(gsyn::digest_hex(payload)) + payload);
    return 0;
}

int cmd_export_graph(const std::string& input, const std::string& out) {
    std::string raw = read_file(input);
    gsyn::problem_spec spec = gsyn::load_problem(raw);
    gsyn::product_game product = gsyn::build_product(spec);
    std::ostringstream dot;
    dot << "// gsyn " << kVersion << "\n// input-digest " << gsyn::digest_hex(raw) << "\n";
    dot << "digraph product {\n";
    for (int v = 0; v < product.num_states(); ++v) {
        std::vector<int> ranks;
        for (int p = 0; p < product.num_players(); ++p) ranks.push_back(gsyn::rank_of(product, p, v));
        dot << "  n" << v << " [label=\"" << product.describe_state(v) << "\\nrank " << vec_str(ranks)
            << "\"";
        if (v == product.initial) dot << " shape=doublecircle";
        dot << "];\n";
    }
    for (int v = 0; v < product.num_states(); ++v)
        for (int j = 0; j < product.num_joint(); ++j)
            dot << "  n" << v << " -> n" << product.step(v, j) << " [label=\""
                << spec.game.joint_name(j) << "\"];\n";
    dot << "}\n";
    write_file(out, dot.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"synthesis for multiplayer games on graphs with preference-ordered goals"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    solve_flags sf;
    CLI::App* solve = app.add_subcommand("solve", "compute values and an admissible solution");
    solve->add_option("--input", sf.input, "problem file")->required();
    solve->add_option("--out", sf.out, "solution file to write ('-' for none)");
    solve->add_flag("--full-product", sf.full_product, "build the full state product, not just reachable");
    solve->add_option("--state-budget", sf.state_budget, "product state budget");
    solve->add_option("--level", sf.level, "check a single target rank instead of solving");
    solve->add_option("--coalition", sf.coalitions,
                      "restrict allowed coalitions, e.g. --coalition 1,2 (repeatable)");

    verify_flags vf;
    CLI::App* verify = app.add_subcommand("verify", "cross-check the solver against exhaustive search");
    auto* vin = verify->add_option("--input", vf.input, "problem file");
    auto* vseed = verify->add_option("--seed", vf.seed, "verify generated instances with this seed");
    verify->add_option("--count", vf.count, "number of generated instances");
    verify->add_option("--budget", vf.budget, "strategy enumeration budget");
    vin->excludes(vseed);

    simulate_flags mf;
    CLI::App* simulate = app.add_subcommand("simulate", "play a solved strategy profile");
    simulate->add_option("--input", mf.input, "problem file")->required();
    simulate->add_option("--solution", mf.solution, "solution file from solve")->required();
    simulate->add_option("--horizon", mf.horizon, "maximum number of rounds")->required();
    simulate->add_option("--format", mf.format, "text or csv")->check(CLI::IsMember({"text", "csv"}));
    simulate->add_option("--out", mf.out, "trace file ('-' for stdout)");

    std::string bw_out = "-";
    bool bw_small = false;
    CLI::App* blocksworld = app.add_subcommand("blocksworld", "emit the three-arm experiment domain");
    blocksworld->add_option("--out", bw_out, "problem file to write ('-' for stdout)");
    blocksworld->add_flag("--small", bw_small, "emit the two-arm variant instead");

    std::string eg_input, eg_out = "-";
    CLI::App* export_graph = app.add_subcommand("export-graph", "dump the annotated arena as DOT");
    export_graph->add_option("--input", eg_input, "problem file")->required();
    export_graph->add_option("--out", eg_out, "dot file ('-' for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (solve->parsed()) return cmd_solve(sf);
        if (verify->parsed()) {
            vf.have_seed = vseed->count() > 0;
            if (vf.input.empty() && !vf.have_seed)
                throw gsyn::input_error("verify needs --input or --seed");
            return cmd_verify(vf);
        }
        if (simulate->parsed()) return cmd_simulate(mf);
        if (blocksworld->parsed()) return cmd_blocksworld(bw_out, bw_small);
        if (export_graph->parsed()) return cmd_export_graph(eg_input, eg_out);
    } catch (const gsyn::input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const gsyn::budget_error& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 2;
    } catch (const gsyn::property_error& e) {
        std::cerr << "property failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
