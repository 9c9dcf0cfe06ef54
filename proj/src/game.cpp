#include "gsyn/game.hpp"
#include "gsyn/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace gsyn {

int game_graph::joint_index(const std::vector<int>& per_player) const {
    int joint = 0;
    for (int p = 0; p < num_players(); ++p)
        joint += per_player[static_cast<size_t>(p)] * strides[static_cast<size_t>(p)];
    return joint;
}

std::vector<int> game_graph::split_joint(int joint) const {
    std::vector<int> per_player(static_cast<size_t>(num_players()));
    for (int p = 0; p < num_players(); ++p) {
        per_player[static_cast<size_t>(p)] = joint / strides[static_cast<size_t>(p)];
        joint %= strides[static_cast<size_t>(p)];
    }
    return per_player;
}

int game_graph::state_by_name(const std::string& name) const {
    auto it = std::find(state_names.begin(), state_names.end(), name);
    return it == state_names.end() ? -1 : static_cast<int>(it - state_names.begin());
}

int game_graph::action_by_name(int player, const std::string& name) const {
    const auto& list = actions[static_cast<size_t>(player)];
    auto it = std::find(list.begin(), list.end(), name);
    return it == list.end() ? -1 : static_cast<int>(it - list.begin());
}

std::string game_graph::joint_name(int joint) const {
    std::vector<int> per_player = split_joint(joint);
    std::string out = "(";
    for (int p = 0; p < num_players(); ++p) {
        if (p) out += ',';
        out += actions[static_cast<size_t>(p)][static_cast<size_t>(per_player[static_cast<size_t>(p)])];
    }
    out += ')';
    return out;
}

std::vector<std::vector<int>> feasible_coalitions(int num_players) {
    std::vector<std::vector<int>> out;
    out.push_back({0});
    for (int i = 1; i < num_players; ++i) out.push_back({0, i});
    return out;
}

namespace {

constexpr int kMaxAtoms = 16;

bool reserved_word(const std::string& s) {
    return s == "X" || s == "F" || s == "U" || s == "true";
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

[[noreturn]] void fail_line(int line, const std::string& msg) {
    throw input_error("line " + std::to_string(line) + ": " + msg);
}

// Computes strides, validates totality, builds preference models, parses
// goals. Shared by the text and JSON loaders once the raw fields are read.
void finish_problem(problem_spec& spec, const std::vector<char>& covered) {
    game_graph& g = spec.game;
    if (g.atoms.size() > kMaxAtoms)
        throw input_error("at most " + std::to_string(kMaxAtoms) + " atoms are supported");
    for (size_t joint = 0; joint < static_cast<size_t>(g.num_joint); ++joint)
        for (int s = 0; s < g.num_states(); ++s)
            if (!covered[static_cast<size_t>(s) * static_cast<size_t>(g.num_joint) + joint])
                throw input_error("missing transition from state '" + g.state_names[static_cast<size_t>(s)] +
                                  "' on joint action " + g.joint_name(static_cast<int>(joint)));
    spec.goals.clear();
    for (size_t k = 0; k < spec.goal_texts.size(); ++k) {
        try {
            spec.goals.push_back(parse_formula(spec.goal_texts[k], g.atoms));
        } catch (const input_error& e) {
            throw input_error("goal " + std::to_string(k + 1) + ": " + e.what());
        }
    }
    spec.prefs.clear();
    for (int p = 0; p < g.num_players(); ++p) {
        for (auto [better, worse] : spec.pref_edges[static_cast<size_t>(p)])
            if (better < 0 || better >= spec.num_goals() || worse < 0 || worse >= spec.num_goals())
                throw input_error("preference edge for player " + std::to_string(p + 1) +
                                  " names a goal index out of range");
        spec.prefs.push_back(build_preference(spec.num_goals(), spec.pref_edges[static_cast<size_t>(p)]));
    }
}

void init_strides(game_graph& g) {
    int n = g.num_players();
    g.strides.assign(static_cast<size_t>(n), 1);
    long long joint = 1;
    for (int p = n - 1; p >= 0; --p) {
        g.strides[static_cast<size_t>(p)] = static_cast<int>(joint);
        joint *= g.num_actions(p);
        if (joint > 10'000'000)
            throw budget_error("joint action space exceeds 10^7");
    }
    g.num_joint = static_cast<int>(joint);
}

problem_spec load_problem_text(const std::string& text) {
    problem_spec spec;
    game_graph& g = spec.game;

    enum section_t { none, players, atoms, states, init, transitions, goals, prefs };
    section_t section = none;
    bool saw_players = false, saw_states = false, saw_init = false, saw_transitions = false;

    struct raw_transition { int line; std::string from, to; std::vector<std::string> acts; };
    std::vector<raw_transition> raw_trans;
    std::vector<std::pair<int, std::string>> raw_states;  // line, text
    std::string init_name;
    int init_line = 0;
    std::vector<std::pair<int, std::string>> raw_goals;
    std::vector<std::tuple<int, int, int, int>> raw_prefs;  // line, player, better, worse

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t == "players") { section = players; saw_players = true; continue; }
        if (t == "atoms") { section = atoms; continue; }
        if (t == "states") { section = states; saw_states = true; continue; }
        if (t == "init") { section = init; saw_init = true; continue; }
        if (t == "transitions") { section = transitions; saw_transitions = true; continue; }
        if (t == "goals") { section = goals; continue; }
        if (t == "prefs") { section = prefs; continue; }

        switch (section) {
        case none:
            fail_line(lineno, "content before any section header");
        case players: {
            size_t colon = t.find(':');
            if (colon == std::string::npos) fail_line(lineno, "expected 'name: actions...'");
            std::string name = trim(t.substr(0, colon));
            std::vector<std::string> acts = split_ws(t.substr(colon + 1));
            if (name.empty()) fail_line(lineno, "empty player name");
            if (acts.empty()) fail_line(lineno, "player '" + name + "' has no actions");
            for (const auto& existing : g.player_names)
                if (existing == name) fail_line(lineno, "duplicate player '" + name + "'");
            for (size_t i = 0; i < acts.size(); ++i)
                for (size_t j = i + 1; j < acts.size(); ++j)
                    if (acts[i] == acts[j]) fail_line(lineno, "duplicate action '" + acts[i] + "'");
            g.player_names.push_back(name);
            g.actions.push_back(std::move(acts));
            break;
        }
        case atoms: {
            for (const std::string& a : split_ws(t)) {
                if (reserved_word(a)) fail_line(lineno, "atom name '" + a + "' is reserved");
                if (std::find(g.atoms.begin(), g.atoms.end(), a) != g.atoms.end())
                    fail_line(lineno, "duplicate atom '" + a + "'");
                g.atoms.push_back(a);
            }
            break;
        }
        case states:
            raw_states.emplace_back(lineno, t);
            break;
        case init:
            if (!init_name.empty()) fail_line(lineno, "multiple init states");
            init_name = t;
            init_line = lineno;
            break;
        case transitions: {
            size_t lp = t.find('(');
            size_t rp = t.find(')');
            if (lp == std::string::npos || rp == std::string::npos || rp < lp)
                fail_line(lineno, "expected 'state (a1,...,aN) state''");
            raw_transition tr;
            tr.line = lineno;
            tr.from = trim(t.substr(0, lp));
            tr.to = trim(t.substr(rp + 1));
            std::string inner = t.substr(lp + 1, rp - lp - 1);
            std::string cur;
            std::istringstream acts(inner);
            while (std::getline(acts, cur, ',')) tr.acts.push_back(trim(cur));
            if (tr.from.empty() || tr.to.empty()) fail_line(lineno, "missing state name");
            raw_trans.push_back(std::move(tr));
            break;
        }
        case goals: {
            size_t colon = t.find(':');
            if (colon == std::string::npos) fail_line(lineno, "expected 'index: formula'");
            std::string idx = trim(t.substr(0, colon));
            int expect = static_cast<int>(raw_goals.size()) + 1;
            if (idx != std::to_string(expect))
                fail_line(lineno, "goal indices must be consecutive from 1; expected " +
                                      std::to_string(expect));
            raw_goals.emplace_back(lineno, trim(t.substr(colon + 1)));
            break;
        }
        case prefs: {
            std::istringstream ps(t);
            std::string kw;
            int player = 0, better = 0, worse = 0;
            char colon = 0, gt = 0;
            ps >> kw >> player >> colon >> better >> gt >> worse;
            std::string extra;
            if (ps.fail() || kw != "player" || colon != ':' || gt != '>' || (ps >> extra))
                fail_line(lineno, "expected 'player i: a > b'");
            raw_prefs.emplace_back(lineno, player, better, worse);
            break;
        }
        }
    }

    if (!saw_players || g.player_names.empty()) throw input_error("missing players section");
    if (!saw_states) throw input_error("missing states section");
    if (!saw_init || init_name.empty()) throw input_error("missing init section");
    if (!saw_transitions) throw input_error("missing transitions section");

    for (auto& [ln, t] : raw_states) {
        size_t colon = t.find(':');
        if (colon == std::string::npos) fail_line(ln, "expected 'name: [atoms...]'");
        std::string name = trim(t.substr(0, colon));
        if (name.empty()) fail_line(ln, "empty state name");
        if (g.state_by_name(name) >= 0) fail_line(ln, "duplicate state '" + name + "'");
        uint32_t label = 0;
        for (const std::string& a : split_ws(t.substr(colon + 1))) {
            auto it = std::find(g.atoms.begin(), g.atoms.end(), a);
            if (it == g.atoms.end()) fail_line(ln, "unknown atom '" + a + "' in state label");
            label |= 1u << (it - g.atoms.begin());
        }
        g.state_names.push_back(name);
        g.labels.push_back(label);
    }
    if (g.state_names.empty()) throw input_error("states section is empty");

    g.initial = g.state_by_name(init_name);
    if (g.initial < 0) fail_line(init_line, "unknown init state '" + init_name + "'");

    init_strides(g);
    g.trans.assign(static_cast<size_t>(g.num_states()) * static_cast<size_t>(g.num_joint), -1);
    std::vector<char> covered(g.trans.size(), 0);
    for (const auto& tr : raw_trans) {
        int from = g.state_by_name(tr.from);
        if (from < 0) fail_line(tr.line, "unknown state '" + tr.from + "'");
        int to = g.state_by_name(tr.to);
        if (to < 0) fail_line(tr.line, "unknown state '" + tr.to + "'");
        if (static_cast<int>(tr.acts.size()) != g.num_players())
            fail_line(tr.line, "expected " + std::to_string(g.num_players()) + " actions");
        std::vector<int> per_player;
        for (int p = 0; p < g.num_players(); ++p) {
            int a = g.action_by_name(p, tr.acts[static_cast<size_t>(p)]);
            if (a < 0)
                fail_line(tr.line, "unknown action '" + tr.acts[static_cast<size_t>(p)] + "' for player '" +
                                       g.player_names[static_cast<size_t>(p)] + "'");
            per_player.push_back(a);
        }
        size_t slot = static_cast<size_t>(from) * static_cast<size_t>(g.num_joint) +
                      static_cast<size_t>(g.joint_index(per_player));
        if (covered[slot]) fail_line(tr.line, "duplicate transition");
        covered[slot] = 1;
        g.trans[slot] = to;
    }

    for (auto& [ln, text_goal] : raw_goals) {
        (void)ln;
        spec.goal_texts.push_back(text_goal);
    }
    spec.pref_edges.assign(static_cast<size_t>(g.num_players()), {});
    for (auto& [ln, player, better, worse] : raw_prefs) {
        if (player < 1 || player > g.num_players())
            fail_line(ln, "player index out of range");
        if (better < 1 || better > static_cast<int>(raw_goals.size()) || worse < 1 ||
            worse > static_cast<int>(raw_goals.size()))
            fail_line(ln, "goal index out of range");
        spec.pref_edges[static_cast<size_t>(player - 1)].emplace_back(better - 1, worse - 1);
    }

    finish_problem(spec, covered);
    return spec;
}

problem_spec load_problem_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw input_error(std::string("json: ") + e.what());
    }
    problem_spec spec;
    game_graph& g = spec.game;
    try {
        for (const auto& p : j.at("players")) {
            g.player_names.push_back(p.at("name").get<std::string>());
            g.actions.push_back(p.at("actions").get<std::vector<std::string>>());
            if (g.actions.back().empty())
                throw input_error("player '" + g.player_names.back() + "' has no actions");
        }
        if (g.player_names.empty()) throw input_error("players list is empty");
        if (j.contains("atoms")) {
            for (const auto& a : j.at("atoms")) {
                std::string name = a.get<std::string>();
                if (reserved_word(name)) throw input_error("atom name '" + name + "' is reserved");
                g.atoms.push_back(name);
            }
        }
        for (const auto& s : j.at("states")) {
            std::string name = s.at("name").get<std::string>();
            if (g.state_by_name(name) >= 0) throw input_error("duplicate state '" + name + "'");
            uint32_t label = 0;
            for (const auto& a : s.at("label")) {
                auto it = std::find(g.atoms.begin(), g.atoms.end(), a.get<std::string>());
                if (it == g.atoms.end())
                    throw input_error("unknown atom '" + a.get<std::string>() + "' in state label");
                label |= 1u << (it - g.atoms.begin());
            }
            g.state_names.push_back(name);
            g.labels.push_back(label);
        }
        g.initial = g.state_by_name(j.at("init").get<std::string>());
        if (g.initial < 0) throw input_error("unknown init state");

        init_strides(g);
        g.trans.assign(static_cast<size_t>(g.num_states()) * static_cast<size_t>(g.num_joint), -1);
        std::vector<char> covered(g.trans.size(), 0);
        for (const auto& tr : j.at("transitions")) {
            int from = g.state_by_name(tr.at("from").get<std::string>());
            int to = g.state_by_name(tr.at("to").get<std::string>());
            if (from < 0 || to < 0) throw input_error("transition names an unknown state");
            auto acts = tr.at("actions").get<std::vector<std::string>>();
            if (static_cast<int>(acts.size()) != g.num_players())
                throw input_error("transition action count mismatch");
            std::vector<int> per_player;
            for (int p = 0; p < g.num_players(); ++p) {
                int a = g.action_by_name(p, acts[static_cast<size_t>(p)]);
                if (a < 0) throw input_error("transition names an unknown action '" + acts[static_cast<size_t>(p)] + "'");
                per_player.push_back(a);
            }
            size_t slot = static_cast<size_t>(from) * static_cast<size_t>(g.num_joint) +
                          static_cast<size_t>(g.joint_index(per_player));
            if (covered[slot]) throw input_error("duplicate transition");
            covered[slot] = 1;
            g.trans[slot] = to;
        }
        if (j.contains("goals"))
            spec.goal_texts = j.at("goals").get<std::vector<std::string>>();
        spec.pref_edges.assign(static_cast<size_t>(g.num_players()), {});
        if (j.contains("prefs")) {
            for (const auto& e : j.at("prefs")) {
                int player = e.at("player").get<int>();
                int better = e.at("better").get<int>();
                int worse = e.at("worse").get<int>();
                if (player < 1 || player > g.num_players())
                    throw input_error("preference names a player out of range");
                if (better < 1 || better > spec.num_goals() || worse < 1 || worse > spec.num_goals())
                    throw input_error("preference names a goal out of range");
                spec.pref_edges[static_cast<size_t>(player - 1)].emplace_back(better - 1, worse - 1);
            }
        }
        finish_problem(spec, covered);
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("json: ") + e.what());
    }
    return spec;
}

} // namespace

problem_spec load_problem(const std::string& text) {
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c == '{') return load_problem_json(text);
        break;
    }
    return load_problem_text(text);
}

void finalize_problem(problem_spec& spec) {
    game_graph& g = spec.game;
    init_strides(g);
    size_t need = static_cast<size_t>(g.num_states()) * static_cast<size_t>(g.num_joint);
    if (g.trans.size() != need) throw input_error("transition table size mismatch");
    for (int t : g.trans)
        if (t < 0 || t >= g.num_states()) throw input_error("transition target out of range");
    if (spec.pref_edges.size() != static_cast<size_t>(g.num_players()))
        spec.pref_edges.resize(static_cast<size_t>(g.num_players()));
    std::vector<char> covered(need, 1);
    finish_problem(spec, covered);
}

std::string save_problem_text(const problem_spec& spec) {
    const game_graph& g = spec.game;
    std::ostringstream out;
    out << "players\n";
    for (int p = 0; p < g.num_players(); ++p) {
        out << "  " << g.player_names[static_cast<size_t>(p)] << ":";
        for (const auto& a : g.actions[static_cast<size_t>(p)]) out << ' ' << a;
        out << '\n';
    }
    out << "atoms\n ";
    for (const auto& a : g.atoms) out << ' ' << a;
    out << '\n';
    out << "states\n";
    for (int s = 0; s < g.num_states(); ++s) {
        out << "  " << g.state_names[static_cast<size_t>(s)] << ":";
        for (size_t i = 0; i < g.atoms.size(); ++i)
            if ((g.labels[static_cast<size_t>(s)] >> i) & 1u) out << ' ' << g.atoms[i];
        out << '\n';
    }
    out << "init\n  " << g.state_names[static_cast<size_t>(g.initial)] << '\n';
    out << "transitions\n";
    for (int s = 0; s < g.num_states(); ++s)
        for (int joint = 0; joint < g.num_joint; ++joint)
            out << "  " << g.state_names[static_cast<size_t>(s)] << ' ' << g.joint_name(joint) << ' '
                << g.state_names[static_cast<size_t>(g.step(s, joint))] << '\n';
    out << "goals\n";
    for (int k = 0; k < spec.num_goals(); ++k)
        out << "  " << (k + 1) << ": " << spec.goal_texts[static_cast<size_t>(k)] << '\n';
    out << "prefs\n";
    for (int p = 0; p < g.num_players(); ++p)
        for (auto [better, worse] : spec.pref_edges[static_cast<size_t>(p)])
            out << "  player " << (p + 1) << ": " << (better + 1) << " > " << (worse + 1) << '\n';
    return out.str();
}

std::string save_problem_json(const problem_spec& spec) {
    const game_graph& g = spec.game;
    nlohmann::json j;
    j["players"] = nlohmann::json::array();
    for (int p = 0; p < g.num_players(); ++p)
        j["players"].push_back({{"name", g.player_names[static_cast<size_t>(p)]},
                                {"actions", g.actions[static_cast<size_t>(p)]}});
    j["atoms"] = g.atoms;
    j["states"] = nlohmann::json::array();
    for (int s = 0; s < g.num_states(); ++s) {
        std::vector<std::string> label;
        for (size_t i = 0; i < g.atoms.size(); ++i)
            if ((g.labels[static_cast<size_t>(s)] >> i) & 1u) label.push_back(g.atoms[i]);
        j["states"].push_back({{"name", g.state_names[static_cast<size_t>(s)]}, {"label", label}});
    }
    j["init"] = g.state_names[static_cast<size_t>(g.initial)];
    j["transitions"] = nlohmann::json::array();
    for (int s = 0; s < g.num_states(); ++s)
        for (int joint = 0; joint < g.num_joint; ++joint) {
            std::vector<std::string> acts;
            std::vector<int> per_player = g.split_joint(joint);
            for (int p = 0; p < g.num_players(); ++p)
                acts.push_back(g.actions[static_cast<size_t>(p)][static_cast<size_t>(per_player[static_cast<size_t>(p)])]);
            j["transitions"].push_back({{"from", g.state_names[static_cast<size_t>(s)]},
                                        {"actions", acts},
                                        {"to", g.state_names[static_cast<size_t>(g.step(s, joint))]}});
        }
    j["goals"] = spec.goal_texts;
    j["prefs"] = nlohmann::json::array();
    for (int p = 0; p < g.num_players(); ++p)
        for (auto [better, worse] : spec.pref_edges[static_cast<size_t>(p)])
            j["prefs"].push_back({{"player", p + 1}, {"better", better + 1}, {"worse", worse + 1}});
    return j.dump(2) + "\n";
}

} // namespace gsyn
