#include "gsyn/sim.hpp"
#include "gsyn/errors.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace gsyn {

namespace {

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += '|';
        out += parts[i];
    }
    return out;
}

std::string atom_set(const game_graph& g, uint32_t mask) {
    std::vector<std::string> parts;
    for (size_t i = 0; i < g.atoms.size(); ++i)
        if (mask & (1u << i)) parts.push_back(g.atoms[i]);
    return join(parts);
}

std::string goal_set(uint32_t mask, int num_goals) {
    std::vector<std::string> parts;
    for (int k = 0; k < num_goals; ++k)
        if (mask & (1u << k)) parts.push_back(std::to_string(k + 1));
    return join(parts);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    size_t pos = 0;
    while (true) {
        size_t comma = line.find(',', pos);
        if (comma == std::string::npos) {
            cells.push_back(line.substr(pos));
            return cells;
        }
        cells.push_back(line.substr(pos, comma - pos));
        pos = comma + 1;
    }
}

} // namespace

sim_trace simulate(const product_game& product, const admissible_solution& sol, int horizon) {
    if (horizon < 1) throw input_error("simulate: horizon must be at least 1");
    const game_graph& g = product.spec.game;
    const int players = product.num_players();

    sim_trace t;
    std::vector<char> seen(static_cast<size_t>(product.num_states()), 0);
    int v = product.initial;
    int step = 0;
    while (true) {
        trace_row row;
        row.step = step;
        row.game_state = g.state_names[static_cast<size_t>(product.state_game[static_cast<size_t>(v)])];
        row.label = atom_set(g, product.label(v));
        row.satisfied = goal_set(product.satisfied[static_cast<size_t>(v)],
                                 static_cast<int>(product.automata.size()));
        for (int p = 0; p < players; ++p) row.rank.push_back(rank_of(product, p, v));

        std::vector<int> coalv;
        for (int p = 0; p < players; ++p)
            coalv.push_back(sol.plan.coalv[static_cast<size_t>(p)][static_cast<size_t>(v)]);

        bool revisit = seen[static_cast<size_t>(v)] != 0;
        seen[static_cast<size_t>(v)] = 1;
        if (revisit || step == horizon) {
            t.rows.push_back(std::move(row));
            t.states.push_back(v);
            t.coalv_row.push_back(std::move(coalv));
            t.lasso = revisit;
            return t;
        }

        std::vector<int> members = sol.coalition_members(product, v);
        std::vector<std::string> member_names;
        for (int m : members) member_names.push_back(std::to_string(m + 1));
        row.coalition = join(member_names);

        std::vector<int> actions;
        std::vector<std::string> action_names;
        for (int p = 0; p < players; ++p) {
            int a = sol.respond(product, v, p);
            actions.push_back(a);
            action_names.push_back(g.actions[static_cast<size_t>(p)][static_cast<size_t>(a)]);
        }
        row.joint_action = join(action_names);

        t.rows.push_back(std::move(row));
        t.states.push_back(v);
        t.coalv_row.push_back(std::move(coalv));

        v = product.step(v, g.joint_index(actions));
        ++step;
    }
}

std::string render_trace(const sim_trace& t, trace_format format) {
    std::ostringstream out;
    if (format == trace_format::csv) {
        out << "step,game_state,label,coalition,joint_action,satisfied";
        size_t players = t.rows.empty() ? 0 : t.rows.front().rank.size();
        for (size_t p = 0; p < players; ++p) out << ",rank_" << (p + 1);
        out << '\n';
        for (const trace_row& row : t.rows) {
            out << row.step << ',' << row.game_state << ',' << row.label << ',' << row.coalition
                << ',' << row.joint_action << ',' << row.satisfied;
            for (int r : row.rank) out << ',' << r;
            out << '\n';
        }
        return out.str();
    }

    out << "trace (" << t.rows.size() << " rows" << (t.lasso ? ", lasso" : "") << ")\n";
    for (size_t i = 0; i < t.rows.size(); ++i) {
        const trace_row& row = t.rows[i];
        out << "step " << row.step << ": " << row.game_state;
        out << "  label {" << row.label << "}";
        out << "  satisfied {" << row.satisfied << "}";
        out << "  ranks [";
        for (size_t p = 0; p < row.rank.size(); ++p) out << (p ? "," : "") << row.rank[p];
        out << "]";
        if (i < t.coalv_row.size()) {
            out << "  guarantees [";
            for (size_t p = 0; p < t.coalv_row[i].size(); ++p)
                out << (p ? "," : "") << t.coalv_row[i][p];
            out << "]";
        }
        if (!row.coalition.empty())
            out << "  coalition {" << row.coalition << "} plays (" << row.joint_action << ")";
        out << '\n';
    }
    return out.str();
}

sim_trace parse_trace_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    do {
        if (!std::getline(in, line)) throw input_error("trace csv: empty input");
        ++line_no;
    } while (line.empty() || line[0] == '#');
    std::vector<std::string> header = split_csv_line(line);
    const std::vector<std::string> base = {"step", "game_state", "label",
                                           "coalition", "joint_action", "satisfied"};
    if (header.size() < base.size()) throw input_error("trace csv: bad header");
    for (size_t i = 0; i < base.size(); ++i)
        if (header[i] != base[i]) throw input_error("trace csv: bad header column " + header[i]);
    size_t players = header.size() - base.size();
    for (size_t p = 0; p < players; ++p)
        if (header[base.size() + p] != "rank_" + std::to_string(p + 1))
            throw input_error("trace csv: bad rank column " + header[base.size() + p]);

    sim_trace t;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != header.size())
            throw input_error("trace csv line " + std::to_string(line_no) + ": expected " +
                              std::to_string(header.size()) + " cells, got " +
                              std::to_string(cells.size()));
        trace_row row;
        try {
            row.step = std::stoi(cells[0]);
            for (size_t p = 0; p < players; ++p)
                row.rank.push_back(std::stoi(cells[base.size() + p]));
        } catch (const std::exception&) {
            throw input_error("trace csv line " + std::to_string(line_no) + ": bad number");
        }
        row.game_state = cells[1];
        row.label = cells[2];
        row.coalition = cells[3];
        row.joint_action = cells[4];
        row.satisfied = cells[5];
        t.rows.push_back(std::move(row));
    }
    return t;
}

} // namespace gsyn
