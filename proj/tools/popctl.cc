// popctl: decide, simulate and play population control instances from the command line.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "popctl/controller.hh"
#include "popctl/errors.hh"
#include "popctl/gadgets.hh"
#include "popctl/http_api.hh"
#include "popctl/nfa.hh"
#include "popctl/popsim.hh"
#include "popctl/session.hh"
#include "popctl/support.hh"

using namespace popctl;

namespace {

// exit codes
constexpr int exit_yes = 0;
constexpr int exit_no = 1;
constexpr int exit_error = 2;
constexpr int exit_inconclusive = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

Nfa load(const std::string& path) {
    try {
        return parse_nfa(read_file(path));
    } catch (const ParseError& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

void print_stats(const ArenaStats& s) {
    std::cout << "arena: " << s.choose_nodes << " choice nodes, " << s.respond_nodes << " response nodes, " << s.edges
              << " edges\n";
    std::cout << "priorities:";
    for (auto [p, n] : s.priority_histogram) std::cout << ' ' << p << 'x' << n;
    std::cout << '\n';
}

std::string letters(const Nfa& nfa, const std::vector<Letter>& w) {
    std::string out;
    for (Letter a : w) out += (out.empty() ? "" : " ") + nfa.letter_name(a);
    return out;
}

struct Options {
    std::string file;
    std::string strategy;
    std::string scripted;
    std::string adversary = "even";
    std::optional<std::uint64_t> seed;
    std::uint32_t m = 1;
    std::uint32_t m_max = 10;
    std::size_t budget = 10'000;
    std::size_t node_budget = default_node_budget;
    std::size_t max_configs = ExactBudget{}.max_configs;
    bool trace = false;
    std::string gen_spec;
    std::string output;
    std::string host = "127.0.0.1";
    int port = 8080;
    std::string ui;
};

int cmd_decide(const Options& o) {
    Nfa nfa = load(o.file);
    Decision d = decide(nfa, o.node_budget);
    std::cout << (d.winner == Player::one ? "YES" : "NO") << '\n';
    print_stats(d.stats);
    if (d.controller) {
        std::cout << "controller: " << d.controller->nodes.size() << " memory nodes\n";
        if (!o.strategy.empty()) write_file(o.strategy, serialize_controller(*d.controller, d.nfa));
    } else if (!o.strategy.empty()) {
        std::cerr << "no controller exists, nothing written to " << o.strategy << '\n';
    }
    return d.winner == Player::one ? exit_yes : exit_no;
}

int cmd_support(const Options& o) {
    Nfa nfa = load(o.file);
    SupportGameResult r = solve_support_game(nfa);
    if (r.winner == Player::one) {
        std::cout << "Player1\nwitness: " << letters(nfa, r.witness) << '\n';
        return exit_yes;
    }
    std::cout << "Player2\nsafe supports:";
    for (Support s : r.safe_supports) {
        std::cout << " {";
        bool first = true;
        for (State q : s) {
            std::cout << (first ? "" : ",") << nfa.state_name(q);
            first = false;
        }
        std::cout << '}';
    }
    std::cout << '\n';
    try {
        if (decide(nfa, o.node_budget).winner == Player::one)
            std::cout << "NOTE: every finite population is still controllable (decide = YES)\n";
    } catch (const BudgetExceeded&) {
    }
    return exit_no;
}

int cmd_simulate(const Options& o) {
    Nfa nfa = normalize_target_sink(load(o.file));
    AdversaryPolicy adv;
    if (o.adversary == "even") {
        adv.kind = AdversaryPolicy::Kind::even;
    } else if (o.adversary == "oneoff") {
        adv.kind = AdversaryPolicy::Kind::one_off;
    } else if (o.adversary == "random") {
        if (!o.seed) throw ValidationError("--adversary random requires --seed");
        adv.kind = AdversaryPolicy::Kind::random;
        adv.seed = *o.seed;
    } else {
        throw ValidationError("unknown adversary '" + o.adversary + "' (even, oneoff, random)");
    }

    std::optional<Controller> controller;
    std::unique_ptr<Policy> policy;
    if (!o.scripted.empty()) {
        if (o.scripted == "time")
            policy = scripted_time_policy(nfa);
        else if (o.scripted == "split")
            policy = scripted_split_policy(nfa);
        else
            throw ValidationError("unknown scripted strategy '" + o.scripted + "' (time, split)");
    } else {
        if (!o.strategy.empty()) {
            controller = deserialize_controller(read_file(o.strategy), nfa);
        } else {
            Decision d = decide(nfa, o.node_budget);
            if (d.winner != Player::one) {
                std::cout << "NO controller exists; nothing to simulate\n";
                return exit_no;
            }
            controller = std::move(d.controller);
        }
        policy = std::make_unique<ControllerPolicy>(*controller);
    }

    auto adversary = make_adversary(adv);
    RunOutcome out = run(nfa, *policy, o.m, *adversary, o.budget, o.trace);
    if (o.trace) std::cout << format_trace(nfa, out.trace);
    switch (out.status) {
    case RunStatus::won:
        std::cout << "won in " << out.steps << " steps\n";
        return exit_yes;
    case RunStatus::budget_exhausted:
        std::cout << "inconclusive: budget of " << o.budget << " steps exhausted\n";
        return exit_inconclusive;
    case RunStatus::lost:
        std::cout << "lost after " << out.steps << " steps (an agent cannot reach the target)\n";
        return exit_no;
    case RunStatus::stuck:
        std::cout << "stuck after " << out.steps << " steps (strategy has no move)\n";
        return exit_no;
    }
    return exit_error;
}

int cmd_exact(const Options& o) {
    Nfa nfa = load(o.file);
    ExactBudget b;
    b.max_configs = o.max_configs;
    ExactResult r = exact_solve(nfa, o.m, b);
    std::cout << (r.winner == Player::one ? "Player1" : "Player2") << '\n';
    if (r.sync_time) std::cout << "worst-case synchronization time: " << *r.sync_time << '\n';
    std::cout << "configurations: " << r.configs << '\n';
    return r.winner == Player::one ? exit_yes : exit_no;
}

int cmd_cutoff(const Options& o) {
    Nfa nfa = load(o.file);
    ExactBudget b;
    b.max_configs = o.max_configs;
    CutoffResult r = find_cutoff(nfa, o.m_max, b);
    switch (r.kind) {
    case CutoffResult::Kind::cutoff: std::cout << "cutoff = " << r.value << '\n'; return exit_yes;
    case CutoffResult::Kind::none_up_to: std::cout << "no cutoff up to " << r.value << '\n'; return exit_yes;
    case CutoffResult::Kind::partial:
        std::cout << "undecided: player one wins every m <= " << r.value << "; " << r.note << '\n';
        return exit_error;
    }
    return exit_error;
}

int cmd_gen(const Options& o) {
    std::string text = serialize_nfa(generate(parse_gadget_spec(o.gen_spec)));
    if (o.output.empty())
        std::cout << text;
    else
        write_file(o.output, text);
    return exit_yes;
}

int cmd_serve(const Options& o) {
    SessionManager sessions(64, o.budget, o.node_budget);
    std::cerr << "listening on http://" << o.host << ':' << o.port << '\n';
    serve(sessions, o.host, o.port, o.ui);
    return exit_yes;
}

void print_view(const SessionView& v) {
    std::cout << "step " << v.step << " [" << to_string(v.status) << "]";
    for (const auto& q : v.states)
        if (v.counts.at(q) > 0) std::cout << ' ' << q << ':' << v.counts.at(q);
    std::cout << '\n';
    if (v.proposed_action) std::cout << "controller plays " << *v.proposed_action << '\n';
}

int cmd_play(const Options& o) {
    SessionManager sessions(1, o.budget, o.node_budget);
    SessionView v = sessions.create(read_file(o.file), o.m);
    std::cout << "you resolve nondeterminism; enter counts per successor, 'u' to undo, 'q' to quit\n";
    std::string line;
    while (true) {
        print_view(v);
        if (v.status != SessionStatus::running) break;
        NamedSplit split;
        bool undo = false;
        for (const auto& [q, succ] : v.legal_successors) {
            std::uint32_t here = v.counts.at(q);
            if (succ.size() == 1) {
                split[q][succ[0]] = here;
                continue;
            }
            std::cout << "  " << q << " (" << here << ") ->";
            for (const auto& r : succ) std::cout << ' ' << r;
            std::cout << ": " << std::flush;
            if (!std::getline(std::cin, line) || line == "q") return exit_yes;
            if (line == "u") {
                undo = true;
                break;
            }
            std::istringstream in(line);
            for (const auto& r : succ) {
                std::uint32_t k = 0;
                in >> k;
                split[q][r] = k;
            }
        }
        try {
            v = undo ? sessions.undo(v.id) : sessions.move(v.id, split);
        } catch (const ValidationError& e) {
            std::cout << "rejected: " << e.what() << '\n';
        }
    }
    return v.status == SessionStatus::won ? exit_yes : exit_inconclusive;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Controller synthesis for populations of NFA agents"};
    app.require_subcommand(1);
    Options o;

    auto* decide_cmd = app.add_subcommand("decide", "Decide whether every population size is controllable");
    decide_cmd->add_option("file", o.file, "NFA file")->required();
    decide_cmd->add_option("--strategy", o.strategy, "Write the controller document here");
    decide_cmd->add_option("--node-budget", o.node_budget, "Parity arena node budget");

    auto* support_cmd = app.add_subcommand("support", "Solve the support (infinite population) game");
    support_cmd->add_option("file", o.file, "NFA file")->required();
    support_cmd->add_option("--node-budget", o.node_budget, "Node budget for the contrast check");

    auto* sim_cmd = app.add_subcommand("simulate", "Play a controller against an adversary");
    sim_cmd->add_option("file", o.file, "NFA file")->required();
    sim_cmd->add_option("-m", o.m, "Number of agents")->required();
    sim_cmd->add_option("--adversary", o.adversary, "even, oneoff or random");
    sim_cmd->add_option("--seed", o.seed, "Seed for the random adversary");
    sim_cmd->add_option("--budget", o.budget, "Maximum number of steps");
    auto* strat = sim_cmd->add_option("--strategy", o.strategy, "Controller document (default: synthesize)");
    sim_cmd->add_option("--scripted", o.scripted, "Hand-written strategy: time or split")->excludes(strat);
    sim_cmd->add_option("--node-budget", o.node_budget, "Parity arena node budget");
    sim_cmd->add_flag("--trace", o.trace, "Print one line per step");

    auto* exact_cmd = app.add_subcommand("exact", "Solve the m-population game exactly");
    exact_cmd->add_option("file", o.file, "NFA file")->required();
    exact_cmd->add_option("-m", o.m, "Number of agents")->required();
    exact_cmd->add_option("--max-configs", o.max_configs, "Configuration budget");

    auto* cutoff_cmd = app.add_subcommand("cutoff", "Find the first population size player one loses");
    cutoff_cmd->add_option("file", o.file, "NFA file")->required();
    cutoff_cmd->add_option("--max", o.m_max, "Largest population size to try");
    cutoff_cmd->add_option("--max-configs", o.max_configs, "Configuration budget per size");

    auto* gen_cmd = app.add_subcommand("gen", "Generate a gadget, e.g. split, linear:3, counter:2, nested:2");
    gen_cmd->add_option("spec", o.gen_spec, "kind[:parameter]")->required();
    gen_cmd->add_option("-o", o.output, "Output file (default: stdout)");

    auto* serve_cmd = app.add_subcommand("serve", "Serve the session API over HTTP");
    serve_cmd->add_option("--port", o.port, "Port");
    serve_cmd->add_option("--host", o.host, "Address to bind");
    serve_cmd->add_option("--ui", o.ui, "Directory with the browser client bundle");
    serve_cmd->add_option("--budget", o.budget, "Step budget per session");
    serve_cmd->add_option("--node-budget", o.node_budget, "Parity arena node budget");

    auto* play_cmd = app.add_subcommand("play", "Play against the controller in the terminal");
    play_cmd->add_option("file", o.file, "NFA file")->required();
    play_cmd->add_option("-m", o.m, "Number of agents")->required();
    play_cmd->add_option("--budget", o.budget, "Step budget");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : exit_error;
    }

    try {
        if (*decide_cmd) return cmd_decide(o);
        if (*support_cmd) return cmd_support(o);
        if (*sim_cmd) return cmd_simulate(o);
        if (*exact_cmd) return cmd_exact(o);
        if (*cutoff_cmd) return cmd_cutoff(o);
        if (*gen_cmd) return cmd_gen(o);
        if (*serve_cmd) return cmd_serve(o);
        if (*play_cmd) return cmd_play(o);
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << " (explored " << e.explored() << ")\n";
        return exit_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_error;
    }
    return exit_error;
}
