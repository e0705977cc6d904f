#include "popctl/controller.hh"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include <json.hpp>

#include "popctl/errors.hh"

namespace popctl {

using json = nlohmann::json;

Controller::Step Controller::step(std::uint32_t node, const TransferGraph& observed) const {
    if (node >= nodes.size()) throw ContractViolation("controller node " + std::to_string(node) + " out of range");
    if (is_goal(node)) return Step{std::nullopt, node};
    auto it = advance.find({node, observed});
    if (it == advance.end())
        throw ContractViolation("observed graph is not a legal response at controller node " + std::to_string(node));
    return Step{nodes[node].action, it->second};
}

Controller extract_controller(const Nfa& nfa, const ParityArena& arena, const ParitySolution& sol) {
    if (sol.winner[arena.initial] != Player::one) throw ContractViolation("initial node is not won by player one");
    Controller c;
    c.nfa_hash = nfa_hash(nfa);
    std::unordered_map<NodeId, std::uint32_t> id;
    std::deque<NodeId> queue;
    auto visit = [&](NodeId v) -> std::uint32_t {
        auto [it, fresh] = id.emplace(v, static_cast<std::uint32_t>(c.nodes.size()));
        if (fresh) {
            const PgNode& n = arena.nodes[v];
            c.nodes.push_back(ControllerNode{n.support, n.list, std::nullopt});
            queue.push_back(v);
        }
        return it->second;
    };
    c.initial = visit(arena.initial);

    const State f = nfa.target();
    TransferGraph g;
    while (!queue.empty()) {
        NodeId v = queue.front();
        queue.pop_front();
        const PgNode& n = arena.nodes[v];
        if (n.kind == PgNode::Kind::win) continue;
        std::uint32_t self = id.at(v);
        std::int32_t k = sol.strategy[v];
        if (k < 0) throw ContractViolation("no winning move recorded for arena node " + std::to_string(v));
        NodeId respond = arena.game.out(v)[static_cast<std::size_t>(k)].target;
        Letter a = arena.nodes[respond].letter;
        c.nodes[self].action = a;

        CompatibleGraphs graphs(nfa, n.support, a);
        while (graphs.next(g)) {
            Support next = g.im();
            NodeId target = arena.win;
            if (next.intersects(arena.dead)) {
                target = arena.lose;
            } else if (next != Support::singleton(f)) {
                ListUpdate up = update_list(n.list, g);
                target = arena.index.at(node_key(next, up.list));
            }
            if (sol.winner[target] != Player::one) throw ContractViolation("controller escapes the winning region");
            std::uint32_t to = visit(target);
            c.advance.emplace(std::make_pair(self, g), to);
        }
    }
    return c;
}

Decision decide(const Nfa& input, std::size_t node_budget) {
    Decision d;
    d.nfa = normalize_target_sink(input);
    ParityArena arena = build_arena(d.nfa, node_budget);
    d.stats = arena.stats;
    ParitySolution sol = solve_parity(arena.game);
    d.winner = sol.winner[arena.initial];
    if (d.winner == Player::one) d.controller = extract_controller(d.nfa, arena, sol);
    return d;
}

namespace {

json names_of(Support s, const Nfa& nfa) {
    json out = json::array();
    for (State q : s) out.push_back(nfa.state_name(q));
    return out;
}

json edges_of(const TransferGraph& g, const Nfa& nfa) {
    json out = json::array();
    for (auto [q, r] : g.edges()) out.push_back(json::array({nfa.state_name(q), nfa.state_name(r)}));
    return out;
}

State state_by_name(const Nfa& nfa, const json& v) {
    if (!v.is_string()) throw FormatError("state name must be a string");
    auto q = nfa.find_state(v.get<std::string>());
    if (!q) throw FormatError("unknown state '" + v.get<std::string>() + "'");
    return *q;
}

TransferGraph graph_from(const json& v, const Nfa& nfa) {
    if (!v.is_array()) throw FormatError("graph must be an array of edges");
    TransferGraph g(nfa.num_states());
    for (const auto& e : v) {
        if (!e.is_array() || e.size() != 2) throw FormatError("graph edge must be a [src, dst] pair");
        g.add_edge(state_by_name(nfa, e[0]), state_by_name(nfa, e[1]));
    }
    return g;
}

const json& field(const json& obj, const char* name) {
    if (!obj.is_object() || !obj.contains(name)) throw FormatError(std::string("missing field '") + name + "'");
    return obj.at(name);
}

std::uint32_t index_field(const json& obj, const char* name, std::size_t bound) {
    const json& v = field(obj, name);
    if (!v.is_number_unsigned() || v.get<std::uint64_t>() >= bound)
        throw FormatError(std::string("field '") + name + "' is not a valid node id");
    return v.get<std::uint32_t>();
}

}  // namespace

std::string serialize_controller(const Controller& c, const Nfa& nfa) {
    json doc;
    doc["nfa_hash"] = c.nfa_hash;
    doc["initial"] = c.initial;
    json nodes = json::array();
    for (std::uint32_t i = 0; i < c.nodes.size(); ++i) {
        const ControllerNode& n = c.nodes[i];
        json list = json::array();
        for (const auto& h : n.list) list.push_back(edges_of(h, nfa));
        json node;
        node["id"] = i;
        node["support"] = names_of(n.support, nfa);
        node["list"] = std::move(list);
        node["action"] = n.action ? json(nfa.letter_name(*n.action)) : json(nullptr);
        nodes.push_back(std::move(node));
    }
    doc["nodes"] = std::move(nodes);

    std::vector<std::tuple<std::uint32_t, std::vector<std::pair<State, State>>, std::uint32_t>> rows;
    rows.reserve(c.advance.size());
    for (const auto& [key, to] : c.advance) rows.emplace_back(key.first, key.second.edges(), to);
    std::sort(rows.begin(), rows.end());
    json edges = json::array();
    for (const auto& [from, graph, to] : rows) {
        json pairs = json::array();
        for (auto [q, r] : graph) pairs.push_back(json::array({nfa.state_name(q), nfa.state_name(r)}));
        edges.push_back(json{{"from", from}, {"graph", std::move(pairs)}, {"to", to}});
    }
    doc["edges"] = std::move(edges);
    return doc.dump(1) + "\n";
}

Controller deserialize_controller(const std::string& text, const Nfa& nfa) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("controller document is not valid JSON: ") + e.what());
    }
    Controller c;
    const json& hash = field(doc, "nfa_hash");
    if (!hash.is_string()) throw FormatError("nfa_hash must be a string");
    c.nfa_hash = hash.get<std::string>();
    if (c.nfa_hash != nfa_hash(nfa)) throw FormatError("controller was synthesized for a different automaton");

    const json& nodes = field(doc, "nodes");
    if (!nodes.is_array() || nodes.empty()) throw FormatError("nodes must be a nonempty array");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const json& n = nodes[i];
        if (index_field(n, "id", nodes.size()) != i) throw FormatError("node ids must be 0, 1, 2, ... in order");
        ControllerNode node;
        const json& support = field(n, "support");
        if (!support.is_array()) throw FormatError("support must be an array");
        for (const auto& s : support) node.support.insert(state_by_name(nfa, s));
        const json& list = field(n, "list");
        if (!list.is_array()) throw FormatError("list must be an array");
        for (const auto& h : list) node.list.push_back(graph_from(h, nfa));
        const json& action = field(n, "action");
        if (!action.is_null()) {
            if (!action.is_string()) throw FormatError("action must be a letter name or null");
            auto a = nfa.find_letter(action.get<std::string>());
            if (!a) throw FormatError("unknown action '" + action.get<std::string>() + "'");
            node.action = *a;
        }
        c.nodes.push_back(std::move(node));
    }
    c.initial = index_field(doc, "initial", c.nodes.size());

    const json& edges = field(doc, "edges");
    if (!edges.is_array()) throw FormatError("edges must be an array");
    for (const auto& e : edges) {
        std::uint32_t from = index_field(e, "from", c.nodes.size());
        std::uint32_t to = index_field(e, "to", c.nodes.size());
        c.advance.emplace(std::make_pair(from, graph_from(field(e, "graph"), nfa)), to);
    }
    return c;
}

}  // namespace popctl
