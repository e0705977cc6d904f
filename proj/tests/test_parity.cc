#include <catch_amalgamated.hpp>

#include <random>

#include "fixtures.hh"
#include "popctl/arena.hh"
#include "popctl/capacity.hh"
#include "popctl/controller.hh"
#include "popctl/errors.hh"
#include "popctl/gadgets.hh"
#include "popctl/parity_game.hh"
#include "popctl/support.hh"
#include "popctl/tracking_list.hh"

using namespace popctl;

namespace {

ParityGame self_loop(std::uint32_t p) {
    ParityGame g;
    g.add_node(Player::one);
    g.add_edge(0, 0, p);
    return g;
}

// Copy of g where every node won by its owner keeps only its strategy edge.
ParityGame restrict_to_strategy(const ParityGame& g, const ParitySolution& s, Player who) {
    ParityGame out;
    for (NodeId v = 0; v < g.num_nodes(); ++v) out.add_node(g.owner(v));
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
        if (g.owner(v) == who && s.winner[v] == who) {
            const auto& e = g.out(v)[s.strategy[v]];
            out.add_edge(v, e.target, e.priority);
        } else {
            for (const auto& e : g.out(v)) out.add_edge(v, e.target, e.priority);
        }
    }
    return out;
}

}  // namespace

TEST_CASE("tiny parity games") {
    CHECK(solve_parity(self_loop(1)).winner[0] == Player::one);
    CHECK(solve_parity(self_loop(2)).winner[0] == Player::two);

    // player two at node 1 can stay on the priority-4 loop forever
    ParityGame g;
    g.add_node(Player::one);
    g.add_node(Player::two);
    g.add_edge(0, 1, 3);
    g.add_edge(1, 0, 3);
    g.add_edge(1, 1, 4);
    auto s = solve_parity(g);
    CHECK(s.winner[0] == Player::two);
    CHECK(s.winner[1] == Player::two);
    CHECK(g.out(1)[s.strategy[1]].priority == 4);

    ParityGame dead;
    dead.add_node(Player::one);
    CHECK_THROWS_AS(solve_parity(dead), ContractViolation);
}

TEST_CASE("solver agrees with strategy enumeration") {
    std::mt19937_64 rng(1234);
    for (int i = 0; i < 300; ++i) {
        auto g = fixtures::random_game(rng, 1 + rng() % 7, 3, 1 + rng() % 5);
        auto s = solve_parity(g);
        CHECK(s.winner == fixtures::brute_force_parity(g));

        for (NodeId v = 0; v < g.num_nodes(); ++v) {
            if (s.winner[v] == g.owner(v)) {
                REQUIRE(s.strategy[v] >= 0);
                REQUIRE(static_cast<std::size_t>(s.strategy[v]) < g.out(v).size());
                CHECK(s.winner[g.out(v)[s.strategy[v]].target] == s.winner[v]);
            } else {
                CHECK(s.strategy[v] == -1);
            }
        }
        // fixing either player's strategy must not change the regions
        for (Player who : {Player::one, Player::two})
            CHECK(fixtures::brute_force_parity(restrict_to_strategy(g, s, who)) == s.winner);
    }
}

TEST_CASE("larger random games stay consistent") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 50; ++i) {
        auto g = fixtures::random_game(rng, 200, 3, 8);
        auto s = solve_parity(g);
        for (NodeId v = 0; v < g.num_nodes(); ++v) {
            if (s.winner[v] == g.owner(v)) {
                CHECK(s.winner[g.out(v)[s.strategy[v]].target] == s.winner[v]);
            } else {
                for (const auto& e : g.out(v)) CHECK(s.winner[e.target] == s.winner[v]);
            }
        }
    }
}

TEST_CASE("arena of the splitting gadget") {
    Nfa n = generate({GadgetKind::split, 0});
    auto arena = build_arena(n);
    const auto& init = arena.game.out(arena.initial);
    REQUIRE(init.size() == n.num_letters());
    NodeId respond_delta = init[*n.find_letter("delta")].target;
    CHECK(arena.nodes[respond_delta].kind == PgNode::Kind::respond);
    CHECK(arena.game.out(respond_delta).size() == 3);
    for (const auto& e : init) CHECK(e.priority == neutral_priority(n.num_states()));

    CHECK(arena.nodes[arena.win].kind == PgNode::Kind::win);
    REQUIRE(arena.game.out(arena.win).size() == 1);
    CHECK(arena.game.out(arena.win)[0].target == arena.win);
    CHECK(arena.game.out(arena.win)[0].priority == 1);

    std::set<NodeKey> keys;
    for (NodeId v = 0; v < arena.nodes.size(); ++v)
        if (arena.nodes[v].kind == PgNode::Kind::choose)
            CHECK(keys.insert(node_key(arena.nodes[v].support, arena.nodes[v].list)).second);
    CHECK(arena.stats.choose_nodes == keys.size());
}

TEST_CASE("one deterministic step reaches the win node") {
    Nfa n = parse_nfa("states: q0 f\ninit: q0\ntarget: f\nalphabet: go\nq0 go f\nf go f\n");
    auto arena = build_arena(n);
    NodeId r = arena.game.out(arena.initial)[0].target;
    REQUIRE(arena.game.out(r).size() == 1);
    CHECK(arena.game.out(r)[0].target == arena.win);
    CHECK(arena.game.out(r)[0].priority == 1);
}

TEST_CASE("supports touching a trap state go to the lose node") {
    // go may strand an agent in d, which never reaches f
    Nfa n = parse_nfa("states: q0 d f\ninit: q0\ntarget: f\nalphabet: go stay\n"
                      "q0 go f\nq0 go d\nq0 stay q0\nd go d\nd stay d\nf go f\nf stay f\n");
    auto arena = build_arena(n);
    CHECK(arena.dead == StateSet::singleton(*n.find_state("d")));
    CHECK(arena.nodes[arena.lose].kind == PgNode::Kind::lose);
    NodeId r = arena.game.out(arena.initial)[*n.find_letter("go")].target;
    // responses {f}, {d} and {d, f}; the last two share one deduplicated edge
    const auto& out = arena.game.out(r);
    REQUIRE(out.size() == 2);
    CHECK(out[0].target != out[1].target);
    for (const auto& e : out) CHECK(e.priority == (e.target == arena.lose ? 2u : 1u));
    CHECK(decide(n).winner == Player::two);
}

TEST_CASE("arena budgets") {
    Nfa t = generate({GadgetKind::time, 0});
    CHECK_NOTHROW(build_arena(t, 100'000));
    CHECK_THROWS_AS(build_arena(t, 100), BudgetExceeded);
    Nfa open = parse_nfa("states: q0 f\ninit: q0\ntarget: f\nalphabet: go\nq0 go f\nf go q0\n");
    CHECK_THROWS_AS(build_arena(open), ContractViolation);
}

TEST_CASE("decisions on the fixtures") {
    CHECK(decide(generate({GadgetKind::split, 0})).winner == Player::one);
    CHECK(decide(generate({GadgetKind::time, 0})).winner == Player::one);
    CHECK(decide(generate({GadgetKind::memory_example, 0})).winner == Player::one);
    CHECK(decide(generate({GadgetKind::linear, 3})).winner == Player::two);
    CHECK_FALSE(decide(generate({GadgetKind::linear, 3})).controller);
}

TEST_CASE("a target that is not a sink is normalized first") {
    Nfa open = parse_nfa("states: q0 f\ninit: q0\ntarget: f\nalphabet: go\nq0 go f\nf go q0\n");
    auto d = decide(open);
    CHECK(d.winner == Player::one);
    CHECK(d.nfa == normalize_target_sink(open));
}

TEST_CASE("memoryless support strategies lose the memory example") {
    Nfa n = generate({GadgetKind::memory_example, 0});
    StateSet s;
    for (const char* q : {"q1", "q2", "q3", "q4"}) s.insert(*n.find_state(q));
    for (const char* letter : {"a", "b"}) {
        Letter x = *n.find_letter(letter);
        TransferGraph g = maximal_graph(n, s, x);
        CHECK(g.im() == s);
        CHECK(lasso_capacity({{}, {g}}).kind == Capacity::finite);
    }
}

TEST_CASE("split controller") {
    Nfa n = generate({GadgetKind::split, 0});
    auto d = decide(n);
    REQUIRE(d.controller);
    const Controller& c = *d.controller;
    CHECK(c.nodes[c.initial].action == n.find_letter("delta"));
    CHECK(c.nodes[c.initial].support == StateSet::singleton(n.initial()));
}

TEST_CASE("controllers are closed under legal responses") {
    for (const char* spec : {"split", "time", "memory-example"}) {
        Nfa n = generate(parse_gadget_spec(spec));
        auto d = decide(n);
        REQUIRE(d.controller);
        const Controller& c = *d.controller;
        for (std::uint32_t v = 0; v < c.nodes.size(); ++v) {
            const auto& node = c.nodes[v];
            if (c.is_goal(v)) {
                CHECK(node.support == StateSet::singleton(n.target()));
                continue;
            }
            for (const auto& g : compatible_graphs(n, node.support, *node.action)) {
                auto step = c.step(v, g);
                CHECK(step.action == node.action);
                REQUIRE(step.next < c.nodes.size());
                const auto& next = c.nodes[step.next];
                CHECK(next.support == g.im());
                if (!c.is_goal(step.next)) CHECK(next.list == update_list(node.list, g).list);
            }
        }
        if (!c.is_goal(c.initial)) {
            TransferGraph junk(n.num_states());
            junk.add_edge(n.target(), n.target());
            CHECK_THROWS_AS(c.step(c.initial, junk), ContractViolation);
        }
    }
}

TEST_CASE("controller documents") {
    Nfa n = generate({GadgetKind::split, 0});
    auto d = decide(n);
    std::string doc = serialize_controller(*d.controller, d.nfa);
    CHECK(deserialize_controller(doc, d.nfa) == *d.controller);
    CHECK(serialize_controller(deserialize_controller(doc, d.nfa), d.nfa) == doc);
    CHECK_THROWS_AS(deserialize_controller(doc.substr(0, doc.size() / 2), d.nfa), FormatError);
    CHECK_THROWS_AS(deserialize_controller("{}", d.nfa), FormatError);
    CHECK_THROWS_AS(deserialize_controller(doc, generate({GadgetKind::time, 0})), FormatError);
}

TEST_CASE("a reloaded controller plays like the original") {
    Nfa n = generate({GadgetKind::time, 0});
    auto d = decide(n);
    REQUIRE(d.controller);
    Controller loaded = deserialize_controller(serialize_controller(*d.controller, d.nfa), d.nfa);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        AdversaryPolicy adv{AdversaryPolicy::Kind::random, seed, {}};
        auto a = run(d.nfa, *d.controller, 10, adv, 2000, true);
        auto b = run(d.nfa, loaded, 10, adv, 2000, true);
        REQUIRE(a.trace.size() == b.trace.size());
        CHECK(a.status == b.status);
        for (std::size_t i = 0; i < a.trace.size(); ++i) {
            CHECK(a.trace[i].action == b.trace[i].action);
            CHECK(a.trace[i].config == b.trace[i].config);
        }
    }
}
