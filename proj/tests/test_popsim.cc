#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "fixtures.hh"
#include "popctl/errors.hh"
#include "popctl/gadgets.hh"
#include "popctl/popsim.hh"

using namespace popctl;

namespace {

Nfa split() { return generate({GadgetKind::split, 0}); }

Config config(std::vector<std::uint32_t> c) { return Config{std::move(c)}; }

}  // namespace

TEST_CASE("splits") {
    Nfa n = split();
    Letter delta = *n.find_letter("delta");
    Config init = initial_config(n, 4);
    CHECK(init == config({4, 0, 0, 0}));
    CHECK_THROWS_AS(initial_config(n, 0), ValidationError);

    auto even = make_adversary({AdversaryPolicy::Kind::even, 0, {}});
    Split s = even->choose(n, init, delta);
    CHECK(apply_split(n, init, delta, s) == config({0, 2, 2, 0}));

    auto p = project(init, s);
    CHECK(p.before == StateSet{0b0001});
    CHECK(p.graph == fixtures::named_graph(n, {{"q0", "q1"}, {"q0", "q2"}}));
    CHECK(p.after == StateSet{0b0110});

    Split lossy(n.num_states());
    lossy.at(0, 1) = 3;
    CHECK_THROWS_AS(apply_split(n, init, delta, lossy), InvalidSplit);
    try {
        validate_split(n, init, delta, lossy);
    } catch (const InvalidSplit& e) {
        CHECK(e.state() == "q0");
    }
    Split illegal(n.num_states());
    illegal.at(0, 3) = 4;
    CHECK_THROWS_AS(apply_split(n, init, delta, illegal), InvalidSplit);
}

TEST_CASE("deterministic letters relabel") {
    Nfa n = split();
    Letter a = *n.find_letter("a");
    Config c = config({1, 2, 3, 4});
    auto even = make_adversary({AdversaryPolicy::Kind::even, 0, {}});
    CHECK(apply_split(n, c, a, even->choose(n, c, a)) == config({1 + 3, 0, 0, 2 + 4}));
}

TEST_CASE("single agent projects to a single edge") {
    Nfa n = split();
    Letter delta = *n.find_letter("delta");
    Config c = initial_config(n, 1);
    auto adv = make_adversary({AdversaryPolicy::Kind::random, 5, {}});
    auto p = project(c, adv->choose(n, c, delta));
    CHECK(p.graph.edge_count() == 1);
}

TEST_CASE("adversaries produce legal splits") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 100; ++i) {
        Nfa n = fixtures::random_nfa(rng, 4, 2);
        std::vector<std::uint32_t> counts(4);
        for (auto& c : counts) c = rng() % 5;
        counts[0] += 1;
        Config c{counts};
        for (auto kind : {AdversaryPolicy::Kind::even, AdversaryPolicy::Kind::one_off, AdversaryPolicy::Kind::random}) {
            auto adv = make_adversary({kind, 42, {}});
            for (Letter a = 0; a < 2; ++a) {
                Config next = apply_split(n, c, a, adv->choose(n, c, a));
                CHECK(next.m() == c.m());
            }
        }
    }
}

TEST_CASE("one-off adversary sends a single agent away") {
    Nfa n = split();
    Letter delta = *n.find_letter("delta");
    Config c = initial_config(n, 5);
    auto adv = make_adversary({AdversaryPolicy::Kind::one_off, 0, {}});
    CHECK(apply_split(n, c, delta, adv->choose(n, c, delta)) == config({0, 4, 1, 0}));
}

TEST_CASE("random adversary is reproducible") {
    Nfa n = split();
    Letter delta = *n.find_letter("delta");
    Config c = initial_config(n, 50);
    auto a = make_adversary({AdversaryPolicy::Kind::random, 77, {}});
    auto b = make_adversary({AdversaryPolicy::Kind::random, 77, {}});
    for (int i = 0; i < 10; ++i) CHECK(a->choose(n, c, delta) == b->choose(n, c, delta));
}

TEST_CASE("runs and statuses") {
    Nfa n = split();
    auto d = decide(n);
    REQUIRE(d.controller);
    auto won = run(n, *d.controller, 4, {AdversaryPolicy::Kind::even, 0, {}}, 100, true);
    CHECK(won.status == RunStatus::won);
    CHECK(won.steps <= 6);
    CHECK(won.trace.size() == won.steps);
    for (std::size_t i = 1; i < won.trace.size(); ++i)
        CHECK(project(won.trace[i - 1].config, won.trace[i].split).before == won.trace[i - 1].config.support());

    auto one = run(n, *d.controller, 1, {AdversaryPolicy::Kind::random, 3, {}}, 100);
    CHECK(one.won());

    auto cut = run(n, *d.controller, 4, {AdversaryPolicy::Kind::even, 0, {}}, 1);
    CHECK(cut.status == RunStatus::budget_exhausted);

    Nfa lin = generate({GadgetKind::linear, 2});
    auto scripted = scripted_split_policy(split());
    CHECK_THROWS_AS(scripted_time_policy(lin), ValidationError);

    // everyone into the sink: lost
    Nfa doomed = parse_nfa("states: q0 f\ninit: q0\ntarget: f\nalphabet: go\nf go f\n");
    struct Go : Policy {
        std::optional<Letter> choose(const Config&) override { return 0; }
    } go;
    auto even = make_adversary({AdversaryPolicy::Kind::even, 0, {}});
    CHECK(run(doomed, go, 2, *even, 10).status == RunStatus::lost);

    struct Idle : Policy {
        std::optional<Letter> choose(const Config&) override { return std::nullopt; }
    } idle;
    CHECK(run(n, idle, 2, *even, 10).status == RunStatus::stuck);
}

TEST_CASE("scripted strategies") {
    Nfa n = split();
    auto policy = scripted_split_policy(n);
    auto even = make_adversary({AdversaryPolicy::Kind::even, 0, {}});
    auto out = run(n, *policy, 16, *even, 100);
    CHECK(out.won());
    CHECK(out.steps <= 2 * 4 + 2);

    Nfa t = generate({GadgetKind::time, 0});
    auto tp = scripted_time_policy(t);
    auto one_off = make_adversary({AdversaryPolicy::Kind::one_off, 0, {}});
    auto r = run(t, *tp, 3, *one_off, 1000, true);
    CHECK(r.won());
    CHECK(format_trace(t, r.trace).rfind("step 1: action=try split=q0->qtop:2,q0->qbot:1 config=qtop:2,qbot:1\n", 0) == 0);
}

TEST_CASE("scripted adversary replays its splits") {
    Nfa n = split();
    Letter delta = *n.find_letter("delta");
    Split s(n.num_states());
    s.at(0, 1) = 3;
    s.at(0, 2) = 1;
    auto adv = make_adversary({AdversaryPolicy::Kind::scripted, 0, {s}});
    CHECK(adv->choose(n, initial_config(n, 4), delta) == s);
}

TEST_CASE("compositions") {
    auto c = compositions(2, 3);
    CHECK(c.size() == 6);
    CHECK(c.front() == std::vector<std::uint32_t>{0, 0, 2});
    CHECK(c.back() == std::vector<std::uint32_t>{2, 0, 0});
    CHECK(compositions(0, 2).size() == 1);
    CHECK(compositions(5, 4).size() == 56);
}

TEST_CASE("exact solving") {
    Nfa lin = generate({GadgetKind::linear, 3});
    auto r = exact_solve(lin, 2);
    CHECK(r.winner == Player::one);
    CHECK(r.sync_time == 2u);
    CHECK(exact_winner(lin, 3) == Player::two);

    // optimal worst case against any adversary on the try/keep gadget
    Nfa t = generate({GadgetKind::time, 0});
    for (std::uint32_t m = 2; m <= 5; ++m) CHECK(exact_solve(t, m).sync_time == m * m + 2 * m - 1);

    ExactBudget tiny;
    tiny.max_configs = 5;
    CHECK_THROWS_AS(exact_solve(t, 5, tiny), BudgetExceeded);
}

TEST_CASE("cut-offs") {
    for (unsigned c = 1; c <= 3; ++c) {
        auto r = find_cutoff(generate({GadgetKind::linear, c}), c + 2);
        CHECK(r.kind == CutoffResult::Kind::cutoff);
        CHECK(r.value == c);
    }
    auto none = find_cutoff(split(), 6);
    CHECK(none.kind == CutoffResult::Kind::none_up_to);
    CHECK(none.value == 6);
}

TEST_CASE("exhaustive verification") {
    for (const char* spec : {"split", "time", "memory-example"}) {
        Nfa n = generate(parse_gadget_spec(spec));
        auto d = decide(n);
        for (std::uint32_t m = 1; m <= 4; ++m) CHECK(exhaustive_verify(d.nfa, *d.controller, m));
    }
    // a controller that never leaves q0 is caught
    Nfa n = split();
    auto d = decide(n);
    Controller lazy = *d.controller;
    for (auto& node : lazy.nodes)
        if (node.action) node.action = *n.find_letter("a");
    CHECK_FALSE(exhaustive_verify(n, lazy, 2));
}
