#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "fixtures.hh"
#include "popctl/gadgets.hh"
#include "popctl/support.hh"

using namespace popctl;
using fixtures::named_graph;

namespace {

Nfa split() { return generate({GadgetKind::split, 0}); }

StateSet set_of(const Nfa& nfa, std::initializer_list<const char*> names) {
    StateSet s;
    for (const char* n : names) s.insert(*nfa.find_state(n));
    return s;
}

}  // namespace

TEST_CASE("compatibility") {
    Nfa n = split();
    Letter delta = *n.find_letter("delta");
    CHECK(is_compatible(n, named_graph(n, {{"q0", "q1"}, {"q0", "q2"}}), delta));
    CHECK_FALSE(is_compatible(n, named_graph(n, {{"q0", "f"}}), delta));
    CHECK(is_compatible(n, TransferGraph(n.num_states()), delta));
}

TEST_CASE("maximal graphs and support successors") {
    Nfa n = split();
    Letter a = *n.find_letter("a"), delta = *n.find_letter("delta");
    CHECK(maximal_graph(n, set_of(n, {"q0"}), delta) == named_graph(n, {{"q0", "q1"}, {"q0", "q2"}}));
    CHECK(maximal_graph(n, n.all_states(), a).dom() == n.all_states());
    CHECK(post_support(n, set_of(n, {"q0"}), delta) == set_of(n, {"q1", "q2"}));
    CHECK(post_support(n, set_of(n, {"q1", "q2"}), a) == set_of(n, {"q0", "f"}));
    for (Letter x = 0; x < n.num_letters(); ++x) CHECK(post_support(n, set_of(n, {"f"}), x) == set_of(n, {"f"}));
}

TEST_CASE("compatible graph enumeration") {
    Nfa n = split();
    Letter a = *n.find_letter("a"), delta = *n.find_letter("delta");
    auto gs = compatible_graphs(n, set_of(n, {"q0"}), delta);
    REQUIRE(gs.size() == 3);
    CHECK(gs[0] == named_graph(n, {{"q0", "q1"}}));
    CHECK(gs[1] == named_graph(n, {{"q0", "q2"}}));
    CHECK(gs[2] == named_graph(n, {{"q0", "q1"}, {"q0", "q2"}}));
    CHECK(gs.back() == maximal_graph(n, set_of(n, {"q0"}), delta));

    CHECK(compatible_graphs(n, set_of(n, {"q1"}), a).size() == 1);

    Support both = set_of(n, {"q0", "q1", "q2"});
    auto many = compatible_graphs(n, both, delta);
    CHECK(many.size() == 3);
    CHECK(CompatibleGraphs(n, both, delta).count() == 3);
    for (const auto& g : many) {
        CHECK(g.dom() == both);
        CHECK(is_compatible(n, g, delta));
    }
}

TEST_CASE("enumeration count matches the product formula") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 50; ++i) {
        Nfa n = fixtures::random_nfa(rng, 4, 2);
        Support s{rng() & 0xF};
        for (Letter a = 0; a < n.num_letters(); ++a) {
            std::size_t expected = 1;
            for (State q : s) expected *= (std::size_t{1} << n.successors(q, a).size()) - 1;
            auto gs = compatible_graphs(n, s, a);
            CHECK(gs.size() == expected);
            CHECK(std::adjacent_find(gs.begin(), gs.end()) == gs.end());
            if (!s.empty()) CHECK(gs.back() == maximal_graph(n, s, a));
        }
    }
}

TEST_CASE("support game on the splitting gadget") {
    Nfa n = split();
    auto r = solve_support_game(n);
    CHECK(r.winner == Player::two);
    std::vector<Support> expected{set_of(n, {"q0"}), set_of(n, {"q1", "q2"}), set_of(n, {"q0", "f"}),
                                  set_of(n, {"q1", "q2", "f"})};
    std::sort(expected.begin(), expected.end());
    auto got = r.safe_supports;
    std::sort(got.begin(), got.end());
    CHECK(got == expected);
}

TEST_CASE("support game on the linear gadget") {
    CHECK(solve_support_game(generate({GadgetKind::linear, 3})).winner == Player::two);
}

TEST_CASE("one-step win has a witness of length one") {
    Nfa n = parse_nfa("states: q0 q1 f\ninit: q0\ntarget: f\nalphabet: go\nq0 go f\nq1 go f\nf go f\n");
    auto r = solve_support_game(n);
    CHECK(r.winner == Player::one);
    CHECK(r.witness == std::vector<Letter>{0});
}

TEST_CASE("witness replays to the target") {
    std::mt19937_64 rng(3);
    int wins = 0;
    for (int i = 0; i < 300; ++i) {
        Nfa n = fixtures::random_nfa(rng, 1 + rng() % 4, 1 + rng() % 2);
        auto r = solve_support_game(n);
        CHECK((r.winner == Player::one) == fixtures::brute_force_support_win(n));
        if (r.winner == Player::one) {
            ++wins;
            Support s = StateSet::singleton(n.initial());
            for (Letter a : r.witness) s = post_support(n, s, a);
            CHECK(s == StateSet::singleton(n.target()));
        } else {
            for (Support s : r.safe_supports) CHECK(s != StateSet::singleton(n.target()));
        }
    }
    CHECK(wins > 0);
}
