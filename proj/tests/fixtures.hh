// Shared fixtures and brute-force oracles for the test binaries.

#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "popctl/controller.hh"
#include "popctl/nfa.hh"
#include "popctl/parity_game.hh"
#include "popctl/popsim.hh"
#include "popctl/support.hh"

namespace fixtures {

using popctl::Nfa;
using popctl::TransferGraph;

std::string data_path(const std::string& name);
std::string read_text(const std::string& path);

/// Graph over nfa's states given by name pairs.
TransferGraph named_graph(const Nfa& nfa, std::initializer_list<std::pair<const char*, const char*>> edges);

/// Try/keep gadget history G1..G5 (indices 0..4) of the five-step example play.
std::vector<TransferGraph> time_history(const Nfa& time_nfa);
/// Expected exact list of that play: (G[1,5], G[3,5]).
std::vector<TransferGraph> time_history_list(const Nfa& time_nfa);

/// Three-state play q1, q2, q3 (indices 0, 1, 2) where incremental and exact lists differ.
std::vector<TransferGraph> three_state_history();

/// Two-state accumulator example: G = {(q0,q0),(q0,q1),(q1,q1)}, H = {(q1,q0),(q1,q1),(q0,q0)}.
TransferGraph leak_g();
TransferGraph leak_h();

/// Complete NFA with random nonempty successor sets; state 0 initial, last state
/// target. With sink_target the target only loops.
Nfa random_nfa(std::mt19937_64& rng, std::size_t states, std::size_t letters, bool sink_target = false);

TransferGraph random_graph(std::mt19937_64& rng, std::size_t n, double density);

/// Random game, every node with 1..max_out successors and priorities in [1, max_priority].
popctl::ParityGame random_game(std::mt19937_64& rng, std::size_t nodes, std::size_t max_out, std::uint32_t max_priority);

/// Winning regions by enumerating every positional strategy of player one and
/// checking whether player two can reach a cycle with even least priority.
std::vector<popctl::Player> brute_force_parity(const popctl::ParityGame& game);

/// Player one wins the support game iff some word of length < 2^|Q| drives {q0} to {f}.
bool brute_force_support_win(const Nfa& nfa);

}  // namespace fixtures
