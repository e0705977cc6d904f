// The agent template: a complete NFA with an initial and a target state.

#pragma once

#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "popctl/state_set.hh"

namespace popctl {

/// Name given to the losing sink added when completing a partial transition relation.
inline constexpr std::string_view sink_name = "_sink";

class Nfa {
public:
    /// Empty placeholder; real automata come from NfaBuilder or parse_nfa.
    Nfa() = default;

    std::size_t num_states() const { return state_names_.size(); }
    std::size_t num_letters() const { return letter_names_.size(); }
    State initial() const { return initial_; }
    State target() const { return target_; }

    const std::string& state_name(State q) const { return state_names_[q]; }
    const std::string& letter_name(Letter a) const { return letter_names_[a]; }
    const std::vector<std::string>& state_names() const { return state_names_; }
    const std::vector<std::string>& letter_names() const { return letter_names_; }
    std::optional<State> find_state(std::string_view name) const;
    std::optional<Letter> find_letter(std::string_view name) const;

    /// delta(q, a); never empty.
    StateSet successors(State q, Letter a) const { return delta_[q * num_letters() + a]; }
    StateSet all_states() const { return StateSet::prefix(num_states()); }
    StateSet post(StateSet from, Letter a) const;

    /// q loops to itself, and only to itself, on every letter.
    bool is_sink(State q) const;

    bool operator==(const Nfa&) const = default;

private:
    friend class NfaBuilder;

    std::vector<std::string> state_names_;
    std::vector<std::string> letter_names_;
    State initial_ = 0;
    State target_ = 0;
    std::vector<StateSet> delta_;  // row-major (state, letter)
};

/// Incremental construction with name lookup. build() routes every missing
/// (state, letter) pair to a sink named "_sink" (added on demand).
class NfaBuilder {
public:
    State add_state(std::string name);
    Letter add_letter(std::string name);
    State state(std::string_view name) const;
    Letter letter(std::string_view name) const;
    bool has_state(std::string_view name) const;

    void set_initial(State q) { initial_ = q; }
    void set_target(State q) { target_ = q; }
    void add_edge(State from, Letter a, State to);
    void add_edge(std::string_view from, std::string_view a, std::string_view to);
    /// Convenience: from --a--> from for each listed letter.
    void add_loop(State q, std::initializer_list<Letter> letters);

    Nfa build() const;

private:
    std::vector<std::string> states_;
    std::vector<std::string> letters_;
    std::vector<std::tuple<State, Letter, State>> edges_;
    std::optional<State> initial_;
    std::optional<State> target_;
};

/// Parses the line-based text format (states/init/target/alphabet directives, then
/// `src letter dst` edge lines).
Nfa parse_nfa(std::string_view text);
std::string serialize_nfa(const Nfa& nfa);

/// Makes the target a sink: if it is not one already, adds a fresh letter that
/// sends the target to a new winning sink and every other state to a new losing sink.
Nfa normalize_target_sink(const Nfa& nfa);

/// Stable 64-bit digest of the serialized form, rendered as 16 hex digits.
std::string nfa_hash(const Nfa& nfa);

}  // namespace popctl
