// Interactive sessions: a human resolves nondeterminism (player two) against a
// synthesized controller (player one).

#pragma once

#include <cstdint>
#include <list>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "popctl/controller.hh"
#include "popctl/popsim.hh"

namespace popctl {

class SessionNotFound : public std::runtime_error {
public:
    explicit SessionNotFound(const std::string& id) : std::runtime_error("no session '" + id + "'") {}
};

/// The automaton has no controller, so there is nothing to play against.
class NotControllable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class SessionStatus { running, won, inconclusive };
std::string to_string(SessionStatus s);

struct SessionView {
    std::string id;
    std::uint32_t m = 0;
    std::vector<std::string> states;
    std::map<std::string, std::uint32_t> counts;
    std::optional<std::string> proposed_action;
    /// Occupied state -> successors under the proposed action.
    std::map<std::string, std::vector<std::string>> legal_successors;
    SessionStatus status = SessionStatus::running;
    std::size_t step = 0;
};

/// Player-two move by state names: source -> (successor -> agents).
using NamedSplit = std::map<std::string, std::map<std::string, std::uint32_t>>;

struct Session {
    struct Entry {
        Config config;
        std::uint32_t node;
        std::optional<Letter> last;
    };

    std::string id;
    std::shared_ptr<const Nfa> nfa;
    std::shared_ptr<const Controller> controller;
    std::uint32_t m = 0;
    std::size_t step_budget = 0;
    std::vector<Entry> history;  // states before each played move
    Entry current;
    std::mutex mutex;

    SessionStatus status() const;
    std::optional<Letter> proposed() const;
};

class SessionManager {
public:
    explicit SessionManager(std::size_t capacity = 64, std::size_t step_budget = 10'000,
                            std::size_t node_budget = default_node_budget);

    /// Solves the automaton (cached by hash) and starts a session with m agents.
    SessionView create(const std::string& nfa_text, std::uint32_t m);
    SessionView state(const std::string& id);
    /// Throws InvalidSplit / ValidationError on illegal input.
    SessionView move(const std::string& id, const NamedSplit& split);
    SessionView undo(const std::string& id);

    std::size_t size() const;

private:
    std::shared_ptr<Session> find(const std::string& id);
    static SessionView view_of(const Session& s);

    struct Solved {
        std::shared_ptr<const Nfa> nfa;
        std::shared_ptr<const Controller> controller;
    };

    std::size_t capacity_;
    std::size_t step_budget_;
    std::size_t node_budget_;
    mutable std::mutex mutex_;
    std::list<std::string> lru_;  // most recent first
    std::unordered_map<std::string, std::pair<std::shared_ptr<Session>, std::list<std::string>::iterator>> sessions_;
    std::unordered_map<std::string, Solved> solved_;
    std::mt19937_64 rng_;
};

}  // namespace popctl
