#include "popctl/session.hh"

#include <cstdio>

#include "popctl/errors.hh"

namespace popctl {

std::string to_string(SessionStatus s) {
    switch (s) {
    case SessionStatus::running: return "running";
    case SessionStatus::won: return "won";
    case SessionStatus::inconclusive: return "inconclusive";
    }
    return "running";
}

SessionStatus Session::status() const {
    if (is_synchronized(*nfa, current.config)) return SessionStatus::won;
    if (history.size() >= step_budget) return SessionStatus::inconclusive;
    return SessionStatus::running;
}

std::optional<Letter> Session::proposed() const {
    if (status() != SessionStatus::running) return std::nullopt;
    if (controller->is_goal(current.node)) return current.last;
    return controller->nodes[current.node].action;
}

SessionManager::SessionManager(std::size_t capacity, std::size_t step_budget, std::size_t node_budget)
    : capacity_(capacity), step_budget_(step_budget), node_budget_(node_budget), rng_(std::random_device{}()) {}

std::size_t SessionManager::size() const {
    std::lock_guard lock(mutex_);
    return sessions_.size();
}

SessionView SessionManager::create(const std::string& nfa_text, std::uint32_t m) {
    if (m == 0) throw ValidationError("m must be at least 1");
    Nfa parsed = normalize_target_sink(parse_nfa(nfa_text));
    std::string hash = nfa_hash(parsed);

    Solved solved;
    {
        std::lock_guard lock(mutex_);
        auto it = solved_.find(hash);
        if (it != solved_.end()) solved = it->second;
    }
    if (!solved.nfa) {
        Decision d = decide(parsed, node_budget_);
        if (d.winner != Player::one) throw NotControllable("no controller exists for this automaton");
        solved.nfa = std::make_shared<const Nfa>(std::move(d.nfa));
        solved.controller = std::make_shared<const Controller>(std::move(*d.controller));
        std::lock_guard lock(mutex_);
        solved_.emplace(hash, solved);
    }

    auto s = std::make_shared<Session>();
    s->nfa = solved.nfa;
    s->controller = solved.controller;
    s->m = m;
    s->step_budget = step_budget_;
    s->current = Session::Entry{initial_config(*s->nfa, m), s->controller->initial, std::nullopt};

    std::lock_guard lock(mutex_);
    char buf[17];
    do {
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(rng_()));
    } while (sessions_.count(buf) != 0);
    s->id = buf;
    lru_.push_front(s->id);
    sessions_.emplace(s->id, std::make_pair(s, lru_.begin()));
    while (sessions_.size() > capacity_) {
        sessions_.erase(lru_.back());
        lru_.pop_back();
    }
    return view_of(*s);
}

std::shared_ptr<Session> SessionManager::find(const std::string& id) {
    std::lock_guard lock(mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) throw SessionNotFound(id);
    lru_.splice(lru_.begin(), lru_, it->second.second);
    return it->second.first;
}

SessionView SessionManager::state(const std::string& id) {
    auto s = find(id);
    std::lock_guard lock(s->mutex);
    return view_of(*s);
}

SessionView SessionManager::move(const std::string& id, const NamedSplit& named) {
    auto s = find(id);
    std::lock_guard lock(s->mutex);
    const Nfa& nfa = *s->nfa;
    std::optional<Letter> a = s->proposed();
    if (!a) throw ValidationError("session is " + to_string(s->status()) + ", no move expected");

    Split split(nfa.num_states());
    for (const auto& [src, targets] : named) {
        auto q = nfa.find_state(src);
        if (!q) throw InvalidSplit(src, "unknown state '" + src + "'");
        for (const auto& [dst, count] : targets) {
            auto r = nfa.find_state(dst);
            if (!r) throw InvalidSplit(src, "state " + src + ": unknown successor '" + dst + "'");
            split.at(*q, *r) += count;
        }
    }
    Config next = apply_split(nfa, s->current.config, *a, split);
    auto step = s->controller->step(s->current.node, project(s->current.config, split).graph);
    s->history.push_back(s->current);
    s->current = Session::Entry{std::move(next), step.next, a};
    return view_of(*s);
}

SessionView SessionManager::undo(const std::string& id) {
    auto s = find(id);
    std::lock_guard lock(s->mutex);
    if (s->history.empty()) throw ValidationError("nothing to undo");
    s->current = std::move(s->history.back());
    s->history.pop_back();
    return view_of(*s);
}

SessionView SessionManager::view_of(const Session& s) {
    const Nfa& nfa = *s.nfa;
    SessionView v;
    v.id = s.id;
    v.m = s.m;
    v.states = nfa.state_names();
    for (State q = 0; q < nfa.num_states(); ++q) v.counts[nfa.state_name(q)] = s.current.config.counts[q];
    v.status = s.status();
    v.step = s.history.size();
    if (auto a = s.proposed()) {
        v.proposed_action = nfa.letter_name(*a);
        for (State q : s.current.config.support()) {
            auto& succ = v.legal_successors[nfa.state_name(q)];
            for (State r : nfa.successors(q, *a)) succ.push_back(nfa.state_name(r));
        }
    }
    return v;
}

}  // namespace popctl
