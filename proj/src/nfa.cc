#include "popctl/nfa.hh"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <sstream>

#include "popctl/errors.hh"

namespace popctl {

namespace {

std::optional<std::uint32_t> index_of(const std::vector<std::string>& names, std::string_view name) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) return std::nullopt;
    return static_cast<std::uint32_t>(it - names.begin());
}

std::vector<std::string> split_words(std::string_view line) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) out.emplace_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

std::string fresh_name(const std::vector<std::string>& taken, std::string base) {
    std::string name = base;
    for (int k = 1; index_of(taken, name); ++k) name = base + std::to_string(k);
    return name;
}

}  // namespace

std::optional<State> Nfa::find_state(std::string_view name) const { return index_of(state_names_, name); }
std::optional<Letter> Nfa::find_letter(std::string_view name) const { return index_of(letter_names_, name); }

StateSet Nfa::post(StateSet from, Letter a) const {
    StateSet out;
    for (State q : from) out |= successors(q, a);
    return out;
}

bool Nfa::is_sink(State q) const {
    for (Letter a = 0; a < num_letters(); ++a)
        if (successors(q, a) != StateSet::singleton(q)) return false;
    return true;
}

State NfaBuilder::add_state(std::string name) {
    if (index_of(states_, name)) throw ValidationError("duplicate state '" + name + "'");
    if (states_.size() >= max_states) throw ValidationError("too many states (limit 64)");
    states_.push_back(std::move(name));
    return static_cast<State>(states_.size() - 1);
}

Letter NfaBuilder::add_letter(std::string name) {
    if (index_of(letters_, name)) throw ValidationError("duplicate action '" + name + "'");
    letters_.push_back(std::move(name));
    return static_cast<Letter>(letters_.size() - 1);
}

State NfaBuilder::state(std::string_view name) const {
    auto q = index_of(states_, name);
    if (!q) throw ValidationError("unknown state '" + std::string(name) + "'");
    return *q;
}

Letter NfaBuilder::letter(std::string_view name) const {
    auto a = index_of(letters_, name);
    if (!a) throw ValidationError("unknown action '" + std::string(name) + "'");
    return *a;
}

bool NfaBuilder::has_state(std::string_view name) const { return index_of(states_, name).has_value(); }

void NfaBuilder::add_edge(State from, Letter a, State to) { edges_.emplace_back(from, a, to); }

void NfaBuilder::add_edge(std::string_view from, std::string_view a, std::string_view to) {
    add_edge(state(from), letter(a), state(to));
}

void NfaBuilder::add_loop(State q, std::initializer_list<Letter> letters) {
    for (Letter a : letters) add_edge(q, a, q);
}

Nfa NfaBuilder::build() const {
    if (letters_.empty()) throw ValidationError("empty alphabet");
    if (!initial_) throw ValidationError("no initial state declared");
    if (!target_) throw ValidationError("no target declared");

    Nfa nfa;
    nfa.state_names_ = states_;
    nfa.letter_names_ = letters_;
    nfa.initial_ = *initial_;
    nfa.target_ = *target_;
    const std::size_t nl = letters_.size();
    nfa.delta_.assign(states_.size() * nl, StateSet{});
    for (auto [q, a, r] : edges_) nfa.delta_[q * nl + a].insert(r);

    bool incomplete = std::any_of(nfa.delta_.begin(), nfa.delta_.end(), [](StateSet s) { return s.empty(); });
    if (incomplete) {
        std::optional<State> sink = index_of(states_, sink_name);
        if (!sink) {
            if (states_.size() >= max_states) throw ValidationError("too many states (limit 64)");
            nfa.state_names_.emplace_back(sink_name);
            nfa.delta_.resize(nfa.state_names_.size() * nl);
            sink = static_cast<State>(nfa.state_names_.size() - 1);
        }
        for (Letter a = 0; a < nl; ++a) nfa.delta_[*sink * nl + a].insert(*sink);
        for (auto& s : nfa.delta_)
            if (s.empty()) s = StateSet::singleton(*sink);
    }
    return nfa;
}

Nfa parse_nfa(std::string_view text) {
    NfaBuilder b;
    static constexpr std::string_view directives[] = {"states:", "init:", "target:", "alphabet:"};
    std::size_t next_directive = 0;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        auto words = split_words(line);
        if (words.empty()) {
            if (end == text.size()) break;
            continue;
        }

        try {
            if (next_directive < 4) {
                if (words[0] != directives[next_directive]) {
                    throw ParseError(line_no, "expected '" + std::string(directives[next_directive]) + "', got '" +
                                                  words[0] + "'");
                }
                std::vector<std::string> args(words.begin() + 1, words.end());
                switch (next_directive) {
                case 0:
                    if (args.empty()) throw ParseError(line_no, "no states declared");
                    for (auto& s : args) b.add_state(s);
                    break;
                case 1:
                case 2:
                    if (args.size() != 1) throw ParseError(line_no, "expected exactly one state");
                    if (next_directive == 1)
                        b.set_initial(b.state(args[0]));
                    else
                        b.set_target(b.state(args[0]));
                    break;
                case 3:
                    if (args.empty()) throw ParseError(line_no, "empty alphabet");
                    for (auto& a : args) b.add_letter(a);
                    break;
                }
                ++next_directive;
            } else {
                if (words.size() != 3) throw ParseError(line_no, "expected 'src action dst'");
                if (!b.has_state(words[0])) throw ParseError(line_no, "unknown state '" + words[0] + "'");
                if (!b.has_state(words[2])) throw ParseError(line_no, "unknown state '" + words[2] + "'");
                b.add_edge(words[0], words[1], words[2]);
            }
        } catch (const ValidationError& e) {
            throw ParseError(line_no, e.what());
        }
        if (end == text.size()) break;
    }
    if (next_directive < 4) {
        if (next_directive == 2) throw ParseError(line_no, "no target declared");
        throw ParseError(line_no, "missing '" + std::string(directives[next_directive]) + "' directive");
    }
    return b.build();
}

std::string serialize_nfa(const Nfa& nfa) {
    std::ostringstream out;
    auto join = [&](const std::vector<std::string>& v) {
        for (const auto& s : v) out << ' ' << s;
        out << '\n';
    };
    out << "states:";
    join(nfa.state_names());
    out << "init: " << nfa.state_name(nfa.initial()) << '\n';
    out << "target: " << nfa.state_name(nfa.target()) << '\n';
    out << "alphabet:";
    join(nfa.letter_names());
    for (State q = 0; q < nfa.num_states(); ++q)
        for (Letter a = 0; a < nfa.num_letters(); ++a)
            for (State r : nfa.successors(q, a))
                out << nfa.state_name(q) << ' ' << nfa.letter_name(a) << ' ' << nfa.state_name(r) << '\n';
    return out.str();
}

Nfa normalize_target_sink(const Nfa& nfa) {
    if (nfa.is_sink(nfa.target())) return nfa;

    NfaBuilder b;
    for (const auto& s : nfa.state_names()) b.add_state(s);
    for (const auto& a : nfa.letter_names()) b.add_letter(a);
    State win = b.add_state(fresh_name(nfa.state_names(), "_win"));
    State lose = b.add_state(fresh_name(nfa.state_names(), "_lose"));
    Letter fin = b.add_letter(fresh_name(nfa.letter_names(), "_fin"));
    b.set_initial(nfa.initial());
    b.set_target(win);

    for (State q = 0; q < nfa.num_states(); ++q) {
        for (Letter a = 0; a < nfa.num_letters(); ++a)
            for (State r : nfa.successors(q, a)) b.add_edge(q, a, r);
        b.add_edge(q, fin, q == nfa.target() ? win : lose);
    }
    for (Letter a = 0; a <= fin; ++a) {
        b.add_edge(win, a, win);
        b.add_edge(lose, a, lose);
    }
    return b.build();
}

std::string nfa_hash(const Nfa& nfa) {
    // FNV-1a
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : serialize_nfa(nfa)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace popctl
