#include "popctl/support.hh"

#include <algorithm>
#include <deque>
#include <limits>
#include <unordered_map>

namespace popctl {

bool is_compatible(const Nfa& nfa, const TransferGraph& g, Letter a) {
    for (State q = 0; q < g.num_states(); ++q)
        if (!g.row(q).subset_of(nfa.successors(q, a))) return false;
    return true;
}

TransferGraph maximal_graph(const Nfa& nfa, Support s, Letter a) {
    TransferGraph g(nfa.num_states());
    for (State q : s) g.set_row(q, nfa.successors(q, a));
    return g;
}

Support post_support(const Nfa& nfa, Support s, Letter a) { return nfa.post(s, a); }

Support coreachable(const Nfa& nfa) {
    Support good = StateSet::singleton(nfa.target());
    for (bool grew = true; grew;) {
        grew = false;
        for (State q = 0; q < nfa.num_states(); ++q) {
            if (good.contains(q)) continue;
            for (Letter a = 0; a < nfa.num_letters(); ++a) {
                if (nfa.successors(q, a).intersects(good)) {
                    good.insert(q);
                    grew = true;
                    break;
                }
            }
        }
    }
    return good;
}

CompatibleGraphs::CompatibleGraphs(const Nfa& nfa, Support s, Letter a) : num_states_(nfa.num_states()) {
    for (State q : s) {
        sources_.push_back(q);
        choices_.push_back(nfa.successors(q, a));
    }
}

std::size_t CompatibleGraphs::count() const {
    std::size_t n = 1;
    for (StateSet c : choices_) {
        std::size_t k = c.size() >= 63 ? std::numeric_limits<std::size_t>::max() : (std::size_t{1} << c.size()) - 1;
        if (k != 0 && n > std::numeric_limits<std::size_t>::max() / k) return std::numeric_limits<std::size_t>::max();
        n *= k;
    }
    return n;
}

bool CompatibleGraphs::next(TransferGraph& out) {
    if (done_) return false;
    if (!started_) {
        started_ = true;
        current_.resize(sources_.size());
        for (std::size_t i = 0; i < sources_.size(); ++i) {
            std::uint64_t d = choices_[i].bits();
            current_[i] = d & (~d + 1);  // lowest set bit
        }
    } else {
        std::size_t i = sources_.size();
        for (;;) {
            if (i == 0) {
                done_ = true;
                return false;
            }
            --i;
            std::uint64_t d = choices_[i].bits();
            // next nonempty submask of d in increasing numeric order
            std::uint64_t nxt = ((current_[i] | ~d) + 1) & d;
            if (nxt != 0) {
                current_[i] = nxt;
                break;
            }
            current_[i] = d & (~d + 1);
        }
    }
    out = TransferGraph(num_states_);
    for (std::size_t i = 0; i < sources_.size(); ++i) out.set_row(sources_[i], StateSet{current_[i]});
    return true;
}

std::vector<TransferGraph> compatible_graphs(const Nfa& nfa, Support s, Letter a) {
    std::vector<TransferGraph> out;
    CompatibleGraphs gen(nfa, s, a);
    TransferGraph g;
    while (gen.next(g)) out.push_back(g);
    return out;
}

SupportGameResult solve_support_game(const Nfa& nfa) {
    const Support start = Support::singleton(nfa.initial());
    const Support goal = Support::singleton(nfa.target());
    struct Parent {
        Support from;
        Letter via;
    };
    std::unordered_map<Support, Parent> parent;
    parent.emplace(start, Parent{start, 0});
    std::deque<Support> queue{start};
    std::vector<Support> order;
    while (!queue.empty()) {
        Support s = queue.front();
        queue.pop_front();
        order.push_back(s);
        if (s == goal) {
            SupportGameResult r;
            r.winner = Player::one;
            for (Support cur = s; cur != start; cur = parent.at(cur).from) r.witness.push_back(parent.at(cur).via);
            std::reverse(r.witness.begin(), r.witness.end());
            return r;
        }
        for (Letter a = 0; a < nfa.num_letters(); ++a) {
            Support t = post_support(nfa, s, a);
            if (parent.emplace(t, Parent{s, a}).second) queue.push_back(t);
        }
    }
    SupportGameResult r;
    r.winner = Player::two;
    r.safe_supports = std::move(order);
    return r;
}

}  // namespace popctl
