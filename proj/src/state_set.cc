#include "popctl/state_set.hh"

namespace popctl {

TransferGraph::TransferGraph(std::size_t num_states, std::initializer_list<std::pair<State, State>> edges)
    : rows_(num_states) {
    for (auto [q, r] : edges) add_edge(q, r);
}

TransferGraph TransferGraph::identity(std::size_t num_states, StateSet on) {
    TransferGraph g(num_states);
    for (State q : on) g.rows_[q] = StateSet::singleton(q);
    return g;
}

bool TransferGraph::empty() const {
    for (StateSet r : rows_)
        if (!r.empty()) return false;
    return true;
}

std::size_t TransferGraph::edge_count() const {
    std::size_t n = 0;
    for (StateSet r : rows_) n += r.size();
    return n;
}

StateSet TransferGraph::dom() const {
    StateSet d;
    for (State q = 0; q < rows_.size(); ++q)
        if (!rows_[q].empty()) d.insert(q);
    return d;
}

StateSet TransferGraph::im() const {
    StateSet s;
    for (StateSet r : rows_) s |= r;
    return s;
}

StateSet TransferGraph::apply(StateSet from) const {
    StateSet s;
    for (State q : from) s |= rows_[q];
    return s;
}

std::vector<std::pair<State, State>> TransferGraph::edges() const {
    std::vector<std::pair<State, State>> out;
    for (State q = 0; q < rows_.size(); ++q)
        for (State r : rows_[q]) out.emplace_back(q, r);
    return out;
}

TransferGraph compose(const TransferGraph& g, const TransferGraph& h) {
    TransferGraph out(g.num_states());
    for (State q = 0; q < g.num_states(); ++q) out.set_row(q, h.apply(g.row(q)));
    return out;
}

std::string to_string(StateSet s) {
    std::string out = "{";
    bool first = true;
    for (State q : s) {
        if (!first) out += ',';
        out += std::to_string(q);
        first = false;
    }
    return out + "}";
}

}  // namespace popctl
