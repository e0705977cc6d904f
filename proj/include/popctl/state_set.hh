// Dense state sets and transfer graphs over at most 64 NFA states.

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace popctl {

using State = std::uint32_t;
using Letter = std::uint32_t;

inline constexpr std::size_t max_states = 64;

/// A set of state indices stored as a 64-bit pattern.
class StateSet {
public:
    constexpr StateSet() = default;
    constexpr explicit StateSet(std::uint64_t bits) : bits_(bits) {}

    static constexpr StateSet singleton(State q) { return StateSet{std::uint64_t{1} << q}; }
    static constexpr StateSet prefix(std::size_t n) {
        return StateSet{n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1};
    }

    constexpr std::uint64_t bits() const { return bits_; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
    constexpr bool contains(State q) const { return (bits_ >> q) & 1U; }
    constexpr void insert(State q) { bits_ |= std::uint64_t{1} << q; }
    constexpr void erase(State q) { bits_ &= ~(std::uint64_t{1} << q); }
    constexpr bool subset_of(StateSet other) const { return (bits_ & ~other.bits_) == 0; }
    constexpr bool intersects(StateSet other) const { return (bits_ & other.bits_) != 0; }
    constexpr State first() const { return static_cast<State>(std::countr_zero(bits_)); }

    constexpr StateSet operator|(StateSet o) const { return StateSet{bits_ | o.bits_}; }
    constexpr StateSet operator&(StateSet o) const { return StateSet{bits_ & o.bits_}; }
    constexpr StateSet minus(StateSet o) const { return StateSet{bits_ & ~o.bits_}; }
    constexpr StateSet& operator|=(StateSet o) { bits_ |= o.bits_; return *this; }
    constexpr StateSet& operator&=(StateSet o) { bits_ &= o.bits_; return *this; }
    constexpr bool operator==(const StateSet&) const = default;
    constexpr auto operator<=>(const StateSet&) const = default;

    class iterator {
    public:
        using value_type = State;
        using difference_type = std::ptrdiff_t;
        constexpr iterator() = default;
        constexpr explicit iterator(std::uint64_t rest) : rest_(rest) {}
        constexpr State operator*() const { return static_cast<State>(std::countr_zero(rest_)); }
        constexpr iterator& operator++() { rest_ &= rest_ - 1; return *this; }
        constexpr iterator operator++(int) { auto t = *this; ++*this; return t; }
        constexpr bool operator==(const iterator&) const = default;
    private:
        std::uint64_t rest_ = 0;
    };
    constexpr iterator begin() const { return iterator{bits_}; }
    constexpr iterator end() const { return iterator{}; }

private:
    std::uint64_t bits_ = 0;
};

/// A relation on states: row q holds the successors of q in one synchronous step.
/// dom and im are always recomputed from the rows.
class TransferGraph {
public:
    TransferGraph() = default;
    explicit TransferGraph(std::size_t num_states) : rows_(num_states) {}
    TransferGraph(std::size_t num_states, std::initializer_list<std::pair<State, State>> edges);

    static TransferGraph identity(std::size_t num_states, StateSet on);

    std::size_t num_states() const { return rows_.size(); }
    StateSet row(State q) const { return rows_[q]; }
    void set_row(State q, StateSet r) { rows_[q] = r; }
    void add_edge(State q, State r) { rows_[q].insert(r); }
    bool has_edge(State q, State r) const { return rows_[q].contains(r); }
    bool empty() const;
    std::size_t edge_count() const;

    StateSet dom() const;
    StateSet im() const;
    /// Image of a set of states.
    StateSet apply(StateSet from) const;

    /// Edges in lexicographic (source, target) order.
    std::vector<std::pair<State, State>> edges() const;

    bool operator==(const TransferGraph&) const = default;
    auto operator<=>(const TransferGraph&) const = default;

    const std::vector<StateSet>& rows() const { return rows_; }

private:
    std::vector<StateSet> rows_;
};

/// Relational composition: (a,b) in G.H iff some z has (a,z) in G and (z,b) in H.
TransferGraph compose(const TransferGraph& g, const TransferGraph& h);

std::string to_string(StateSet s);

}  // namespace popctl

template <>
struct std::hash<popctl::StateSet> {
    std::size_t operator()(popctl::StateSet s) const noexcept { return std::hash<std::uint64_t>{}(s.bits()); }
};
