#include "popctl/gadgets.hh"

#include <array>
#include <charconv>
#include <vector>

#include "popctl/errors.hh"

namespace popctl {

namespace {

struct KindName {
    GadgetKind kind;
    std::string_view name;
    unsigned min_param;
    unsigned max_param;  // 0 = parameter ignored
};

constexpr std::array<KindName, 7> kinds{{
    {GadgetKind::split, "split", 0, 0},
    {GadgetKind::linear, "linear", 1, 61},
    {GadgetKind::time, "time", 0, 0},
    {GadgetKind::counter, "counter", 1, 30},
    {GadgetKind::doubleexp, "doubleexp", 1, 28},
    {GadgetKind::nested, "nested", 1, 15},
    {GadgetKind::memory_example, "memory-example", 0, 0},
}};

const KindName& info(GadgetKind k) {
    for (const auto& e : kinds)
        if (e.kind == k) return e;
    throw ValidationError("unknown gadget kind");
}

Nfa split_gadget() {
    NfaBuilder b;
    State q0 = b.add_state("q0"), q1 = b.add_state("q1"), q2 = b.add_state("q2"), f = b.add_state("f");
    Letter a = b.add_letter("a"), bb = b.add_letter("b"), d = b.add_letter("delta");
    b.set_initial(q0);
    b.set_target(f);
    b.add_loop(q0, {a, bb});
    b.add_edge(q0, d, q1);
    b.add_edge(q0, d, q2);
    b.add_loop(q1, {d});
    b.add_edge(q1, a, f);
    b.add_edge(q1, bb, q0);
    b.add_loop(q2, {d});
    b.add_edge(q2, bb, f);
    b.add_edge(q2, a, q0);
    b.add_loop(f, {a, bb, d});
    return b.build();
}

// b sends q0 to every middle state and every middle state
// back to q0; from q_i every a_j with j != i reaches f.
Nfa linear_gadget(unsigned c) {
    NfaBuilder b;
    State q0 = b.add_state("q0");
    std::vector<State> mid;
    for (unsigned i = 1; i <= c; ++i) mid.push_back(b.add_state("q" + std::to_string(i)));
    State f = b.add_state("f");
    std::vector<Letter> as;
    for (unsigned i = 1; i <= c; ++i) as.push_back(b.add_letter("a" + std::to_string(i)));
    Letter bl = b.add_letter("b");
    b.set_initial(q0);
    b.set_target(f);
    for (unsigned i = 0; i < c; ++i) {
        b.add_edge(q0, bl, mid[i]);
        b.add_edge(mid[i], bl, q0);
        for (unsigned j = 0; j < c; ++j)
            if (j != i) b.add_edge(mid[i], as[j], f);
    }
    for (Letter a : as) b.add_edge(f, a, f);
    b.add_edge(f, bl, f);
    // The losing sink is always materialized, even for c = 1 where nothing else
    // would need it (q1 has no a-edge at all then).
    b.add_state(std::string(sink_name));
    return b.build();
}

constexpr std::array<std::string_view, 6> time_letters{"try", "retry", "top", "bot", "keep", "restart"};

// One try/keep level per iteration; level 1 is the outermost. Level j+1 replaces the
// try-edge q0_j -> qtop_j, and its top/bot lead to qtop_j. Letters of deeper levels
// are looped on by the waiting states of shallower ones; letters of shallower levels
// kill tokens inside deeper ones.
Nfa nested_gadget(unsigned levels) {
    NfaBuilder b;
    auto suffix = [](unsigned j) { return j == 1 ? std::string() : "_" + std::to_string(j); };
    struct Level {
        State q0, qtop, qbot, k;
        std::array<Letter, 6> letters;
    };
    std::vector<Level> lv(levels);
    for (unsigned j = 0; j < levels; ++j) {
        auto s = suffix(j + 1);
        lv[j].q0 = b.add_state("q0" + s);
        lv[j].qtop = b.add_state("qtop" + s);
        lv[j].qbot = b.add_state("qbot" + s);
        lv[j].k = b.add_state("k" + s);
    }
    State f = b.add_state("f");
    for (unsigned j = 0; j < levels; ++j)
        for (std::size_t i = 0; i < time_letters.size(); ++i)
            lv[j].letters[i] = b.add_letter(std::string(time_letters[i]) + suffix(j + 1));
    b.set_initial(lv[0].q0);
    b.set_target(f);

    enum { TRY, RETRY, TOP, BOT, KEEP, RESTART };
    for (unsigned j = 0; j < levels; ++j) {
        const Level& L = lv[j];
        const auto& x = L.letters;
        State exit = j == 0 ? f : lv[j - 1].qtop;
        State entry = j + 1 < levels ? lv[j + 1].q0 : L.qtop;
        b.add_edge(L.q0, x[TRY], entry);
        b.add_edge(L.q0, x[TRY], L.qbot);
        b.add_edge(L.qtop, x[KEEP], L.q0);
        b.add_edge(L.qtop, x[TOP], exit);
        b.add_edge(L.qbot, x[KEEP], L.k);
        b.add_edge(L.qbot, x[BOT], exit);
        b.add_edge(L.k, x[RESTART], L.q0);
        for (std::size_t i = 0; i < x.size(); ++i)
            if (i != RESTART) b.add_edge(L.k, x[i], L.k);
        for (unsigned d = j + 1; d < levels; ++d) {
            for (Letter a : lv[d].letters) {
                b.add_edge(L.qtop, a, L.qtop);
                b.add_edge(L.qbot, a, L.qbot);
                b.add_edge(L.k, a, L.k);
            }
        }
    }
    for (const Level& L : lv)
        for (Letter a : L.letters) b.add_edge(f, a, f);
    b.add_state(std::string(sink_name));
    return b.build();
}

Nfa memory_example() {
    NfaBuilder b;
    std::array<State, 5> q;
    for (unsigned i = 0; i < 5; ++i) q[i] = b.add_state("q" + std::to_string(i));
    State f = b.add_state("f");
    Letter a = b.add_letter("a"), bb = b.add_letter("b"), c = b.add_letter("c");
    b.set_initial(q[0]);
    b.set_target(f);
    b.add_edge(q[1], a, q[2]);
    b.add_edge(q[2], a, q[1]);
    b.add_edge(q[3], a, q[4]);
    b.add_edge(q[4], a, q[3]);
    b.add_edge(q[1], bb, q[1]);
    b.add_edge(q[2], bb, q[3]);
    b.add_edge(q[3], bb, q[2]);
    b.add_edge(q[3], bb, q[4]);
    b.add_edge(q[4], bb, q[3]);
    for (unsigned i = 1; i <= 4; ++i) b.add_edge(q[0], c, q[i]);
    for (unsigned i : {1U, 3U, 4U}) b.add_edge(q[i], c, f);
    // f loops on every letter so the target is absorbing like in the other fixtures.
    b.add_loop(f, {a, bb, c});
    return b.build();
}

// Counter over n bits: c0 --any alpha--> every l_i. l_i --alpha_i--> h_i,
// h_i --alpha_j (j > i)--> l_i, alpha_j (j < i) loops, everything else dies.
void add_counter(NfaBuilder& b, unsigned n, State c0, const std::vector<State>& l, const std::vector<State>& h,
                 const std::vector<std::vector<Letter>>& alpha) {
    // alpha[i] lists every letter whose counter component is alpha_{i+1}.
    for (unsigned i = 0; i < n; ++i) {
        for (Letter x : alpha[i])
            for (unsigned t = 0; t < n; ++t) b.add_edge(c0, x, l[t]);
    }
    for (unsigned i = 0; i < n; ++i) {
        for (unsigned j = 0; j < n; ++j) {
            for (Letter x : alpha[j]) {
                if (j == i) {
                    b.add_edge(l[i], x, h[i]);
                } else if (j > i) {
                    b.add_edge(h[i], x, l[i]);
                } else {
                    b.add_edge(l[i], x, l[i]);
                    b.add_edge(h[i], x, h[i]);
                }
            }
        }
    }
}

Nfa counter_gadget(unsigned n) {
    NfaBuilder b;
    State c0 = b.add_state("c0");
    std::vector<State> l, h;
    for (unsigned i = 1; i <= n; ++i) l.push_back(b.add_state("l" + std::to_string(i)));
    for (unsigned i = 1; i <= n; ++i) h.push_back(b.add_state("h" + std::to_string(i)));
    State goal = b.add_state("goal");
    std::vector<std::vector<Letter>> alpha;
    for (unsigned i = 1; i <= n; ++i) alpha.push_back({b.add_letter("alpha" + std::to_string(i))});
    // The standalone counter has no target of its own: star collects every live
    // counter state into goal.
    Letter star = b.add_letter("star");
    b.set_initial(c0);
    b.set_target(goal);
    add_counter(b, n, c0, l, h, alpha);
    b.add_edge(c0, star, goal);
    for (unsigned i = 0; i < n; ++i) {
        b.add_edge(l[i], star, goal);
        b.add_edge(h[i], star, goal);
    }
    for (Letter x = 0; x <= star; ++x) b.add_edge(goal, x, goal);
    b.add_state(std::string(sink_name));
    return b.build();
}

// Disjoint union of the split gadget and counter(n) behind a fresh start state.
// Letters are pairs "x.alphai"; each component reacts to its own half. star sends
// f and every live counter state to goal, every other state to the sink.
Nfa doubleexp_gadget(unsigned n) {
    NfaBuilder b;
    State start = b.add_state("start");
    State q0 = b.add_state("q0"), q1 = b.add_state("q1"), q2 = b.add_state("q2"), f = b.add_state("f");
    State c0 = b.add_state("c0");
    std::vector<State> l, h;
    for (unsigned i = 1; i <= n; ++i) l.push_back(b.add_state("l" + std::to_string(i)));
    for (unsigned i = 1; i <= n; ++i) h.push_back(b.add_state("h" + std::to_string(i)));
    State goal = b.add_state("goal");

    Letter init = b.add_letter("init");
    constexpr std::array<std::string_view, 3> split_letters{"a", "b", "delta"};
    // pair[x][i] is the letter (split letter x, counter letter alpha_{i+1})
    std::array<std::vector<Letter>, 3> pair;
    for (unsigned x = 0; x < 3; ++x)
        for (unsigned i = 1; i <= n; ++i)
            pair[x].push_back(b.add_letter(std::string(split_letters[x]) + ".alpha" + std::to_string(i)));
    Letter star = b.add_letter("star");
    b.set_initial(start);
    b.set_target(goal);

    b.add_edge(start, init, q0);
    b.add_edge(start, init, c0);

    enum { A, B, D };
    for (unsigned i = 0; i < n; ++i) {
        b.add_edge(q0, pair[A][i], q0);
        b.add_edge(q0, pair[B][i], q0);
        b.add_edge(q0, pair[D][i], q1);
        b.add_edge(q0, pair[D][i], q2);
        b.add_edge(q1, pair[D][i], q1);
        b.add_edge(q1, pair[A][i], f);
        b.add_edge(q1, pair[B][i], q0);
        b.add_edge(q2, pair[D][i], q2);
        b.add_edge(q2, pair[B][i], f);
        b.add_edge(q2, pair[A][i], q0);
        for (unsigned x = 0; x < 3; ++x) b.add_edge(f, pair[x][i], f);
    }

    std::vector<std::vector<Letter>> alpha(n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned x = 0; x < 3; ++x) alpha[i].push_back(pair[x][i]);
    add_counter(b, n, c0, l, h, alpha);

    b.add_edge(f, star, goal);
    b.add_edge(c0, star, goal);
    for (unsigned i = 0; i < n; ++i) {
        b.add_edge(l[i], star, goal);
        b.add_edge(h[i], star, goal);
    }
    for (Letter x = 0; x <= star; ++x) b.add_edge(goal, x, goal);
    b.add_state(std::string(sink_name));
    return b.build();
}

}  // namespace

std::string to_string(GadgetKind kind) { return std::string(info(kind).name); }

GadgetSpec parse_gadget_spec(std::string_view text) {
    auto colon = text.find(':');
    std::string_view name = text.substr(0, colon);
    GadgetSpec spec;
    bool found = false;
    for (const auto& e : kinds) {
        if (e.name == name) {
            spec.kind = e.kind;
            found = true;
        }
    }
    if (!found) throw ValidationError("unknown gadget kind '" + std::string(name) + "'");
    if (colon != std::string_view::npos) {
        std::string_view num = text.substr(colon + 1);
        auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), spec.parameter);
        if (ec != std::errc{} || ptr != num.data() + num.size() || num.empty())
            throw ValidationError("bad gadget parameter '" + std::string(num) + "'");
    }
    return spec;
}

Nfa generate(const GadgetSpec& spec) {
    const KindName& k = info(spec.kind);
    if (k.max_param != 0 && (spec.parameter < k.min_param || spec.parameter > k.max_param)) {
        throw ValidationError(std::string(k.name) + " parameter must be in [" + std::to_string(k.min_param) + ", " +
                              std::to_string(k.max_param) + "], got " + std::to_string(spec.parameter));
    }
    switch (spec.kind) {
    case GadgetKind::split: return split_gadget();
    case GadgetKind::linear: return linear_gadget(spec.parameter);
    case GadgetKind::time: return nested_gadget(1);
    case GadgetKind::counter: return counter_gadget(spec.parameter);
    case GadgetKind::doubleexp: return doubleexp_gadget(spec.parameter);
    case GadgetKind::nested: return nested_gadget(spec.parameter);
    case GadgetKind::memory_example: return memory_example();
    }
    throw ValidationError("unknown gadget kind");
}

}  // namespace popctl
