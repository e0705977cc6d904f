// Generators for the fixture families (split, linear cut-off, try/keep timing,
// binary counter, doubly-exponential cut-off, nested timing, memory example).

#pragma once

#include <string>
#include <string_view>

#include "popctl/nfa.hh"

namespace popctl {

enum class GadgetKind { split, linear, time, counter, doubleexp, nested, memory_example };

struct GadgetSpec {
    GadgetKind kind = GadgetKind::split;
    unsigned parameter = 0;  // c for linear, n for counter/doubleexp, levels for nested
};

/// Accepts "kind" or "kind:N" (e.g. "linear:3", "memory-example").
GadgetSpec parse_gadget_spec(std::string_view text);
std::string to_string(GadgetKind kind);

Nfa generate(const GadgetSpec& spec);

}  // namespace popctl
