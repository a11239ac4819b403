#pragma once

#include <string_view>

#include "sawlab/graph.hpp"

namespace sawlab {

// Doubly-infinite ladder Z × {0,1}.
RulePtr make_ladder();
// Honeycomb lattice in axial coordinates with a sublattice bit.
RulePtr make_hexagonal();
// Z with a single edge {2k−1, 2k} and Δ−1 parallel edges {2k, 2k+1}.
RulePtr make_loop(int degree);
// Δ-regular tree rooted at (0, 0).
RulePtr make_tree(int degree);

// Line with a K4-minus-an-edge-plus-subdivision gadget hung from every vertex:
// gadget vertices s, a, b, c, d with s ~ v, s ~ a, s ~ b and {a,b,c,d} a K4
// without the edge ab. s is a cut vertex, so walks entering a gadget stay there.
RulePtr make_decorated_line3();
// Line with a K5-minus-{a,b} gadget at every vertex, a and b joined to the line
// vertex. A walk entering through a cannot leave through b.
RulePtr make_decorated_line4();

// Tree T_Δ with every edge replaced by a path of 2ℓ−1 edges that alternates
// single edges and bundles of Δ−1 parallel edges, starting and ending with a
// single edge. ℓ = 1 is T_Δ itself; as ℓ grows the chains look like LG_Δ.
// Connective constant (Δ−1)^{ℓ/(2ℓ−1)}.
RulePtr make_interpolation(int degree, int segment_length);

// Grammar: ladder | hex | loop:Δ | tree:Δ | decor3 | decor4 | interp:Δ:ℓ
// with Δ ≥ 2 and ℓ ≥ 1. Throws SpecError on anything else.
RulePtr parse_family(std::string_view text);

inline constexpr std::string_view kFamilyGrammar =
    "ladder | hex | loop:<D> | tree:<D> | decor3 | decor4 | interp:<D>:<L>  (D >= 2, L >= 1)";

}  // namespace sawlab
