#pragma once

#include "nestkit/develop.hpp"
#include "nestkit/edge_colouring.hpp"
#include "nestkit/types.hpp"

namespace nestkit {

/// The (v,2,1)-BIBD (every pair a block) with a weak nesting on
/// ceil((5v-1)/4) points, from the residue-appropriate base-block family.
/// Even v lives on Z_{v-1} ∪ {∞}. Throws V_TOO_SMALL below the family's range.
BaseBlockSystem weak_pairs_system(int v);
Developed weak_nest_pairs(int v);

struct StrongPairs {
  Developed nested;
  int colours = 0;  // colours used on the graph of ∞-nested edges
};

/// v ≡ 1 mod 4: edge-colour the graph of edges nested by new points and give
/// every colour class its own new point. Throws INVALID_INPUT on a wrong
/// residue; the colouring is re-checked independently before use.
StrongPairs strong_nest_pairs_1mod4(int v);

/// Base blocks of a cyclic STS(v) (nested = false). v ≡ 1 mod 6 uses a
/// (hooked) Skolem sequence; v ≡ 3 mod 6 uses the short orbit {0, v/3, 2v/3}
/// plus difference triples. Throws NO_CYCLIC_STS for v = 9 or a bad residue.
BaseBlockSystem cyclic_sts(int v);

/// Number of orbits (full and short) of a cyclic system.
int orbit_count(const BaseBlockSystem& system);

/// One fresh new point per orbit; blocks follow develop(system) order.
Nesting nest_cyclic_orbits(const BaseBlockSystem& system);

}  // namespace nestkit
