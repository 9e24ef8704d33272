"""Closed-path classification of a digraph at a rational angle.

The phase a closed walk accumulates is eta times an integer: +1 per one-way
arc traversed forward, -1 per one-way arc traversed backward, 0 across
digons.  Over a spanning tree of the underlying graph, every closed walk's
(weight, parity) pair is an integer combination of the fundamental-cycle
pairs, so congruence tests on the finite basis certify the membership
conditions for all closed paths.  The resulting case fixes the
multiplicities of the eigenvalues +-1 of the normalized eta-Hermitian
adjacency matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cyclotomic import Angle
from .digraph import Digraph, PreconditionError, bipartite_underlying, underlying_edges, weakly_connected


@dataclass(frozen=True)
class CycleClassification:
    case: str                 # "i" | "ii" | "iii" | "iv"
    bipartite: bool
    m1: int
    m_minus1: int
    # (eta-multiple weight, length parity) for each fundamental cycle of G^+-
    generators: tuple[tuple[int, int], ...]


def _arc_weight(g: Digraph, u: int, v: int) -> int:
    if (u, v) in g.arcs:
        return 0 if (v, u) in g.arcs else 1
    return -1


def fundamental_cycle_data(g: Digraph) -> list[tuple[int, int]]:
    """(weight, parity) of one fundamental cycle per non-tree edge of G^+-."""
    edges = underlying_edges(g)
    adj: list[list[int]] = [[] for _ in range(g.n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    # BFS potentials: accumulated weight and depth from the root
    pot = [0] * g.n
    depth = [0] * g.n
    seen = [False] * g.n
    parent = [-1] * g.n
    seen[0] = True
    queue = [0]
    while queue:
        nxt = []
        for x in queue:
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    parent[y] = x
                    pot[y] = pot[x] + _arc_weight(g, x, y)
                    depth[y] = depth[x] + 1
                    nxt.append(y)
        queue = nxt
    data = []
    for u, v in edges:
        if parent[v] == u or parent[u] == v:
            continue
        weight = pot[u] + _arc_weight(g, u, v) - pot[v]
        parity = (depth[u] + depth[v] + 1) & 1
        data.append((weight, parity))
    return data


def classify_cycles(g: Digraph, eta: Angle) -> CycleClassification:
    """Which of the four closed-path phase cases holds, and hence (m1, m-1).

    Requires a weakly connected digraph; compute per component otherwise.
    """
    if not weakly_connected(g):
        raise PreconditionError("cycle classification needs a weakly connected digraph")
    gens = fundamental_cycle_data(g)
    bip = bipartite_underlying(g)
    p, two_q = eta.p, 2 * eta.q
    all_trivial = all(p * w % two_q == 0 for w, _ in gens)
    if all_trivial:
        case = "i" if bip else "ii"
    elif not bip and all((p * w - eta.q * par) % two_q == 0 for w, par in gens):
        case = "iii"
    else:
        case = "iv"
    m1, m_minus1 = {"i": (1, 1), "ii": (1, 0), "iii": (0, 1), "iv": (0, 0)}[case]
    return CycleClassification(case, bip, m1, m_minus1, tuple(gens))
