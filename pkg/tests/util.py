"""Shared test fixtures: the worked-example digraph and random generators."""

from __future__ import annotations

import random

from digraphwalk.digraph import Digraph, parse_arc_list

# the four-vertex example: one digon {0,1}, arcs 2->1, 1->3, 3->2
FIG_ARCS = "n=4; 0->1; 1->0; 2->1; 1->3; 3->2"


def fig_digraph() -> Digraph:
    return parse_arc_list(FIG_ARCS)


def random_digraph(rng: random.Random, n: int, density: float = 0.5) -> Digraph:
    arcs = set()
    for i in range(n):
        for j in range(n):
            if i != j and rng.random() < density:
                arcs.add((i, j))
    return Digraph(n, frozenset(arcs))


def random_connected_digraph(rng: random.Random, n: int, density: float = 0.5) -> Digraph:
    from digraphwalk.digraph import weakly_connected

    while True:
        g = random_digraph(rng, n, density)
        if g.arcs and weakly_connected(g):
            return g
