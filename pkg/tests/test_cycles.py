import pytest

from digraphwalk.cycles import classify_cycles, fundamental_cycle_data
from digraphwalk.cyclotomic import Angle
from digraphwalk.digraph import Digraph, PreconditionError, complete_digraph, make_Y
from digraphwalk.operators import build_H_tilde
from digraphwalk.spectra import eig_hermitian


def undirected_cycle(n: int) -> Digraph:
    arcs = []
    for i in range(n):
        arcs.append((i, (i + 1) % n))
        arcs.append(((i + 1) % n, i))
    return Digraph.of(n, arcs)


def directed_cycle(n: int) -> Digraph:
    return Digraph.of(n, [(i, (i + 1) % n) for i in range(n)])


def test_split_family_always_case_ii():
    for n in (3, 4, 5):
        for a in range(n):
            for eta in (Angle(1, 3), Angle(1, 2), Angle(2, 3)):
                cls = classify_cycles(make_Y(a, n), eta)
                assert cls.case == "ii"
                assert (cls.m1, cls.m_minus1) == (1, 0)


def test_undirected_cycles():
    cls = classify_cycles(undirected_cycle(4), Angle(1, 2))
    assert cls.case == "i" and (cls.m1, cls.m_minus1) == (1, 1)
    cls = classify_cycles(undirected_cycle(3), Angle(2, 3))
    assert cls.case == "ii" and (cls.m1, cls.m_minus1) == (1, 0)


def test_directed_triangle_cases():
    tri = directed_cycle(3)
    # phase 3*eta: at 2pi/3 it is a full turn (case ii); at pi/2 nothing matches
    assert classify_cycles(tri, Angle(2, 3)).case == "ii"
    assert classify_cycles(tri, Angle(1, 2)).case == "iv"
    # total phase 3*eta lands on a half turn for eta = pi/3 and eta = pi,
    # which on an odd cycle is case iii
    assert classify_cycles(tri, Angle(1, 1)).case == "iii"
    assert classify_cycles(tri, Angle(1, 3)).case == "iii"


def test_tree_is_case_i():
    path = Digraph.of(3, [(0, 1), (2, 1)])
    cls = classify_cycles(path, Angle(1, 2))
    assert cls.case == "i"
    assert cls.generators == ()


def test_disconnected_rejected():
    with pytest.raises(PreconditionError):
        classify_cycles(Digraph.of(4, [(0, 1), (2, 3)]), Angle(1, 2))


def test_fundamental_cycle_count():
    g = complete_digraph(4)  # 6 edges, 4 vertices -> 3 independent cycles
    assert len(fundamental_cycle_data(g)) == 3


def test_multiplicities_match_discriminant_spectrum():
    cases = [complete_digraph(3), complete_digraph(4), make_Y(2, 4),
             undirected_cycle(4), undirected_cycle(5), directed_cycle(3),
             directed_cycle(4), Digraph.of(3, [(0, 1), (1, 0), (1, 2), (2, 1), (0, 2)])]
    for g in cases:
        for eta in (Angle(1, 3), Angle(1, 2), Angle(2, 3)):
            cls = classify_cycles(g, eta)
            vals = []
            for e in eig_hermitian(build_H_tilde(g, eta)).entries:
                vals.extend([e.value.real] * e.mult)
            m1 = sum(1 for v in vals if abs(v - 1) <= 1e-8)
            mm1 = sum(1 for v in vals if abs(v + 1) <= 1e-8)
            assert (m1, mm1) == (cls.m1, cls.m_minus1), (g, str(eta), cls.case)
