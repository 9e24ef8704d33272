"""Positive/negative supports of transfer-matrix powers and the structural
identities that govern the squared walk.

The support of the n-th power reads off the exact sign of the real part of
each entry of D_theta * U_theta^n.  For the angles whose scalar field is
rational or imaginary quadratic (every tabulated angle), the sign data is
obtained from integer matrices: positive diagonal factors are pulled out of
the product symbolically, leaving integer matrix products whose real parts
have rational cosine coefficients, so numpy int64 arithmetic decides every
sign exactly.  Other angles fall back to elementwise exact scalars.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

from .cyclotomic import Angle, CycScalar, make_root, rational_real_coeffs
from .digraph import ArcSpace, Digraph, PreconditionError, digons, is_graph, is_regular
from .operators import (
    IndexSpace,
    NoArcsError,
    OpMatrix,
    arc_space_index,
    build_D_theta,
    build_R,
    build_S,
    build_U_theta,
)


def _sign_value(sign) -> int:
    if sign in (1, -1):
        return sign
    if sign == "+":
        return 1
    if sign == "-":
        return -1
    raise ValueError(f"sign must be '+', '-', 1 or -1, got {sign!r}")


@dataclass(frozen=True)
class SupportMatrix:
    """0/1 matrix on the arc space, with provenance of the extraction."""

    space: IndexSpace
    data: tuple[tuple[int, ...], ...]
    sign: int
    power: int | None = None
    eta: Angle | None = None

    @property
    def dim(self) -> int:
        return self.space.dim

    def trace(self) -> int:
        return sum(self.data[i][i] for i in range(self.dim))

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.data]

    def hadamard(self, other: "SupportMatrix") -> "SupportMatrix":
        if self.space != other.space:
            raise ValueError("arc-space mismatch")
        data = tuple(tuple(x * y for x, y in zip(r, s))
                     for r, s in zip(self.data, other.data))
        return SupportMatrix(self.space, data, self.sign, self.power, self.eta)

    def grid_text(self) -> str:
        header = " ".join(f"{u}>{v}" for u, v in self.space.labels)
        lines = [f"# arcs: {header}"]
        lines.extend(" ".join(str(x) for x in row) for row in self.data)
        return "\n".join(lines)


def support(m: OpMatrix, sign, real_part: bool = False) -> SupportMatrix:
    """0/1 support of a matrix with provably real entries.

    Pass real_part=True to opt into real-part semantics for complex input."""
    want = _sign_value(sign)
    if not real_part:
        for row in m.data:
            for x in row:
                if not x.imag_is_zero():
                    raise PreconditionError(
                        "matrix has non-real entries; pass real_part=True for "
                        "real-part semantics")
    if m.row_sqrt is not None or m.col_sqrt is not None:
        # positive diagonal scaling cannot change signs
        pass
    data = tuple(tuple(1 if x.real_part_sign() == want else 0 for x in row)
                 for row in m.data)
    return SupportMatrix(m.row_space, data, want)


# -- fast exact sign pipeline -------------------------------------------------


def _int_arrays(space: ArcSpace):
    n = len(space)
    t = np.array(space.terminus, dtype=np.int64)
    o = np.array(space.origin, dtype=np.int64)
    inv = np.array(space.inv, dtype=np.int64)
    deg = np.array(space.degree, dtype=np.int64)
    chat = 2 * (t[:, None] == t[None, :]).astype(np.int64) - np.diag(deg[t])
    return n, t, o, inv, deg, chat


def _phase_components(eta: Angle, weights) -> list[np.ndarray]:
    """Basis coordinates of e^{i*theta(a)} per arc (integer, phi(m) columns)."""
    m = eta.order
    root = make_root(eta)
    table = {0: CycScalar.rational(1, m).num, 1: root.num, -1: root.conj().num}
    phi = len(table[0])
    comps = [np.array([table[w][c] for w in weights], dtype=np.int64)
             for c in range(phi)]
    return comps


def sign_data_power(g: Digraph, eta: Angle, n: int) -> np.ndarray | None:
    """Exact sign matrix of Re(D_theta U_theta^n) via integer arithmetic.

    Returns None when the angle's field has no rational real-part form or
    the power is not covered (n > 2); callers then use the scalar path."""
    if n not in (1, 2):
        return None
    re_coeffs = rational_real_coeffs(eta.order)
    if re_coeffs is None and n != 1:
        return None
    space = ArcSpace(g)
    if not space.arcs:
        raise NoArcsError("digraph has no arcs")
    _, t, o, inv, deg, chat = _int_arrays(space)
    s_chat = chat[inv, :]
    if n == 1:
        # D_theta U_theta = U(G^+-) = diag(1/deg o) * (S Chat): real, any angle
        return np.sign(s_chat).astype(np.int64)
    big_l = lcm(*[int(deg[v]) for v in set(space.origin)])
    dm = big_l // deg[o]
    left = s_chat * dm[None, :]
    comps = _phase_components(eta, space.theta_weight)
    prods = [left @ (comp[inv][:, None] * s_chat) for comp in comps]
    # Re = sum_k prods[k] * cos(2 pi k / m); scale to integers
    den = lcm(*[c.denominator for c in re_coeffs])
    re = sum(int(c * den) * p for c, p in zip(re_coeffs, prods))
    return np.sign(re).astype(np.int64)


def grover_square_signs(g: Digraph) -> np.ndarray:
    """Exact sign matrix of U(G^+-)^2 entries (integer route)."""
    space = ArcSpace(g)
    if not space.arcs:
        raise NoArcsError("digraph has no arcs")
    _, t, o, inv, deg, chat = _int_arrays(space)
    s_chat = chat[inv, :]
    big_l = lcm(*[int(deg[v]) for v in set(space.origin)])
    dm = big_l // deg[o]
    return np.sign((s_chat * dm[None, :]) @ s_chat).astype(np.int64)


def digon_locator_array(g: Digraph, space: ArcSpace | None = None) -> np.ndarray:
    space = space or ArcSpace(g)
    mask = np.zeros((g.n, g.n), dtype=np.int64)
    for x, y in digons(g):
        mask[x, y] = mask[y, x] = 1
    o = np.array(space.origin, dtype=np.intp)
    t = np.array(space.terminus, dtype=np.intp)
    return mask[o[:, None], t[None, :]]


def _power_sign_matrix(g: Digraph, eta: Angle, n: int, space: ArcSpace) -> np.ndarray:
    signs = sign_data_power(g, eta, n)
    if signs is None:
        u = build_U_theta(g, eta, space)
        mat = build_D_theta(g, eta, space) @ u.power(n)
        signs = np.array([[x.real_part_sign() for x in row] for row in mat.data],
                         dtype=np.int64)
    return signs


def power_support(g: Digraph, eta: Angle, n: int, sign) -> SupportMatrix:
    """Support of the n-th transfer-matrix power, by the defining sign test."""
    if n < 1:
        raise PreconditionError("power must be >= 1")
    want = _sign_value(sign)
    space = ArcSpace(g)
    if not space.arcs:
        raise NoArcsError("digraph has no arcs")
    signs = _power_sign_matrix(g, eta, n, space)
    data = tuple(tuple(int(v) for v in (signs[i] == want).astype(int))
                 for i in range(signs.shape[0]))
    return SupportMatrix(arc_space_index(space), data, want, power=n, eta=eta)


# -- structural identities -----------------------------------------------------


def eta_regime(eta: Angle) -> int:
    """1 for eta < pi/2, 2 at pi/2, 3 for eta > pi/2."""
    lhs, rhs = 2 * eta.p, eta.q
    return 1 if lhs < rhs else (2 if lhs == rhs else 3)


@dataclass(frozen=True)
class SquareSupportReport:
    eta: Angle
    regime: int
    k: int | None
    precondition_ok: bool     # k-regular with k >= 3
    empirical: bool
    holds: bool
    violations: tuple[tuple[str, int, int], ...]

    def summary(self) -> str:
        status = "holds" if self.holds else f"FAILS ({len(self.violations)} entries)"
        mode = "proved regime" if self.precondition_ok else "empirical probe"
        return (f"square-support formula at eta={self.eta} "
                f"(regime {self.regime}, {mode}): {status}")


def verify_square_support_formula(g: Digraph, eta: Angle) -> SquareSupportReport:
    """Check the three-regime formula for the squared-walk supports entrywise.

    The proved hypothesis is k-regularity with k >= 3; other inputs are
    still checked and reported as an empirical probe."""
    k = is_regular(g)
    precondition_ok = k is not None and k >= 3
    regime = eta_regime(eta)
    space = ArcSpace(g)
    if not space.arcs:
        raise NoArcsError("digraph has no arcs")
    u2 = grover_square_signs(g)
    r = digon_locator_array(g, space)
    signs = _power_sign_matrix(g, eta, 2, space)
    violations: list[tuple[str, int, int]] = []
    for eps in (1, -1):
        lhs = (signs == eps).astype(np.int64)
        u2_eps = (u2 == eps).astype(np.int64)
        u2_meps = (u2 == -eps).astype(np.int64)
        if regime == 1:
            rhs = u2_eps
        elif regime == 2:
            rhs = u2_eps * r
        else:
            rhs = u2_eps * r + u2_meps * (1 - r)
        diff = np.argwhere(lhs != rhs)
        tag = "+" if eps == 1 else "-"
        violations.extend((tag, int(i), int(j)) for i, j in diff)
    return SquareSupportReport(eta, regime, k, precondition_ok,
                               empirical=not precondition_ok,
                               holds=not violations,
                               violations=tuple(violations))


def digon_count_via_trace(g: Digraph, eta: Angle) -> int:
    """Half the trace of the positive squared support.

    Equals |E(G^+-)| below the pi/2 regime and the digon count at or above
    it, whenever the digraph is k-regular with k >= 3 (guaranteed regime);
    returned as-is otherwise."""
    tr = power_support(g, eta, 2, "+").trace()
    if tr % 2:
        raise ArithmeticError("odd support trace; inverse-arc pairing broken")
    return tr // 2


@dataclass(frozen=True)
class NegativeSquareReport:
    precondition_ok: bool
    k: int | None
    holds: bool
    violations: tuple[tuple[int, int], ...]

    def summary(self) -> str:
        if not self.precondition_ok:
            return "negative-square identity: precondition rejected (need undirected, k-regular, k >= 3)"
        return "negative-square identity: " + ("holds" if self.holds
                                               else f"FAILS ({len(self.violations)} entries)")


def verify_square_negative_identity(g: Digraph) -> NegativeSquareReport:
    """Check (U^2)^- = S U^+ + U^+ S for an undirected regular graph, k >= 3."""
    k = is_regular(g)
    ok = is_graph(g) and k is not None and k >= 3
    if not ok:
        return NegativeSquareReport(False, k, False, ())
    space = ArcSpace(g)
    u2 = grover_square_signs(g)
    lhs = (u2 == -1).astype(np.int64)
    u1 = sign_data_power(g, Angle(0, 1), 1)
    uplus = (u1 == 1).astype(np.int64)
    inv = np.array(space.inv)
    rhs = uplus[inv, :] + uplus[:, inv]
    diff = np.argwhere(lhs != rhs)
    return NegativeSquareReport(True, k, diff.size == 0,
                                tuple((int(i), int(j)) for i, j in diff))


def pair_class(space: ArcSpace, i: int, j: int) -> str | None:
    """Combinatorial arc-pair classification behind the squared-walk signs.

    Returns 'i' (equal), 'ii' (common origin), 'iii' (common terminus),
    'iv' (connected through one middle arc), or None when the two-step
    entry vanishes for position reasons."""
    if i == j:
        return "i"
    oa, ta = space.origin[i], space.terminus[i]
    ob, tb = space.origin[j], space.terminus[j]
    if oa == ob:
        return "ii"
    if ta == tb:
        return "iii"
    if tb != oa and ((tb, oa) in space.index):
        return "iv"
    return None


def grover_positive_support_regular(g: Digraph) -> SupportMatrix:
    """U^+ = k S K* K - S for a k-regular graph (k >= 3), built from that formula."""
    k = is_regular(g)
    if k is None or k < 3:
        raise PreconditionError("formula requires a k-regular digraph with k >= 3")
    space = ArcSpace(g)
    s = build_S(g, space)
    # K*K on the arc space is rational: delta(t(a),t(b))/deg t(a)
    n = len(space)
    kk = [[CycScalar.rational(Fraction(1, k)) if space.terminus[a] == space.terminus[b]
           else CycScalar.rational(0) for b in range(n)] for a in range(n)]
    sp = arc_space_index(space)
    kk_m = OpMatrix(sp, sp, kk)
    formula = (s @ kk_m).scaled(k) - s
    return support(formula, "+")
