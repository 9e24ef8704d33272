"""Exact characteristic polynomials, Hermitian eigensolving, and the
spectral map between discriminant and transfer-matrix spectra.

Characteristic polynomials are computed division-free (Berkowitz), so
integer inputs give integer coefficients and cyclotomic inputs stay in the
field.  The transfer-matrix spectrum is assembled from the discriminant
spectrum through phi(z) = (z + 1/z)/2 together with the exact +-1
multiplicities from the closed-path classification; a dense complex
eigensolve of the transfer matrix exists only as a cross-checking oracle.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cyclotomic import Angle, CycScalar
from .cycles import classify_cycles
from .digraph import ArcSpace, Digraph, PreconditionError, underlying_edges, weakly_connected
from .operators import OpMatrix, build_H_tilde, build_U_theta

MAX_CHARPOLY_DIM = 64


# -- characteristic polynomials ---------------------------------------------


def berkowitz_charpoly(rows, one, zero):
    """Division-free characteristic polynomial of a square matrix.

    Works over any commutative ring given its one and zero; returns the
    coefficients of det(lambda*I - M), highest degree first (monic).
    """
    n = len(rows)
    if n == 0:
        return [one]
    coeffs = [one, -rows[0][0]]
    for k in range(1, n):
        d = rows[k][k]
        r = rows[k][:k]
        c = [rows[j][k] for j in range(k)]
        sub = [row[:k] for row in rows[:k]]
        # moments s_j = r . A^j . c over the leading k x k block
        s = []
        v = c
        for j in range(k):
            acc = zero
            for rt, vt in zip(r, v):
                acc = acc + rt * vt
            s.append(acc)
            if j < k - 1:
                v = [sum((rt * vt for rt, vt in zip(row, v)), zero) for row in sub]
        t_col = [one, -d] + [-x for x in s]
        new = []
        for i in range(k + 2):
            acc = zero
            for j in range(max(0, i - k - 1), min(i, k) + 1):
                acc = acc + t_col[i - j] * coeffs[j]
            new.append(acc)
        coeffs = new
    return coeffs


def charpoly_int(rows) -> list[int]:
    """Characteristic polynomial of an integer matrix, highest degree first."""
    from operator import mul

    n = len(rows)
    if n == 0:
        return [1]
    rows = [list(map(int, row)) for row in rows]
    coeffs = [1, -rows[0][0]]
    for k in range(1, n):
        d = rows[k][k]
        r = rows[k][:k]
        c = [rows[j][k] for j in range(k)]
        sub = [row[:k] for row in rows[:k]]
        s = []
        v = c
        for j in range(k):
            s.append(sum(map(mul, r, v)))
            if j < k - 1:
                v = [sum(map(mul, row, v)) for row in sub]
        t_col = [1, -d] + [-x for x in s]
        new = []
        for i in range(k + 2):
            acc = 0
            for j in range(max(0, i - k - 1), min(i, k) + 1):
                acc += t_col[i - j] * coeffs[j]
            new.append(acc)
        coeffs = new
    return coeffs


@dataclass(frozen=True)
class CharPoly:
    """Exact monic characteristic polynomial; constant term first.

    ``ring`` tags the coefficient domain; ``real_certified`` records the
    exact check that every coefficient equals its own conjugate."""

    coeffs: tuple[CycScalar, ...]
    ring: str
    real_certified: bool

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def to_json(self) -> str:
        return json.dumps({
            "coeffs": [c.render() for c in self.coeffs],
            "ring": self.ring,
            "real": self.real_certified,
        })

    def __str__(self):
        return " + ".join(f"({c.render()})*x^{k}" for k, c in enumerate(self.coeffs)
                          if not c.is_zero()) or "0"


def _classify_ring(coeffs) -> str:
    if all(c.is_rational() for c in coeffs):
        if all(c.rational_value().denominator == 1 for c in coeffs):
            return "integer"
        return "rational"
    if all(c.imag_is_zero() for c in coeffs):
        return "cyclotomic-real"
    return "cyclotomic"


def charpoly_exact(m: OpMatrix) -> CharPoly:
    """Exact characteristic polynomial of a square operator matrix.

    Square-root-annotated matrices diag(1/sqrt(d)) A diag(1/sqrt(d)) are
    handled through the exact similar matrix diag(1/d) A."""
    if not m.is_square():
        raise PreconditionError("characteristic polynomial of a non-square matrix")
    n = m.row_space.dim
    if n > MAX_CHARPOLY_DIM:
        raise PreconditionError(f"dimension {n} exceeds the exact-charpoly bound {MAX_CHARPOLY_DIM}")
    self_adjoint = m.is_self_adjoint()
    if m.row_sqrt is not None or m.col_sqrt is not None:
        if m.row_sqrt != m.col_sqrt:
            raise PreconditionError("charpoly of an asymmetrically annotated matrix")
        d = m.row_sqrt
        rows = [[m.data[i][j] * Fraction(1, d[i]) for j in range(n)] for i in range(n)]
    else:
        rows = [list(r) for r in m.data]
    ints = _try_integer_rows(rows)
    if ints is not None:
        desc = charpoly_int(ints)
        coeffs = tuple(CycScalar.rational(c) for c in reversed(desc))
    else:
        zero = CycScalar.rational(0)
        one = CycScalar.rational(1)
        desc = berkowitz_charpoly(rows, one, zero)
        coeffs = tuple(reversed(desc))
    if self_adjoint:
        for c in coeffs:
            if not c.imag_is_zero():
                raise ArithmeticError("self-adjoint input produced a non-real coefficient")
    ring = _classify_ring(coeffs)
    return CharPoly(coeffs, ring, real_certified=self_adjoint or ring in ("integer", "rational"))


def _try_integer_rows(rows) -> list[list[int]] | None:
    out = []
    for row in rows:
        orow = []
        for x in row:
            if not x.is_rational():
                return None
            f = x.rational_value()
            if f.denominator != 1:
                return None
            orow.append(f.numerator)
        out.append(orow)
    return out


def cospectral_key(p: CharPoly) -> bytes:
    """Canonical byte string; equal keys iff equal polynomials (fixed ring)."""
    parts = []
    for c in p.coeffs:
        if c.is_rational():
            parts.append(str(c.rational_value()))
        else:
            parts.append(f"o{c.m}[" + ",".join(f"{n}/{c.den}" for n in c.num) + "]")
    return ";".join(parts).encode()


# -- floating spectra ----------------------------------------------------------


@dataclass(frozen=True)
class EigEntry:
    value: complex
    mult: int
    exact: str | None = None


@dataclass(frozen=True)
class SpectrumSummary:
    entries: tuple[EigEntry, ...]
    source: str      # "eigensolver" | "mapping-theorem" | "closed-form"
    dim: int

    def total_multiplicity(self) -> int:
        return sum(e.mult for e in self.entries)

    def as_multiset(self) -> list[complex]:
        out: list[complex] = []
        for e in self.entries:
            out.extend([e.value] * e.mult)
        return sorted(out, key=lambda z: (round(z.real, 9), round(z.imag, 9)))

    def to_json(self) -> str:
        return json.dumps({
            "eigs": [{"re": e.value.real, "im": e.value.imag, "mult": e.mult}
                     for e in self.entries],
            "source": self.source,
        })


EIG_RESIDUAL_TOL = 1e-10
CLUSTER_GAP = 1e-7


def _cluster(values, gap=CLUSTER_GAP):
    groups: list[list[float]] = []
    for v in values:
        if groups and abs(v - groups[-1][-1]) <= gap:
            groups[-1].append(v)
        else:
            groups.append([v])
    return groups


def eig_hermitian(m: OpMatrix) -> SpectrumSummary:
    """Floating spectrum of an exactly self-adjoint matrix, sorted ascending."""
    if not m.is_self_adjoint():
        raise PreconditionError("matrix is not exactly self-adjoint")
    arr = m.to_complex_array()
    vals, vecs = np.linalg.eigh(arr)
    for i, lam in enumerate(vals):
        residual = np.linalg.norm(arr @ vecs[:, i] - lam * vecs[:, i])
        if residual > EIG_RESIDUAL_TOL:
            raise ArithmeticError(f"eigenpair residual {residual:.2e} above bound")
    entries = tuple(EigEntry(complex(grp[0], 0.0), len(grp))
                    for grp in _cluster(list(vals)))
    return SpectrumSummary(entries, "eigensolver", dim=arr.shape[0])


def eig_unitary_oracle(m: OpMatrix) -> list[complex]:
    """Dense complex eigensolve of the floating image (validation oracle only)."""
    vals = np.linalg.eig(m.to_complex_array())[0]
    return sorted((complex(v) for v in vals), key=lambda z: (z.real, z.imag))


def phi_inverse(mu: float) -> tuple[complex, complex]:
    """The two unit-circle preimages of mu under phi(z) = (z + 1/z)/2.

    The pair coincides at mu = +-1."""
    if abs(mu) > 1 + 1e-12:
        raise PreconditionError(f"|mu| = {abs(mu)} exceeds 1")
    mu = min(1.0, max(-1.0, float(mu)))
    s = (1.0 - mu * mu) ** 0.5
    return complex(mu, s), complex(mu, -s)


def spectrum_U_via_mapping(g: Digraph, eta: Angle) -> SpectrumSummary:
    """Spectrum of the transfer matrix assembled from the discriminant.

    Discriminant eigenvalues come from the Hermitian eigensolver; the exact
    multiplicities of +-1 come from the closed-path classification, and the
    extra +-1 eigenvalues have multiplicity max(0, |E| - |V| + m_eps) on the
    positive-degree vertex set."""
    if not weakly_connected(g):
        raise PreconditionError(
            "spectral mapping requires a weakly connected digraph; "
            "compute per weak component instead")
    space = ArcSpace(g)
    if not space.arcs:
        raise PreconditionError("digraph has no arcs")
    cls = classify_cycles(g, eta)
    n_edges = len(underlying_edges(g))
    n_vertices = sum(1 for d in space.degree if d > 0)
    htilde = build_H_tilde(g, eta)
    disc = eig_hermitian(htilde)
    vals = []
    for e in disc.entries:
        vals.extend([e.value.real] * e.mult)
    vals.sort()
    m1, mm1 = cls.m1, cls.m_minus1
    for lam in vals[:mm1]:
        if abs(lam + 1) > 1e-8:
            raise ArithmeticError(f"expected discriminant eigenvalue -1, got {lam}")
    for lam in vals[len(vals) - m1:]:
        if abs(lam - 1) > 1e-8:
            raise ArithmeticError(f"expected discriminant eigenvalue 1, got {lam}")
    interior = vals[mm1:len(vals) - m1] if m1 or mm1 else vals
    big_m1 = max(0, n_edges - n_vertices + m1)
    big_mm1 = max(0, n_edges - n_vertices + mm1)
    entries: list[EigEntry] = []
    if m1 + big_m1:
        entries.append(EigEntry(complex(1, 0), m1 + big_m1, exact="1"))
    if mm1 + big_mm1:
        entries.append(EigEntry(complex(-1, 0), mm1 + big_mm1, exact="-1"))
    for grp in _cluster(interior):
        mu = grp[0]
        up, down = phi_inverse(mu)
        entries.append(EigEntry(up, len(grp), exact=f"phi_inv({mu:.12g},+)"))
        entries.append(EigEntry(down, len(grp), exact=f"phi_inv({mu:.12g},-)"))
    out = SpectrumSummary(tuple(entries), "mapping-theorem", dim=len(space.arcs))
    if out.total_multiplicity() != len(space.arcs):
        raise ArithmeticError(
            f"assembled multiplicity {out.total_multiplicity()} != arc count {len(space.arcs)}")
    return out


def spectrum_U_oracle(g: Digraph, eta: Angle) -> SpectrumSummary:
    """Transfer-matrix spectrum by dense complex eigensolve (oracle route)."""
    u = build_U_theta(g, eta)
    vals = eig_unitary_oracle(u)
    entries = tuple(EigEntry(v, 1) for v in vals)
    return SpectrumSummary(entries, "eigensolver", dim=len(vals))


# -- floating-angle path ---------------------------------------------------
#
# Angles that are not rational multiples of pi have no exact scalar field;
# they are supported only here, as plain complex matrices.


def build_U_theta_float(g: Digraph, eta: float) -> np.ndarray:
    space = ArcSpace(g)
    if not space.arcs:
        raise PreconditionError("digraph has no arcs")
    n = len(space)
    coin = np.zeros((n, n))
    for i in range(n):
        d = space.degree[space.terminus[i]]
        for j in range(n):
            if space.terminus[j] == space.terminus[i]:
                coin[i, j] = 2.0 / d - (1.0 if i == j else 0.0)
    shift = np.zeros((n, n), dtype=complex)
    for j in range(n):
        shift[space.inv[j], j] = np.exp(1j * eta * space.theta_weight[j])
    return shift @ coin


def build_H_tilde_float(g: Digraph, eta: float) -> np.ndarray:
    space = ArcSpace(g)
    if not space.arcs:
        raise PreconditionError("digraph has no arcs")
    verts = [v for v in range(g.n) if space.degree[v] > 0]
    n = len(verts)
    out = np.zeros((n, n), dtype=complex)
    for a, x in enumerate(verts):
        for b, y in enumerate(verts):
            fwd, bwd = (x, y) in g.arcs, (y, x) in g.arcs
            if fwd or bwd:
                phase = 1.0 if (fwd and bwd) else np.exp(1j * eta * (1 if fwd else -1))
                out[a, b] = phase / (space.degree[x] * space.degree[y]) ** 0.5
    return out


def spectrum_U_float(g: Digraph, eta: float) -> SpectrumSummary:
    """Dense transfer-matrix spectrum at an arbitrary real angle."""
    u = build_U_theta_float(g, eta)
    vals = np.linalg.eig(u)[0]
    for v in vals:
        if abs(abs(v) - 1) > 1e-9:
            raise ArithmeticError(f"eigenvalue {v} off the unit circle")
    ordered = sorted((complex(v) for v in vals), key=lambda z: (z.real, z.imag))
    entries = tuple(EigEntry(v, 1) for v in ordered)
    return SpectrumSummary(entries, "eigensolver", dim=len(ordered))


def spectra_match(a: SpectrumSummary, b: SpectrumSummary, tol: float = 1e-8) -> bool:
    """Multiset comparison after lexicographic sorting."""
    xs, ys = a.as_multiset(), b.as_multiset()
    if len(xs) != len(ys):
        return False
    return all(abs(x - y) <= tol for x, y in zip(xs, ys))
