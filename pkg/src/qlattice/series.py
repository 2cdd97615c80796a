"""Subnormal series, Schreier refinement, Jordan-Hoelder certificates and
composition-series discovery for group-like and function-like inputs."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .exactalg import Subspace, Vec, dot
from .hopfcore import HopfAlgebra, dual, grouplikes
from .isothms import IsoCertificate, ZassenhausResult, factor_section, zassenhaus
from .lattice import QuantumSubgroup, _same, is_normal_in, join, meet


class SeriesError(ValueError):
    def __init__(self, message: str, witness: dict | None = None):
        super().__init__(message)
        self.witness = witness or {}


class Unsupported(ValueError):
    pass


@dataclass
class SubnormalSeries:
    ambient: HopfAlgebra
    picture: str
    chain: list
    normality: list
    normal_in_ambient: list
    factors: list

    @property
    def length(self) -> int:
        return len(self.chain) - 1

    @property
    def is_normal_series(self) -> bool:
        return all(self.normal_in_ambient)

    @property
    def factor_dims(self) -> list[int]:
        return [f.dim for f in self.factors]

    def to_json(self) -> dict:
        return {
            "picture": self.picture,
            "orders": [g.order for g in self.chain],
            "factor_dims": self.factor_dims,
            "normal_series": self.is_normal_series,
        }


def validate_series(chain: Sequence[QuantumSubgroup]) -> SubnormalSeries:
    """Check ``G = G_0 > G_1 > ... > G_k = 1`` with each term normal in its predecessor."""
    chain = list(chain)
    if not chain:
        raise SeriesError("empty chain")
    G = chain[0].ambient
    pic = chain[0].picture
    for x in chain[1:]:
        _same(chain[0], x)
    if chain[0] != QuantumSubgroup.whole(G, pic):
        raise SeriesError("chain must start at the ambient group")
    if not chain[-1].is_trivial:
        raise SeriesError("chain must end at the trivial subgroup")
    norms, in_amb, factors = [], [], []
    whole = chain[0]
    for i in range(1, len(chain)):
        big, small = chain[i - 1], chain[i]
        if not small <= big:
            raise SeriesError(f"term {i} is not contained in term {i - 1}", {"index": i})
        if small == big:
            raise SeriesError(f"term {i} equals term {i - 1}; steps must be proper", {"index": i})
        r = is_normal_in(small, big)
        if not r.normal:
            raise SeriesError(
                f"term {i} is not normal in term {i - 1}: {r.reason}", {"index": i, **(r.detail or {})}
            )
        norms.append(r)
        in_amb.append(is_normal_in(small, whole).normal)
        factors.append(factor_section(big, small))
    return SubnormalSeries(G, pic, chain, norms, in_amb, factors)


# ---------------------------------------------------------------------------
# Schreier refinement


@dataclass
class GridCell:
    i: int
    j: int
    trivial: bool
    left_dim: int
    right_dim: int
    certificate: IsoCertificate | None


@dataclass
class SeriesEquivalenceCertificate:
    refined1: list
    refined2: list
    grid: list  # grid[i-1][j-1] for the cell (i, j)
    permutation: list  # factor a of refined1 pairs with factor permutation[a] of refined2
    isos: list
    collapse1: list  # grid cell (i, j) of each kept step of refined1
    collapse2: list

    @property
    def factor_dims1(self) -> list[int]:
        return [c.left_dim for row in self.grid for c in row if not c.trivial]

    @property
    def factor_dims2(self) -> list[int]:
        cells = sorted((c for row in self.grid for c in row if not c.trivial), key=lambda c: (c.j, c.i))
        return [c.right_dim for c in cells]

    def verify(self) -> bool:
        n1 = len(self.refined1) - 1
        n2 = len(self.refined2) - 1
        if n1 != n2 or sorted(self.permutation) != list(range(n1)) or len(self.isos) != n1:
            return False
        return all(c.verify() for c in self.isos)

    def to_json(self) -> dict:
        return {
            "length": len(self.refined1) - 1,
            "orders1": [g.order for g in self.refined1],
            "orders2": [g.order for g in self.refined2],
            "permutation": self.permutation,
            "factor_dims": self.factor_dims1,
            "grid": [
                [
                    {"i": c.i, "j": c.j, "trivial": c.trivial, "dim": c.left_dim}
                    for c in row
                ]
                for row in self.grid
            ],
            "certificates": [c.to_json() for c in self.isos],
        }


def _collapse(seq: list, cells: list) -> tuple[list, list]:
    out, kept = [seq[0]], []
    for g, cell in zip(seq[1:], cells):
        if g != out[-1]:
            out.append(g)
            kept.append(cell)
    return out, kept


def schreier_refine(S1: SubnormalSeries | Sequence, S2: SubnormalSeries | Sequence) -> SeriesEquivalenceCertificate:
    """Equivalent refinements ``G_ij = G_i v (G_{i-1} ^ H_j)`` and ``H_ij = H_j v (H_{j-1} ^ G_i)``.

    Cell ``(i, j)`` pairs ``G_{i,j-1} / G_{ij}`` with ``H_{i-1,j} / H_{ij}`` through
    the butterfly for ``A' = G_i <| A = G_{i-1}`` and ``B' = H_j <| B = H_{j-1}``.
    """
    if not isinstance(S1, SubnormalSeries):
        S1 = validate_series(S1)
    if not isinstance(S2, SubnormalSeries):
        S2 = validate_series(S2)
    Gs, Hs = S1.chain, S2.chain
    _same(Gs[0], Hs[0])
    k, l = len(Gs) - 1, len(Hs) - 1
    grid: list[list[GridCell]] = []
    seq1, cells1 = [Gs[0]], []
    for i in range(1, k + 1):
        row = []
        for j in range(1, l + 1):
            z: ZassenhausResult = zassenhaus(Gs[i], Gs[i - 1], Hs[j], Hs[j - 1])
            triv = z.left.dim == 1
            if z.certificate is None:
                from .lattice import TheoremViolation

                raise TheoremViolation(f"butterfly map for cell ({i}, {j}) is not an isomorphism")
            row.append(GridCell(i, j, triv, z.left.dim, z.right.dim, z.certificate))
            seq1.append(z.nodes["A'v(A^B')"])
            cells1.append((i, j))
        grid.append(row)
    seq2, cells2 = [Hs[0]], []
    for j in range(1, l + 1):
        for i in range(1, k + 1):
            seq2.append(join(Hs[j], meet(Hs[j - 1], Gs[i])))
            cells2.append((i, j))
    R1, kept1 = _collapse(seq1, cells1)
    R2, kept2 = _collapse(seq2, cells2)
    pos2 = {cell: b for b, cell in enumerate(kept2)}
    perm = [pos2[cell] for cell in kept1]
    isos = [grid[i - 1][j - 1].certificate for (i, j) in kept1]
    return SeriesEquivalenceCertificate(R1, R2, grid, perm, isos, kept1, kept2)


# ---------------------------------------------------------------------------
# subgroup enumeration for group-like and function-like algebras


@dataclass(frozen=True)
class _GroupData:
    elements: tuple  # sparse vectors
    table: tuple


def _group_table(H: HopfAlgebra, elems: list[Vec]) -> tuple:
    keys = {tuple(sorted(g.items())): i for i, g in enumerate(elems)}
    table = []
    for a in elems:
        row = []
        for b in elems:
            row.append(keys[tuple(sorted(H.mul(a, b).items()))])
        table.append(tuple(row))
    return tuple(table)


def _subgroup_index_sets(table: tuple, ident: int) -> list[frozenset]:
    n = len(table)

    def close(gens) -> frozenset:
        elems, frontier = {ident}, [ident]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = table[x][g]
                    if y not in elems:
                        elems.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(elems)

    subs = {close([g]) for g in range(n)}
    frontier = set(subs)
    while frontier:
        new = set()
        for a in frontier:
            for b in list(subs):
                c = close(a | b)
                if c not in subs:
                    new.add(c)
        subs |= new
        frontier = new
    return sorted(subs, key=lambda s: (len(s), sorted(s)))


def classify_enumerable(H: HopfAlgebra) -> str | None:
    """``"dqg"`` for group algebras, ``"qg"`` for function algebras, else None."""
    if H.is_cocommutative:
        g = grouplikes(H)
        if g.complete and len(g) == H.dim:
            return "dqg"
    if H.is_commutative:
        g = grouplikes(dual(H))
        if g.complete and len(g) == H.dim:
            return "qg"
    return None


@lru_cache(maxsize=64)
def enumerate_subgroups(H: HopfAlgebra, picture: str | None = None) -> tuple:
    """All quantum subgroups of a group-like (``dqg``) or function-like (``qg``) algebra.

    dqg: spans of subgroups of the grouplike group.  qg: annihilators of
    subgroups of the character group (grouplikes of the dual).
    """
    kind = classify_enumerable(H)
    if kind is None:
        raise Unsupported("subgroup enumeration needs a group algebra or a function algebra")
    picture = picture or kind
    if picture != kind:
        raise Unsupported(f"this algebra is enumerable in the {kind} picture only")
    n = H.dim
    if kind == "dqg":
        elems = [g.vec for g in grouplikes(H)]
        ident = elems.index(H.unit)
        table = _group_table(H, elems)
        out = []
        for s in _subgroup_index_sets(table, ident):
            out.append(QuantumSubgroup(H, "dqg", Subspace.span((elems[i] for i in s), n)))
        return tuple(out)
    D = dual(H)
    chars = [g.vec for g in grouplikes(D)]
    ident = chars.index(D.unit)
    table = _group_table(D, chars)
    out = []
    for s in _subgroup_index_sets(table, ident):
        I = Subspace.full(n).kernel_of(lambda v, s=s: {t: dot(chars[i], v) for t, i in enumerate(s) if dot(chars[i], v)})
        out.append(QuantumSubgroup(H, "qg", I))
    return tuple(out)


def _maximal_normal(top: QuantumSubgroup, subs: Sequence[QuantumSubgroup]) -> list[QuantumSubgroup]:
    cands = [s for s in subs if s < top and is_normal_in(s, top).normal]
    return [s for s in cands if not any(s < t for t in cands)]


def find_composition_series(H: HopfAlgebra, picture: str | None = None) -> SubnormalSeries:
    """Greedy maximal-proper-normal steps; ties broken by the smallest canonical subspace."""
    subs = enumerate_subgroups(H, picture)
    pic = subs[0].picture
    top = QuantumSubgroup.whole(H, pic)
    chain = [top]
    while not chain[-1].is_trivial:
        maxi = _maximal_normal(chain[-1], subs)
        nxt = min(maxi, key=lambda s: s.space.sort_key())
        chain.append(nxt)
    return validate_series(chain)


def refinement_witness(S: SubnormalSeries, candidates: Sequence[QuantumSubgroup]) -> dict | None:
    """A candidate strictly between two adjacent terms, normal in the upper one and containing
    the lower one as a normal subgroup; None when the series cannot be refined by the candidates."""
    for i in range(1, len(S.chain)):
        big, small = S.chain[i - 1], S.chain[i]
        for c in candidates:
            if small < c < big and is_normal_in(c, big).normal and is_normal_in(small, c).normal:
                return {"index": i, "order": c.order, "subgroup": c}
    return None


def jordan_holder(
    S1: SubnormalSeries | Sequence,
    S2: SubnormalSeries | Sequence,
    candidates: Sequence[QuantumSubgroup] | None = None,
) -> SeriesEquivalenceCertificate:
    """Certificate that two composition series are equivalent.

    Non-refinability is checked against ``candidates``, defaulting to the full
    subgroup enumeration when the ambient is group-like or function-like.
    """
    if not isinstance(S1, SubnormalSeries):
        S1 = validate_series(S1)
    if not isinstance(S2, SubnormalSeries):
        S2 = validate_series(S2)
    if candidates is None:
        try:
            candidates = enumerate_subgroups(S1.ambient, S1.picture)
        except Unsupported:
            candidates = ()
    for nm, S in (("first", S1), ("second", S2)):
        w = refinement_witness(S, candidates)
        if w is not None:
            raise SeriesError(f"{nm} series is not a composition series", {"index": w["index"], "order": w["order"]})
    cert = schreier_refine(S1, S2)
    if len(cert.refined1) != len(S1.chain) or len(cert.refined2) != len(S2.chain):
        raise SeriesError("composition series admitted a strict refinement")
    return cert
