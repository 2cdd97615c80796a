"""Subobject calculus: classification of subspaces, closures, Hopf ideals,
quotients and subquotients.

Tensor-space membership is decided by reducing factors modulo a subspace:
with ``q`` the normal-form map modulo ``W``, a tensor ``t`` lies in
``W (x) H + H (x) W`` iff ``(q (x) q) t = 0``, and in ``W (x) H`` iff
``(q (x) id) t = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .exactalg import ONE, Echelon, Subspace, Vec, axpy, tensor_apply, vec_scale
from .hopfcore import HopfAlgebra, StructuredMap

CLOSURES = ("mult", "unit", "comult_subcoalgebra", "antipode")


def reducer(W: Subspace) -> list[Vec]:
    """Columns of the normal-form map modulo ``W`` (kernel exactly ``W``)."""
    return [W.reduce({i: ONE}) for i in range(W.ambient_dim)]


def _concat(parts: Iterable[Vec], block: int) -> Vec:
    out: Vec = {}
    for b, v in enumerate(parts):
        off = b * block
        for k, c in v.items():
            out[off + k] = c
    return out


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class ClassifiedSubspace:
    space: Subspace
    contains_unit: bool
    mult_closed: bool
    left_ideal: bool
    right_ideal: bool
    left_coideal: bool
    right_coideal: bool
    counit_zero: bool
    coideal_ideal: bool
    antipode_stable: bool
    antipode_inverse_stable: bool

    @property
    def subalgebra(self) -> bool:
        """Unital subalgebra."""
        return self.contains_unit and self.mult_closed

    @property
    def two_sided_ideal(self) -> bool:
        return self.left_ideal and self.right_ideal

    @property
    def subcoalgebra(self) -> bool:
        return self.left_coideal and self.right_coideal

    @property
    def hopf_subalgebra(self) -> bool:
        return self.subalgebra and self.subcoalgebra and self.antipode_stable

    @property
    def right_coideal_subalgebra(self) -> bool:
        return self.subalgebra and self.right_coideal

    @property
    def left_coideal_subalgebra(self) -> bool:
        return self.subalgebra and self.left_coideal

    @property
    def hopf_ideal(self) -> bool:
        return (
            self.two_sided_ideal
            and self.coideal_ideal
            and self.antipode_stable
            and self.antipode_inverse_stable
        )

    def flags(self) -> dict:
        names = (
            "contains_unit mult_closed subalgebra left_ideal right_ideal two_sided_ideal "
            "left_coideal right_coideal subcoalgebra counit_zero coideal_ideal "
            "antipode_stable antipode_inverse_stable hopf_subalgebra hopf_ideal "
            "right_coideal_subalgebra left_coideal_subalgebra"
        ).split()
        return {k: getattr(self, k) for k in names}


@lru_cache(maxsize=4096)
def classify(H: HopfAlgebra, W: Subspace) -> ClassifiedSubspace:
    """Every structural flag of ``W`` inside ``H``, each decided by exact membership tests."""
    n = H.dim
    if W.ambient_dim != n:
        raise ValueError("subspace lives in a different ambient space")
    vecs = W.vectors
    q = reducer(W)
    contains_unit = W.contains(H.unit)
    mult_closed = all(W.contains(H.mul(a, b)) for a in vecs for b in vecs)
    left_ideal = all(W.contains(H.mul({i: ONE}, a)) for a in vecs for i in range(n))
    right_ideal = all(W.contains(H.mul(a, {i: ONE})) for a in vecs for i in range(n))
    deltas = [H.comul(a) for a in vecs]
    right_coideal = all(not tensor_apply(d, n, q, None, n) for d in deltas)
    left_coideal = all(not tensor_apply(d, n, None, q, n) for d in deltas)
    counit_zero = all(not H.eps(a) for a in vecs)
    coideal_ideal = counit_zero and all(not tensor_apply(d, n, q, q, n) for d in deltas)
    s_stable = all(W.contains(H.S(a)) for a in vecs)
    sinv_stable = all(W.contains(H.S_inv(a)) for a in vecs)
    return ClassifiedSubspace(
        W, contains_unit, mult_closed, left_ideal, right_ideal, left_coideal, right_coideal,
        counit_zero, coideal_ideal, s_stable, sinv_stable,
    )


def minus_part(H: HopfAlgebra, A: Subspace) -> Subspace:
    """``A^- = A`` intersected with ``ker epsilon``."""
    return A.kernel_of(lambda v: {0: H.eps(v)} if H.eps(v) else {})


# ---------------------------------------------------------------------------
# closures


def generate_closed(
    H: HopfAlgebra, gens: Subspace | Iterable[Vec], closure: Sequence[str] = CLOSURES
) -> Subspace:
    """Least subspace containing ``gens`` closed under the requested operators.

    ``mult``: products; ``unit``: contains 1; ``comult_subcoalgebra``: all
    slices ``(f (x) id) Delta x`` and ``(id (x) f) Delta x`` for dual-basis ``f``;
    ``antipode``: images under ``S`` and ``S^-1``.
    """
    bad = set(closure) - set(CLOSURES)
    if bad:
        raise ValueError(f"unknown closure operators {sorted(bad)}")
    n = H.dim
    start = list(gens.vectors) if isinstance(gens, Subspace) else [dict(g) for g in gens]
    if "unit" in closure:
        start.append(dict(H.unit))
    ech = Echelon()
    members: list[Vec] = []
    queue = list(start)
    while queue:
        v = queue.pop()
        if not ech.add(v):
            continue
        members.append(v)
        if "mult" in closure:
            for m in members:
                queue.append(H.mul(v, m))
                if m is not v:
                    queue.append(H.mul(m, v))
        if "antipode" in closure:
            queue.append(H.S(v))
            queue.append(H.S_inv(v))
        if "comult_subcoalgebra" in closure:
            left: dict[int, Vec] = {}
            right: dict[int, Vec] = {}
            for k, c in H.comul(v).items():
                i, j = divmod(k, n)
                left.setdefault(i, {})[j] = c
                right.setdefault(j, {})[i] = c
            queue.extend(left.values())
            queue.extend(right.values())
    return ech.freeze(n)


def left_ideal_generated(H: HopfAlgebra, W: Subspace) -> Subspace:
    """The left ideal ``H W``."""
    n = H.dim
    return Subspace.span((H.mul({i: ONE}, w) for i in range(n) for w in W.vectors), n)


def right_ideal_generated(H: HopfAlgebra, W: Subspace) -> Subspace:
    n = H.dim
    return Subspace.span((H.mul(w, {i: ONE}) for i in range(n) for w in W.vectors), n)


# ---------------------------------------------------------------------------
# Hopf ideals


class NotHopfIdeal(ValueError):
    pass


def sum_of_hopf_ideals(H: HopfAlgebra, I1: Subspace, I2: Subspace) -> Subspace:
    """``I1 + I2``, verified to be a Hopf ideal."""
    S = I1 + I2
    if not classify(H, S).hopf_ideal:
        raise NotHopfIdeal("sum of the given subspaces is not a Hopf ideal")
    return S


@lru_cache(maxsize=4096)
def largest_hopf_ideal_within(H: HopfAlgebra, W: Subspace, require_S_inverse: bool = True) -> Subspace:
    """Greatest Hopf ideal contained in ``W`` by shrinking to a fixpoint.

    Each pass intersects with ``ker epsilon``, ``{x : e_a x, x e_a in J}``,
    ``{x : Delta x in J (x) H + H (x) J}`` and ``{x : S x (, S^-1 x) in J}``;
    every Hopf ideal inside the current ``J`` survives each step.
    """
    n = H.dim
    J = minus_part(H, W)
    basis = [{i: ONE} for i in range(n)]
    while True:
        before = J.dim
        J = J.kernel_of(
            lambda v, J=J: _concat(
                [J.reduce(H.mul(b, v)) for b in basis] + [J.reduce(H.mul(v, b)) for b in basis], n
            )
        )
        q = reducer(J)
        J = J.kernel_of(lambda v, q=q: tensor_apply(H.comul(v), n, q, q, n))
        if require_S_inverse:
            J = J.kernel_of(lambda v, J=J: _concat([J.reduce(H.S(v)), J.reduce(H.S_inv(v))], n))
        else:
            J = J.kernel_of(lambda v, J=J: J.reduce(H.S(v)))
        if J.dim == before:
            return J


# ---------------------------------------------------------------------------
# subquotients


class NotInSection(ValueError):
    pass


class Section:
    """The subquotient ``top / bottom`` of ``parent`` as a Hopf algebra.

    ``bottom`` must lie inside ``top``.  The basis is the canonical RREF ``R`` of
    the normal forms of ``top`` modulo ``bottom``; coordinates are read off at
    the pivots of ``R``.  Structure maps are those induced from the parent, and
    the result is validated as a Hopf algebra.
    """

    def __init__(self, parent: HopfAlgebra, top: Subspace, bottom: Subspace, name: str | None = None):
        if not bottom <= top:
            raise ValueError("bottom of a section must lie inside its top")
        self.parent = parent
        self.top = top
        self.bottom = bottom
        n = parent.dim
        self._red = [bottom.reduce({i: ONE}) for i in range(n)]
        R = Subspace.span((bottom.reduce(v) for v in top.vectors), n)
        self.R = R
        d = R.dim
        lifts = list(R.vectors)
        self.lifts = lifts
        labels = [_lift_label(parent, v) for v in lifts]
        mult = [[self.project(parent.mul(a, b)) for b in lifts] for a in lifts]
        unit = self.project(parent.unit)
        comult = [self.project_tensor(parent.comul(a)) for a in lifts]
        counit = [parent.eps(a) for a in lifts]
        anti = [self.project(parent.S(a)) for a in lifts]
        self.algebra = HopfAlgebra(labels, mult, unit, comult, counit, anti, field=parent.field)
        if name:
            self.algebra.name = name
        self.dim = d

    def project(self, v: Vec) -> Vec:
        """Coordinates of the class of ``v``; raises unless ``v`` lies in ``top + bottom``."""
        w: Vec = {}
        for k, c in v.items():
            axpy(w, c, self._red[k])
        coords = {t: w[p] for t, p in enumerate(self.R.pivots) if p in w}
        if self.R.combine(coords) != w:
            raise NotInSection("vector does not lie in the section's top space")
        return coords

    def project_tensor(self, t: Vec) -> Vec:
        n = self.parent.dim
        w = tensor_apply(t, n, self._red, self._red, n)
        piv = self.R.pivots
        d = len(piv)
        coords: Vec = {}
        for s, p in enumerate(piv):
            for u, r in enumerate(piv):
                c = w.get(p * n + r)
                if c:
                    coords[s * d + u] = c
        recon = tensor_apply(coords, d, self.lifts, self.lifts, n)
        if recon != w:
            raise NotInSection("tensor does not lie in the section's top space")
        return coords

    def lift(self, coords: Vec) -> Vec:
        out: Vec = {}
        for t, c in coords.items():
            axpy(out, c, self.lifts[t])
        return out

    def __repr__(self):
        return f"Section(dim={self.dim}, parent_dim={self.parent.dim})"


def _lift_label(H: HopfAlgebra, v: Vec) -> str:
    if len(v) == 1:
        (k, c), = v.items()
        if c == 1:
            return H.labels[k]
    return "[" + H.format_vector(v) + "]"


@lru_cache(maxsize=1024)
def section(parent: HopfAlgebra, top: Subspace, bottom: Subspace) -> Section:
    return Section(parent, top, bottom)


def induced_map(source: Section, target: Section) -> StructuredMap:
    """The map ``source -> target`` induced by the identity of the common parent."""
    if source.parent != target.parent:
        raise ValueError("sections of different parents")
    cols = [target.project(source.lift({t: ONE})) for t in range(source.dim)]
    return StructuredMap(source.algebra, target.algebra, cols)


# ---------------------------------------------------------------------------
# quotients


@dataclass(frozen=True)
class QuotientPresentation:
    parent: HopfAlgebra
    ideal: Subspace
    quotient: HopfAlgebra
    projection: StructuredMap
    section: Section

    @property
    def dim(self) -> int:
        return self.quotient.dim


@lru_cache(maxsize=1024)
def quotient_by_hopf_ideal(H: HopfAlgebra, I: Subspace) -> QuotientPresentation:
    """``H / I`` on the basis of the ideal's non-pivot coordinates."""
    if not classify(H, I).hopf_ideal:
        raise NotHopfIdeal("not a Hopf ideal")
    sec = section(H, Subspace.full(H.dim), I)
    proj = StructuredMap(H, sec.algebra, [sec.project({i: ONE}) for i in range(H.dim)])
    return QuotientPresentation(H, I, sec.algebra, proj, sec)


@dataclass(frozen=True)
class ModuleQuotient:
    """``H / H A^-``: a quotient coalgebra and left ``H``-module."""

    parent: HopfAlgebra
    subalgebra: Subspace
    ideal: Subspace
    basis: tuple  # non-pivot coordinates of the ideal
    comult: tuple  # per basis index, flattened over the quotient
    counit: tuple
    action: tuple  # action[i][t]: e_i acting on quotient basis t
    projection: tuple  # columns: class of e_i

    @property
    def dim(self) -> int:
        return len(self.basis)


class NotCoideal(ValueError):
    pass


@lru_cache(maxsize=1024)
def quotient_module_coalgebra(H: HopfAlgebra, A: Subspace) -> ModuleQuotient:
    """``H / H A^-`` for a right coideal subalgebra ``A`` containing 1."""
    c = classify(H, A)
    if not (c.contains_unit and c.right_coideal_subalgebra):
        raise NotCoideal("input is not a right coideal subalgebra containing 1")
    n = H.dim
    I = left_ideal_generated(H, minus_part(H, A))
    q = reducer(I)
    for v in I.vectors:
        if tensor_apply(H.comul(v), n, q, q, n) or H.eps(v):
            raise NotCoideal("H A^- is not a coideal")
    basis = I.nonpivots
    pos = {b: t for t, b in enumerate(basis)}
    d = len(basis)

    def coords(v: Vec) -> Vec:
        return {pos[k]: x for k, x in I.reduce(v).items()}

    proj = tuple(coords({i: ONE}) for i in range(n))
    qc = [{pos[k]: x for k, x in col.items()} for col in q]
    comult = tuple(tensor_apply(H.comul({b: ONE}), n, qc, qc, d) for b in basis)
    counit = tuple(H.counit[b] for b in basis)
    action = tuple(tuple(coords(H.mul({i: ONE}, {b: ONE})) for b in basis) for i in range(n))
    return ModuleQuotient(H, A, I, basis, comult, counit, action, proj)


def scale_to_counit(H: HopfAlgebra, v: Vec) -> Vec:
    e = H.eps(v)
    return vec_scale(ONE / e, v) if e else v
