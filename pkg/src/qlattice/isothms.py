"""Second and third isomorphism theorems and the Zassenhaus butterfly, each
producing the canonical map between subquotients with verified flags.

All subquotients are :class:`~qlattice.subobj.Section` objects of the
ambient Hopf algebra, so the canonical maps are induced by the identity.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactalg import ONE, Subspace, format_scalar
from .hopfcore import HopfAlgebra, StructuredMap
from .duality import normality, relative_cd
from .lattice import (
    QuantumSubgroup,
    TheoremViolation,
    _same,
    is_normal_in,
    join,
    meet,
)
from .subobj import (
    NotInSection,
    Section,
    induced_map,
    left_ideal_generated,
    minus_part,
    section,
)


class PreconditionError(ValueError):
    pass


@dataclass
class IsoCertificate:
    source: HopfAlgebra
    target: HopfAlgebra
    map: StructuredMap
    provenance: str

    def verify(self) -> bool:
        """Rebuild the map from its matrix and re-check every flag."""
        m = StructuredMap(self.source, self.target, self.map.cols)
        return m.is_algebra_map and m.is_coalgebra_map and m.is_bijective

    @property
    def valid(self) -> bool:
        return self.map.is_algebra_map and self.map.is_coalgebra_map and self.map.is_bijective

    def to_json(self) -> dict:
        return {
            "provenance": self.provenance,
            "source": algebra_json(self.source),
            "target": algebra_json(self.target),
            "matrix": [[format_scalar(x) for x in row] for row in self.map.matrix],
            "flags": self.map.flags,
        }


def algebra_json(H: HopfAlgebra) -> dict:
    from .cli import hopf_to_json  # local import: the cli module owns the schema

    return hopf_to_json(H)


def _certificate(m: StructuredMap, provenance: str) -> IsoCertificate | None:
    if m.is_algebra_map and m.is_coalgebra_map and m.is_bijective:
        return IsoCertificate(m.domain, m.codomain, m, provenance)
    return None


def compose(second: StructuredMap, first: StructuredMap) -> StructuredMap:
    if first.codomain != second.domain:
        raise ValueError("maps are not composable")
    return StructuredMap(first.domain, second.codomain, [second.apply(c) for c in first.cols])


# ---------------------------------------------------------------------------
# subquotient builders


def _zero(H: HopfAlgebra) -> Subspace:
    return Subspace.zero(H.dim)


def factor_section(J: QuantumSubgroup, M: QuantumSubgroup) -> Section:
    """The Hopf algebra of ``J / M`` for ``M`` normal in ``J``.

    qg: ``O(J/M)`` is the image of the relative codual of ``M`` in ``O(J)``.
    dqg: ``kJ / kJ kM^-``.
    """
    _same(J, M)
    H = J.ambient
    if J.picture == "qg":
        T = relative_cd(H, M.space, J.space)
        return section(H, T, J.space)
    return section(H, J.space, _product_ideal(H, J.space, M.space))


def _product_ideal(H: HopfAlgebra, top: Subspace, sub: Subspace) -> Subspace:
    """``top * sub^-`` (inside ``top``)."""
    m = minus_part(H, sub)
    return Subspace.span((H.mul(a, b) for a in top.vectors for b in m.vectors), H.dim)


# ---------------------------------------------------------------------------
# second isomorphism theorem


@dataclass
class SecondIsoResult:
    N: QuantumSubgroup
    map: StructuredMap
    source: Section
    target: Section
    generation: bool
    iso: bool
    surjective: bool
    injective: bool
    n_equals_meet: bool
    certificate: IsoCertificate | None

    def to_json(self) -> dict:
        return {
            "N_order": self.N.order,
            "source_dim": self.source.dim,
            "target_dim": self.target.dim,
            "generation": self.generation,
            "iso": self.iso,
            "surjective": self.surjective,
            "injective": self.injective,
            "N_equals_meet": self.n_equals_meet,
            "flags": self.map.flags,
        }


def _check_second(H_: QuantumSubgroup, K: QuantumSubgroup, X: QuantumSubgroup | None):
    _same(H_, K)
    X = X or QuantumSubgroup.whole(H_.ambient, H_.picture)
    if not (H_ <= X and K <= X):
        raise PreconditionError("H and K must lie in the ambient subgroup")
    r = is_normal_in(K, X)
    if not r.normal:
        raise PreconditionError(f"K is not normal: {r.reason}")
    return X


def second_iso_qg(
    Hs: QuantumSubgroup, K: QuantumSubgroup, X: QuantumSubgroup | None = None
) -> SecondIsoResult:
    """``O(X/K) -> O(H/N)``: restriction of ``O(X/K)`` to ``H``; ``N = H ^ K``.

    The map is always surjective; it is injective exactly when ``H`` and ``K``
    generate ``X``.
    """
    if Hs.picture != "qg":
        raise ValueError("second_iso_qg needs qg subgroups")
    X = _check_second(Hs, K, X)
    G = Hs.ambient
    T = relative_cd(G, K.space, X.space)
    source = section(G, T, X.space)
    target = section(G, T + Hs.space, Hs.space)
    m = induced_map(source, target)
    N_ideal = left_ideal_generated(G, minus_part(G, T)) + Hs.space
    N = QuantumSubgroup(G, "qg", N_ideal)
    generation = join(Hs, K) == X
    iso = m.is_bijective and m.is_hopf_map
    return SecondIsoResult(
        N, m, source, target, generation, iso, m.is_surjective, m.is_injective,
        N == meet(Hs, K), _certificate(m, "second isomorphism theorem (qg)") if generation else None,
    )


def second_iso_dqg(
    Hs: QuantumSubgroup, K: QuantumSubgroup, X: QuantumSubgroup | None = None
) -> SecondIsoResult:
    """``k(H / H ^ K) -> k(X / K)``, induced by the inclusion ``kH <= kX``.

    The map is always injective; it is surjective exactly when ``kX = kH kK``.
    """
    if Hs.picture != "dqg":
        raise ValueError("second_iso_dqg needs dqg subgroups")
    X = _check_second(Hs, K, X)
    G = Hs.ambient
    N = meet(Hs, K)
    source = section(G, Hs.space, _product_ideal(G, Hs.space, N.space))
    target = section(G, X.space, _product_ideal(G, X.space, K.space))
    m = induced_map(source, target)
    prod = Subspace.span((G.mul(h, k) for h in Hs.space.vectors for k in K.space.vectors), G.dim)
    generation = prod == X.space
    iso = m.is_bijective and m.is_hopf_map
    return SecondIsoResult(
        N, m, source, target, generation, iso, m.is_surjective, m.is_injective, True,
        _certificate(m, "second isomorphism theorem (dqg)") if generation else None,
    )


def second_iso(Hs: QuantumSubgroup, K: QuantumSubgroup, X: QuantumSubgroup | None = None) -> SecondIsoResult:
    return second_iso_qg(Hs, K, X) if Hs.picture == "qg" else second_iso_dqg(Hs, K, X)


# ---------------------------------------------------------------------------
# third isomorphism theorem


@dataclass
class ThirdIsoResult:
    double_quotient: HopfAlgebra
    target: HopfAlgebra
    certificate: IsoCertificate | None
    map: StructuredMap
    inner_normal: bool

    def to_json(self) -> dict:
        return {
            "double_quotient_dim": self.double_quotient.dim,
            "target_dim": self.target.dim,
            "iso": self.certificate is not None,
            "inner_normal": self.inner_normal,
            "flags": self.map.flags,
        }


def third_iso(N: QuantumSubgroup, Hs: QuantumSubgroup) -> ThirdIsoResult:
    """``(G/N)/(H/N) -> G/H`` for ``N <= H`` both normal in ``G``.

    The statement is the finite-dimensional algebraic form; the certificate
    provenance says so.
    """
    _same(N, Hs)
    if not N <= Hs:
        raise PreconditionError("N must be contained in H")
    for Y, nm in ((N, "N"), (Hs, "H")):
        if not is_normal_in(Y, QuantumSubgroup.whole(Y.ambient, Y.picture)).normal:
            raise PreconditionError(f"{nm} is not normal")
    G = N.ambient
    prov = "third isomorphism theorem (finite-dimensional algebraic form)"
    if N.picture == "qg":
        A_N = relative_cd(G, N.space, _zero(G))
        Q1 = section(G, A_N, _zero(G))
        J = Subspace.span((Q1.project(v) for v in (A_N & Hs.space).vectors), Q1.dim)
        inner = normality(Q1.algebra, J, "ideal")
        D = section(Q1.algebra, relative_cd(Q1.algebra, J, _zero(Q1.algebra)), _zero(Q1.algebra))
        A_H = relative_cd(G, Hs.space, _zero(G))
        tgt = section(G, A_H, _zero(G))
        cols = [D.project(Q1.project(tgt.lift({t: ONE}))) for t in range(tgt.dim)]
        fwd = StructuredMap(tgt.algebra, D.algebra, cols)
        if fwd.is_bijective:
            m = fwd.inverse()
        else:
            m = fwd
        return ThirdIsoResult(D.algebra, tgt.algebra, _certificate(m, prov), m, inner.normal)
    Q1 = section(G, Subspace.full(G.dim), _product_ideal(G, Subspace.full(G.dim), N.space))
    P = Subspace.span((Q1.project(v) for v in Hs.space.vectors), Q1.dim)
    inner = normality(Q1.algebra, P, "subalgebra")
    full1 = Subspace.full(Q1.dim)
    D = section(Q1.algebra, full1, _product_ideal(Q1.algebra, full1, P))
    tgt = section(G, Subspace.full(G.dim), _product_ideal(G, Subspace.full(G.dim), Hs.space))
    cols = [tgt.project(Q1.lift(D.lift({t: ONE}))) for t in range(D.dim)]
    m = StructuredMap(D.algebra, tgt.algebra, cols)
    return ThirdIsoResult(D.algebra, tgt.algebra, _certificate(m, prov), m, inner.normal)


# ---------------------------------------------------------------------------
# Zassenhaus butterfly


@dataclass
class ZassenhausResult:
    nodes: dict
    left: Section
    right: Section
    middle: Section
    phi_left: StructuredMap
    phi_right: StructuredMap
    certificate: IsoCertificate | None
    modular_identity: bool

    def to_json(self) -> dict:
        return {
            "nodes": {k: v.order for k, v in self.nodes.items()},
            "left_dim": self.left.dim,
            "right_dim": self.right.dim,
            "middle_dim": self.middle.dim,
            "modular_identity": self.modular_identity,
            "certified": self.certificate is not None,
        }


def zassenhaus(
    Ap: QuantumSubgroup, A: QuantumSubgroup, Bp: QuantumSubgroup, B: QuantumSubgroup
) -> ZassenhausResult:
    """Butterfly isomorphism ``(A' v (A ^ B)) / (A' v (A ^ B')) -> (B' v (A ^ B)) / (B' v (A' ^ B))``.

    Both sides are compared with the middle term ``(A ^ B) / ((A' ^ B) v (A ^ B'))``
    through the second isomorphism theorem applied to ``A ^ B`` and
    ``A' v (A ^ B')`` inside ``A' v (A ^ B)`` (and symmetrically).
    """
    for x in (A, Bp, B):
        _same(Ap, x)
    if not (Ap <= A and Bp <= B):
        raise PreconditionError("need A' <= A and B' <= B")
    for small, big, nm in ((Ap, A, "A'"), (Bp, B, "B'")):
        r = is_normal_in(small, big)
        if not r.normal:
            raise PreconditionError(f"{nm} is not normal: {r.reason}")
    AB = meet(A, B)
    ApB = meet(Ap, B)
    ABp = meet(A, Bp)
    Ltop, Lbot = join(Ap, AB), join(Ap, ABp)
    Rtop, Rbot = join(Bp, AB), join(Bp, ApB)
    mid_bot = join(ApB, ABp)
    modular = meet(AB, Lbot) == mid_bot and meet(AB, Rbot) == mid_bot
    if not modular:
        raise TheoremViolation("modular identity of the butterfly fails")
    nodes = {
        "A^B": AB, "A'^B": ApB, "A^B'": ABp,
        "A'v(A^B)": Ltop, "A'v(A^B')": Lbot, "B'v(A^B)": Rtop, "B'v(A'^B)": Rbot,
    }
    for top, bot in ((Ltop, Lbot), (Rtop, Rbot), (AB, mid_bot)):
        if not is_normal_in(bot, top).normal:
            raise TheoremViolation("butterfly subquotient bottom is not normal in its top")
    left = factor_section(Ltop, Lbot)
    right = factor_section(Rtop, Rbot)
    middle = factor_section(AB, mid_bot)
    try:
        if A.picture == "qg":
            phi_l = induced_map(left, middle)
            phi_r = induced_map(right, middle)
            # phi_l: left -> middle, phi_r: right -> middle
            ok = phi_l.is_bijective and phi_r.is_bijective
            cert_map = compose(phi_r.inverse(), phi_l) if ok else phi_l
        else:
            phi_l = induced_map(middle, left)
            phi_r = induced_map(middle, right)
            ok = phi_l.is_bijective and phi_r.is_bijective
            cert_map = compose(phi_r, phi_l.inverse()) if ok else phi_l
    except NotInSection as exc:
        raise TheoremViolation(f"canonical butterfly map is not defined: {exc}") from exc
    cert = _certificate(cert_map, "Zassenhaus butterfly") if ok else None
    return ZassenhausResult(nodes, left, right, middle, phi_l, phi_r, cert, modular)

