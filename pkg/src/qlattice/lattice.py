"""Quantum-subgroup lattices in both pictures, normalisation and the modular law.

A quantum subgroup of ``G`` is presented either as a Hopf ideal of ``O(G)``
(picture ``"qg"``: the kernel of ``O(G) -> O(K)``) or as a Hopf subalgebra of
``kG`` (picture ``"dqg"``).  Equality is equality of the presenting subspace.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache

from .exactalg import Subspace
from .hopfcore import HopfAlgebra
from .duality import ad_invariance, normality, relative_cd
from .integrals import cosemisimple_test
from .subobj import (
    classify,
    generate_closed,
    largest_hopf_ideal_within,
    left_ideal_generated,
    minus_part,
    quotient_by_hopf_ideal,
    section,
    sum_of_hopf_ideals,
)

PICTURES = ("qg", "dqg")


class PictureMismatch(ValueError):
    pass


class TheoremViolation(AssertionError):
    """A computed counterexample to a statement whose hypotheses were verified."""


@dataclass(frozen=True)
class QuantumSubgroup:
    ambient: HopfAlgebra
    picture: str
    space: Subspace
    name: str = field(default="", compare=False, hash=False)

    def __post_init__(self):
        if self.picture not in PICTURES:
            raise ValueError(f"picture must be one of {PICTURES}")
        if self.space.ambient_dim != self.ambient.dim:
            raise ValueError("presentation lives in a different ambient")

    # -- constructors -----------------------------------------------------
    @staticmethod
    def from_ideal(H: HopfAlgebra, I: Subspace, name: str = "") -> "QuantumSubgroup":
        if not classify(H, I).hopf_ideal:
            raise ValueError("not a Hopf ideal")
        return QuantumSubgroup(H, "qg", I, name)

    @staticmethod
    def from_subalgebra(H: HopfAlgebra, A: Subspace, name: str = "") -> "QuantumSubgroup":
        if not classify(H, A).hopf_subalgebra:
            raise ValueError("not a Hopf subalgebra")
        return QuantumSubgroup(H, "dqg", A, name)

    @staticmethod
    def whole(H: HopfAlgebra, picture: str) -> "QuantumSubgroup":
        sp = Subspace.zero(H.dim) if picture == "qg" else Subspace.full(H.dim)
        return QuantumSubgroup(H, picture, sp, "G")

    @staticmethod
    def trivial(H: HopfAlgebra, picture: str) -> "QuantumSubgroup":
        sp = H.counit_kernel if picture == "qg" else H.unit_space
        return QuantumSubgroup(H, picture, sp, "1")

    # -- views ------------------------------------------------------------
    @property
    def order(self) -> int:
        """Dimension of the function algebra ``O(K)`` (or of ``kK``)."""
        return self.space.codim if self.picture == "qg" else self.space.dim

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    @cached_property
    def quotient(self):
        """``O(G) -> O(K)`` (qg picture)."""
        if self.picture != "qg":
            raise PictureMismatch("only qg subgroups carry a quotient presentation")
        return quotient_by_hopf_ideal(self.ambient, self.space)

    @cached_property
    def algebra(self) -> HopfAlgebra:
        """``O(K)`` or ``kK`` as a Hopf algebra."""
        if self.picture == "qg":
            return self.quotient.quotient
        return section(self.ambient, self.space, Subspace.zero(self.ambient.dim)).algebra

    @cached_property
    def codual(self) -> Subspace:
        """qg: the coideal subalgebra ``A_K = O(K \\ G)``; dqg: the left ideal ``kG kK^-``."""
        if self.picture == "qg":
            return relative_cd(self.ambient, self.space, Subspace.zero(self.ambient.dim))
        return left_ideal_generated(self.ambient, minus_part(self.ambient, self.space))

    def __le__(self, other: "QuantumSubgroup") -> bool:
        _same(self, other)
        if self.picture == "qg":
            return other.space <= self.space
        return self.space <= other.space

    def __lt__(self, other: "QuantumSubgroup") -> bool:
        return self <= other and self != other

    def __repr__(self):
        label = self.name or f"order {self.order}"
        return f"QuantumSubgroup({self.picture}, {label})"


def _same(a: QuantumSubgroup, b: QuantumSubgroup):
    if a.picture != b.picture:
        raise PictureMismatch(f"pictures differ: {a.picture} vs {b.picture}")
    if a.ambient != b.ambient:
        raise PictureMismatch("subgroups of different ambients")


# ---------------------------------------------------------------------------
# meets and joins


def meet_qg(K1: QuantumSubgroup, K2: QuantumSubgroup) -> QuantumSubgroup:
    """Quotient by the sum of the two Hopf ideals."""
    _same(K1, K2)
    if K1.picture != "qg":
        raise PictureMismatch("meet_qg needs qg subgroups")
    return QuantumSubgroup(K1.ambient, "qg", sum_of_hopf_ideals(K1.ambient, K1.space, K2.space))


def join_qg(K1: QuantumSubgroup, K2: QuantumSubgroup) -> QuantumSubgroup:
    """Quotient by the largest Hopf ideal inside both kernels."""
    _same(K1, K2)
    if K1.picture != "qg":
        raise PictureMismatch("join_qg needs qg subgroups")
    I = largest_hopf_ideal_within(K1.ambient, K1.space & K2.space)
    return QuantumSubgroup(K1.ambient, "qg", I)


def meet_dqg(A1: QuantumSubgroup, A2: QuantumSubgroup) -> QuantumSubgroup:
    _same(A1, A2)
    if A1.picture != "dqg":
        raise PictureMismatch("meet_dqg needs dqg subgroups")
    A = A1.space & A2.space
    if not classify(A1.ambient, A).hopf_subalgebra:
        raise AssertionError("intersection of Hopf subalgebras is not a Hopf subalgebra")
    return QuantumSubgroup(A1.ambient, "dqg", A)


def join_dqg(A1: QuantumSubgroup, A2: QuantumSubgroup) -> QuantumSubgroup:
    _same(A1, A2)
    if A1.picture != "dqg":
        raise PictureMismatch("join_dqg needs dqg subgroups")
    return QuantumSubgroup(A1.ambient, "dqg", generate_closed(A1.ambient, A1.space + A2.space))


@lru_cache(maxsize=1 << 16)
def meet(a: QuantumSubgroup, b: QuantumSubgroup) -> QuantumSubgroup:
    return meet_qg(a, b) if a.picture == "qg" else meet_dqg(a, b)


@lru_cache(maxsize=1 << 16)
def join(a: QuantumSubgroup, b: QuantumSubgroup) -> QuantumSubgroup:
    return join_qg(a, b) if a.picture == "qg" else join_dqg(a, b)


# ---------------------------------------------------------------------------
# normality


@dataclass(frozen=True)
class RelativeNormality:
    normal: bool
    reason: str = ""
    detail: dict | None = None

    def __bool__(self):
        return self.normal


@lru_cache(maxsize=1 << 16)
def is_normal_in(M: QuantumSubgroup, J: QuantumSubgroup) -> RelativeNormality:
    """Whether ``M`` is a normal quantum subgroup of ``J`` (``M <= J`` required).

    dqg: ``kM`` is stable under both adjoint actions of ``kJ``.  qg: ``M`` is
    normal in the quotient Hopf algebra ``O(J)``, decided there by the codual
    and adjoint invariance.
    """
    _same(M, J)
    if not M <= J:
        return RelativeNormality(False, "not a subgroup")
    H = M.ambient
    if M.picture == "dqg":
        for side in ("right", "left"):
            r = ad_invariance(H, M.space, side, by=J.space)
            if not r.ok:
                return RelativeNormality(False, f"{side} adjoint action of the larger subgroup", r.witness)
        return RelativeNormality(True)
    sec = J.quotient.section
    Q = sec.algebra
    I = Subspace.span((sec.project(v) for v in M.space.vectors), Q.dim)
    res = normality(Q, I, "ideal")
    return RelativeNormality(res.normal, res.reason, res.detail)


def is_normal(M: QuantumSubgroup) -> RelativeNormality:
    return is_normal_in(M, QuantumSubgroup.whole(M.ambient, M.picture))


@lru_cache(maxsize=1 << 16)
def normalizes(L: QuantumSubgroup, M: QuantumSubgroup) -> bool:
    """Whether ``L`` normalises ``M``.

    qg: ``M`` is normal in ``M v L``.  dqg: ``kM`` is invariant under the
    adjoint actions of ``kL`` on ``kG``.
    """
    _same(L, M)
    if L.picture == "qg":
        return is_normal_in(M, join(M, L)).normal
    H = M.ambient
    return all(ad_invariance(H, M.space, side, by=L.space).ok for side in ("right", "left"))


# ---------------------------------------------------------------------------
# modular law


@dataclass
class ModularReport:
    lhs: QuantumSubgroup
    rhs: QuantumSubgroup
    equal: bool
    inclusion: bool  # rhs <= lhs, always expected
    hypotheses: dict
    mode: str
    theorem_applies: bool

    def to_json(self) -> dict:
        return {
            "lhs_order": self.lhs.order,
            "rhs_order": self.rhs.order,
            "equal": self.equal,
            "inclusion_rhs_in_lhs": self.inclusion,
            "hypotheses": self.hypotheses,
            "mode": self.mode,
            "theorem_applies": self.theorem_applies,
        }


def check_modular_law(
    H: QuantumSubgroup, L: QuantumSubgroup, M: QuantumSubgroup, mode: str = "theorem"
) -> ModularReport:
    """Compare ``H ^ (M v L)`` with ``(H ^ M) v L``.

    In ``theorem`` mode ``L <= H`` is required and, when ``L`` normalises ``M``
    (and, in the qg picture, the ambient is cosemisimple), inequality raises
    :class:`TheoremViolation`.  ``survey`` mode only reports.
    """
    _same(H, L)
    _same(L, M)
    if mode not in ("theorem", "survey"):
        raise ValueError("mode must be 'theorem' or 'survey'")
    l_in_h = L <= H
    if mode == "theorem" and not l_in_h:
        raise ValueError("modular law needs L <= H")
    hyp = {
        "L_le_H": l_in_h,
        "L_normalizes_M": normalizes(L, M),
        "M_normal": is_normal(M).normal,
    }
    if H.picture == "qg":
        hyp["cosemisimple"] = cosemisimple_test(H.ambient)
    lhs = meet(H, join(M, L))
    rhs = join(meet(H, M), L)
    inclusion = rhs <= lhs
    equal = lhs == rhs
    applies = l_in_h and (hyp["L_normalizes_M"] or hyp["M_normal"]) and hyp.get("cosemisimple", True)
    report = ModularReport(lhs, rhs, equal, inclusion, hyp, mode, applies)
    if mode == "theorem" and l_in_h and not inclusion:
        raise TheoremViolation("(H ^ M) v L is not contained in H ^ (M v L)")
    if mode == "theorem" and applies and not equal:
        raise TheoremViolation("modular law fails under its hypotheses")
    return report


def pushout_factors(K: QuantumSubgroup, cocone_ideal: Subspace) -> bool:
    """Whether a quotient with kernel ``cocone_ideal`` factors through ``O(G) -> O(K)``."""
    return K.space <= cocone_ideal

