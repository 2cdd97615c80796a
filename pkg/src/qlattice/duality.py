"""Coduality between coideal subalgebras and quotients, adjoint invariance,
normality and the largest cocommutative Hopf subalgebra."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Union

from .exactalg import ONE, Subspace, Vec, axpy, tensor_apply, vec_sub
from .hopfcore import HopfAlgebra, _flip
from .subobj import (
    ModuleQuotient,
    QuotientPresentation,
    classify,
    left_ideal_generated,
    minus_part,
    quotient_by_hopf_ideal,
    quotient_module_coalgebra,
    reducer,
    right_ideal_generated,
)

QuotientLike = Union[QuotientPresentation, ModuleQuotient, Subspace]


def _kernel_of(pi: QuotientLike) -> Subspace:
    if isinstance(pi, QuotientPresentation):
        return pi.ideal
    if isinstance(pi, ModuleQuotient):
        return pi.ideal
    return pi


def _one_tensor(H: HopfAlgebra, v: Vec) -> Vec:
    n = H.dim
    return {i * n + j: a * b for i, a in H.unit.items() for j, b in v.items()}


@lru_cache(maxsize=4096)
def relative_cd(H: HopfAlgebra, I_K: Subspace, I_X: Subspace) -> Subspace:
    """``{x : (q_K (x) q_X)(Delta x - 1 (x) x) = 0}`` for ideals ``I_X`` inside ``I_K``.

    With ``I_X = 0`` this is the codual of the quotient ``H -> H / I_K``; in
    general it is the preimage of that codual computed inside ``H / I_X``.
    """
    n = H.dim
    qk = reducer(I_K)
    qx = reducer(I_X) if I_X.dim else None
    return Subspace.full(n).kernel_of(
        lambda v: tensor_apply(vec_sub(H.comul(v), _one_tensor(H, v)), n, qk, qx, n)
    )


def cd_of_quotient(H: HopfAlgebra, pi: QuotientLike) -> Subspace:
    """``{x : pi(x_1) (x) x_2 = pi(1) (x) x}``, verified to be a right coideal subalgebra."""
    I = _kernel_of(pi)
    A = relative_cd(H, I, Subspace.zero(H.dim))
    if not classify(H, A).right_coideal_subalgebra:
        raise AssertionError("codual of a quotient failed to be a right coideal subalgebra")
    return A


@dataclass(frozen=True)
class Codual:
    """``H / H A^-`` as a module quotient coalgebra, upgraded to a Hopf quotient when possible."""

    module: ModuleQuotient
    hopf: QuotientPresentation | None

    @property
    def ideal(self) -> Subspace:
        return self.module.ideal

    @property
    def dim(self) -> int:
        return self.module.dim


def cd_of_subalgebra(H: HopfAlgebra, A: Subspace) -> Codual:
    mq = quotient_module_coalgebra(H, A)
    hopf = None
    c = classify(H, mq.ideal)
    if c.hopf_ideal and ad_invariance(H, A, "right").ok and ad_invariance(H, A, "left").ok:
        hopf = quotient_by_hopf_ideal(H, mq.ideal)
    return Codual(mq, hopf)


# ---------------------------------------------------------------------------
# adjoint actions


@dataclass(frozen=True)
class AdResult:
    ok: bool
    side: str
    witness: dict | None = None

    def __bool__(self):
        return self.ok


def ad_action(H: HopfAlgebra, x: Vec, a: Vec, side: str) -> Vec:
    """Right: ``S(x_1) a x_2``; left: ``x_1 a S(x_2)``."""
    n = H.dim
    out: Vec = {}
    for k, c in H.comul(x).items():
        i, j = divmod(k, n)
        if side == "right":
            axpy(out, c, H.mul(H.mul(H.antipode[i], a), {j: ONE}))
        else:
            axpy(out, c, H.mul(H.mul({i: ONE}, a), H.antipode[j]))
    return out


def ad_invariance(H: HopfAlgebra, A: Subspace, side: str = "right", by: Subspace | None = None) -> AdResult:
    """Whether ``A`` is stable under the adjoint action of ``by`` (default: all of ``H``)."""
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    xs = [{i: ONE} for i in range(H.dim)] if by is None else list(by.vectors)
    for x in xs:
        for a in A.vectors:
            img = ad_action(H, x, a, side)
            if not A.contains(img):
                return AdResult(
                    False,
                    side,
                    {
                        "x": H.format_vector(x),
                        "a": H.format_vector(a),
                        "image": H.format_vector(img),
                    },
                )
    return AdResult(True, side)


# ---------------------------------------------------------------------------
# coadjoint coaction


class DescentFailure(ValueError):
    def __init__(self, message: str, witness: dict):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class Coaction:
    """A left coaction ``C -> H (x) C``; ``cols[t]`` is flattened over ``H (x) C``."""

    algebra: HopfAlgebra
    dim: int
    cols: tuple
    coassociative: bool
    counital: bool


def coadjoint(H: HopfAlgebra, x: Vec) -> Vec:
    """``x_1 S(x_3) (x) x_2``."""
    n = H.dim
    out: Vec = {}
    for k, c in H.comul(x).items():
        i, j = divmod(k, n)
        for k2, c2 in H.comult[i].items():
            a, b = divmod(k2, n)
            prod = H.mul({a: ONE}, H.antipode[j])
            for p, y in prod.items():
                key = p * n + b
                val = out.get(key, 0) + c * c2 * y
                if val:
                    out[key] = val
                else:
                    out.pop(key, None)
    return out


def coadjoint_descends(H: HopfAlgebra, pi: QuotientPresentation) -> Coaction:
    """The coadjoint coaction induced on ``C = H / ker pi``; raises :class:`DescentFailure`."""
    n = H.dim
    I = pi.ideal
    q = reducer(I)
    for v in I.vectors:
        img = tensor_apply(coadjoint(H, v), n, None, q, n)
        if img:
            raise DescentFailure(
                "kernel is not a coadjoint subcomodule",
                {"x": H.format_vector(v)},
            )
    sec = pi.section
    d = sec.dim
    proj = [sec.project({i: ONE}) for i in range(n)]
    cols = tuple(tensor_apply(coadjoint(H, sec.lift({t: ONE})), n, None, proj, d) for t in range(d))

    coassoc = True
    counital = True
    for t in range(d):
        r = cols[t]
        # (Delta (x) id) rho versus (id (x) rho) rho, over H (x) H (x) C
        left: Vec = {}
        right: Vec = {}
        eps_part: Vec = {}
        for k, c in r.items():
            h, s = divmod(k, d)
            for k2, c2 in H.comult[h].items():
                axpy(left, c * c2, {k2 * d + s: ONE})
            for k3, c3 in cols[s].items():
                axpy(right, c * c3, {h * n * d + k3: ONE})
            e = H.counit[h]
            if e:
                axpy(eps_part, c * e, {s: ONE})
        coassoc &= left == right
        counital &= eps_part == {t: ONE}
    return Coaction(pi.quotient, d, cols, coassoc, counital)


# ---------------------------------------------------------------------------
# normality


@dataclass(frozen=True)
class ExactSequenceWitness:
    ambient: HopfAlgebra
    sub: Subspace
    quot: QuotientPresentation
    checks: dict = field(default_factory=dict)

    @property
    def valid(self) -> bool:
        return all(self.checks.values())


@dataclass(frozen=True)
class NormalityResult:
    normal: bool
    witness: ExactSequenceWitness | None = None
    reason: str = ""
    detail: dict | None = None

    def __bool__(self):
        return self.normal


def _exact_sequence(H: HopfAlgebra, A: Subspace) -> ExactSequenceWitness:
    Am = minus_part(H, A)
    HA = left_ideal_generated(H, Am)
    AH = right_ideal_generated(H, Am)
    quot = quotient_by_hopf_ideal(H, HA)
    checks = {
        "cd_of_quotient_equals_sub": cd_of_quotient(H, quot) == A,
        "kernel_equals_HA-": quot.ideal == HA,
        "A-H_equals_HA-": AH == HA,
    }
    return ExactSequenceWitness(H, A, quot, checks)


def _subalgebra_normality(H: HopfAlgebra, A: Subspace) -> NormalityResult:
    c = classify(H, A)
    if not c.hopf_subalgebra:
        return NormalityResult(False, reason="not a Hopf subalgebra", detail=c.flags())
    for side in ("right", "left"):
        r = ad_invariance(H, A, side)
        if not r.ok:
            return NormalityResult(False, reason=f"not invariant under the {side} adjoint action", detail=r.witness)
    w = _exact_sequence(H, A)
    if not w.valid:
        return NormalityResult(False, w, reason="exact sequence checks failed", detail=w.checks)
    return NormalityResult(True, w)


@lru_cache(maxsize=4096)
def normality(H: HopfAlgebra, X: Subspace, kind: str) -> NormalityResult:
    """Normality of a Hopf subalgebra (``kind="subalgebra"``) or of the quotient by a
    Hopf ideal (``kind="ideal"``)."""
    if kind == "subalgebra":
        return _subalgebra_normality(H, X)
    if kind != "ideal":
        raise ValueError("kind must be 'subalgebra' or 'ideal'")
    A = cd_of_quotient(H, X)
    res = _subalgebra_normality(H, A)
    if not res.normal:
        return res
    if res.witness.quot.ideal != X:
        return NormalityResult(
            False, reason="H cd(pi)^- differs from ker pi", detail={"dim_codual_ideal": res.witness.quot.ideal.dim}
        )
    return res


def normality_of(H: HopfAlgebra, X) -> NormalityResult:
    """Dispatch on a :class:`QuotientPresentation` or a Hopf-subalgebra subspace."""
    if isinstance(X, QuotientPresentation):
        return normality(H, X.ideal, "ideal")
    return normality(H, X, "subalgebra")


# ---------------------------------------------------------------------------
# largest cocommutative Hopf subalgebra


@lru_cache(maxsize=256)
def largest_cocommutative(H: HopfAlgebra) -> Subspace:
    """``M = {x : (id (x) (Delta - Delta^op)) Delta x = 0}``.

    Computed as ``{x : Delta x in H (x) K}`` with ``K = ker(Delta - Delta^op)``,
    which is the same subspace; the result is verified to be a Hopf subalgebra.
    """
    n = H.dim
    K = Subspace.full(n).kernel_of(lambda v: vec_sub(H.comul(v), _flip(H.comul(v), n, n)))
    q = reducer(K)
    M = Subspace.full(n).kernel_of(lambda v: tensor_apply(H.comul(v), n, None, q, n))
    if not classify(H, M).hopf_subalgebra:
        raise AssertionError("largest cocommutative subspace is not a Hopf subalgebra")
    return M


def largest_cocommutative_direct(H: HopfAlgebra) -> Subspace:
    """The same subspace from the kernel on ``H (x) H (x) H``; used as a cross-check."""
    n = H.dim
    nn = n * n

    def f(v: Vec) -> Vec:
        out: Vec = {}
        for k, c in H.comul(v).items():
            i, j = divmod(k, n)
            d = H.comult[j]
            diff = vec_sub(d, _flip(d, n, n))
            for k2, c2 in diff.items():
                axpy(out, c * c2, {i * nn + k2: ONE})
        return out

    return Subspace.full(n).kernel_of(f)


def product_space(H: HopfAlgebra, B: Subspace, A: Subspace) -> Subspace:
    """``span(B A)``."""
    return Subspace.span((H.mul(b, a) for b in B.vectors for a in A.vectors), H.dim)

