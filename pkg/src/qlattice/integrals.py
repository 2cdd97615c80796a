"""Integrals, Haar functionals, (co)semisimplicity and conditional expectations."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .exactalg import ONE, ZERO, Subspace, Vec, axpy, vec_scale, vec_sub
from .hopfcore import Element, HopfAlgebra, StructuredMap, dual
from .subobj import QuotientPresentation, _concat
from .duality import cd_of_quotient


class IntegralError(ValueError):
    pass


@dataclass(frozen=True)
class IntegralData:
    left_integral: Element
    haar_functional: tuple | None  # dense covector, lambda(1) = 1
    semisimple: bool
    cosemisimple: bool


def _left_integral_space(H: HopfAlgebra) -> Subspace:
    n = H.dim
    return Subspace.full(n).kernel_of(
        lambda v: _concat(
            [vec_sub(H.mul({a: ONE}, v), vec_scale(H.counit[a], v)) for a in range(n)], n
        )
    )


def _left_integral(H: HopfAlgebra) -> Vec:
    L = _left_integral_space(H)
    if L.dim != 1:
        raise IntegralError(f"space of left integrals has dimension {L.dim}, expected 1")
    v = L.vectors[0]
    e = H.eps(v)
    return vec_scale(ONE / e, v) if e else v


@lru_cache(maxsize=256)
def integral(H: HopfAlgebra) -> IntegralData:
    """Left integral ``Lambda`` (``x Lambda = epsilon(x) Lambda``) and the Haar functional.

    The Haar functional is the left integral of the dual, a covector ``lambda``
    with ``(id (x) lambda) Delta = lambda(.) 1``; it is normalised to
    ``lambda(1) = 1`` when that is possible, which is exactly cosemisimplicity.
    """
    lam_left = _left_integral(H)
    semisimple = bool(H.eps(lam_left))
    D = dual(H)
    lam = _left_integral(D)
    cosemisimple = bool(D.eps(lam))
    haar_cov = None
    if cosemisimple:
        haar_cov = tuple(lam.get(i, ZERO) for i in range(H.dim))
    return IntegralData(Element(H, lam_left), haar_cov, semisimple, cosemisimple)


def cosemisimple_test(H: HopfAlgebra) -> bool:
    return integral(H).cosemisimple


def haar(H: HopfAlgebra) -> tuple:
    """The normalised Haar functional as a dense covector; requires cosemisimplicity."""
    data = integral(H)
    if data.haar_functional is None:
        raise IntegralError("algebra is not cosemisimple; no normalised Haar functional")
    lam = data.haar_functional
    n = H.dim
    # invariance on both sides
    for i in range(n):
        left: Vec = {}
        right: Vec = {}
        for k, c in H.comult[i].items():
            a, b = divmod(k, n)
            if lam[b]:
                axpy(left, c * lam[b], {a: ONE})
            if lam[a]:
                axpy(right, c * lam[a], {b: ONE})
        target = vec_scale(lam[i], H.unit)
        if left != target or right != target:
            raise IntegralError(f"Haar invariance fails at basis {H.labels[i]}")
    return lam


def apply_covector(f, v: Vec):
    s = ZERO
    for k, c in v.items():
        if f[k]:
            s = s + c * f[k]
    return s


@dataclass(frozen=True)
class Expectation:
    map: StructuredMap | None
    cols: tuple
    range: Subspace
    idempotent: bool
    range_is_codual: bool
    bimodule: bool

    def apply(self, v: Vec) -> Vec:
        out: Vec = {}
        for k, c in v.items():
            axpy(out, c, self.cols[k])
        return out


@lru_cache(maxsize=1024)
def expectation(G: HopfAlgebra, pi: QuotientPresentation) -> Expectation:
    """``E_K = (h_K o pi (x) id) o Delta`` onto the codual ``A_K`` of the quotient ``pi``.

    Checks idempotence, that the range is ``cd(pi)``, and the bimodule identity
    ``E(a x b) = a E(x) b`` for ``a, b`` in ``A_K`` (verified one side at a time).
    """
    hK = haar(pi.quotient)
    n = G.dim
    mu = [apply_covector(hK, pi.projection.cols[i]) for i in range(n)]
    cols = []
    for i in range(n):
        out: Vec = {}
        for k, c in G.comult[i].items():
            a, b = divmod(k, n)
            if mu[a]:
                axpy(out, c * mu[a], {b: ONE})
        cols.append(out)
    cols = tuple(cols)

    def E(v: Vec) -> Vec:
        out: Vec = {}
        for k, c in v.items():
            axpy(out, c, cols[k])
        return out

    rng = Subspace.span(cols, n)
    A = cd_of_quotient(G, pi)
    idem = all(E(c) == c for c in cols)
    bimod = True
    for a in A.vectors:
        for i in range(n):
            x = {i: ONE}
            if E(G.mul(a, x)) != G.mul(a, cols[i]) or E(G.mul(x, a)) != G.mul(cols[i], a):
                bimod = False
                break
        if not bimod:
            break
    return Expectation(StructuredMap(G, G, cols), cols, rng, idem, rng == A, bimod)
