"""Exact linear algebra over Q, with an optional cyclotomic extension.

Vectors are sparse ``dict[int, scalar]`` maps with no stored zeros.  Subspaces
are kept in canonical reduced row echelon form so that two subspaces are equal
exactly when their stored rows are equal.

Tensor spaces are flattened row-major: index ``(i, j)`` of an ``n x m`` tensor
space is ``i * m + j`` (and ``(i, j, k)`` of an ``n x n x n`` space is
``(i * n + j) * n + k``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Any, Callable, Iterable, Sequence

from gmpy2 import mpq

Vec = dict  # dict[int, scalar]

ZERO = mpq(0)
ONE = mpq(1)


# ---------------------------------------------------------------------------
# scalars


def scalar(x: Any) -> Any:
    """Coerce ``x`` to an exact scalar.

    Accepts ints, ``Fraction``, ``mpq``, strings ``"p/q"`` / ``"p"`` and
    :class:`Cyclotomic` values (returned unchanged).  Floats are rejected.
    """
    if isinstance(x, Cyclotomic):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, float):
        raise TypeError("floating point values are not exact scalars")
    if isinstance(x, str):
        s = x.strip()
        if not s or any(c not in "0123456789-+/" for c in s):
            raise ValueError(f"not a rational literal: {x!r}")
        return mpq(s)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


def format_scalar(x: Any) -> str | list[str]:
    """Canonical text form: ``"p/q"`` or ``"p"``; cyclotomics as coefficient lists."""
    if isinstance(x, Cyclotomic):
        return [str(c) for c in x.coeffs]
    return str(mpq(x))


def _cyclotomic_poly(n: int) -> tuple:
    # coefficients low -> high, computed as x^n - 1 divided by Phi_d for d | n, d < n
    num = [mpq(-1)] + [ZERO] * (n - 1) + [ONE]
    for d in range(1, n):
        if n % d == 0:
            num, rem = _poly_divmod(num, list(_cyclotomic_poly(d)))
            assert not any(rem)
    return tuple(num)


def _poly_trim(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def _poly_divmod(a: list, b: list) -> tuple[list, list]:
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [ZERO] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] -= c * bc
        a.pop()
        _poly_trim(a)
    return q, a


def _poly_mul(a: Sequence, b: Sequence) -> list:
    out = [ZERO] * (len(a) + len(b) - 1 if a and b else 0)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


class Cyclotomic:
    """Element of Q(zeta_n), stored as a polynomial of degree < phi(n) reduced mod Phi_n."""

    __slots__ = ("n", "coeffs")
    _modulus_cache: dict[int, tuple] = {}

    def __init__(self, n: int, coeffs: Iterable[Any]):
        mod = self.modulus(n)
        deg = len(mod) - 1
        poly = [scalar(c) for c in coeffs]
        if len(poly) > deg:
            _, poly = _poly_divmod(poly, list(mod))
        poly = list(poly) + [ZERO] * (deg - len(poly))
        self.n = n
        self.coeffs = tuple(poly)

    @classmethod
    def modulus(cls, n: int) -> tuple:
        if n < 1:
            raise ValueError("conductor must be positive")
        if n not in cls._modulus_cache:
            cls._modulus_cache[n] = _cyclotomic_poly(n)
        return cls._modulus_cache[n]

    @classmethod
    def zeta(cls, n: int) -> "Cyclotomic":
        return cls(n, [ZERO, ONE])

    def _coerce(self, other: Any) -> "Cyclotomic":
        if isinstance(other, Cyclotomic):
            if other.n != self.n:
                raise ValueError("mixing cyclotomic fields of different conductors")
            return other
        return Cyclotomic(self.n, [scalar(other)])

    def __add__(self, other):
        o = self._coerce(other)
        return Cyclotomic(self.n, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.n, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return Cyclotomic(self.n, _poly_mul(self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        # extended Euclid in Q[x]; Phi_n is irreducible so gcd is a nonzero constant
        a, b = list(self.coeffs), list(self.modulus(self.n))
        _poly_trim(a)
        if not a:
            raise ZeroDivisionError("inverse of zero")
        s0, s1 = [ONE], [ZERO]
        while _poly_trim(b):
            q, r = _poly_divmod(a, b)
            a, b = b, r
            qs = _poly_mul(q, s1)
            s0, s1 = s1, [x - y for x, y in _zip_pad(s0, qs)]
        g = a[0]
        return Cyclotomic(self.n, [c / g for c in s0])

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        if not any(self.coeffs[1:]):
            return hash(self.coeffs[0])
        return hash((self.n, self.coeffs))

    def __repr__(self):
        terms = [f"{c}*z^{i}" if i else str(c) for i, c in enumerate(self.coeffs) if c]
        return f"Cyclotomic({self.n}: {' + '.join(terms) or '0'})"


def _zip_pad(a: list, b: list):
    n = max(len(a), len(b))
    a = list(a) + [ZERO] * (n - len(a))
    b = list(b) + [ZERO] * (n - len(b))
    return zip(a, b)


# ---------------------------------------------------------------------------
# sparse vectors


def axpy(acc: Vec, c: Any, v: Vec) -> Vec:
    """In place ``acc += c * v``; drops cancelled entries."""
    if not c:
        return acc
    for k, x in v.items():
        y = acc.get(k)
        if y is None:
            acc[k] = c * x
        else:
            y = y + c * x
            if y:
                acc[k] = y
            else:
                del acc[k]
    return acc


def vec_add(u: Vec, v: Vec) -> Vec:
    return axpy(dict(u), ONE, v)


def vec_sub(u: Vec, v: Vec) -> Vec:
    return axpy(dict(u), -ONE, v)


def vec_scale(c: Any, v: Vec) -> Vec:
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


def dot(f: Vec, v: Vec) -> Any:
    if len(f) > len(v):
        f, v = v, f
    s = ZERO
    for k, x in f.items():
        y = v.get(k)
        if y is not None:
            s = s + x * y
    return s


def unit_vec(i: int) -> Vec:
    return {i: ONE}


def to_vec(row: Sequence[Any]) -> Vec:
    out = {}
    for i, x in enumerate(row):
        x = scalar(x)
        if x:
            out[i] = x
    return out


def to_dense(v: Vec, n: int) -> list:
    out = [ZERO] * n
    for k, x in v.items():
        out[k] = x
    return out


def tensor_index(i: int, j: int, m: int) -> int:
    """Row-major flattening of ``(i, j)`` in a space whose second factor has dim ``m``."""
    return i * m + j


def tensor_split(k: int, m: int) -> tuple[int, int]:
    return divmod(k, m)


# ---------------------------------------------------------------------------
# echelon forms


class Echelon:
    """Incremental reduced row echelon form.

    Every stored row has leading entry 1 at its pivot, and pivot columns are zero
    in all other rows, so reducing a vector is a single pass over its pivot
    entries.
    """

    __slots__ = ("rows",)

    def __init__(self, vectors: Iterable[Vec] = ()):
        self.rows: dict[int, Vec] = {}
        for v in vectors:
            self.add(v)

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: Vec) -> Vec:
        out = dict(v)
        rows = self.rows
        for col in [k for k in out if k in rows]:
            c = out.get(col)
            if c:
                axpy(out, -c, rows[col])
        return out

    def add(self, v: Vec) -> bool:
        """Insert ``v``; returns False when it already lies in the row space."""
        r = self.reduce(v)
        if not r:
            return False
        p = min(r)
        inv = ONE / r[p]
        if inv != 1:
            r = {k: x * inv for k, x in r.items()}
        for row in self.rows.values():
            c = row.get(p)
            if c:
                axpy(row, -c, r)
        self.rows[p] = r
        return True

    def freeze(self, ambient_dim: int) -> "Subspace":
        pivots = tuple(sorted(self.rows))
        rows = tuple(tuple(sorted(self.rows[p].items())) for p in pivots)
        return Subspace(ambient_dim, rows, pivots)


def relations(images: Sequence[Vec]) -> list[Vec]:
    """Basis of ``{c : sum_i c_i * images[i] = 0}`` as sparse coefficient vectors."""
    piv: dict[int, tuple[Vec, Vec]] = {}
    rels: list[Vec] = []
    for idx, img in enumerate(images):
        v = dict(img)
        comb = {idx: ONE}
        for col in [k for k in v if k in piv]:
            c = v.get(col)
            if c:
                row, rc = piv[col]
                axpy(v, -c, row)
                axpy(comb, -c, rc)
        if not v:
            rels.append(comb)
            continue
        p = min(v)
        inv = ONE / v[p]
        if inv != 1:
            v = {k: x * inv for k, x in v.items()}
            comb = {k: x * inv for k, x in comb.items()}
        for row, rc in piv.values():
            c = row.get(p)
            if c:
                axpy(row, -c, v)
                axpy(rc, -c, comb)
        piv[p] = (v, comb)
    return rels


# ---------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class Subspace:
    """A subspace of k^ambient_dim in canonical RREF.

    ``rows`` holds each basis row as a sorted tuple of ``(column, value)``
    pairs; ``pivots`` are the leading columns.  Equality and hashing are
    structural, which makes equality of subspaces a bit-exact comparison.
    """

    ambient_dim: int
    rows: tuple
    pivots: tuple

    # -- constructors -----------------------------------------------------
    @staticmethod
    def zero(n: int) -> "Subspace":
        return Subspace(n, (), ())

    @staticmethod
    def full(n: int) -> "Subspace":
        return Subspace(n, tuple(((i, ONE),) for i in range(n)), tuple(range(n)))

    @staticmethod
    def span(vectors: Iterable[Vec], n: int) -> "Subspace":
        return Echelon(vectors).freeze(n)

    @staticmethod
    def from_rows(rows: Sequence[Sequence[Any]]) -> "Subspace":
        rows = list(rows)
        if not rows:
            raise ValueError("ambient dimension is ambiguous for an empty row list")
        n = len(rows[0])
        return Subspace.span((to_vec(r) for r in rows), n)

    # -- views ------------------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def codim(self) -> int:
        return self.ambient_dim - len(self.rows)

    @cached_property
    def vectors(self) -> tuple:
        return tuple(dict(r) for r in self.rows)

    @property
    def basis(self) -> list[list]:
        return [to_dense(v, self.ambient_dim) for v in self.vectors]

    @cached_property
    def _echelon(self) -> Echelon:
        e = Echelon()
        e.rows = {p: v for p, v in zip(self.pivots, self.vectors)}
        return e

    @cached_property
    def nonpivots(self) -> tuple:
        ps = set(self.pivots)
        return tuple(i for i in range(self.ambient_dim) if i not in ps)

    # -- queries ----------------------------------------------------------
    def reduce(self, v: Vec) -> Vec:
        """Normal form of ``v`` modulo this subspace (supported on non-pivot columns)."""
        return self._echelon.reduce(v)

    def contains(self, v: Vec) -> bool:
        return not self.reduce(v)

    def coordinates(self, v: Vec) -> Vec | None:
        """Coordinates of ``v`` in the RREF basis, or None if ``v`` is outside."""
        if self.reduce(v):
            return None
        return {t: v[p] for t, p in enumerate(self.pivots) if p in v}

    def combine(self, coords: Vec) -> Vec:
        out: Vec = {}
        vecs = self.vectors
        for t, c in coords.items():
            axpy(out, c, vecs[t])
        return out

    def __le__(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains(v) for v in self.vectors)

    def __ge__(self, other: "Subspace") -> bool:
        return other <= self

    def __lt__(self, other: "Subspace") -> bool:
        return self.dim < other.dim and self <= other

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if other.dim > self.dim:
            self, other = other, self
        e = Echelon()
        e.rows = {p: dict(v) for p, v in zip(self.pivots, self.vectors)}
        for v in other.vectors:
            e.add(v)
        return e.freeze(self.ambient_dim)

    def __and__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if other.dim < self.dim:
            self, other = other, self
        return self.kernel_of(other.reduce)

    def kernel_of(self, fn: Callable[[Vec], Vec]) -> "Subspace":
        """``{x in self : fn(x) = 0}`` for a linear ``fn``."""
        vecs = self.vectors
        if not vecs:
            return self
        rels = relations([fn(v) for v in vecs])
        return Subspace.span((self.combine(r) for r in rels), self.ambient_dim)

    def image(self, fn: Callable[[Vec], Vec], n: int) -> "Subspace":
        return Subspace.span((fn(v) for v in self.vectors), n)

    def annihilator(self) -> list[Vec]:
        """Covectors spanning the annihilator, one per non-pivot column."""
        out = []
        for j in self.nonpivots:
            f = {j: ONE}
            for p, v in zip(self.pivots, self.vectors):
                c = v.get(j)
                if c:
                    f[p] = -c
            out.append(f)
        return out

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise ValueError(
                f"ambient dimension mismatch: {self.ambient_dim} vs {other.ambient_dim}"
            )

    def sort_key(self) -> tuple:
        return (self.dim, self.rows)

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.ambient_dim, self.rows))
            self.__dict__["_hash"] = h
        return h

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


# ---------------------------------------------------------------------------
# matrix-level operations


def rref(matrix: Sequence[Sequence[Any]]) -> tuple[list[list], list[int]]:
    """Canonical RREF of a dense matrix and its pivot columns (zero rows dropped)."""
    if not matrix:
        return [], []
    sub = Subspace.span((to_vec(r) for r in matrix), len(matrix[0]))
    return sub.basis, list(sub.pivots)


def rank(matrix: Sequence[Sequence[Any]]) -> int:
    return len(rref(matrix)[1])


def columns(matrix: Sequence[Sequence[Any]]) -> list[Vec]:
    if not matrix:
        return []
    ncols = len(matrix[0])
    cols: list[Vec] = [{} for _ in range(ncols)]
    for i, row in enumerate(matrix):
        for j, x in enumerate(row):
            x = scalar(x)
            if x:
                cols[j][i] = x
    return cols


def kernel(matrix: Sequence[Sequence[Any]], ncols: int | None = None) -> Subspace:
    """Null space ``{x : M x = 0}`` of a dense matrix."""
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    cols = columns(matrix) if matrix else [{} for _ in range(ncols)]
    return Subspace.span(relations(cols), ncols)


def kernel_of_images(images: Sequence[Vec], n: int) -> Subspace:
    """Kernel of the linear map sending basis vector ``i`` of k^n to ``images[i]``."""
    return Subspace.span(relations(images), n)


def subspace_combine(u: Subspace, v: Subspace, mode: str) -> Subspace:
    if mode == "sum":
        return u + v
    if mode == "intersect":
        return u & v
    raise ValueError(f"unknown mode {mode!r}")


def membership(v: Sequence[Any] | Vec, u: Subspace) -> tuple[bool, list | None]:
    """Whether ``v`` lies in ``u``; on success also the coordinate vector in ``u``'s basis."""
    vec = v if isinstance(v, dict) else to_vec(v)
    coords = u.coordinates(vec)
    if coords is None:
        return False, None
    return True, to_dense(coords, u.dim)


def inverse(cols: Sequence[Vec], n: int) -> list[Vec] | None:
    """Inverse of the square map given by column images; None when singular."""
    e = Echelon()
    # rows of the augmented system [M^T | I]: row i is (column i of M, e_i)
    for i, c in enumerate(cols):
        row = dict(c)
        row[n + i] = ONE
        e.add(row)
    if set(range(n)) - set(e.rows):
        return None
    # RREF of [M^T | I] is [I | (M^T)^-1]; row p of the right block is column p of M^-1
    inv_cols: list[Vec] = []
    for p in range(n):
        inv_cols.append({k - n: x for k, x in e.rows[p].items() if k >= n})
    return inv_cols


def apply_cols(cols: Sequence[Vec], v: Vec) -> Vec:
    out: Vec = {}
    for k, x in v.items():
        axpy(out, x, cols[k])
    return out


def tensor_apply(t: Vec, n: int, left: Sequence[Vec] | None, right: Sequence[Vec] | None, m: int) -> Vec:
    """Apply ``f (x) g`` to a flattened tensor over ``k^n (x) k^n``.

    ``left``/``right`` are column images in ``k^m`` (``None`` means identity,
    in which case ``m`` must equal ``n`` for that factor).  The result is
    flattened over ``k^m (x) k^m``.
    """
    out: Vec = {}
    for k, c in t.items():
        i, j = divmod(k, n)
        li = left[i] if left is not None else {i: ONE}
        if not li:
            continue
        rj = right[j] if right is not None else {j: ONE}
        if not rj:
            continue
        for p, x in li.items():
            cx = c * x
            base = p * m
            for q, y in rj.items():
                k2 = base + q
                val = out.get(k2, ZERO) + cx * y
                if val:
                    out[k2] = val
                else:
                    out.pop(k2, None)
    return out
