"""Finite-dimensional Hopf algebras given by structure constants."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Sequence

from gmpy2 import mpq

from .exactalg import (
    ONE,
    ZERO,
    Cyclotomic,
    Echelon,
    Subspace,
    Vec,
    apply_cols,
    axpy,
    dot,
    inverse,
    kernel_of_images,
    scalar,
    to_dense,
    to_vec,
    vec_scale,
    vec_sub,
)

AXIOMS = (
    "associativity",
    "unitality",
    "coassociativity",
    "counitality",
    "comultiplication_multiplicative",
    "counit_multiplicative",
    "antipode",
)


@dataclass
class AxiomFailure:
    axiom: str
    witness: tuple
    detail: str = ""

    def __str__(self):
        w = ", ".join(str(x) for x in self.witness)
        return f"{self.axiom} fails at ({w}){': ' + self.detail if self.detail else ''}"


@dataclass
class AxiomReport:
    failures: list[AxiomFailure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def failed_axioms(self) -> list[str]:
        seen: list[str] = []
        for f in self.failures:
            if f.axiom not in seen:
                seen.append(f.axiom)
        return seen

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "failures": [
                {"axiom": f.axiom, "witness": list(f.witness), "detail": f.detail}
                for f in self.failures
            ],
        }

    def __str__(self):
        if self.ok:
            return "all Hopf axioms hold"
        return "; ".join(str(f) for f in self.failures)


class HopfAxiomError(ValueError):
    """Raised when structure constants do not define a Hopf algebra."""

    def __init__(self, report: AxiomReport):
        super().__init__(str(report))
        self.report = report


class HopfAlgebra:
    """A finite-dimensional Hopf algebra with structure constants.

    ``mult[i][j]`` is the sparse vector ``e_i e_j``; ``comult[i]`` is ``Delta(e_i)``
    as a sparse vector over the flattened ``H (x) H`` (index ``a * n + b``);
    ``antipode[i]`` is ``S(e_i)``.  Instances are validated on construction and
    treated as immutable.
    """

    def __init__(
        self,
        labels: Sequence[str],
        mult: Sequence[Sequence[Vec]],
        unit: Vec,
        comult: Sequence[Vec],
        counit: Sequence[Any],
        antipode: Sequence[Vec],
        *,
        field: Any = "Q",
        validate: bool = True,
    ):
        n = len(labels)
        self.dim = n
        self.labels = tuple(labels)
        self.field = field
        self.mult = tuple(tuple(_clean(v) for v in row) for row in mult)
        self.unit = _clean(unit)
        self.comult = tuple(_clean(v) for v in comult)
        self.counit = tuple(scalar(c) for c in counit)
        self.antipode = tuple(_clean(v) for v in antipode)
        if not (
            len(self.mult) == n
            and all(len(r) == n for r in self.mult)
            and len(self.comult) == n
            and len(self.counit) == n
            and len(self.antipode) == n
        ):
            raise ValueError("structure tables have inconsistent sizes")
        if validate:
            report = self.check_axioms()
            if not report.ok:
                raise HopfAxiomError(report)
        inv = inverse(self.antipode, n)
        if inv is None:
            raise HopfAxiomError(
                AxiomReport([AxiomFailure("antipode_bijective", (), "antipode is singular")])
            )
        self.antipode_inverse = tuple(inv)
        self._key = (
            self.labels,
            self.mult_key(),
            tuple(sorted(self.unit.items())),
            tuple(tuple(sorted(v.items())) for v in self.comult),
            self.counit,
            tuple(tuple(sorted(v.items())) for v in self.antipode),
        )
        self._hash = hash(self._key)

    def mult_key(self):
        return tuple(tuple(tuple(sorted(v.items())) for v in row) for row in self.mult)

    # -- identity ---------------------------------------------------------
    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, HopfAlgebra):
            return NotImplemented
        return self._hash == other._hash and self._key == other._key

    def same_structure(self, other: "HopfAlgebra") -> bool:
        """Equality of structure constants, ignoring labels."""
        return self._key[1:] == other._key[1:]

    def __hash__(self):
        return self._hash

    def __repr__(self):
        name = getattr(self, "name", None)
        return f"HopfAlgebra({name or 'dim'}={self.dim})" if name else f"HopfAlgebra(dim={self.dim})"

    # -- basic operations -------------------------------------------------
    def basis(self, i: int) -> Vec:
        return {i: ONE}

    def mul(self, u: Vec, v: Vec) -> Vec:
        out: Vec = {}
        mult = self.mult
        for i, a in u.items():
            row = mult[i]
            for j, b in v.items():
                axpy(out, a * b, row[j])
        return out

    def comul(self, v: Vec) -> Vec:
        out: Vec = {}
        for i, a in v.items():
            axpy(out, a, self.comult[i])
        return out

    def S(self, v: Vec) -> Vec:
        return apply_cols(self.antipode, v)

    def S_inv(self, v: Vec) -> Vec:
        return apply_cols(self.antipode_inverse, v)

    def eps(self, v: Vec) -> Any:
        s = ZERO
        for i, a in v.items():
            c = self.counit[i]
            if c:
                s = s + a * c
        return s

    def tensor_mul(self, s: Vec, t: Vec) -> Vec:
        """Product in ``H (x) H`` of flattened tensors."""
        n = self.dim
        mult = self.mult
        out: Vec = {}
        for k1, a in s.items():
            i1, j1 = divmod(k1, n)
            for k2, b in t.items():
                i2, j2 = divmod(k2, n)
                left = mult[i1][i2]
                if not left:
                    continue
                right = mult[j1][j2]
                if not right:
                    continue
                c = a * b
                for p, x in left.items():
                    base = p * n
                    for q, y in right.items():
                        _acc(out, base + q, c * x * y)
        return out

    def element(self, coords) -> "Element":
        return Element(self, to_vec(coords) if not isinstance(coords, dict) else dict(coords))

    @cached_property
    def comult_triples(self) -> tuple:
        """Delta in the sparse triple form ``(coeff, i, j)`` per basis index."""
        n = self.dim
        return tuple(
            tuple((c, k // n, k % n) for k, c in sorted(v.items())) for v in self.comult
        )

    @cached_property
    def is_commutative(self) -> bool:
        n = self.dim
        return all(self.mult[i][j] == self.mult[j][i] for i in range(n) for j in range(i))

    @cached_property
    def is_cocommutative(self) -> bool:
        n = self.dim
        return all(v == _flip(v, n, n) for v in self.comult)

    @cached_property
    def unit_space(self) -> Subspace:
        return Subspace.span([self.unit], self.dim)

    @cached_property
    def counit_kernel(self) -> Subspace:
        return Subspace.full(self.dim).kernel_of(lambda v: _scalar_vec(self.eps(v)))

    def format_vector(self, v: Vec) -> str:
        return format_vector(self.labels, v)

    # -- validation -------------------------------------------------------
    def check_axioms(self) -> AxiomReport:
        return check_axioms(self)


def _acc(out: Vec, k: int, c: Any):
    y = out.get(k)
    if y is None:
        if c:
            out[k] = c
    else:
        y = y + c
        if y:
            out[k] = y
        else:
            del out[k]


def _clean(v) -> Vec:
    if isinstance(v, dict):
        return {int(k): scalar(x) for k, x in v.items() if scalar(x)}
    return to_vec(v)


def _scalar_vec(c: Any) -> Vec:
    return {0: c} if c else {}


def _flip(t: Vec, n: int, m: int) -> Vec:
    """Swap tensor factors: ``H_n (x) H_m -> H_m (x) H_n``."""
    return {(k % m) * n + k // m: c for k, c in t.items()}


def format_vector(labels: Sequence[str], v: Vec) -> str:
    if not v:
        return "0"
    parts = []
    for k in sorted(v):
        c = v[k]
        if c == 1:
            parts.append(labels[k])
        elif c == -1:
            parts.append(f"-{labels[k]}")
        else:
            parts.append(f"{c}*{labels[k]}")
    return " + ".join(parts).replace("+ -", "- ")


def check_axioms(H: HopfAlgebra, first_only: bool = True) -> AxiomReport:
    """Check the seven Hopf axiom families; witnesses are basis labels.

    With ``first_only`` each family reports only its first failure.
    """
    n = H.dim
    lab = H.labels
    mult = H.mult
    report = AxiomReport()

    def fail(axiom, witness, detail=""):
        report.failures.append(AxiomFailure(axiom, tuple(lab[i] for i in witness), detail))

    # associativity
    done = False
    for i in range(n):
        for j in range(n):
            ij = mult[i][j]
            for k in range(n):
                left: Vec = {}
                for p, c in ij.items():
                    axpy(left, c, mult[p][k])
                right: Vec = {}
                for q, c in mult[j][k].items():
                    axpy(right, c, mult[i][q])
                if left != right:
                    fail("associativity", (i, j, k))
                    done = True
                    break
            if done and first_only:
                break
        if done and first_only:
            break

    for i in range(n):
        e = {i: ONE}
        if H.mul(H.unit, e) != e or H.mul(e, H.unit) != e:
            fail("unitality", (i,))
            if first_only:
                break

    # coassociativity: (Delta (x) id) Delta == (id (x) Delta) Delta on H^(x)3
    nn = n * n
    for c in range(n):
        left: Vec = {}
        right: Vec = {}
        for k, a in H.comult[c].items():
            i, j = divmod(k, n)
            for k2, b in H.comult[i].items():
                _acc(left, k2 * n + j, a * b)
            for k2, b in H.comult[j].items():
                _acc(right, i * nn + k2, a * b)
        if left != right:
            fail("coassociativity", (c,))
            if first_only:
                break

    for c in range(n):
        left: Vec = {}
        right: Vec = {}
        for k, a in H.comult[c].items():
            i, j = divmod(k, n)
            if H.counit[i]:
                _acc(left, j, a * H.counit[i])
            if H.counit[j]:
                _acc(right, i, a * H.counit[j])
        e = {c: ONE}
        if left != e or right != e:
            fail("counitality", (c,))
            if first_only:
                break

    # Delta is an algebra map
    unit_t: Vec = {}
    for i, a in H.unit.items():
        for j, b in H.unit.items():
            _acc(unit_t, i * n + j, a * b)
    if H.comul(H.unit) != unit_t:
        fail("comultiplication_multiplicative", (), "Delta(1) != 1 (x) 1")
    else:
        done = False
        for i in range(n):
            for j in range(n):
                if H.comul(mult[i][j]) != H.tensor_mul(H.comult[i], H.comult[j]):
                    fail("comultiplication_multiplicative", (i, j))
                    done = True
                    break
            if done and first_only:
                break

    if H.eps(H.unit) != 1:
        fail("counit_multiplicative", (), "epsilon(1) != 1")
    else:
        done = False
        for i in range(n):
            for j in range(n):
                if H.eps(mult[i][j]) != H.counit[i] * H.counit[j]:
                    fail("counit_multiplicative", (i, j))
                    done = True
                    break
            if done and first_only:
                break

    for c in range(n):
        left: Vec = {}
        right: Vec = {}
        for k, a in H.comult[c].items():
            i, j = divmod(k, n)
            axpy(left, a, H.mul(H.antipode[i], {j: ONE}))
            axpy(right, a, H.mul({i: ONE}, H.antipode[j]))
        target = vec_scale(H.counit[c], H.unit)
        if left != target or right != target:
            fail("antipode", (c,))
            if first_only:
                break
    return report


def build_validate(
    labels: Sequence[str],
    mult: Sequence[Sequence[Any]],
    unit: Sequence[Any],
    comult: Sequence[Sequence[Sequence[Any]]],
    counit: Sequence[Any],
    antipode: Sequence[Sequence[Any]],
    field: Any = "Q",
) -> HopfAlgebra:
    """Build a Hopf algebra from raw tables, raising :class:`HopfAxiomError` on failure.

    ``mult[i][j]`` is a length-n coefficient list, ``comult[i]`` a list of
    ``(coeff, a, b)`` triples and ``antipode`` an n x n matrix whose column j is
    ``S(e_j)``.
    """
    n = len(labels)
    m = [[to_vec(mult[i][j]) for j in range(n)] for i in range(n)]
    cm = []
    for i in range(n):
        v: Vec = {}
        for c, a, b in comult[i]:
            _acc(v, int(a) * n + int(b), scalar(c))
        cm.append(v)
    s_cols = [{} for _ in range(n)]
    for i, row in enumerate(antipode):
        for j, x in enumerate(row):
            x = scalar(x)
            if x:
                s_cols[j][i] = x
    return HopfAlgebra(labels, m, to_vec(unit), cm, counit, s_cols, field=field)


# ---------------------------------------------------------------------------
# constructions


def _dual_label(label: str) -> str:
    return label[1:] if label.startswith("δ") else "δ" + label


def dual(H: HopfAlgebra) -> HopfAlgebra:
    """The dual Hopf algebra on the dual basis: all structure tensors transposed."""
    n = H.dim
    mult = [[{} for _ in range(n)] for _ in range(n)]
    for k, v in enumerate(H.comult):
        for ij, c in v.items():
            i, j = divmod(ij, n)
            mult[i][j][k] = c
    comult = [{} for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k, c in H.mult[i][j].items():
                comult[k][i * n + j] = c
    unit = {i: c for i, c in enumerate(H.counit) if c}
    counit = [H.unit.get(i, ZERO) for i in range(n)]
    anti = [{} for _ in range(n)]
    for j, col in enumerate(H.antipode):
        for i, c in col.items():
            anti[i][j] = c
    return HopfAlgebra(
        [_dual_label(x) for x in H.labels], mult, unit, comult, counit, anti, field=H.field
    )


def variant(H: HopfAlgebra, opposite_mult: bool = False, opposite_comult: bool = False) -> HopfAlgebra:
    """``H^op``, ``H^cop`` or ``H^op,cop``; the antipode is ``S^-1`` unless both flags are set."""
    n = H.dim
    mult = H.mult
    if opposite_mult:
        mult = [[H.mult[j][i] for j in range(n)] for i in range(n)]
    comult = H.comult
    if opposite_comult:
        comult = [_flip(v, n, n) for v in H.comult]
    anti = H.antipode_inverse if opposite_mult != opposite_comult else H.antipode
    return HopfAlgebra(H.labels, mult, H.unit, comult, H.counit, anti, field=H.field)


def tensor_product(H1: HopfAlgebra, H2: HopfAlgebra) -> HopfAlgebra:
    """Componentwise tensor product; basis ``(a, b)`` has index ``a * dim(H2) + b``."""
    n1, n2 = H1.dim, H2.dim
    n = n1 * n2
    labels = [f"{x}⊗{y}" for x in H1.labels for y in H2.labels]

    def tens(u: Vec, v: Vec) -> Vec:
        return {a * n2 + b: x * y for a, x in u.items() for b, y in v.items()}

    mult = [[None] * n for _ in range(n)]
    for a in range(n1):
        for b in range(n2):
            for c in range(n1):
                for d in range(n2):
                    mult[a * n2 + b][c * n2 + d] = tens(H1.mult[a][c], H2.mult[b][d])
    comult = []
    for a in range(n1):
        for b in range(n2):
            v: Vec = {}
            for k1, x in H1.comult[a].items():
                p, q = divmod(k1, n1)
                for k2, y in H2.comult[b].items():
                    r, s = divmod(k2, n2)
                    _acc(v, (p * n2 + r) * n + (q * n2 + s), x * y)
            comult.append(v)
    counit = [x * y for x in H1.counit for y in H2.counit]
    anti = [tens(H1.antipode[a], H2.antipode[b]) for a in range(n1) for b in range(n2)]
    return HopfAlgebra(labels, mult, tens(H1.unit, H2.unit), comult, counit, anti, field=H1.field)


# ---------------------------------------------------------------------------
# elements and maps


@dataclass(frozen=True, eq=False)
class Element:
    parent: HopfAlgebra
    vec: Vec

    @property
    def coords(self) -> list:
        return to_dense(self.vec, self.parent.dim)

    def __mul__(self, other: "Element") -> "Element":
        return Element(self.parent, self.parent.mul(self.vec, other.vec))

    def __add__(self, other: "Element") -> "Element":
        return Element(self.parent, axpy(dict(self.vec), ONE, other.vec))

    def __sub__(self, other: "Element") -> "Element":
        return Element(self.parent, vec_sub(self.vec, other.vec))

    def __eq__(self, other):
        return isinstance(other, Element) and self.parent is other.parent and self.vec == other.vec

    def __hash__(self):
        return hash(tuple(sorted(self.vec.items())))

    def __repr__(self):
        return self.parent.format_vector(self.vec)


class StructuredMap:
    """A linear map between Hopf algebras with verified structure flags.

    ``cols[j]`` is the image of basis vector ``j`` of the domain.
    """

    def __init__(self, domain: HopfAlgebra, codomain: HopfAlgebra, cols: Sequence[Vec]):
        if len(cols) != domain.dim:
            raise ValueError("one image per domain basis vector is required")
        self.domain = domain
        self.codomain = codomain
        self.cols = tuple(dict(c) for c in cols)
        self.is_unital = self.apply(domain.unit) == codomain.unit
        self.is_counital = all(
            codomain.eps(self.cols[j]) == domain.counit[j] for j in range(domain.dim)
        )
        self.is_algebra_map = self.is_unital and self._multiplicative()
        self.is_coalgebra_map = self.is_counital and self._comultiplicative()
        self.is_bijective = domain.dim == codomain.dim and self.rank == domain.dim

    @property
    def matrix(self) -> list[list]:
        """Dense codomain-dim x domain-dim matrix."""
        m = self.codomain.dim
        out = [[ZERO] * self.domain.dim for _ in range(m)]
        for j, c in enumerate(self.cols):
            for i, x in c.items():
                out[i][j] = x
        return out

    def apply(self, v: Vec) -> Vec:
        return apply_cols(self.cols, v)

    def apply_tensor(self, t: Vec) -> Vec:
        n, m = self.domain.dim, self.codomain.dim
        out: Vec = {}
        for k, c in t.items():
            i, j = divmod(k, n)
            for p, x in self.cols[i].items():
                for q, y in self.cols[j].items():
                    _acc(out, p * m + q, c * x * y)
        return out

    def _multiplicative(self) -> bool:
        D, C = self.domain, self.codomain
        for i in range(D.dim):
            for j in range(D.dim):
                if self.apply(D.mult[i][j]) != C.mul(self.cols[i], self.cols[j]):
                    return False
        return True

    def _comultiplicative(self) -> bool:
        D, C = self.domain, self.codomain
        return all(
            self.apply_tensor(D.comult[j]) == C.comul(self.cols[j]) for j in range(D.dim)
        )

    @cached_property
    def rank(self) -> int:
        return len(Echelon(self.cols))

    @property
    def is_hopf_map(self) -> bool:
        return self.is_algebra_map and self.is_coalgebra_map

    @property
    def is_surjective(self) -> bool:
        return self.rank == self.codomain.dim

    @property
    def is_injective(self) -> bool:
        return self.rank == self.domain.dim

    @property
    def flags(self) -> dict:
        return {
            "is_algebra_map": self.is_algebra_map,
            "is_unital": self.is_unital,
            "is_coalgebra_map": self.is_coalgebra_map,
            "is_counital": self.is_counital,
            "is_bijective": self.is_bijective,
        }

    def image(self) -> Subspace:
        return Subspace.span(self.cols, self.codomain.dim)

    def kernel(self) -> Subspace:
        return kernel_of_images(self.cols, self.domain.dim)

    def compose(self, first: "StructuredMap") -> "StructuredMap":
        """``self o first``."""
        return StructuredMap(first.domain, self.codomain, [self.apply(c) for c in first.cols])

    def inverse(self) -> "StructuredMap":
        inv = inverse(self.cols, self.domain.dim) if self.is_bijective else None
        if inv is None:
            raise ValueError("map is not invertible")
        return StructuredMap(self.codomain, self.domain, inv)


def identity_map(H: HopfAlgebra) -> StructuredMap:
    return StructuredMap(H, H, [{i: ONE} for i in range(H.dim)])


# ---------------------------------------------------------------------------
# grouplikes


@dataclass
class GrouplikeResult:
    elements: list[Element]
    complete: bool

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def _is_grouplike(H: HopfAlgebra, g: Vec) -> bool:
    n = H.dim
    gg = {}
    for i, a in g.items():
        for j, b in g.items():
            gg[i * n + j] = a * b
    return H.eps(g) == 1 and H.comul(g) == gg


def _rational_eigenvalues(cols: Sequence[Vec], n: int) -> tuple[list, bool]:
    """Distinct rational eigenvalues and whether the characteristic polynomial splits over Q."""
    from sympy import Poly, QQ, symbols
    from sympy.polys.matrices import DomainMatrix

    rows = [[QQ(0)] * n for _ in range(n)]
    for j, c in enumerate(cols):
        for i, x in c.items():
            rows[i][j] = QQ(int(x.numerator), int(x.denominator))
    cp = DomainMatrix(rows, (n, n), QQ).charpoly()
    t = symbols("t")
    poly = Poly(list(cp), t, domain=QQ)
    _, factors = poly.factor_list()
    roots = []
    splits = True
    for f, _mult in factors:
        if f.degree() == 1:
            a, b = f.all_coeffs()
            r = -b / a
            roots.append(mpq(int(r.numerator), int(r.denominator)))
        else:
            splits = False
    return roots, splits


def grouplikes(H: HopfAlgebra) -> GrouplikeResult:
    """All grouplike elements ``Delta g = g (x) g``, ``epsilon(g) = 1``.

    Grouplikes are the joint eigenvectors of the operators
    ``T_i = (delta^i (x) id) o Delta`` with eigenvalue ``g_i``; candidate
    eigenvalues are the rational roots of each characteristic polynomial.
    ``complete`` compares the count with the number of characters of the dual
    algebra over an algebraic closure.
    """
    if any(isinstance(c, Cyclotomic) for c in H.counit):
        raise NotImplementedError("grouplike search is implemented over Q only")
    n = H.dim
    ops = []
    for i in range(n):
        cols = []
        for c in range(n):
            col: Vec = {}
            for k, a in H.comult[c].items():
                p, q = divmod(k, n)
                if p == i:
                    _acc(col, q, a)
            cols.append(col)
        ops.append(cols)

    found: list[Vec] = []
    nodes = [Subspace.full(n)]
    eig_cache: dict[int, list] = {}
    for i in range(n):
        if not nodes:
            break
        pending = []
        for node in nodes:
            if node.dim == 1:
                pending.append(node)
                continue
            if i not in eig_cache:
                eig_cache[i] = _rational_eigenvalues(ops[i], n)[0]
            op = ops[i]
            for lam in eig_cache[i]:
                sub = node.kernel_of(lambda v, op=op, lam=lam: axpy(apply_cols(op, v), -lam, v))
                if sub.dim:
                    pending.append(sub)
        nodes = pending
        if all(nd.dim == 1 for nd in nodes):
            break
    for node in nodes:
        if node.dim != 1:
            continue
        v = node.vectors[0]
        e = H.eps(v)
        if not e:
            continue
        g = vec_scale(ONE / e, v)
        if _is_grouplike(H, g) and g not in found:
            found.append(g)
    found.sort(key=lambda g: sorted(g.items()))
    return GrouplikeResult([Element(H, g) for g in found], len(found) == _character_count(H))


def _character_count(H: HopfAlgebra) -> int:
    """Number of algebra characters of the dual of ``H`` over an algebraic closure.

    Characters factor through the abelianisation ``B = A / <[A, A]>`` of the dual
    algebra ``A``; over a field of characteristic zero their number is
    ``dim B - dim rad B`` with the radical read off the trace form.
    """
    A = dual(H)
    n = A.dim
    gens = []
    for i in range(n):
        for j in range(i + 1, n):
            c = vec_sub(A.mult[i][j], A.mult[j][i])
            if c:
                gens.append(c)
    ideal = Echelon()
    queue = list(gens)
    while queue:
        v = queue.pop()
        if not ideal.add(v):
            continue
        for a in range(n):
            queue.append(A.mul({a: ONE}, v))
            queue.append(A.mul(v, {a: ONE}))
    J = ideal.freeze(n)
    basis = J.nonpivots
    m = len(basis)
    if m == 0:
        return 0
    pos = {b: t for t, b in enumerate(basis)}

    def proj(v: Vec) -> Vec:
        r = J.reduce(v)
        return {pos[k]: x for k, x in r.items()}

    prod = [[proj(A.mult[a][b]) for b in basis] for a in basis]
    traces = []
    for u in range(m):
        traces.append(sum((prod[u][t].get(t, ZERO) for t in range(m)), ZERO))
    tvec = {u: x for u, x in enumerate(traces) if x}
    gram_cols = [{s: dot(prod[s][t], tvec) for s in range(m) if dot(prod[s][t], tvec)} for t in range(m)]
    rad = kernel_of_images(gram_cols, m)
    return m - rad.dim
