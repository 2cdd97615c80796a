"""Test universe: group and function algebras, Sweedler H4, Kac-Paljutkin H8,
tensor products, and a brute-force classical group oracle.

The oracle section works purely with finite groups given by multiplication
tables and never touches the Hopf machinery.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

from gmpy2 import mpq

from .exactalg import ONE, ZERO, Subspace
from .hopfcore import HopfAlgebra, tensor_product

ORACLE_CAP = 24


# ---------------------------------------------------------------------------
# finite groups


class FiniteGroup:
    """A finite group given by its multiplication table.

    Elements are indices ``0..order-1`` with identity 0; ``labels`` name them.
    """

    def __init__(self, name: str, labels: Sequence[str], table: Sequence[Sequence[int]]):
        self.name = name
        self.labels = tuple(labels)
        self.table = tuple(tuple(r) for r in table)
        n = len(self.labels)
        self.order = n
        if any(len(r) != n for r in self.table):
            raise ValueError("Cayley table must be square")
        if any(self.table[0][g] != g or self.table[g][0] != g for g in range(n)):
            raise ValueError("element 0 must be the identity")
        inv = []
        for g in range(n):
            hs = [h for h in range(n) if self.table[g][h] == 0]
            if len(hs) != 1 or self.table[hs[0]][g] != 0:
                raise ValueError(f"element {self.labels[g]} has no two-sided inverse")
            inv.append(hs[0])
        self.inv = tuple(inv)
        for a, b, c in product(range(n), repeat=3):
            if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                raise ValueError("Cayley table is not associative")
        self._index = {lab: i for i, lab in enumerate(self.labels)}

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def index(self, label: str) -> int:
        label = label.strip()
        if label in self._index:
            return self._index[label]
        if label in ("1", "()", "e"):
            return 0
        raise KeyError(f"{self.name} has no element {label!r}")

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"


def _perm_label(p: tuple) -> str:
    seen = set()
    cycles = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = p[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = p[j]
        cycles.append("(" + "".join(str(x + 1) for x in cyc) + ")")
    return "".join(cycles) or "e"


def _parse_cycles(text: str, degree: int) -> tuple:
    p = list(range(degree))
    text = text.strip()
    if text in ("e", "()", "1"):
        return tuple(p)
    for chunk in text.replace(")", ") ").split():
        pts = [int(c) - 1 for c in chunk.strip("()")]
        for a, b in zip(pts, pts[1:] + pts[:1]):
            p[a] = b
    return tuple(p)


def permutation_group(name: str, degree: int, generators: Iterable[str]) -> FiniteGroup:
    """Group generated by permutations written in 1-based cycle notation.

    Elements are ordered by their image tuples, so the identity comes first.
    Products compose right to left: ``(p q)(i) = p(q(i))``.
    """
    gens = [_parse_cycles(g, degree) for g in generators]
    ident = tuple(range(degree))
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple(g[x[i]] for i in range(degree))
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    elems = sorted(elems)
    pos = {p: i for i, p in enumerate(elems)}
    table = [[pos[tuple(a[b[i]] for i in range(degree))] for b in elems] for a in elems]
    return FiniteGroup(name, [_perm_label(p) for p in elems], table)


def _quaternion_group() -> FiniteGroup:
    # units +-1, +-i, +-j, +-k as (sign, unit) with unit in 1,i,j,k
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    base = {("1", "1"): (1, "1")}
    units = ["1", "i", "j", "k"]
    rules = {
        ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
        ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
        ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
    }
    for u in units:
        base[("1", u)] = (1, u)
        base[(u, "1")] = (1, u)
    base.update(rules)

    def split(name):
        return (-1, name[1:]) if name.startswith("-") else (1, name)

    def join(sign, unit):
        return unit if sign == 1 else "-" + unit

    table = []
    for a in names:
        sa, ua = split(a)
        row = []
        for b in names:
            sb, ub = split(b)
            s, u = base[(ua, ub)]
            row.append(names.index(join(sa * sb * s, u)))
        table.append(row)
    return FiniteGroup("Q8", names, table)


_GROUP_DEFS = {
    "C1": (1, []),
    "C2": (2, ["(12)"]),
    "C3": (3, ["(123)"]),
    "C4": (4, ["(1234)"]),
    "C6": (6, ["(123456)"]),
    "V4": (4, ["(12)(34)", "(13)(24)"]),
    "S3": (3, ["(12)", "(123)"]),
    "D4": (4, ["(1234)", "(13)"]),
    "A4": (4, ["(123)", "(12)(34)"]),
    "S4": (4, ["(12)", "(1234)"]),
}

CORPUS_GROUPS = ("C2", "C3", "C4", "C6", "V4", "S3", "D4", "Q8", "A4", "S4")


@lru_cache(maxsize=None)
def group(name: str) -> FiniteGroup:
    if name == "Q8":
        return _quaternion_group()
    if name not in _GROUP_DEFS:
        raise KeyError(f"unknown corpus group {name!r}")
    degree, gens = _GROUP_DEFS[name]
    return permutation_group(name, degree, gens)


# named subgroups, by generators
_NAMED_SUBGROUPS = {
    "S4": {
        "A4": ["(123)", "(12)(34)"],
        "V4": ["(12)(34)", "(13)(24)"],
        "D4": ["(1234)", "(13)"],
        "C2a": ["(12)(34)"],
        "C2b": ["(13)(24)"],
        "C2c": ["(14)(23)"],
        "S3": ["(12)", "(123)"],
        "C3": ["(123)"],
        "C4": ["(1234)"],
        "C2": ["(12)"],
    },
    "A4": {"V4": ["(12)(34)", "(13)(24)"], "C3": ["(123)"], "C2a": ["(12)(34)"],
           "C2b": ["(13)(24)"], "C2c": ["(14)(23)"]},
    "S3": {"A3": ["(123)"], "C3": ["(123)"], "C2": ["(12)"], "C2a": ["(12)"],
           "C2b": ["(13)"], "C2c": ["(23)"]},
    "D4": {"C4": ["(1234)"], "Z": ["(13)(24)"], "C2": ["(13)(24)"],
           "V4a": ["(13)", "(24)"], "V4b": ["(12)(34)", "(14)(23)"], "S": ["(13)"]},
    "C4": {"C2": ["(13)(24)"]},
    "C6": {"C3": ["(135)(246)"], "C2": ["(14)(25)(36)"]},
    "V4": {"C2a": ["(12)(34)"], "C2b": ["(13)(24)"], "C2c": ["(14)(23)"]},
    "Q8": {"Z": ["-1"], "C4i": ["i"], "C4j": ["j"], "C4k": ["k"]},
}


def subgroup_elements(G: FiniteGroup, generators: Iterable[int]) -> frozenset:
    elems = {0}
    frontier = [0]
    gens = list(generators)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = G.mul(x, g)
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(elems)


def named_subgroup(G: FiniteGroup, name: str) -> frozenset:
    """Resolve ``name``: a named subgroup, ``1``/``G``/the group name, or ``gen:a,b``."""
    name = name.strip()
    if name in ("1", "trivial", "e"):
        return frozenset({0})
    if name in ("G", G.name):
        return frozenset(range(G.order))
    if name.startswith("gen:"):
        gens = [G.index(s) for s in _split_labels(name[4:])]
        return subgroup_elements(G, gens)
    table = _NAMED_SUBGROUPS.get(G.name, {})
    if name not in table:
        raise KeyError(f"{G.name} has no named subgroup {name!r}")
    return subgroup_elements(G, [G.index(s) for s in table[name]])


def _split_labels(text: str) -> list[str]:
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur += ch
    if cur.strip():
        out.append(cur)
    return [s.strip() for s in out]


# ---------------------------------------------------------------------------
# Hopf algebras


def group_algebra(G: FiniteGroup) -> HopfAlgebra:
    """kG: basis the group elements, Delta g = g (x) g, S g = g^-1."""
    n = G.order
    mult = [[{G.mul(a, b): ONE} for b in range(n)] for a in range(n)]
    comult = [{g * n + g: ONE} for g in range(n)]
    H = HopfAlgebra(
        G.labels, mult, {0: ONE}, comult, [ONE] * n, [{G.inv[g]: ONE} for g in range(n)]
    )
    H.name = f"k{G.name}"
    return H


def function_algebra(G: FiniteGroup) -> HopfAlgebra:
    """k^G on the basis of point indicators; equals the dual of kG."""
    n = G.order
    mult = [[({a: ONE} if a == b else {}) for b in range(n)] for a in range(n)]
    comult = []
    for g in range(n):
        v = {}
        for a in range(n):
            v[a * n + G.mul(G.inv[a], g)] = ONE
        comult.append(v)
    counit = [ONE if g == 0 else ZERO for g in range(n)]
    H = HopfAlgebra(
        ["δ" + x for x in G.labels],
        mult,
        {g: ONE for g in range(n)},
        comult,
        counit,
        [{G.inv[g]: ONE} for g in range(n)],
    )
    H.name = f"k^{G.name}"
    return H


def sweedler_h4() -> HopfAlgebra:
    """Sweedler's algebra on the basis 1, g, x, gx."""
    # index: g^a x^b -> a + 2b
    def mono(a, b):
        return a % 2 + 2 * b

    mult = [[{} for _ in range(4)] for _ in range(4)]
    for a1, b1, a2, b2 in product(range(2), repeat=4):
        # g^a1 x^b1 g^a2 x^b2 = (-1)^(b1 a2) g^(a1+a2) x^(b1+b2)
        if b1 + b2 > 1:
            continue
        sign = -1 if (b1 * a2) % 2 else 1
        mult[mono(a1, b1)][mono(a2, b2)] = {mono(a1 + a2, b1 + b2): mpq(sign)}
    n = 4
    comult = [
        {0: ONE},
        {1 * n + 1: ONE},
        {2 * n + 0: ONE, 1 * n + 2: ONE},  # x -> x(x)1 + g(x)x
        {3 * n + 1: ONE, 0 * n + 3: ONE},  # gx -> gx(x)g + 1(x)gx
    ]
    antipode = [{0: ONE}, {1: ONE}, {3: -ONE}, {2: ONE}]
    H = HopfAlgebra(["1", "g", "x", "gx"], mult, {0: ONE}, comult, [ONE, ONE, ZERO, ZERO], antipode)
    H.name = "H4"
    return H


def kac_paljutkin() -> HopfAlgebra:
    """The eight-dimensional Kac-Paljutkin algebra on the basis x^a y^b z^c.

    Relations x^2 = y^2 = 1, xy = yx, zx = yz, zy = xz,
    z^2 = (1 + x + y - xy)/2, with x, y grouplike and
    Delta z = (1(x)1 + 1(x)x + y(x)1 - y(x)x)(z(x)z)/2, epsilon(z) = 1, S(z) = z.
    """
    half = mpq(1, 2)
    # a monomial is (a, b, c) with a, b, c in {0, 1}
    monos = [(a, b, c) for c in range(2) for b in range(2) for a in range(2)]
    idx = {m: i for i, m in enumerate(monos)}
    labels = []
    for a, b, c in monos:
        s = "x" * a + "y" * b + "z" * c
        labels.append(s or "1")

    def poly_mul(p: dict, q: dict) -> dict:
        out: dict = {}
        for m1, c1 in p.items():
            for m2, c2 in q.items():
                for m, c in mono_mul(m1, m2).items():
                    v = out.get(m, ZERO) + c1 * c2 * c
                    if v:
                        out[m] = v
                    else:
                        out.pop(m, None)
        return out

    def mono_mul(m1, m2) -> dict:
        a1, b1, c1 = m1
        a2, b2, c2 = m2
        if c1:
            # move z past x^a2 y^b2: z x = y z, z y = x z
            a2, b2 = b2, a2
        a, b = (a1 + a2) % 2, (b1 + b2) % 2
        if c1 and c2:
            # z^2 = (1 + x + y - xy)/2, then multiply by x^a y^b on the left
            out = {}
            for (da, db), s in (((0, 0), half), ((1, 0), half), ((0, 1), half), ((1, 1), -half)):
                key = ((a + da) % 2, (b + db) % 2, 0)
                out[key] = out.get(key, ZERO) + s
            return {k: v for k, v in out.items() if v}
        return {(a, b, c1 + c2): ONE}

    n = 8
    mult = [[{idx[m]: c for m, c in poly_mul({m1: ONE}, {m2: ONE}).items()} for m2 in monos] for m1 in monos]

    def t(p: dict, q: dict) -> dict:
        return {(idx[m1], idx[m2]): c1 * c2 for m1, c1 in p.items() for m2, c2 in q.items()}

    def tmul(s: dict, u: dict) -> dict:
        out: dict = {}
        for (i1, j1), c1 in s.items():
            for (i2, j2), c2 in u.items():
                for p, x in mult[i1][i2].items():
                    for q, y in mult[j1][j2].items():
                        v = out.get((p, q), ZERO) + c1 * c2 * x * y
                        if v:
                            out[(p, q)] = v
                        else:
                            out.pop((p, q), None)
        return out

    X, Y, Z, one = (1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 0, 0)
    dx = t({X: ONE}, {X: ONE})
    dy = t({Y: ONE}, {Y: ONE})
    J = {}
    for (m1, m2), s in (((one, one), half), ((one, X), half), ((Y, one), half), ((Y, X), -half)):
        J[(idx[m1], idx[m2])] = s
    dz = tmul(J, t({Z: ONE}, {Z: ONE}))
    comult = []
    for a, b, c in monos:
        d = {(0, 0): ONE}
        if a:
            d = tmul(d, dx)
        if b:
            d = tmul(d, dy)
        if c:
            d = tmul(d, dz)
        comult.append({i * n + j: v for (i, j), v in d.items()})
    counit = [ONE] * n
    # S is an anti-automorphism fixing x, y, z: S(x^a y^b z^c) = z^c y^b x^a
    antipode = []
    for a, b, c in monos:
        p = {one: ONE}
        for m in [Z] * c + [Y] * b + [X] * a:
            p = poly_mul(p, {m: ONE})
        antipode.append({idx[m]: v for m, v in p.items()})
    H = HopfAlgebra(labels, mult, {0: ONE}, comult, counit, antipode)
    H.name = "H8"
    return H


# ---------------------------------------------------------------------------
# corpus registry

TENSOR_ITEMS = {
    "kC2*k^C2": ("kC2", "k^C2"),
    "kC2*kC3": ("kC2", "kC3"),
    "H4*kC2": ("H4", "kC2"),
    "kS3*k^C2": ("kS3", "k^C2"),
    "k^C3*kC2": ("k^C3", "kC2"),
}


def corpus_names() -> list[str]:
    names = []
    for g in CORPUS_GROUPS:
        names += [f"k{g}", f"k^{g}"]
    return names + ["H4", "H8"] + list(TENSOR_ITEMS)


@lru_cache(maxsize=None)
def get(name: str) -> HopfAlgebra:
    """Corpus algebra by name: ``kS3``, ``k^S3``, ``H4``, ``H8``, ``kC2*k^C2``, ``k`` ..."""
    name = name.replace("⊗", "*").strip()
    if name == "k":
        return group_algebra(group("C1"))
    if name in ("H4", "sweedler"):
        return sweedler_h4()
    if name in ("H8", "kac-paljutkin"):
        return kac_paljutkin()
    if "*" in name:
        left, right = name.split("*", 1)
        H = tensor_product(get(left), get(right))
        H.name = f"{get(left).name}*{get(right).name}"
        return H
    if name.startswith("k^"):
        return function_algebra(group(name[2:]))
    if name.startswith("k"):
        return group_algebra(group(name[1:]))
    raise KeyError(f"unknown corpus item {name!r}")


def group_of(name: str) -> tuple[FiniteGroup, str] | None:
    """``(G, kind)`` with kind ``"group"``/``"function"`` for ``kG``/``k^G`` items."""
    name = name.strip()
    if name.startswith("k^") and "*" not in name:
        return group(name[2:]), "function"
    if name.startswith("k") and "*" not in name and name != "k":
        try:
            return group(name[1:]), "group"
        except KeyError:
            return None
    if name == "k":
        return group("C1"), "group"
    return None


# ---------------------------------------------------------------------------
# subgroup-derived subspaces


def group_subalgebra(G: FiniteGroup, K: Iterable[int]) -> Subspace:
    """kK inside kG."""
    return Subspace.span(({g: ONE} for g in sorted(K)), G.order)


def function_ideal(G: FiniteGroup, K: Iterable[int]) -> Subspace:
    """Kernel of restriction k^G -> k^K: functions vanishing on K."""
    K = set(K)
    return Subspace.span(({g: ONE} for g in range(G.order) if g not in K), G.order)


def group_quotient_ideal(G: FiniteGroup, N: Iterable[int]) -> Subspace:
    """Kernel of kG -> k(G/N): span of g - gn."""
    N = list(N)
    return Subspace.span(
        ({g: ONE, G.mul(g, m): -ONE} for g in range(G.order) for m in N if m != 0),
        G.order,
    )


def function_subalgebra(G: FiniteGroup, N: Iterable[int]) -> Subspace:
    """k^(G/N) inside k^G: functions constant on cosets gN."""
    N = list(N)
    seen, vecs = set(), []
    for g in range(G.order):
        if g in seen:
            continue
        coset = {G.mul(g, m) for m in N}
        seen |= coset
        vecs.append({h: ONE for h in coset})
    return Subspace.span(vecs, G.order)


# ---------------------------------------------------------------------------
# classical oracle (pure group theory)


def _closure(G: FiniteGroup, elems: Iterable[int]) -> frozenset:
    return subgroup_elements(G, elems)


@lru_cache(maxsize=None)
def all_subgroups(G: FiniteGroup) -> tuple:
    """Every subgroup, as sorted frozensets (by order, then elements)."""
    subs = {_closure(G, [g]) for g in range(G.order)}
    frontier = set(subs)
    while frontier:
        new = set()
        for a in frontier:
            for b in list(subs):
                c = _closure(G, a | b)
                if c not in subs and c not in new:
                    new.add(c)
        subs |= new
        frontier = new
    return tuple(sorted(subs, key=lambda s: (len(s), sorted(s))))


def _is_normal(G: FiniteGroup, K: frozenset, within: frozenset | None = None) -> bool:
    within = range(G.order) if within is None else within
    return all(G.mul(G.mul(g, k), G.inv[g]) in K for g in within for k in K)


def _composition_factor_orders(G: FiniteGroup, top: frozenset) -> list[int]:
    if len(top) == 1:
        return []
    subs = [s for s in all_subgroups(G) if s < top and _is_normal(G, s, top)]
    maximal = [s for s in subs if not any(s < t for t in subs)]
    nxt = max(maximal, key=len)
    return [len(top) // len(nxt)] + _composition_factor_orders(G, nxt)


def _commutator(G: FiniteGroup) -> frozenset:
    comms = {
        G.mul(G.mul(a, b), G.mul(G.inv[a], G.inv[b])) for a in range(G.order) for b in range(G.order)
    }
    return _closure(G, comms)


def _composition_series(G: FiniteGroup, top: frozenset) -> list[list[frozenset]]:
    """Every composition series from ``top`` down to the trivial group."""
    if len(top) == 1:
        return [[top]]
    subs = [s for s in all_subgroups(G) if s < top and _is_normal(G, s, top)]
    maximal = [s for s in subs if not any(s < t for t in subs)]
    out = []
    for m in maximal:
        for tail in _composition_series(G, m):
            out.append([top] + tail)
    return out


def _subnormal_series(G: FiniteGroup, top: frozenset) -> list[list[frozenset]]:
    """Every strictly decreasing chain from ``top`` to 1 with each step normal in the previous."""
    if len(top) == 1:
        return [[top]]
    out = []
    for s in all_subgroups(G):
        if s < top and _is_normal(G, s, top):
            for tail in _subnormal_series(G, s):
                out.append([top] + tail)
    return out


def classical_oracle(G: FiniteGroup, query: str, *args):
    """Brute-force group-theoretic answers.

    Queries: ``subgroups``, ``normal subgroups``, ``conjugacy classes``,
    ``commutator subgroup``, ``abelianization order``, ``composition factors``
    (sorted orders), ``composition series``, ``subnormal series``, ``normal``
    (K[, within]), ``join`` (H, K), ``meet`` (H, K), ``normalizes`` (L, M),
    ``zassenhaus`` (A', A, B', B) -> orders of the two subquotients.
    """
    if G.order > ORACLE_CAP:
        raise ValueError(f"oracle is capped at order {ORACLE_CAP}")
    full = frozenset(range(G.order))
    if query == "subgroups":
        return list(all_subgroups(G))
    if query == "normal subgroups":
        return [s for s in all_subgroups(G) if _is_normal(G, s)]
    if query == "conjugacy classes":
        classes, seen = [], set()
        for g in range(G.order):
            if g in seen:
                continue
            cls = frozenset(G.mul(G.mul(h, g), G.inv[h]) for h in range(G.order))
            seen |= cls
            classes.append(cls)
        return classes
    if query == "commutator subgroup":
        return _commutator(G)
    if query == "abelianization order":
        return G.order // len(_commutator(G))
    if query == "composition factors":
        return sorted(_composition_factor_orders(G, full))
    if query == "composition series":
        return _composition_series(G, full)
    if query == "subnormal series":
        return _subnormal_series(G, full)
    if query == "normal":
        K = args[0]
        within = args[1] if len(args) > 1 else None
        return _is_normal(G, frozenset(K), within)
    if query == "join":
        return _closure(G, set(args[0]) | set(args[1]))
    if query == "meet":
        return frozenset(args[0]) & frozenset(args[1])
    if query == "normalizes":
        L, M = args
        return all(G.mul(G.mul(l, m), G.inv[l]) in M for l in L for m in M)
    if query == "zassenhaus":
        Ap, A, Bp, B = (frozenset(x) for x in args)
        left = len(_closure(G, Ap | (A & B))) // len(_closure(G, Ap | (A & Bp)))
        right = len(_closure(G, Bp | (A & B))) // len(_closure(G, Bp | (Ap & B)))
        return left, right
    raise ValueError(f"unknown oracle query {query!r}")


def factor_order_multiset(orders: Iterable[int]) -> Counter:
    return Counter(orders)
