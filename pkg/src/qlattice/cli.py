"""Command-line interface and the ``hopf-sc-v1`` JSON structure-constant format.

Exit codes: 0 success, 1 a computed counterexample to a theorem whose
hypotheses were verified, 2 input errors (schema, axioms, preconditions).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any

from .exactalg import ONE, Cyclotomic, Subspace, format_scalar, scalar, to_dense
from .hopfcore import (
    HopfAlgebra,
    HopfAxiomError,
    StructuredMap,
    build_validate,
    dual,
    grouplikes,
)

FORMAT = "hopf-sc-v1"
CONVENTIONS = {
    "tensor_flattening": "row-major: (i, j) -> i * dim + j",
    "mult": "mult[i][j] lists the coordinates of e_i e_j",
    "comult": "comult[i] lists [coeff, a, b] terms of Delta(e_i) = sum coeff e_a (x) e_b",
    "antipode": "antipode[i][j] is the coefficient of e_i in S(e_j)",
    "indices": "0-based",
}


class SchemaError(ValueError):
    pass


# ---------------------------------------------------------------------------
# serialisation


def hopf_to_json(H: HopfAlgebra) -> dict:
    n = H.dim

    def s(x):
        return format_scalar(x)

    zero = _zero_like(H)
    return {
        "format": FORMAT,
        "field": "Q" if H.field == "Q" else H.field,
        "dim": n,
        "labels": list(H.labels),
        "mult": [[[s(x) for x in to_dense_z(H.mult[i][j], n, zero)] for j in range(n)] for i in range(n)],
        "unit": [s(x) for x in to_dense_z(H.unit, n, zero)],
        "comult": [[[s(c), a, b] for c, a, b in H.comult_triples[i]] for i in range(n)],
        "counit": [s(x) for x in H.counit],
        "antipode": [[s(H.antipode[j].get(i, zero)) for j in range(n)] for i in range(n)],
        "conventions": CONVENTIONS,
    }


def _zero_like(H: HopfAlgebra):
    if isinstance(H.field, dict):
        return Cyclotomic(H.field["cyclotomic"], [0])
    return scalar(0)


def to_dense_z(v, n, zero):
    return [v.get(i, zero) for i in range(n)]


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def save(H: HopfAlgebra, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(hopf_to_json(H)))


def _parse_field(doc: dict):
    fld = doc.get("field", "Q")
    if fld == "Q":
        return "Q", scalar
    if isinstance(fld, dict) and set(fld) == {"cyclotomic"} and isinstance(fld["cyclotomic"], int):
        n = fld["cyclotomic"]

        def conv(x):
            if isinstance(x, list):
                return Cyclotomic(n, [scalar(c) for c in x])
            return Cyclotomic(n, [scalar(x)])

        return {"cyclotomic": n}, conv
    raise SchemaError("field: expected \"Q\" or {\"cyclotomic\": n}")


def hopf_from_json(doc: Any) -> HopfAlgebra:
    if not isinstance(doc, dict):
        raise SchemaError("document: expected a JSON object")
    if doc.get("format") != FORMAT:
        raise SchemaError(f"format: expected {FORMAT!r}")
    fld, conv = _parse_field(doc)
    n = doc.get("dim")
    if not isinstance(n, int) or n < 1:
        raise SchemaError("dim: expected a positive integer")

    def sc(x, path):
        try:
            return conv(x)
        except (TypeError, ValueError) as exc:
            raise SchemaError(f"{path}: {exc}") from None

    def vec(x, path):
        if not isinstance(x, list) or len(x) != n:
            raise SchemaError(f"{path}: expected a list of {n} scalars")
        return [sc(c, f"{path}[{i}]") for i, c in enumerate(x)]

    labels = doc.get("labels")
    if not isinstance(labels, list) or len(labels) != n or not all(isinstance(x, str) for x in labels):
        raise SchemaError(f"labels: expected {n} strings")
    mult = doc.get("mult")
    if not isinstance(mult, list) or len(mult) != n:
        raise SchemaError(f"mult: expected {n} rows")
    m = []
    for i, row in enumerate(mult):
        if not isinstance(row, list) or len(row) != n:
            raise SchemaError(f"mult[{i}]: expected {n} entries")
        m.append([vec(e, f"mult[{i}][{j}]") for j, e in enumerate(row)])
    unit = vec(doc.get("unit"), "unit")
    counit = vec(doc.get("counit"), "counit")
    comult = doc.get("comult")
    if not isinstance(comult, list) or len(comult) != n:
        raise SchemaError(f"comult: expected {n} term lists")
    cm = []
    for i, terms in enumerate(comult):
        if not isinstance(terms, list):
            raise SchemaError(f"comult[{i}]: expected a list of [coeff, a, b] terms")
        out = []
        for t, term in enumerate(terms):
            path = f"comult[{i}][{t}]"
            if not (isinstance(term, list) and len(term) == 3):
                raise SchemaError(f"{path}: expected [coeff, a, b]")
            c, a, b = term
            if not (isinstance(a, int) and isinstance(b, int) and 0 <= a < n and 0 <= b < n):
                raise SchemaError(f"{path}: indices out of range")
            out.append((sc(c, path + "[0]"), a, b))
        cm.append(out)
    anti = doc.get("antipode")
    if not isinstance(anti, list) or len(anti) != n:
        raise SchemaError(f"antipode: expected {n} rows")
    S = [vec(r, f"antipode[{i}]") for i, r in enumerate(anti)]
    return build_validate(labels, m, unit, cm, counit, S, field=fld)


def load(path: str) -> HopfAlgebra:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from None
    return hopf_from_json(doc)


# ---------------------------------------------------------------------------
# argument resolution


class InputError(ValueError):
    pass


def _resolve_algebra(ref: str):
    from . import corpus

    if ref.startswith("corpus:"):
        name = ref[len("corpus:"):]
        try:
            H = corpus.get(name)
        except KeyError as exc:
            raise InputError(str(exc)) from None
        return H, corpus.group_of(name)
    if not os.path.exists(ref):
        raise InputError(f"no such file: {ref}")
    return load(ref), None


def _default_picture(H: HopfAlgebra, ginfo, requested: str | None) -> str:
    if requested:
        return requested
    if ginfo is not None:
        return "dqg" if ginfo[1] == "group" else "qg"
    if H.is_commutative and not H.is_cocommutative:
        return "qg"
    return "dqg"


def _resolve_subgroup(H: HopfAlgebra, ginfo, picture: str, ref: str):
    from . import corpus
    from .lattice import QuantumSubgroup

    ref = ref.strip()
    if ref in ("G", "whole"):
        return QuantumSubgroup.whole(H, picture)
    if ref in ("1", "trivial", "e"):
        return QuantumSubgroup.trivial(H, picture)
    if os.path.exists(ref):
        with open(ref, encoding="utf-8") as fh:
            doc = json.load(fh)
        basis = doc.get("basis")
        if not isinstance(basis, list):
            raise InputError(f"{ref}: expected a 'basis' list")
        W = Subspace.span(({i: scalar(x) for i, x in enumerate(r) if scalar(x)} for r in basis), H.dim)
        pic = doc.get("picture", picture)
        return _make_subgroup(H, pic, W, ref)
    if ginfo is None:
        raise InputError(f"named subgroup {ref!r} needs a corpus group or function algebra")
    G, kind = ginfo
    try:
        K = corpus.named_subgroup(G, ref)
    except KeyError as exc:
        raise InputError(str(exc)) from None
    if kind == "group":
        W = corpus.group_subalgebra(G, K) if picture == "dqg" else corpus.group_quotient_ideal(G, K)
    else:
        W = corpus.function_ideal(G, K) if picture == "qg" else corpus.function_subalgebra(G, K)
    return _make_subgroup(H, picture, W, ref)


def _make_subgroup(H, picture, W, name):
    from .lattice import QuantumSubgroup

    try:
        if picture == "qg":
            return QuantumSubgroup.from_ideal(H, W, name)
        return QuantumSubgroup.from_subalgebra(H, W, name)
    except ValueError as exc:
        raise InputError(f"subgroup {name!r} in the {picture} picture: {exc}") from None


def _chain(H, ginfo, picture, text: str):
    from .lattice import QuantumSubgroup

    names = [x for x in _split_top(text) if x]
    chain = [_resolve_subgroup(H, ginfo, picture, x) for x in names]
    whole = QuantumSubgroup.whole(H, picture)
    if not chain or chain[0] != whole:
        chain.insert(0, whole)
    if not chain[-1].is_trivial:
        chain.append(QuantumSubgroup.trivial(H, picture))
    return chain


def _split_top(text: str) -> list[str]:
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "," and depth == 0:
            out.append(cur.strip())
            cur = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur += ch
    out.append(cur.strip())
    return out


# ---------------------------------------------------------------------------
# commands


def _vec_json(H: HopfAlgebra, v) -> dict:
    return {"coords": [format_scalar(x) for x in to_dense(v, H.dim)], "text": H.format_vector(v)}


def _antipode_order(H: HopfAlgebra, cap: int = 64) -> int | None:
    cols = [{i: ONE} for i in range(H.dim)]
    for k in range(1, cap + 1):
        cols = [H.S(c) for c in cols]
        if all(c == {i: ONE} for i, c in enumerate(cols)):
            return k
    return None


def cmd_validate(args, H, ginfo):
    return {"valid": True, "dim": H.dim}


def cmd_info(args, H, ginfo):
    from .integrals import integral

    data = integral(H)
    out = {
        "dim": H.dim,
        "labels": list(H.labels),
        "commutative": H.is_commutative,
        "cocommutative": H.is_cocommutative,
        "semisimple": data.semisimple,
        "cosemisimple": data.cosemisimple,
        "antipode_order": _antipode_order(H),
        "left_integral": _vec_json(H, data.left_integral.vec),
    }
    if H.field == "Q":
        g = grouplikes(H)
        out["grouplikes"] = len(g)
        out["grouplikes_complete"] = g.complete
    return out


def cmd_dual(args, H, ginfo):
    return hopf_to_json(dual(H))


def cmd_grouplikes(args, H, ginfo):
    if H.field != "Q":
        raise InputError("grouplike search is implemented over Q only")
    g = grouplikes(H)
    return {"count": len(g), "complete": g.complete, "elements": [_vec_json(H, x.vec) for x in g]}


def cmd_cd(args, H, ginfo):
    from .duality import cd_of_quotient, cd_of_subalgebra

    pic = _default_picture(H, ginfo, args.picture)
    K = _one_subgroup(args, H, ginfo, pic)
    if pic == "dqg":
        c = cd_of_subalgebra(H, K.space)
        back = cd_of_quotient(H, c.module)
        return {
            "input": "hopf_subalgebra",
            "quotient_dim": c.dim,
            "hopf_quotient": c.hopf is not None,
            "round_trip": back == K.space,
        }
    A = cd_of_quotient(H, K.space)
    c = cd_of_subalgebra(H, A)
    return {
        "input": "hopf_ideal",
        "coideal_subalgebra_dim": A.dim,
        "round_trip": c.ideal == K.space,
    }


def _one_subgroup(args, H, ginfo, pic, count=1):
    subs = args.subgroup or []
    if len(subs) != count:
        raise InputError(f"expected {count} --subgroup option(s), got {len(subs)}")
    out = [_resolve_subgroup(H, ginfo, pic, s) for s in subs]
    return out[0] if count == 1 else out


def cmd_normal(args, H, ginfo):
    from .lattice import is_normal

    pic = _default_picture(H, ginfo, args.picture)
    K = _one_subgroup(args, H, ginfo, pic)
    r = is_normal(K)
    return {"normal": r.normal, "reason": r.reason, "witness": r.detail}


def cmd_meet(args, H, ginfo, join_=False):
    from .lattice import join, meet

    pic = _default_picture(H, ginfo, args.picture)
    a, b = _one_subgroup(args, H, ginfo, pic, 2)
    r = join(a, b) if join_ else meet(a, b)
    return {"picture": pic, "order": r.order, "space_dim": r.space.dim}


def cmd_cocomm(args, H, ginfo):
    from .duality import largest_cocommutative

    return {"dim": largest_cocommutative(H).dim}


def cmd_haar(args, H, ginfo):
    from .integrals import IntegralError, haar

    try:
        lam = haar(H)
    except IntegralError as exc:
        raise InputError(str(exc)) from None
    return {"haar": [format_scalar(x) for x in lam]}


def cmd_expectation(args, H, ginfo):
    from .integrals import expectation

    pic = _default_picture(H, ginfo, args.picture)
    if pic != "qg":
        raise InputError("expectations are defined for qg subgroups")
    K = _one_subgroup(args, H, ginfo, pic)
    E = expectation(H, K.quotient)
    return {
        "matrix": [[format_scalar(x) for x in row] for row in E.map.matrix],
        "idempotent": E.idempotent,
        "range_is_codual": E.range_is_codual,
        "bimodule": E.bimodule,
        "range_dim": E.range.dim,
    }


def _certify(args, payload: dict):
    if getattr(args, "certify", None):
        with open(args.certify, "w", encoding="utf-8") as fh:
            fh.write(dumps(payload))


def cmd_second(args, H, ginfo):
    from .isothms import second_iso

    pic = _default_picture(H, ginfo, args.picture)
    Hs, K = _one_subgroup(args, H, ginfo, pic, 2)
    r = second_iso(Hs, K)
    out = r.to_json()
    if r.certificate is not None:
        _certify(args, {"kind": "iso", **r.certificate.to_json()})
    return out


def cmd_third(args, H, ginfo):
    from .isothms import third_iso

    pic = _default_picture(H, ginfo, args.picture)
    N, Hs = _one_subgroup(args, H, ginfo, pic, 2)
    r = third_iso(N, Hs)
    if r.certificate is None:
        raise _Violation("third isomorphism map is not an isomorphism", r.to_json())
    _certify(args, {"kind": "iso", **r.certificate.to_json()})
    return r.to_json()


def cmd_zassenhaus(args, H, ginfo):
    from .isothms import zassenhaus

    pic = _default_picture(H, ginfo, args.picture)
    Ap, A, Bp, B = _one_subgroup(args, H, ginfo, pic, 4)
    r = zassenhaus(Ap, A, Bp, B)
    if r.certificate is None:
        raise _Violation("butterfly map is not an isomorphism", r.to_json())
    _certify(args, {"kind": "iso", **r.certificate.to_json()})
    return r.to_json()


def cmd_refine(args, H, ginfo, jh=False):
    from .series import jordan_holder, schreier_refine, validate_series

    pic = _default_picture(H, ginfo, args.picture)
    if not args.chain or len(args.chain) != 2:
        raise InputError("expected two --chain options")
    s1, s2 = (validate_series(_chain(H, ginfo, pic, c)) for c in args.chain)
    cert = jordan_holder(s1, s2) if jh else schreier_refine(s1, s2)
    out = cert.to_json()
    _certify(args, {"kind": "series", **out})
    out.pop("certificates")
    out["verified"] = cert.verify()
    return out


def cmd_modular(args, H, ginfo):
    from .lattice import check_modular_law

    pic = _default_picture(H, ginfo, args.picture)
    Hs, L, M = _one_subgroup(args, H, ginfo, pic, 3)
    r = check_modular_law(Hs, L, M, "survey" if args.survey else "theorem")
    return r.to_json()


def cmd_corpus(args, H, ginfo):
    from . import corpus

    names = corpus.corpus_names()
    if args.export:
        os.makedirs(args.export, exist_ok=True)
        for nm in names:
            save(corpus.get(nm), os.path.join(args.export, _file_name(nm)))
    return {"items": names}


def _file_name(name: str) -> str:
    return name.replace("^", "F").replace("*", "_x_") + ".json"


def cmd_verify_cert(args, H, ginfo):
    with open(args.algebra, encoding="utf-8") as fh:
        doc = json.load(fh)
    isos = doc["certificates"] if doc.get("kind") == "series" else [doc]
    ok = True
    for c in isos:
        src = hopf_from_json(c["source"])
        tgt = hopf_from_json(c["target"])
        mat = c["matrix"]
        cols = [
            {i: scalar(mat[i][j]) for i in range(tgt.dim) if scalar(mat[i][j])} for j in range(src.dim)
        ]
        m = StructuredMap(src, tgt, cols)
        ok &= m.is_algebra_map and m.is_coalgebra_map and m.is_bijective
    if doc.get("kind") == "series":
        perm = doc["permutation"]
        ok &= sorted(perm) == list(range(len(perm)))
    return {"verified": bool(ok), "isomorphisms": len(isos)}


class _Violation(Exception):
    def __init__(self, message, payload):
        super().__init__(message)
        self.payload = payload


COMMANDS = {
    "validate": cmd_validate,
    "info": cmd_info,
    "dual": cmd_dual,
    "grouplikes": cmd_grouplikes,
    "cd": cmd_cd,
    "normal": cmd_normal,
    "meet": cmd_meet,
    "join": lambda a, H, g: cmd_meet(a, H, g, join_=True),
    "cocomm-max": cmd_cocomm,
    "haar": cmd_haar,
    "expectation": cmd_expectation,
    "second-iso": cmd_second,
    "third-iso": cmd_third,
    "zassenhaus": cmd_zassenhaus,
    "refine": cmd_refine,
    "jordan-holder": lambda a, H, g: cmd_refine(a, H, g, jh=True),
    "modular": cmd_modular,
    "corpus": cmd_corpus,
    "verify-cert": cmd_verify_cert,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qlattice", description="Quantum subgroup lattices of finite-dimensional Hopf algebras.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("algebra", nargs="?", help="a hopf-sc-v1 JSON file or corpus:NAME (certificate file for verify-cert)")
    p.add_argument("--picture", choices=["qg", "dqg"])
    p.add_argument("--subgroup", action="append", help="named corpus subgroup, G, 1, gen:a,b or a subspace JSON file")
    p.add_argument("--chain", action="append", help="comma-separated subgroup names from the top down")
    p.add_argument("--certify", metavar="OUT", help="write the certificate JSON here")
    p.add_argument("--survey", action="store_true", help="modular law: report instead of enforcing")
    p.add_argument("--export", metavar="DIR", help="corpus: write every item as JSON into DIR")
    return p


def main(argv=None) -> int:
    from .isothms import PreconditionError
    from .lattice import PictureMismatch, TheoremViolation
    from .series import SeriesError, Unsupported

    args = build_parser().parse_args(argv)
    out = sys.stdout
    try:
        if args.command == "corpus":
            result = cmd_corpus(args, None, None)
        elif args.command == "verify-cert":
            if not args.algebra:
                raise InputError("verify-cert needs a certificate file")
            result = cmd_verify_cert(args, None, None)
            out.write(dumps(result))
            return 0 if result["verified"] else 1
        else:
            if not args.algebra:
                raise InputError("an algebra argument is required")
            H, ginfo = _resolve_algebra(args.algebra)
            result = COMMANDS[args.command](args, H, ginfo)
    except HopfAxiomError as exc:
        out.write(dumps({"error": "axiom failure", "report": exc.report.to_json()}))
        return 2
    except _Violation as exc:
        out.write(dumps({"error": "theorem violation", "detail": str(exc), "data": exc.payload}))
        return 1
    except TheoremViolation as exc:
        out.write(dumps({"error": "theorem violation", "detail": str(exc)}))
        return 1
    except SeriesError as exc:
        out.write(dumps({"error": "invalid series", "detail": str(exc), "witness": _jsonable(exc.witness)}))
        return 2
    except (SchemaError, InputError, PreconditionError, PictureMismatch, Unsupported, KeyError, ValueError) as exc:
        out.write(dumps({"error": type(exc).__name__, "detail": str(exc)}))
        return 2
    out.write(dumps(_jsonable(result)))
    return 0


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    try:
        return format_scalar(x)
    except (TypeError, ValueError):
        return str(x)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

