"""JSON problem files.

Layout::

    {"box": {"c": [2, 2]} | {"c": "auto", "caps": [...]},
     "mode": "max_feasible" | "min_feasible",
     "constraints": [{"class": "linear", "a": [1, "1/2"], "t": 2}, ...]}

Rationals are integers or ``"p/q"`` strings; JSON floats are refused so no
value is silently rounded.  Unknown keys are errors.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .lattice import IntBox
from .oracles import (
    MAX_FEASIBLE,
    MIN_FEASIBLE,
    InequalitySystem,
    InvalidInputError,
    LinearIneq,
    PolynomialIneq,
    ProductAffineIneq,
    PsdIneq,
    SeparableIneq,
    SocIneq,
    SupermodularTableIneq,
    make_system,
)


class ProblemFileError(InvalidInputError):
    """Malformed problem file; the message carries a position or field path."""


_FIELDS = {
    "linear": {"a", "t"},
    "separable": {"tables", "t"},
    "polynomial": {"terms", "t", "n"},
    "product_affine": {"factors", "t"},
    "supermodular_table": {"values", "t"},
    "soc": {"A", "b", "t"},
    "psd": {"mats", "T"},
}


def _rational(v, path) -> Fraction:
    if isinstance(v, bool) or isinstance(v, float):
        raise ProblemFileError(f"{path}: expected an integer or a 'p/q' string, got {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise ProblemFileError(f"{path}: expected an integer or a 'p/q' string, got {v!r}")


def _int(v, path) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise ProblemFileError(f"{path}: expected an integer, got {v!r}")
    return v


def _list(v, path) -> list:
    if not isinstance(v, list):
        raise ProblemFileError(f"{path}: expected a list")
    return v


def _obj(v, path, allowed, required=()) -> dict:
    if not isinstance(v, dict):
        raise ProblemFileError(f"{path}: expected an object")
    extra = sorted(set(v) - set(allowed))
    if extra:
        raise ProblemFileError(f"{path}: unknown field {extra[0]!r}")
    for key in required:
        if key not in v:
            raise ProblemFileError(f"{path}: missing field {key!r}")
    return v


def _vec(v, path) -> list:
    return [_rational(x, f"{path}[{i}]") for i, x in enumerate(_list(v, path))]


def _mat(v, path) -> list:
    return [_vec(row, f"{path}[{i}]") for i, row in enumerate(_list(v, path))]


def _nested(v, path):
    if isinstance(v, list):
        return [_nested(x, f"{path}[{i}]") for i, x in enumerate(v)]
    return _rational(v, path)


def _constraint(raw, path, n_hint):
    if not isinstance(raw, dict) or "class" not in raw:
        raise ProblemFileError(f"{path}: expected an object with a 'class' field")
    kind = raw["class"]
    if kind not in _FIELDS:
        raise ProblemFileError(f"{path}.class: unknown class {kind!r}")
    required = _FIELDS[kind] - {"n"}
    _obj(raw, path, _FIELDS[kind] | {"class"}, sorted(required))
    try:
        if kind == "linear":
            return LinearIneq(_vec(raw["a"], f"{path}.a"), _rational(raw["t"], f"{path}.t"))
        if kind == "separable":
            tabs = [_vec(tab, f"{path}.tables[{i}]")
                    for i, tab in enumerate(_list(raw["tables"], f"{path}.tables"))]
            return SeparableIneq(tabs, _rational(raw["t"], f"{path}.t"))
        if kind == "polynomial":
            terms = []
            for i, term in enumerate(_list(raw["terms"], f"{path}.terms")):
                tp = f"{path}.terms[{i}]"
                _obj(term, tp, {"coef", "exps"}, ("coef", "exps"))
                exps = term["exps"]
                if not isinstance(exps, dict):
                    raise ProblemFileError(f"{tp}.exps: expected an object")
                parsed = {}
                for key, d in exps.items():
                    try:
                        j = int(key)
                    except ValueError:
                        raise ProblemFileError(f"{tp}.exps: key {key!r} is not an index") from None
                    parsed[j] = _int(d, f"{tp}.exps.{key}")
                terms.append((_rational(term["coef"], f"{tp}.coef"), parsed))
            n = _int(raw["n"], f"{path}.n") if "n" in raw else n_hint
            if n is None:
                n = 1 + max((j for _, e in terms for j in e), default=-1)
            return PolynomialIneq(terms, _rational(raw["t"], f"{path}.t"), n)
        if kind == "product_affine":
            factors = []
            for i, fac in enumerate(_list(raw["factors"], f"{path}.factors")):
                fp = f"{path}.factors[{i}]"
                _obj(fac, fp, {"a", "a0"}, ("a",))
                factors.append((_vec(fac["a"], f"{fp}.a"), _rational(fac.get("a0", 0), f"{fp}.a0")))
            return ProductAffineIneq(factors, _rational(raw["t"], f"{path}.t"))
        if kind == "supermodular_table":
            return SupermodularTableIneq.from_nested(
                _nested(raw["values"], f"{path}.values"), _rational(raw["t"], f"{path}.t"))
        if kind == "soc":
            return SocIneq(_mat(raw["A"], f"{path}.A"), _vec(raw["b"], f"{path}.b"),
                           _rational(raw["t"], f"{path}.t"))
        if kind == "psd":
            mats = [_mat(m, f"{path}.mats[{i}]") for i, m in enumerate(_list(raw["mats"], f"{path}.mats"))]
            return PsdIneq(mats, _mat(raw["T"], f"{path}.T"))
    except ProblemFileError:
        raise
    except (InvalidInputError, ValueError, TypeError) as err:
        raise ProblemFileError(f"{path}: {err}") from None
    raise AssertionError(kind)  # pragma: no cover


def parse_problem(doc: Any) -> InequalitySystem:
    """Validate a decoded JSON document and build the system."""
    _obj(doc, "$", {"box", "mode", "constraints"}, ("constraints",))
    mode = doc.get("mode", MAX_FEASIBLE)
    if mode not in (MAX_FEASIBLE, MIN_FEASIBLE):
        raise ProblemFileError(f"$.mode: expected 'max_feasible' or 'min_feasible', got {mode!r}")
    box = _obj(doc.get("box", {"c": "auto"}), "$.box", {"c", "caps"})
    c = box.get("c", "auto")
    n_hint = None
    if c != "auto":
        c = [_int(v, f"$.box.c[{i}]") for i, v in enumerate(_list(c, "$.box.c"))]
        n_hint = len(c)
    caps = None
    if "caps" in box:
        caps = [None if v is None else _int(v, f"$.box.caps[{i}]")
                for i, v in enumerate(_list(box["caps"], "$.box.caps"))]
        n_hint = n_hint if n_hint is not None else len(caps)
    raws = _list(doc["constraints"], "$.constraints")
    if not raws:
        raise ProblemFileError("$.constraints: at least one constraint is required")
    # dimension from the non-polynomial constraints when the box does not fix it
    cons: list = [None] * len(raws)
    for i, raw in enumerate(raws):
        if not (isinstance(raw, dict) and raw.get("class") == "polynomial"):
            cons[i] = _constraint(raw, f"$.constraints[{i}]", n_hint)
            n_hint = n_hint if n_hint is not None else cons[i].n
    for i, raw in enumerate(raws):
        if cons[i] is None:
            cons[i] = _constraint(raw, f"$.constraints[{i}]", n_hint)
    try:
        if c == "auto":
            return make_system(cons, "auto", mode, caps)
        return InequalitySystem(IntBox(tuple(c)), cons, mode)
    except ProblemFileError:
        raise
    except InvalidInputError as err:
        raise ProblemFileError(f"$: {err}") from None


def loads(text: str) -> InequalitySystem:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise ProblemFileError(f"line {err.lineno}, column {err.colno}: {err.msg}") from None
    return parse_problem(doc)


def load(path) -> InequalitySystem:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


# ---------------------------------------------------------------------------
# serialization


def _enc(q):
    q = Fraction(q)
    return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _enc_vec(v):
    return [_enc(x) for x in v]


def _enc_mat(m):
    return [_enc_vec(row) for row in m]


def _enc_nested(v):
    if isinstance(v, list):
        return [_enc_nested(x) for x in v]
    return _enc(v)


def constraint_to_dict(con) -> dict:
    kind = con.kind
    if kind == "linear":
        return {"class": kind, "a": _enc_vec(con.a), "t": _enc(con.t)}
    if kind == "separable":
        return {"class": kind, "tables": [_enc_vec(t) for t in con.tables], "t": _enc(con.t)}
    if kind == "polynomial":
        terms = [{"coef": _enc(coef), "exps": {str(j): d for j, d in sorted(exps.items())}}
                 for coef, exps in con.terms]
        return {"class": kind, "terms": terms, "t": _enc(con.t), "n": con.n}
    if kind == "product_affine":
        return {"class": kind, "t": _enc(con.t),
                "factors": [{"a": _enc_vec(a), "a0": _enc(a0)} for a, a0 in con.factors]}
    if kind == "supermodular_table":
        return {"class": kind, "values": _enc_nested(con.to_nested()), "t": _enc(con.t)}
    if kind == "soc":
        return {"class": kind, "A": _enc_mat(con.A), "b": _enc_vec(con.b), "t": _enc(con.t)}
    if kind == "psd":
        return {"class": kind, "mats": [_enc_mat(m) for m in con.mats], "T": _enc_mat(con.T)}
    raise InvalidInputError(f"cannot serialize constraint class {kind!r}")


def system_to_dict(system: InequalitySystem) -> dict:
    return {
        "box": {"c": list(system.box.c)},
        "mode": system.mode,
        "constraints": [constraint_to_dict(con) for con in system.constraints],
    }


def dumps(system: InequalitySystem) -> str:
    return json.dumps(system_to_dict(system), indent=1)


def dump(system: InequalitySystem, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(system) + "\n")
