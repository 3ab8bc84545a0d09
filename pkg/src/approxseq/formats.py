"""Text formats: sequence literals (CSV/JSON) and the JSON forms of results.

Exact scalars are written as strings (``"3"``, ``"-1/2"``) so they survive a
round trip through any JSON reader; float scalars are written as numbers.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any, List, Optional

from .core import (
    EXACT,
    Attestation,
    Certificate,
    DeficitReport,
    InputError,
    Mode,
    ModeError,
    Scalar,
    Seq,
)
from .oracle import Counterexample
from .plfunc import PLFunc
from .twist import Thm11Report

_INT = re.compile(r"^[+-]?\d+$")
_RATIONAL = re.compile(r"^[+-]?\d+\s*/\s*\d+$")
_DECIMAL = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")


def format_scalar(x: Scalar):
    if isinstance(x, Fraction):
        return str(x)
    return x


def _jsonable(obj):
    if isinstance(obj, (Fraction, float)):
        return format_scalar(obj)
    if isinstance(obj, Seq):
        return [format_scalar(x) for x in obj]
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    return obj


def dumps(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=False)


# -- sequence literals ---------------------------------------------------------


def _classify(token: str) -> str:
    if _INT.match(token):
        return "int"
    if _RATIONAL.match(token):
        return "rational"
    if _DECIMAL.match(token):
        return "decimal"
    raise InputError(f"cannot parse number {token!r}")


class _Num(str):
    """Raw numeric literal kept as text so decimals can be rationalized exactly."""


def _tokens_from_json(data) -> List[str]:
    if not isinstance(data, list):
        raise InputError("JSON sequence must be a flat array")
    out = []
    for item in data:
        if isinstance(item, bool) or not isinstance(item, (str, _Num)):
            raise InputError(f"unsupported JSON sequence entry {item!r}")
        out.append(str(item).strip())
    return out


def parse_tokens(tokens: List[str], exact: bool = False, tol: Optional[float] = None) -> Seq:
    """Turn number literals into a :class:`Seq`.

    ``p/q`` forces exact mode; decimals select float mode unless ``exact``
    asks for them to be rationalized digit for digit; pure integer input is
    exact.

    Raises:
        InputError: empty input or an unparseable literal.
        ModeError: ``exact`` together with ``tol``, or ``tol`` with rationals.
    """
    if not tokens:
        raise InputError("empty sequence")
    if exact and tol is not None:
        raise ModeError("--exact and --tol are mutually exclusive")
    kinds = [_classify(t) for t in tokens]
    if exact or "rational" in kinds:
        if tol is not None:
            raise ModeError("a tolerance was given for exact rational input")
        try:
            return Seq(tuple(Fraction(t.replace(" ", "")) for t in tokens), EXACT)
        except ZeroDivisionError as exc:
            raise InputError("zero denominator in a rational literal") from exc
    if "decimal" in kinds or tol is not None:
        return Seq(tuple(float(t) for t in tokens), Mode.floating(1e-9 if tol is None else tol))
    return Seq(tuple(Fraction(int(t)) for t in tokens), EXACT)


def split_csv(text: str) -> List[str]:
    return [t.strip() for line in text.splitlines() for t in line.split(",") if t.strip()]


def parse_sequence_text(text: str, exact: bool = False, tol: Optional[float] = None) -> Seq:
    """Parse a CSV or JSON sequence literal (JSON when it starts with ``[``)."""
    stripped = text.strip()
    if stripped.startswith("["):
        try:
            data = json.loads(stripped, parse_float=_Num, parse_int=_Num)
        except json.JSONDecodeError as exc:
            raise InputError(f"malformed JSON sequence: {exc}") from exc
        return parse_tokens(_tokens_from_json(data), exact, tol)
    return parse_tokens(split_csv(stripped), exact, tol)


# -- structured values -----------------------------------------------------


def _scalar_from_json(x, mode: Mode) -> Scalar:
    if isinstance(x, bool):
        raise InputError(f"not a number: {x!r}")
    if isinstance(x, str):
        try:
            q = Fraction(x.replace(" ", ""))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"cannot parse number {x!r}") from exc
        return q if mode.is_exact else float(q)
    if isinstance(x, (int, float)):
        return mode.coerce(x)
    raise InputError(f"not a number: {x!r}")


def seq_from_json(values, mode: Mode) -> Seq:
    if not isinstance(values, list):
        raise InputError("sequence must be a JSON array")
    return Seq(tuple(_scalar_from_json(x, mode) for x in values), mode)


def report_to_json(rep: DeficitReport) -> dict:
    return {
        "property": rep.property,
        "epsilon_min": format_scalar(rep.epsilon_min),
        "witness": list(rep.witness),
        "mode": str(rep.mode),
    }


def certificate_to_json(cert: Certificate) -> dict:
    out = {"kind": cert.kind, "input": _jsonable(cert.input)}
    if cert.epsilon is not None:
        out["epsilon"] = format_scalar(cert.epsilon)
    out["components"] = {name: _jsonable(s) for name, s in cert.components}
    out["attestations"] = [{"name": a.name, "holds": a.holds} for a in cert.attestations]
    out["mode"] = str(cert.mode)
    return out


def certificate_from_json(data: Any) -> Certificate:
    try:
        mode = Mode.parse(data["mode"])
        eps = data.get("epsilon")
        return Certificate(
            kind=data["kind"],
            input=seq_from_json(data["input"], mode),
            components=tuple((k, seq_from_json(v, mode)) for k, v in data["components"].items()),
            attestations=tuple(
                Attestation(str(a["name"]), a["holds"] is True) for a in data["attestations"]
            ),
            epsilon=None if eps is None else _scalar_from_json(eps, mode),
            mode=mode,
        )
    except (KeyError, TypeError, AttributeError) as exc:
        raise InputError(f"malformed certificate: {exc!r}") from exc


def plfunc_to_json(f: PLFunc) -> dict:
    return {"breakpoints": [[format_scalar(x), format_scalar(y)] for x, y in f.points],
            "mode": str(f.mode)}


def plfunc_from_json(data: Any) -> PLFunc:
    try:
        mode = Mode.parse(data.get("mode", "exact"))
        pts = [(_scalar_from_json(x, mode), _scalar_from_json(y, mode)) for x, y in data["breakpoints"]]
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed PLFunc JSON: {exc!r}") from exc
    return PLFunc.from_points(pts, mode)


def thm11_to_json(rep: Thm11Report) -> dict:
    return {
        "conditions": rep.conditions,
        "violations": [{"condition": c, "sample": _jsonable(s)} for c, s in rep.violations],
        "seed": rep.seed,
        "samples": rep.samples,
    }


def counterexample_to_json(cx: Counterexample) -> dict:
    out = {"proposition": cx.proposition, "input": _jsonable(cx.input), "violation": cx.violation}
    if cx.context:
        out["context"] = _jsonable(cx.context)
    return out

