"""Reading and writing the line-oriented ``hf1`` colored-edge format.

::

    hf1 kind=complete n=6 h=3 r=1
    # comment
    1: 1 4 5
    1: 2 3 6
    2: 1 2 4

``kind`` is one of complete, restrict, pieces, amalgam.  ``m`` and ``V``
are optional (``V=1,2,3``).  The amalgamated vertex is the token ``u``,
repeated for multiplicity.  The host hypergraph is rebuilt from the header,
so uncolored edges never appear in the body.
"""
from __future__ import annotations

import io
from collections import Counter
from pathlib import Path

from .core import (
    U,
    Coloring,
    InvalidParameters,
    PartialFact,
    Params,
    host_for,
    is_set,
    make_edge,
)

KINDS = ("complete", "restrict", "pieces", "amalgam")
_HEADER_KEYS = ("kind", "n", "h", "r", "m", "V")


class ParseError(ValueError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


class ValidationError(ValueError):
    def __init__(self, lineno: int | None, msg: str):
        super().__init__(f"line {lineno}: {msg}" if lineno else msg)
        self.lineno = lineno


def _int(tok: str, lineno: int, what: str) -> int:
    try:
        val = int(tok)
    except ValueError:
        raise ParseError(lineno, f"{what} must be an integer, got {tok!r}") from None
    if str(val) != tok.lstrip("+"):
        raise ParseError(lineno, f"{what} must be a plain integer, got {tok!r}")
    return val


def _parse_header(line: str, lineno: int) -> dict:
    toks = line.split()
    if not toks or toks[0] != "hf1":
        raise ParseError(lineno, "expected header starting with 'hf1'")
    fields: dict = {}
    for tok in toks[1:]:
        key, sep, val = tok.partition("=")
        if not sep or key not in _HEADER_KEYS:
            raise ParseError(lineno, f"unknown directive {tok!r}")
        if key in fields:
            raise ParseError(lineno, f"duplicate directive {key!r}")
        if key == "kind":
            if val not in KINDS:
                raise ParseError(lineno, f"unknown kind {val!r}")
            fields[key] = val
        elif key == "V":
            fields[key] = [_int(v, lineno, "V entry") for v in val.split(",")] if val else []
        else:
            fields[key] = _int(val, lineno, key)
    for key in ("n", "h", "r"):
        if key not in fields:
            raise ParseError(lineno, f"header lacks {key}=")
    fields.setdefault("kind", "complete")
    return fields


def parse_hf(text: str) -> PartialFact:
    header = None
    pairs: list[tuple[tuple[int, ...], int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            header = _parse_header(line, lineno)
            continue
        head, sep, body = line.partition(":")
        if not sep:
            raise ParseError(lineno, "expected '<color>: <vertices>'")
        color = _int(head.strip(), lineno, "color")
        toks = body.split()
        if not toks:
            raise ParseError(lineno, "edge has no vertices")
        verts = []
        for tok in toks:
            verts.append(U if tok == "u" else _int(tok, lineno, "vertex"))
        pairs.append((make_edge(verts), color, lineno))
    if header is None:
        raise ParseError(1, "missing hf1 header")
    return _build(header, pairs)


def _build(header: dict, pairs) -> PartialFact:
    kind = header["kind"]
    try:
        params = Params(n=header["n"], h=header["h"], r=header["r"], m=header.get("m"))
    except InvalidParameters as exc:
        raise ValidationError(None, str(exc)) from None
    V = frozenset(header.get("V", ()))
    if kind in ("restrict", "pieces") and "V" not in header:
        raise ValidationError(None, f"kind={kind} needs V=")
    if any(not 1 <= v <= params.n for v in V):
        raise ValidationError(None, "V has a vertex outside [1, n]")
    try:
        host = host_for(kind, params, V)
    except InvalidParameters as exc:
        raise ValidationError(None, str(exc)) from None
    k = params.k
    classes: dict[int, Counter] = {}
    used: Counter = Counter()
    for e, color, lineno in pairs:
        if not 1 <= color <= k:
            raise ValidationError(lineno, f"color {color} outside [1, {k}]")
        if not 1 <= len(e) <= params.h:
            raise ValidationError(lineno, f"edge of size {len(e)} outside [1, {params.h}]")
        for v in e:
            if v not in host.vertices:
                raise ValidationError(lineno, f"vertex {'u' if v == U else v} not in the host")
        if kind != "amalgam" and not is_set(e):
            raise ValidationError(lineno, f"repeated vertex in set edge {e}")
        used[e] += 1
        if used[e] > host.edges.get(e, 0):
            raise ValidationError(lineno, f"edge {e} is not in the host (or colored too often)")
        classes.setdefault(color, Counter())[e] += 1
    return PartialFact(params, host, Coloring.over(host, classes), kind, V)


def read_hf(path) -> PartialFact:
    return parse_hf(Path(path).read_text())


def format_hf(pf: PartialFact) -> str:
    p = pf.params
    out = io.StringIO()
    head = f"hf1 kind={pf.kind} n={p.n} h={p.h} r={p.r}"
    if p.m is not None:
        head += f" m={p.m}"
    if pf.V or pf.kind in ("restrict", "pieces"):
        head += " V=" + ",".join(str(v) for v in sorted(pf.V))
    out.write(head + "\n")
    for e, c in pf.coloring.pairs():
        j = sum(1 for v in e if v == U)
        toks = [str(v) for v in e[j:]] + ["u"] * j
        out.write(f"{c}: {' '.join(toks)}\n")
    return out.getvalue()


def write_hf(pf: PartialFact, path) -> None:
    Path(path).write_text(format_hf(pf))
