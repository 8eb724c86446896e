"""Text formats.  Every file uses 1-indexed vertices and colors; ``c`` lines are comments.

=============  ==========================  ===============================
kind           header                      body lines
=============  ==========================  ===============================
graph          ``p edge <n> <m>``          ``e <u> <v>``
lists          ``p lists <n> <q>``         ``l <v> <c1> <c2> ...``
modulator      ``p modulator <n> <tag>``   ``x <v>``
decomposition  ``p decomposition <n>``     ``t <v> <parent|0>``
coloring       ``p coloring <n> <q>``      ``v <v> <color>``
certificates   ``p zeta <tag> <q> <g> <k>``  ``r <n>`` then ``e``/``l`` lines
cnf            ``p cnf <n> <m>``           literals, each clause ends in 0
=============  ==========================  ===============================

Reduction metadata is JSON lines: one header object, then one object per vertex.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Iterator, Sequence

from .errors import InvalidInputError
from .graph import ClassTag, Graph, Modulator
from .nocert import NoCertificateSet
from .oracle import ListAssignment
from .reductions import CnfFormula, ReductionOutput
from .treedepth import TreedepthDecomposition


class _Lines:
    """Tokenised non-comment lines with ``path:line`` error context."""

    def __init__(self, text: str, source: str = "<string>"):
        self.source = source
        self.rows = []
        for no, raw in enumerate(text.splitlines(), 1):
            tok = raw.split()
            if tok and tok[0] != "c" and not tok[0].startswith("%"):
                self.rows.append((no, tok))

    def error(self, no, msg) -> InvalidInputError:
        return InvalidInputError(f"{self.source}:{no}: {msg}")

    def ints(self, no, toks) -> list[int]:
        try:
            return [int(t) for t in toks]
        except ValueError:
            raise self.error(no, f"expected integers, got {' '.join(toks)!r}") from None

    def header(self, kind: str, nargs: int) -> tuple[int, list[str]]:
        if not self.rows:
            raise self.error(0, f"missing 'p {kind}' header")
        no, tok = self.rows[0]
        if tok[0] != "p" or len(tok) < 2 or tok[1] != kind:
            raise self.error(no, f"expected 'p {kind}' header")
        if len(tok) != 2 + nargs:
            raise self.error(no, f"'p {kind}' header takes {nargs} fields")
        return no, tok[2:]

    def body(self) -> Iterator[tuple[int, list[str]]]:
        return iter(self.rows[1:])


def _vertex(lines, no, v, n) -> int:
    if not 1 <= v <= n:
        raise lines.error(no, f"vertex {v} outside 1..{n}")
    return v - 1


def _read(path) -> tuple[str, str]:
    p = Path(path)
    try:
        return p.read_text(), str(p)
    except OSError as exc:
        raise InvalidInputError(f"{p}: {exc.strerror}") from None


def _write(path, text: str):
    Path(path).write_text(text)


# -- graph ---------------------------------------------------------------------

def format_graph(g: Graph) -> str:
    out = [f"p edge {g.n} {g.m}"]
    out += [f"e {u + 1} {v + 1}" for u, v in g.sorted_edges()]
    return "\n".join(out) + "\n"


def parse_graph(text: str, source: str = "<string>") -> Graph:
    lines = _Lines(text, source)
    no, args = lines.header("edge", 2)
    n, _ = lines.ints(no, args)
    edges = []
    for no, tok in lines.body():
        if tok[0] != "e" or len(tok) != 3:
            raise lines.error(no, "expected 'e <u> <v>'")
        u, v = lines.ints(no, tok[1:])
        if u == v:
            raise lines.error(no, f"self-loop on vertex {u}")
        edges.append((_vertex(lines, no, u, n), _vertex(lines, no, v, n)))
    return Graph(n, edges)


# -- lists -------------------------------------------------------------------------

def format_lists(lam: ListAssignment) -> str:
    out = [f"p lists {len(lam)} {lam.q}"]
    out += [" ".join(["l", str(v + 1), *map(str, sorted(lam[v]))]) for v in range(len(lam))]
    return "\n".join(out) + "\n"


def parse_lists(text: str, source: str = "<string>") -> ListAssignment:
    lines = _Lines(text, source)
    no, args = lines.header("lists", 2)
    n, q = lines.ints(no, args)
    lists: list = [None] * n
    for no, tok in lines.body():
        if tok[0] != "l" or len(tok) < 2:
            raise lines.error(no, "expected 'l <v> <colors...>'")
        vals = lines.ints(no, tok[1:])
        v = _vertex(lines, no, vals[0], n)
        if lists[v] is not None:
            raise lines.error(no, f"vertex {vals[0]} listed twice")
        bad = [c for c in vals[1:] if not 1 <= c <= q]
        if bad:
            raise lines.error(no, f"color {bad[0]} outside 1..{q}")
        lists[v] = frozenset(vals[1:])
    missing = [v + 1 for v, l in enumerate(lists) if l is None]
    if missing:
        raise InvalidInputError(f"{source}: no list line for vertex {missing[0]}")
    return ListAssignment(q, lists)


# -- modulator -----------------------------------------------------------------------

def format_modulator(x: Modulator, n: int) -> str:
    out = [f"p modulator {n} {x.target.value}"]
    out += [f"x {v + 1}" for v in sorted(x.vertices)]
    return "\n".join(out) + "\n"


def parse_modulator(text: str, source: str = "<string>") -> tuple[Modulator, int]:
    lines = _Lines(text, source)
    no, args = lines.header("modulator", 2)
    (n,) = lines.ints(no, args[:1])
    try:
        tag = ClassTag.parse(args[1])
    except ValueError as exc:
        raise lines.error(no, str(exc)) from None
    verts = []
    for no, tok in lines.body():
        if tok[0] != "x" or len(tok) != 2:
            raise lines.error(no, "expected 'x <v>'")
        verts.append(_vertex(lines, no, lines.ints(no, tok[1:])[0], n))
    return Modulator(verts, tag), n


# -- decomposition --------------------------------------------------------------------

def format_decomposition(d: TreedepthDecomposition) -> str:
    out = [f"p decomposition {d.n}"]
    out += [f"t {v + 1} {0 if p is None else p + 1}" for v, p in enumerate(d.parent)]
    return "\n".join(out) + "\n"


def parse_decomposition(text: str, source: str = "<string>") -> TreedepthDecomposition:
    lines = _Lines(text, source)
    no, args = lines.header("decomposition", 1)
    (n,) = lines.ints(no, args)
    parent: list = [None] * n
    seen = set()
    for no, tok in lines.body():
        if tok[0] != "t" or len(tok) != 3:
            raise lines.error(no, "expected 't <v> <parent|0>'")
        v, p = lines.ints(no, tok[1:])
        v = _vertex(lines, no, v, n)
        if v in seen:
            raise lines.error(no, f"vertex {v + 1} given twice")
        seen.add(v)
        parent[v] = None if p == 0 else _vertex(lines, no, p, n)
    return TreedepthDecomposition(tuple(parent))


# -- coloring ----------------------------------------------------------------------------

def format_coloring(coloring: Sequence[int], q: int) -> str:
    out = [f"p coloring {len(coloring)} {q}"]
    out += [f"v {v + 1} {c}" for v, c in enumerate(coloring)]
    return "\n".join(out) + "\n"


def parse_coloring(text: str, source: str = "<string>") -> tuple[tuple, int]:
    lines = _Lines(text, source)
    no, args = lines.header("coloring", 2)
    n, q = lines.ints(no, args)
    col: list = [None] * n
    for no, tok in lines.body():
        if tok[0] != "v" or len(tok) != 3:
            raise lines.error(no, "expected 'v <v> <color>'")
        v, c = lines.ints(no, tok[1:])
        col[_vertex(lines, no, v, n)] = c
    missing = [v + 1 for v, c in enumerate(col) if c is None]
    if missing:
        raise InvalidInputError(f"{source}: vertex {missing[0]} has no color")
    return tuple(col), q


# -- CNF ----------------------------------------------------------------------------------

def format_cnf(phi: CnfFormula) -> str:
    out = [f"p cnf {phi.n} {phi.m}"]
    out += [" ".join(map(str, c)) + " 0" for c in phi.clauses]
    return "\n".join(out) + "\n"


def parse_cnf(text: str, source: str = "<string>") -> CnfFormula:
    lines = _Lines(text, source)
    no, args = lines.header("cnf", 2)
    n, _ = lines.ints(no, args)
    clauses, cur = [], []
    for no, tok in lines.body():
        for lit in lines.ints(no, tok):
            if lit == 0:
                if not cur:
                    raise lines.error(no, "empty clause")
                clauses.append(cur)
                cur = []
            elif abs(lit) > n:
                raise lines.error(no, f"literal {lit} exceeds {n} variables")
            else:
                cur.append(lit)
    if cur:
        clauses.append(cur)
    return CnfFormula(n, tuple(clauses))


# -- certificate set ----------------------------------------------------------------------

def format_certificate_set(zeta: NoCertificateSet) -> str:
    out = [f"p zeta {zeta.tag.value} {zeta.q} {zeta.g} {len(zeta)}"]
    for h, lam in zeta.members:
        out.append(f"r {h.n}")
        out += [f"e {u + 1} {v + 1}" for u, v in h.sorted_edges()]
        out += [" ".join(["l", str(v + 1), *map(str, sorted(lam[v]))]) for v in range(h.n)]
    return "\n".join(out) + "\n"


def parse_certificate_set(text: str, source: str = "<string>") -> NoCertificateSet:
    lines = _Lines(text, source)
    no, args = lines.header("zeta", 4)
    try:
        tag = ClassTag.parse(args[0])
    except ValueError as exc:
        raise lines.error(no, str(exc)) from None
    q, g, count = lines.ints(no, args[1:])
    records: list = []

    def close():
        if records and records[-1][2] is not None:
            n, edges, lists, _ = records[-1]
            if any(l is None for l in lists):
                raise InvalidInputError(f"{source}: record {len(records)} lacks a list line")
            records[-1] = (Graph(n, edges), ListAssignment(q, lists), None, None)

    for no, tok in lines.body():
        if tok[0] == "r":
            close()
            (n,) = lines.ints(no, tok[1:2])
            records.append((n, [], [None] * n, True))
            continue
        if not records:
            raise lines.error(no, "expected 'r <n>' before record lines")
        n, edges, lists, _ = records[-1]
        vals = lines.ints(no, tok[1:])
        if tok[0] == "e" and len(vals) == 2:
            edges.append((_vertex(lines, no, vals[0], n), _vertex(lines, no, vals[1], n)))
        elif tok[0] == "l" and vals:
            lists[_vertex(lines, no, vals[0], n)] = frozenset(vals[1:])
        else:
            raise lines.error(no, f"unexpected line {' '.join(tok)!r}")
    close()
    members = tuple((h, lam) for h, lam, _, _ in records)
    if len(members) != count:
        raise InvalidInputError(f"{source}: header announces {count} records, found {len(members)}")
    return NoCertificateSet(tag, q, g, members)


# -- reduction metadata ----------------------------------------------------------------

# keys whose values hold (possibly nested lists of) vertex ids
_VERTEX_KEYS = ("layers", "groups", "palette")


def _shift(obj, delta):
    if isinstance(obj, list | tuple):
        return [_shift(x, delta) for x in obj]
    return obj + delta


def format_meta(out: ReductionOutput) -> str:
    head = {k: v for k, v in out.meta.items() if k != "roles"}
    head["encoding"] = dict(out.encoding)
    for d in (head, head["encoding"]):
        for k in _VERTEX_KEYS:
            if k in d:
                d[k] = _shift(d[k], 1)
    rows = [json.dumps({"type": "header", **head}, sort_keys=True)]
    rows += [json.dumps({"type": "vertex", "vertex": v + 1, **role}, sort_keys=True)
             for v, role in enumerate(out.meta["roles"])]
    return "\n".join(rows) + "\n"


def parse_meta(text: str, source: str = "<string>") -> tuple[dict, dict]:
    """Returns ``(meta, encoding)`` with 0-indexed vertex ids."""
    head = None
    roles = {}
    for no, raw in enumerate(text.splitlines(), 1):
        if not raw.strip():
            continue
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"{source}:{no}: {exc.msg}") from None
        kind = obj.pop("type", None)
        if kind == "header":
            head = obj
        elif kind == "vertex":
            roles[obj.pop("vertex") - 1] = obj
        else:
            raise InvalidInputError(f"{source}:{no}: unknown record type {kind!r}")
    if head is None:
        raise InvalidInputError(f"{source}: missing header record")
    if sorted(roles) != list(range(len(roles))):
        raise InvalidInputError(f"{source}: vertex records are not 1..n")
    encoding = head.pop("encoding", {})
    for d in (head, encoding):
        for k in _VERTEX_KEYS:
            if k in d:
                d[k] = _shift(d[k], -1)
    head["roles"] = [roles[v] for v in range(len(roles))]
    return head, encoding


# -- file helpers --------------------------------------------------------------------------

def read_graph(path) -> Graph:
    return parse_graph(*_read(path))


def read_lists(path) -> ListAssignment:
    return parse_lists(*_read(path))


def read_modulator(path) -> tuple[Modulator, int]:
    return parse_modulator(*_read(path))


def read_decomposition(path) -> TreedepthDecomposition:
    return parse_decomposition(*_read(path))


def read_coloring(path) -> tuple[tuple, int]:
    return parse_coloring(*_read(path))


def read_cnf(path) -> CnfFormula:
    return parse_cnf(*_read(path))


def read_certificate_set(path) -> NoCertificateSet:
    return parse_certificate_set(*_read(path))


def read_meta(path) -> tuple[dict, dict]:
    return parse_meta(*_read(path))


def write_reduction(out: ReductionOutput, directory, stem: str = "instance") -> dict[str, Path]:
    """Write graph, lists, modulator and meta files; returns the paths by kind."""
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    paths = {"graph": d / f"{stem}.col", "lists": d / f"{stem}.lists",
             "modulator": d / f"{stem}.mod", "meta": d / f"{stem}.meta.jsonl"}
    _write(paths["graph"], format_graph(out.graph))
    _write(paths["lists"], format_lists(out.lists))
    _write(paths["modulator"], format_modulator(out.modulator, out.graph.n))
    _write(paths["meta"], format_meta(out))
    return paths


def write_text(path, text: str):
    _write(path, text)
