"""SAT-to-coloring constructions used as hard-instance generators.

* :func:`reduce_3sat` -- 3-CNF to 3q-(list-)coloring with a small vertex
  cover: truth assignments of ``log q`` variables are packed into one color,
  copied onto three color layers, and every falsifying color triple of a
  clause gets a vertex that can only be colored if the triple is avoided.
* :func:`build_clause_path` -- a list-colored path that can be colored while
  avoiding a color vector ``d`` at distinguished vertices iff ``d != c``.
* :func:`reduce_ssat` -- s-CNF to q-list-coloring on linear forest + kv:
  one clause path per clause and bad coloring of its variable vertices.
* :func:`join_paths` -- glue all those paths into a single path.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from typing import Sequence

from .errors import InvalidInputError
from .graph import ClassTag, Graph, Modulator, induced_subgraph, is_member
from .oracle import ListAssignment, list_to_coloring


@dataclass(frozen=True)
class CnfFormula:
    """CNF over variables ``1..n``; literals are signed ints.

    Clauses are normalised on construction: repeated literals are merged and
    tautological clauses (``x`` and ``-x`` together) are dropped.
    """
    n: int
    clauses: tuple

    def __post_init__(self):
        out = []
        for raw in self.clauses:
            lits = []
            for lit in raw:
                lit = int(lit)
                if lit == 0 or abs(lit) > self.n:
                    raise InvalidInputError(f"literal {lit} out of range for {self.n} variables")
                if lit not in lits:
                    lits.append(lit)
            if not lits:
                raise InvalidInputError("empty clause")
            if any(-l in lits for l in lits):
                continue
            out.append(tuple(lits))
        object.__setattr__(self, "clauses", tuple(out))

    @property
    def m(self) -> int:
        return len(self.clauses)

    @property
    def width(self) -> int:
        return max((len(c) for c in self.clauses), default=0)

    def evaluate(self, assignment: Sequence[bool]) -> bool:
        """``assignment[i]`` is the value of variable ``i + 1``."""
        return all(any(assignment[abs(l) - 1] == (l > 0) for l in c) for c in self.clauses)

    def brute_force_sat(self) -> tuple | None:
        for bits in itertools.product((False, True), repeat=self.n):
            if self.evaluate(bits):
                return bits
        return None


@dataclass
class ReductionOutput:
    graph: Graph
    lists: ListAssignment
    modulator: Modulator
    meta: dict = field(default_factory=dict)
    encoding: dict = field(default_factory=dict)

    @property
    def roles(self) -> list[dict]:
        return self.meta["roles"]


class _Builder:
    def __init__(self):
        self.lists = []
        self.roles = []
        self.edges = []

    def add(self, lst, **role) -> int:
        self.lists.append(frozenset(lst))
        self.roles.append(role)
        return len(self.lists) - 1

    def edge(self, u, v):
        self.edges.append((u, v))


def _power_of_two_exponent(q: int) -> int:
    if q < 2 or q & (q - 1):
        raise InvalidInputError(f"q must be a power of two >= 2, got {q}")
    return q.bit_length() - 1


def _pad3(clause: tuple) -> tuple:
    """Repeat the last literal until the clause has three positions."""
    return tuple(clause) + (clause[-1],) * (3 - len(clause))


def reduce_3sat(phi: CnfFormula, q: int, palette_clique: bool = True) -> ReductionOutput:
    """3-CNF -> 3q-coloring on Independent + kv.

    Variable ``x_i`` lives in group ``(i-1) // log q`` at bit ``(i-1) % log q``
    of ``color - layer_offset - 1``; a set bit means True.  Clauses shorter
    than three repeat their last literal; the repeated positions sit on
    different color layers so every forbidden triple still has three
    distinct colors.
    """
    bits = _power_of_two_exponent(q)
    if phi.width > 3:
        raise InvalidInputError(f"clause width {phi.width} > 3")
    groups = -(-phi.n // bits)
    b = _Builder()
    layer = [[b.add(range(l * q + 1, (l + 1) * q + 1), role="variable", layer=l + 1, group=j + 1)
              for j in range(groups)] for l in range(3)]
    for i in range(2):
        for j in range(groups):
            for c in range(i * q + 1, (i + 1) * q + 1):
                for c2 in range((i + 1) * q + 1, (i + 2) * q + 1):
                    if c2 == c + q:
                        continue
                    u = b.add((c, c2), role="propagation", layer=i + 1, group=j + 1, colors=[c, c2])
                    b.edge(u, layer[i][j])
                    b.edge(u, layer[i + 1][j])
    for ci, clause in enumerate(phi.clauses):
        falsifying = []
        anchors = []
        for pos, lit in enumerate(_pad3(clause)):
            var = abs(lit) - 1
            j, bit = divmod(var, bits)
            want = 1 if lit > 0 else 0
            falsifying.append([pos * q + c for c in range(1, q + 1) if ((c - 1) >> bit) & 1 != want])
            anchors.append(layer[pos][j])
        for triple in itertools.product(*falsifying):
            w = b.add(triple, role="clause", clause=ci + 1, colors=list(triple))
            for a in anchors:
                b.edge(w, a)
    graph = Graph(len(b.lists), b.edges)
    lists = ListAssignment(3 * q, b.lists)
    x = [v for row in layer for v in row]
    meta = {"kind": "reduce3sat", "q": q, "palette_size": 3 * q, "n_vars": phi.n,
            "group_count": groups, "roles": b.roles}
    encoding = {"bits_per_group": bits, "true_bit": 1,
                "variables": {str(i + 1): [i // bits + 1, i % bits] for i in range(phi.n)},
                "layers": [[v for v in row] for row in layer]}
    out = ReductionOutput(graph, lists, Modulator(x, ClassTag.INDEPENDENT), meta, encoding)
    return add_palette_clique(out) if palette_clique else out


def decode_3sat(out: ReductionOutput, coloring: Sequence[int]) -> list[bool]:
    bits = out.encoding["bits_per_group"]
    first = out.encoding["layers"][0]
    n = out.meta["n_vars"]
    return [bool(((coloring[first[i // bits]] - 1) >> (i % bits)) & 1) for i in range(n)]


def add_palette_clique(out: ReductionOutput) -> ReductionOutput:
    """Convert the list instance into a plain coloring instance."""
    graph, palette = list_to_coloring(out.graph, out.lists)
    q = out.lists.q
    roles = list(out.roles) + [{"role": "palette", "color": c} for c in range(1, q + 1)]
    meta = dict(out.meta, roles=roles, palette=palette)
    mod = Modulator(set(out.modulator.vertices) | set(palette), out.modulator.target)
    return ReductionOutput(graph, ListAssignment.full(graph.n, q), mod, meta, out.encoding)


# -- clause path ---------------------------------------------------------------

@dataclass(frozen=True)
class ClausePathGadget:
    path: Graph
    lists: ListAssignment
    distinguished: tuple
    c: tuple


def default_path_list(i: int) -> frozenset:
    return frozenset({(i % 3) + 1, ((i + 1) % 3) + 1})


def build_clause_path(c: Sequence[int], q: int) -> ClausePathGadget:
    """Path ``v_0 .. v_{6m+1}`` whose distinguished vertices carry the extra colors ``c``.

    With only the two-color default lists the source color 2 forces the
    whole path and collides with the sink.  Each group of six gets one
    interior vertex whose list also holds ``c_i``, which is the only way out.
    """
    c = tuple(int(x) for x in c)
    if q < 3:
        raise InvalidInputError(f"clause path needs q >= 3, got {q}")
    if not c:
        raise InvalidInputError("color vector must be non-empty")
    if any(not 1 <= x <= q for x in c):
        raise InvalidInputError(f"colors {c} outside [1..{q}]")
    m = len(c)
    size = 6 * m + 2
    lists = [frozenset({2})] + [default_path_list(i) for i in range(1, 6 * m + 1)] + [frozenset({2})]
    pis = []
    for i, ci in enumerate(c):
        interior = range(6 * i + 2, 6 * i + 6)
        pi = next(v for v in interior if ci not in lists[v])
        lists[pi] = lists[pi] | {ci}
        pis.append(pi)
    path = Graph(size, [(i, i + 1) for i in range(size - 1)])
    return ClausePathGadget(path, ListAssignment(q, lists), tuple(pis), c)


def avoidance_lists(gadget: ClausePathGadget, d: Sequence[int]) -> ListAssignment:
    """Lists under which a coloring exists iff one avoids ``d_i`` at every ``pi_i``."""
    lists = list(gadget.lists.lists)
    for pi, di in zip(gadget.distinguished, d):
        lists[pi] = lists[pi] - {di}
    return ListAssignment(gadget.lists.q, lists)


# -- s-SAT to linear forest + kv ---------------------------------------------------

def group_size(q: int, p: int) -> int:
    """floor(log2(q**p)), computed exactly."""
    return (q ** p).bit_length() - 1


def encode_group(assignment: Sequence[bool], q: int, p: int) -> tuple:
    """Injection: read the assignment as a binary number (first variable = bit 0)
    and spell it with ``p`` base-q digits, most significant first; colors are digits + 1."""
    value = sum(1 << k for k, bit in enumerate(assignment) if bit)
    digits = []
    for _ in range(p):
        value, d = divmod(value, q)
        digits.append(d + 1)
    return tuple(reversed(digits))


def reduce_ssat(phi: CnfFormula, q: int, p: int = 1, palette_clique: bool = False) -> ReductionOutput:
    if q < 3:
        raise InvalidInputError(f"reduce_ssat needs q >= 3, got {q}")
    if p < 1:
        raise InvalidInputError(f"p must be >= 1, got {p}")
    size = group_size(q, p)
    if size < 1:
        raise InvalidInputError("degenerate group size 0")
    t = -(-phi.n // size)
    b = _Builder()
    groups = [[b.add(range(1, q + 1), role="variable", group=i + 1, index=l + 1) for l in range(p)]
              for i in range(t)]
    decode = []
    for i in range(t):
        width = min(size, phi.n - i * size)
        table = {}
        for bits in itertools.product((False, True), repeat=width):
            table[encode_group(bits[::-1], q, p)] = bits[::-1]
        decode.append(table)
    bad_counts = []
    for ci, clause in enumerate(phi.clauses):
        lit_groups = [(abs(l) - 1) // size for l in clause]
        involved = sorted(set(lit_groups))
        bad = 0
        for mu in itertools.product(itertools.product(range(1, q + 1), repeat=p), repeat=len(involved)):
            color_of = dict(zip(involved, mu))
            if not _is_bad(clause, size, color_of, decode):
                continue
            vec = [color_of[gi][l] for gi in lit_groups for l in range(p)]
            gadget = build_clause_path(vec, q)
            base = len(b.lists)
            pi_pos = {v: k for k, v in enumerate(gadget.distinguished)}
            for v in range(gadget.path.n):
                b.add(gadget.lists[v], role="path", clause=ci + 1, bad=bad + 1, position=v,
                      distinguished=(pi_pos[v] + 1) if v in pi_pos else None)
            for u, v in gadget.path.edges:
                b.edge(base + u, base + v)
            for k, gi in enumerate(lit_groups):
                for l in range(p):
                    b.edge(groups[gi][l], base + gadget.distinguished[p * k + l])
            bad += 1
        bad_counts.append(bad)
    graph = Graph(len(b.lists), b.edges)
    lists = ListAssignment(q, b.lists)
    x = [v for grp in groups for v in grp]
    meta = {"kind": "reducessat", "q": q, "p": p, "palette_size": q, "n_vars": phi.n,
            "group_count": t, "group_size": size, "bad_colorings": bad_counts, "roles": b.roles}
    encoding = {"group_size": size, "digits": p, "bit_order": "first variable least significant",
                "variables": {str(i + 1): [i // size + 1, i % size] for i in range(phi.n)},
                "groups": groups}
    out = ReductionOutput(graph, lists, Modulator(x, ClassTag.LINEAR_FOREST), meta, encoding)
    return add_palette_clique(out) if palette_clique else out


def _is_bad(clause, size, color_of, decode) -> bool:
    assignment = {}
    for gi, colors in color_of.items():
        bits = decode[gi].get(colors)
        if bits is None:
            return True
        assignment[gi] = bits
    for lit in clause:
        gi, k = divmod(abs(lit) - 1, size)
        if assignment[gi][k] == (lit > 0):
            return False
    return True


def decode_ssat(out: ReductionOutput, coloring: Sequence[int]) -> list[bool] | None:
    """Truth assignment encoded on the variable vertices, or ``None`` if some
    group's colors are outside the injection's image."""
    q, p, size = out.meta["q"], out.meta["p"], out.meta["group_size"]
    n = out.meta["n_vars"]
    values = []
    for i, grp in enumerate(out.encoding["groups"]):
        width = min(size, n - i * size)
        colors = tuple(coloring[v] for v in grp)
        for bits in itertools.product((False, True), repeat=width):
            if encode_group(bits, q, p) == colors:
                values.extend(bits)
                break
        else:
            return None
    return values


def join_paths(out: ReductionOutput) -> ReductionOutput:
    """Chain the non-modulator paths into one, with a full-list connector between neighbors."""
    x = out.modulator.vertices
    rest = [v for v in range(out.graph.n) if v not in x]
    sub, index = induced_subgraph(out.graph, rest)
    if not is_member(sub, ClassTag.LINEAR_FOREST):
        raise InvalidInputError("graph minus modulator is not a linear forest")
    back = {i: v for v, i in index.items()}
    chains = []
    for comp in sub.components():
        ends = [v for v in comp if sub.degree(v) <= 1]
        walk = [min(ends)]
        prev = None
        while True:
            nxt = [w for w in sub.neighbors(walk[-1]) if w != prev]
            if not nxt:
                break
            prev = walk[-1]
            walk.append(nxt[0])
        chains.append([back[v] for v in walk])
    q = out.lists.q
    lists = list(out.lists.lists)
    roles = list(out.roles)
    edges = list(out.graph.edges)
    n = out.graph.n
    for left, right in zip(chains, chains[1:]):
        conn = n
        n += 1
        lists.append(frozenset(range(1, q + 1)))
        roles.append({"role": "connector"})
        edges += [(left[-1], conn), (conn, right[0])]
    meta = dict(out.meta, roles=roles, joined=True)
    return replace(out, graph=Graph(n, edges), lists=ListAssignment(q, lists),
                   modulator=Modulator(x, ClassTag.PATH), meta=meta)
