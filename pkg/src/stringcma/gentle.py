"""Forbidden paths and threads, homological dimensions and derived type of gentle algebras."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

import networkx as nx

from .core import Path, Presentation, RelationCycle, classify, relation_cycles
from .errors import NotGentleError

INFINITY = math.inf


def _require_gentle(pres: Presentation):
    rep = classify(pres)
    if not rep.is_gentle:
        raise NotGentleError("input is not gentle: " + "; ".join(rep.violations))


# -- G-condition --------------------------------------------------------------

@dataclass
class GConditionReport:
    ok: bool
    witness: RelationCycle | None = None

    def to_json(self):
        return {"ok": self.ok,
                "witness": None if self.witness is None else self.witness.describe()}


def satisfies_g_condition(pres: Presentation) -> GConditionReport:
    """Every relation cycle carrying a perfect path must be gentle."""
    from .gproj import perfect_paths

    report = perfect_paths(pres)
    if report.cm_free:
        return GConditionReport(True)
    for rc in relation_cycles(pres):
        if rc.gentle:
            continue
        for orbit in report.orbits:
            if _hosts(rc, orbit):
                return GConditionReport(False, rc)
    return GConditionReport(True)


def _hosts(rc, orbit) -> bool:
    """Whether the orbit's concatenated walk winds around the cycle."""
    walk = tuple(a for p in orbit for a in p.arrows)
    return len(walk) % rc.length == 0 and bool(rc.offsets_of(walk))


# -- forbidden paths ----------------------------------------------------------

@dataclass(frozen=True)
class ForbiddenPath:
    arrows: tuple[str, ...] = ()
    vertex: str | None = None

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def is_trivial(self):
        return not self.arrows

    def __str__(self):
        return ".".join(self.arrows) if self.arrows else f"e_{self.vertex}"


@dataclass(frozen=True)
class ForbiddenThread:
    path: ForbiddenPath
    left_maximal: bool = True
    right_maximal: bool = True

    @property
    def length(self) -> int:
        return self.path.length

    def __str__(self):
        return str(self.path)


class RelationGraph:
    """Arrows as nodes, with an edge a -> b whenever ab is a generator."""

    def __init__(self, pres: Presentation):
        self.pres = pres
        g = nx.DiGraph()
        g.add_nodes_from(a.name for a in pres.quiver.arrows)
        g.add_edges_from(gen for gen in pres.generators if len(gen) == 2)
        self.graph = g

    def cyclic_nodes(self) -> set[str]:
        out = set()
        for comp in nx.strongly_connected_components(self.graph):
            if len(comp) > 1 or any(self.graph.has_edge(v, v) for v in comp):
                out.update(comp)
        return out

    def has_cycle(self) -> bool:
        return bool(self.cyclic_nodes())

    def is_forbidden(self, arrows) -> bool:
        return all(self.graph.has_edge(x, y) for x, y in zip(arrows, arrows[1:]))

    def acyclic_part(self) -> nx.DiGraph:
        """Nodes that neither lie on nor touch a cycle."""
        cyc = self.cyclic_nodes()
        tainted = set(cyc)
        for v in cyc:
            tainted |= nx.descendants(self.graph, v) | nx.ancestors(self.graph, v)
        return self.graph.subgraph(set(self.graph) - tainted).copy()


def trivial_forbidden_vertices(pres: Presentation) -> list[str]:
    """Vertices with at most one arrow in and out, whose composite (if any) is a relation."""
    q = pres.quiver
    gens = set(pres.generators)
    out = []
    for v in q.vertices:
        ins, outs = q.incoming[v], q.outgoing[v]
        if len(ins) > 1 or len(outs) > 1:
            continue
        if ins and outs and (ins[0].name, outs[0].name) not in gens:
            continue
        out.append(v)
    return out


@dataclass
class ForbiddenStructures:
    maximal_paths: list[ForbiddenPath]
    unbounded: bool
    threads: list[ForbiddenThread]
    cycles: list[tuple[str, ...]] = field(default_factory=list)

    def to_json(self):
        return {"maximal_paths": None if self.unbounded else [str(p) for p in self.maximal_paths],
                "unbounded": self.unbounded,
                "threads": [{"path": str(t), "length": t.length} for t in self.threads],
                "cycles": [".".join(c) for c in self.cycles]}


def _maximal_walks(g: nx.DiGraph) -> list[tuple[str, ...]]:
    """Source-to-sink walks of a DAG."""
    out = []
    sources = [v for v in g if g.in_degree(v) == 0]
    for s in sorted(sources):
        stack = [(s,)]
        while stack:
            walk = stack.pop()
            nxt = sorted(g.successors(walk[-1]), reverse=True)
            if not nxt:
                out.append(walk)
            for b in nxt:
                stack.append(walk + (b,))
    return out


def forbidden_structures(pres: Presentation) -> ForbiddenStructures:
    _require_gentle(pres)
    rg = RelationGraph(pres)
    cyc = rg.cyclic_nodes()
    dag = rg.acyclic_part()
    walks = _maximal_walks(dag)
    trivial = [ForbiddenPath((), v) for v in trivial_forbidden_vertices(pres)]
    threads = [ForbiddenThread(ForbiddenPath(w)) for w in walks]
    threads += [ForbiddenThread(p) for p in trivial]
    cycles = []
    for comp in nx.simple_cycles(rg.graph.subgraph(cyc)):
        i = comp.index(min(comp, key=pres.quiver.arrow_index.get))
        cycles.append(tuple(comp[i:] + comp[:i]))
    if cyc:
        maximal: list[ForbiddenPath] = []
    else:
        paths = [ForbiddenPath(w) for w in walks]
        longest = max((p.length for p in paths), default=0)
        maximal = [p for p in paths if p.length == longest] or trivial
    return ForbiddenStructures(maximal, bool(cyc), threads, sorted(cycles))


@dataclass
class HomologicalDimensions:
    gldim: int | float
    injdim: int
    f1: list[tuple[str, ...]]
    f2: list[ForbiddenPath]
    injdim_f2: int
    threads: list[ForbiddenThread]

    def to_json(self):
        return {"gldim": "infinity" if self.gldim == INFINITY else self.gldim,
                "injdim": self.injdim,
                "f1_cycles": [".".join(c) for c in self.f1],
                "f2": [str(p) for p in self.f2],
                "injdim_f2": self.injdim_f2,
                "threads": [str(t) for t in self.threads]}


def _subwalks(walk: tuple[str, ...]):
    for i in range(len(walk)):
        for j in range(i + 1, len(walk) + 1):
            yield walk[i:j]


def homological_dimensions(pres: Presentation) -> HomologicalDimensions:
    """gl.dim from forbidden paths, inj.dim from threads, with the on/off-cycle split."""
    fs = forbidden_structures(pres)
    rg = RelationGraph(pres)
    dag = rg.acyclic_part()
    f2 = {ForbiddenPath(w) for walk in _maximal_walks(dag) for w in _subwalks(walk)}
    f2_list = sorted(f2, key=lambda p: (p.length, p.arrows))
    f2_list += [ForbiddenPath((), v) for v in trivial_forbidden_vertices(pres)]
    injdim_f2 = max((p.length for p in f2_list), default=0)
    injdim = max((t.length for t in fs.threads), default=0)
    if fs.unbounded:
        gldim: int | float = INFINITY
    else:
        gldim = max((p.length for p in fs.maximal_paths), default=0)
    return HomologicalDimensions(gldim, injdim, fs.cycles, f2_list, injdim_f2, fs.threads)


def format_dim(d) -> str:
    return "infinity" if d == INFINITY else str(d)


# -- derived type -------------------------------------------------------------

@dataclass(frozen=True, order=True)
class HomotopyLetter:
    """A nonzero path read forwards (direct) or backwards (inverse)."""

    inverse: bool
    path: Path

    @property
    def first(self) -> str:
        return self.path.arrows[-1] if self.inverse else self.path.arrows[0]

    @property
    def last(self) -> str:
        return self.path.arrows[0] if self.inverse else self.path.arrows[-1]

    @property
    def source(self) -> str:
        return self.path.target if self.inverse else self.path.source

    @property
    def target(self) -> str:
        return self.path.source if self.inverse else self.path.target

    def inv(self) -> "HomotopyLetter":
        return HomotopyLetter(not self.inverse, self.path)

    def __str__(self):
        body = str(self.path)
        if len(self.path) > 1:
            body = f"({body})"
        return body + ("^-1" if self.inverse else "")


@dataclass(frozen=True)
class HomotopyWord:
    letters: tuple[HomotopyLetter, ...]

    def __len__(self):
        return len(self.letters)

    def inverse(self) -> "HomotopyWord":
        return HomotopyWord(tuple(l.inv() for l in reversed(self.letters)))

    def __str__(self):
        return ".".join(str(l) for l in self.letters)


def _letter_key(pres: Presentation, l: HomotopyLetter):
    return (int(l.inverse), pres.path_key(l.path))


def _canonical_cyclic(pres: Presentation, w: HomotopyWord) -> HomotopyWord:
    ls = w.letters
    n = len(ls)
    for d in range(1, n + 1):
        if n % d == 0 and ls[:d] * (n // d) == ls:
            ls = ls[:d]
            break
    best = None
    for cand in (ls, HomotopyWord(ls).inverse().letters):
        for i in range(len(cand)):
            rot = cand[i:] + cand[:i]
            key = [_letter_key(pres, l) for l in rot]
            if best is None or key < best[0]:
                best = (key, rot)
    return HomotopyWord(best[1])


def homotopy_letter_graph(pres: Presentation) -> nx.DiGraph:
    """Homotopy letters as nodes; an edge l -> m when m may follow l in a generalized string.

    Two direct letters chain when the last arrow of the first and the first arrow of the
    second compose to a relation (dually for inverse letters). A direct letter turns into
    an inverse one at a common endpoint reached by different arrows, and an inverse letter
    turns into a direct one at a common start left by different arrows.
    """
    gens = set(pres.generators)
    letters = []
    for p in pres.nonzero_paths():
        if p.arrows:
            letters += [HomotopyLetter(False, p), HomotopyLetter(True, p)]
    g = nx.DiGraph()
    g.add_nodes_from(letters)
    by_source: dict[str, list[HomotopyLetter]] = {}
    for l in letters:
        by_source.setdefault(l.source, []).append(l)
    for l in letters:
        for m in by_source.get(l.target, ()):
            if l.inverse == m.inverse:
                pair = (m.first, l.last) if l.inverse else (l.last, m.first)
                ok = pair in gens
            else:
                ok = l.last != m.first and not (l.path == m.path)
            if ok:
                g.add_edge(l, m)
    return g


@dataclass
class DerivedClass:
    kind: str
    witness: HomotopyWord | None = None

    def to_json(self):
        return {"class": self.kind,
                "witness": None if self.witness is None else str(self.witness)}


def _balanced_cycle(g: nx.DiGraph, comp: set, pres: Presentation) -> list | None:
    """Shortest closed walk in ``comp`` with as many direct as inverse letters."""
    bound = len(comp)
    best = None
    for s in sorted(comp, key=lambda l: _letter_key(pres, l)):
        prev = {(s, 0): None}
        queue = deque([(s, 0)])
        hit = None
        while queue and hit is None:
            node, w = queue.popleft()
            for m in g.successors(node):
                if m not in comp:
                    continue
                w2 = w + (-1 if m.inverse else 1)
                if abs(w2) > bound:
                    continue
                if m == s and w2 == 0:
                    hit = (node, w)
                    break
                if (m, w2) not in prev:
                    prev[(m, w2)] = (node, w)
                    queue.append((m, w2))
        if hit is None:
            continue
        walk = []
        cur = hit
        while cur is not None:
            walk.append(cur[0])
            cur = prev[cur]
        walk.reverse()
        if best is None or len(walk) < len(best):
            best = walk
    return best


def derived_class(pres: Presentation) -> DerivedClass:
    """Discrete iff no cyclic generalized string has balanced direct and inverse letters."""
    _require_gentle(pres)
    g = homotopy_letter_graph(pres)
    witnesses = []
    for comp in nx.strongly_connected_components(g):
        comp = set(comp)
        if len(comp) == 1:
            v = next(iter(comp))
            if not g.has_edge(v, v):
                continue
        walk = _balanced_cycle(g, comp, pres)
        if walk is not None:
            witnesses.append(_canonical_cyclic(pres, HomotopyWord(tuple(walk))))
    if not witnesses:
        return DerivedClass("discrete")
    best = min(witnesses, key=lambda w: (len(w), [_letter_key(pres, l) for l in w.letters]))
    return DerivedClass("strongly_unbounded", best)
