"""Bound quivers, paths, monomial ideal arithmetic and relation cycles."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    NonAdmissibleError,
    NotMonomialError,
    OverlapError,
    ParseError,
    PresentationError,
)

ORIGINAL = "original"
GPROJ = "gproj"

_NAME_RE = re.compile(r"[^\s.=:#]+")


@dataclass(frozen=True, slots=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True, slots=True)
class Path:
    """A path of a quiver: a trivial path at ``source`` or a nonempty arrow sequence."""

    source: str
    target: str
    arrows: tuple[str, ...] = ()

    def __len__(self):
        return len(self.arrows)

    @property
    def is_trivial(self):
        return not self.arrows

    def __mul__(self, other: "Path") -> "Path":
        if self.target != other.source:
            raise PresentationError(f"cannot compose {self} and {other}")
        return Path(self.source, other.target, self.arrows + other.arrows)

    def contains(self, other: "Path") -> bool:
        return contains_subpath(self.arrows, other.arrows)

    def label(self) -> str:
        if not self.arrows:
            return f"e_{self.source}"
        return path_label(self.arrows)

    def __str__(self):
        return self.label()


def path_label(arrows: Sequence[str]) -> str:
    """Concatenated names when every name is one character, dotted otherwise."""
    if all(len(a) == 1 for a in arrows):
        return "".join(arrows)
    return ".".join(arrows)


def contains_subpath(big: Sequence[str], small: Sequence[str]) -> bool:
    n, m = len(big), len(small)
    if m == 0:
        return True
    if m > n:
        return False
    first = small[0]
    for i in range(n - m + 1):
        if big[i] == first and tuple(big[i:i + m]) == tuple(small):
            return True
    return False


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise PresentationError("duplicate vertex id")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise PresentationError("duplicate arrow name")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise PresentationError(f"arrow {a.name} has an undeclared endpoint")

    @cached_property
    def arrow(self) -> dict[str, Arrow]:
        return {a.name: a for a in self.arrows}

    @cached_property
    def arrow_index(self) -> dict[str, int]:
        return {a.name: i for i, a in enumerate(self.arrows)}

    @cached_property
    def vertex_index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def outgoing(self) -> dict[str, tuple[Arrow, ...]]:
        out = {v: [] for v in self.vertices}
        for a in self.arrows:
            out[a.source].append(a)
        return {v: tuple(x) for v, x in out.items()}

    @cached_property
    def incoming(self) -> dict[str, tuple[Arrow, ...]]:
        inc = {v: [] for v in self.vertices}
        for a in self.arrows:
            inc[a.target].append(a)
        return {v: tuple(x) for v, x in inc.items()}

    def make_path(self, arrows: Sequence[str], vertex: str | None = None) -> Path:
        arrows = tuple(arrows)
        if not arrows:
            if vertex is None or vertex not in self.vertex_index:
                raise PresentationError("trivial path needs a declared vertex")
            return Path(vertex, vertex, ())
        for name in arrows:
            if name not in self.arrow:
                raise PresentationError(f"unknown arrow {name!r}")
        for x, y in zip(arrows, arrows[1:]):
            if self.arrow[x].target != self.arrow[y].source:
                raise PresentationError(f"arrows {x} and {y} do not compose")
        return Path(self.arrow[arrows[0]].source, self.arrow[arrows[-1]].target, arrows)

    def trivial(self, vertex: str) -> Path:
        return self.make_path((), vertex)


@dataclass(frozen=True)
class Relation:
    """One or two (coefficient, path) terms; all terms parallel."""

    terms: tuple[tuple[int, Path], ...]

    def __post_init__(self):
        if len(self.terms) not in (1, 2):
            raise PresentationError("a relation has one or two terms")
        paths = [p for _, p in self.terms]
        if len({(p.source, p.target) for p in paths}) != 1:
            raise PresentationError(
                "relation terms are not parallel: " + " vs ".join(str(p) for p in paths))

    @property
    def is_monomial(self):
        return len(self.terms) == 1

    @property
    def paths(self) -> tuple[Path, ...]:
        return tuple(p for _, p in self.terms)

    def key(self):
        """Order-insensitive identity (a binomial p - q equals q - p)."""
        if self.is_monomial:
            return (self.terms[0][1].arrows,)
        return tuple(sorted(p.arrows for p in self.paths))

    def __str__(self):
        if self.is_monomial:
            return str(self.terms[0][1])
        (c1, p1), (c2, p2) = self.terms
        sign = "-" if c2 < 0 else "+"
        return f"{p1} {sign} {p2}"

    @staticmethod
    def monomial(path: Path) -> "Relation":
        return Relation(((1, path),))

    @staticmethod
    def binomial(p: Path, q: Path) -> "Relation":
        return Relation(((1, p), (-1, q)))


@dataclass(frozen=True)
class Presentation:
    quiver: Quiver
    relations: tuple[Relation, ...] = ()
    kinds: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        for r in self.relations:
            for _, p in r.terms:
                self.quiver.make_path(p.arrows, p.source)
            if r.is_monomial and len(r.terms[0][1]) < 2:
                raise PresentationError(f"generator {r} has length < 2")
            if not r.is_monomial and r.terms[0][1].arrows == r.terms[1][1].arrows:
                raise PresentationError(f"binomial {r} has equal terms")

    # -- convenience -------------------------------------------------------
    @property
    def vertices(self):
        return self.quiver.vertices

    @property
    def arrows(self):
        return self.quiver.arrows

    def kind(self, vertex: str) -> str:
        return dict(self.kinds).get(vertex, ORIGINAL)

    def path(self, ref: str | Sequence[str]) -> Path:
        """Build a path from ``"a.b.c"``, ``"abc"`` (single-letter names), ``"e_1"`` or a name list."""
        if isinstance(ref, str):
            if ref.startswith("e_") and ref[2:] in self.quiver.vertex_index:
                return self.quiver.trivial(ref[2:])
            if "." in ref:
                names = ref.split(".")
            elif ref in self.quiver.arrow:
                names = [ref]
            elif all(ch in self.quiver.arrow for ch in ref):
                names = list(ref)
            else:
                raise PresentationError(f"cannot read path {ref!r}")
        else:
            names = list(ref)
        return self.quiver.make_path(names)

    @property
    def is_monomial(self) -> bool:
        return all(r.is_monomial for r in self.relations)

    @cached_property
    def generators(self) -> tuple[tuple[str, ...], ...]:
        """Arrow tuples of the monomial generators, in declaration order."""
        return tuple(r.terms[0][1].arrows for r in self.relations if r.is_monomial)

    @cached_property
    def _generator_set(self):
        return frozenset(self.generators)

    @cached_property
    def _generator_lengths(self):
        return sorted({len(g) for g in self.generators})

    def is_zero(self, arrows: Sequence[str]) -> bool:
        """Whether the path contains a monomial generator (zero in a monomial algebra)."""
        arrows = tuple(arrows)
        gens = self._generator_set
        n = len(arrows)
        for m in self._generator_lengths:
            if m > n:
                break
            for i in range(n - m + 1):
                if arrows[i:i + m] in gens:
                    return True
        return False

    def ends_in_generator(self, arrows: tuple[str, ...]) -> bool:
        """Whether some suffix of ``arrows`` is a monomial generator."""
        gens = self._generator_set
        n = len(arrows)
        for m in self._generator_lengths:
            if m > n:
                break
            if arrows[n - m:] in gens:
                return True
        return False

    def path_key(self, p: Path):
        if p.is_trivial:
            return (0, (self.quiver.vertex_index[p.source],))
        idx = self.quiver.arrow_index
        return (len(p), tuple(idx[a] for a in p.arrows))

    @property
    def length_cap(self) -> int:
        longest = max((len(g) for g in self.generators), default=0)
        return 4 * len(self.quiver.arrows) + longest

    @cached_property
    def _nonzero(self) -> tuple[Path, ...]:
        if not self.is_monomial:
            raise NotMonomialError("nonzero-path enumeration needs a monomial presentation")
        q = self.quiver
        cap = self.length_cap
        result = [q.trivial(v) for v in q.vertices]
        layer = [(a.name,) for a in q.arrows if (a.name,) not in self._generator_set]
        length = 1
        while layer:
            if length > cap:
                raise NonAdmissibleError(
                    f"nonzero paths longer than the cap {cap}; the ideal is not admissible")
            result.extend(q.make_path(t) for t in layer)
            nxt = []
            for t in layer:
                for b in q.outgoing[q.arrow[t[-1]].target]:
                    cand = t + (b.name,)
                    if not self.ends_in_generator(cand):
                        nxt.append(cand)
            idx = q.arrow_index
            nxt.sort(key=lambda t: tuple(idx[a] for a in t))
            layer = nxt
            length += 1
        return tuple(result)

    def nonzero_paths(self) -> tuple[Path, ...]:
        return self._nonzero

    @cached_property
    def nonzero_set(self) -> frozenset[tuple[str, ...]]:
        return frozenset(p.arrows for p in self._nonzero if p.arrows)

    def is_nonzero_path(self, p: Path) -> bool:
        return p.is_trivial or p.arrows in self.nonzero_set

    def structurally_equal(self, other: "Presentation") -> bool:
        if self.quiver.vertices != other.quiver.vertices:
            return False
        if set(self.quiver.arrows) != set(other.quiver.arrows):
            return False
        if {r.key() for r in self.relations} != {r.key() for r in other.relations}:
            return False
        return dict(self.kinds) == dict(other.kinds)


def nonzero_paths(pres: Presentation) -> tuple[Path, ...]:
    """All paths outside the monomial ideal, ordered by (length, arrow order)."""
    return pres.nonzero_paths()


def build_presentation(vertices: Iterable[str], arrows: Iterable[tuple[str, str, str]],
                       relations: Iterable = (), kinds: dict | None = None) -> Presentation:
    """Programmatic constructor.

    ``relations`` entries are either a path string (monomial) or a pair of path
    strings (binomial ``p - q``). Path strings follow :meth:`Presentation.path`.
    """
    q = Quiver(tuple(vertices), tuple(Arrow(*a) for a in arrows))
    shell = Presentation(q)
    rels = []
    for r in relations:
        if isinstance(r, str):
            rels.append(Relation.monomial(shell.path(r)))
        else:
            p1, p2 = r
            rels.append(Relation.binomial(shell.path(p1), shell.path(p2)))
    kinds_t = tuple(sorted((kinds or {}).items(), key=lambda kv: q.vertex_index[kv[0]]))
    return normalize(Presentation(q, tuple(rels), kinds_t))


def normalize(pres: Presentation) -> Presentation:
    """Drop duplicate and non-minimal monomial generators; collapse binomials hit by them."""
    mono = []
    for r in pres.relations:
        if r.is_monomial and r.terms[0][1].arrows not in [m.arrows for m in mono]:
            mono.append(r.terms[0][1])
    minimal = [p for p in mono
               if not any(o is not p and len(o) < len(p) and p.contains(o) for o in mono)]
    shell = Presentation(pres.quiver, tuple(Relation.monomial(p) for p in minimal))
    out = []
    seen = set()
    for r in pres.relations:
        if r.is_monomial:
            if r.terms[0][1] not in minimal:
                continue
        else:
            live = [(c, p) for c, p in r.terms if not shell.is_zero(p.arrows)]
            if len(live) == 1:
                p = live[0][1]
                if len(p) < 2:
                    raise PresentationError(f"relation {r} forces a short path to vanish")
                r = Relation.monomial(p)
            elif not live:
                continue
        if r.key() in seen:
            continue
        seen.add(r.key())
        out.append(r)
    return Presentation(pres.quiver, tuple(out), pres.kinds)


# -- DSL --------------------------------------------------------------------

def parse_presentation(text: str) -> Presentation:
    """Parse the line-oriented DSL (``vertices``, ``arrow``, ``rel``, ``gproj``)."""
    vertices: list[str] = []
    arrows: list[Arrow] = []
    arrow_names: dict[str, Arrow] = {}
    raw_rels: list[tuple[int, int, list[list[str]]]] = []
    gproj: list[str] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        body = line.strip()
        keyword, _, rest = body.partition(" ")
        rest_col = indent + len(keyword) + 2
        if keyword == "vertices":
            for m in re.finditer(r"\S+", rest):
                v = m.group()
                if not _NAME_RE.fullmatch(v):
                    raise ParseError(f"bad vertex id {v!r}", lineno, rest_col + m.start())
                if v in vertices:
                    raise ParseError(f"duplicate vertex {v!r}", lineno, rest_col + m.start())
                vertices.append(v)
        elif keyword == "gproj":
            gproj.extend(rest.split())
        elif keyword == "arrow":
            m = re.fullmatch(r"\s*([^\s:]+)\s*:\s*(\S+)\s*->\s*(\S+)\s*", rest)
            if not m:
                raise ParseError("expected 'arrow <name>: <src> -> <dst>'", lineno, rest_col)
            name, src, dst = m.groups()
            if not _NAME_RE.fullmatch(name):
                raise ParseError(f"bad arrow name {name!r}", lineno, rest_col + m.start(1))
            if name in arrow_names:
                raise ParseError(f"duplicate arrow {name!r}", lineno, rest_col + m.start(1))
            for v, g in ((src, 2), (dst, 3)):
                if v not in vertices:
                    raise ParseError(f"unknown vertex {v!r}", lineno, rest_col + m.start(g))
            arrow_names[name] = Arrow(name, src, dst)
            arrows.append(arrow_names[name])
        elif keyword == "rel":
            sides = rest.split("=")
            if len(sides) > 2 or not rest.strip():
                raise ParseError("expected 'rel <path>' or 'rel <path> = <path>'", lineno, rest_col)
            terms = []
            for side in sides:
                names = side.strip().split(".")
                if not side.strip() or any(not n for n in names):
                    raise ParseError("empty path in relation", lineno, rest_col)
                for n in names:
                    if n not in arrow_names:
                        col = rest_col + rest.find(n)
                        raise ParseError(f"unknown arrow {n!r}", lineno, col)
                terms.append(names)
            raw_rels.append((lineno, rest_col, terms))
        else:
            raise ParseError(f"unknown directive {keyword!r}", lineno, indent + 1)

    for v in gproj:
        if v not in vertices:
            raise ParseError(f"gproj tag on unknown vertex {v!r}")
    try:
        quiver = Quiver(tuple(vertices), tuple(arrows))
    except PresentationError as exc:
        raise ParseError(str(exc)) from None
    rels = []
    for lineno, col, terms in raw_rels:
        try:
            paths = [quiver.make_path(t) for t in terms]
            if len(paths) == 1:
                if len(paths[0]) < 2:
                    raise PresentationError(f"generator {paths[0]} has length < 2")
                rels.append(Relation.monomial(paths[0]))
            else:
                rels.append(Relation.binomial(*paths))
        except PresentationError as exc:
            raise ParseError(str(exc), lineno, col) from None
    kinds = tuple((v, GPROJ) for v in vertices if v in gproj)
    try:
        return normalize(Presentation(quiver, tuple(rels), kinds))
    except PresentationError as exc:
        raise ParseError(str(exc)) from None


def emit_dsl(pres: Presentation) -> str:
    lines = ["vertices " + " ".join(pres.quiver.vertices)]
    tagged = [v for v in pres.quiver.vertices if pres.kind(v) == GPROJ]
    if tagged:
        lines.append("gproj " + " ".join(tagged))
    for a in pres.quiver.arrows:
        lines.append(f"arrow {a.name}: {a.source} -> {a.target}")
    for r in pres.relations:
        if r.is_monomial:
            lines.append("rel " + ".".join(r.terms[0][1].arrows))
        else:
            lines.append("rel " + " = ".join(".".join(p.arrows) for p in r.paths))
    return "\n".join(lines) + "\n"


def to_json(pres: Presentation) -> dict:
    return {
        "vertices": [{"id": v, "kind": pres.kind(v)} for v in pres.quiver.vertices],
        "arrows": [{"name": a.name, "src": a.source, "dst": a.target} for a in pres.quiver.arrows],
        "relations": [
            {"terms": [{"coeff": c, "path": list(p.arrows)} for c, p in r.terms]}
            for r in pres.relations
        ],
    }


def from_json(data: dict) -> Presentation:
    vertices = tuple(v["id"] for v in data["vertices"])
    quiver = Quiver(vertices, tuple(Arrow(a["name"], a["src"], a["dst"]) for a in data["arrows"]))
    rels = []
    for r in data["relations"]:
        terms = tuple((int(t["coeff"]), quiver.make_path(t["path"])) for t in r["terms"])
        rels.append(Relation(terms))
    kinds = tuple((v["id"], v["kind"]) for v in data["vertices"] if v.get("kind", ORIGINAL) != ORIGINAL)
    return Presentation(quiver, tuple(rels), kinds)


def to_dot(pres: Presentation, name: str = "Q") -> str:
    def q(s):
        return '"' + s.replace('"', r'\"') + '"'

    lines = [f"digraph {name} {{"]
    for v in pres.quiver.vertices:
        if pres.kind(v) == GPROJ:
            lines.append(f"  {q(v)} [shape=box, style=filled, fillcolor=lightsalmon];")
        else:
            lines.append(f"  {q(v)} [shape=circle];")
    for a in pres.quiver.arrows:
        lines.append(f"  {q(a.source)} -> {q(a.target)} [label={q(a.name)}];")
    for r in pres.relations:
        lines.append(f"  // rel {r}")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- structure ----------------------------------------------------------------

@dataclass
class StructureReport:
    is_monomial: bool
    is_string: bool
    is_gentle: bool
    violations: list[str] = field(default_factory=list)

    def to_json(self):
        return {"is_monomial": self.is_monomial, "is_string": self.is_string,
                "is_gentle": self.is_gentle, "violations": list(self.violations)}


def classify(pres: Presentation) -> StructureReport:
    """Check the string-quiver and gentle-quiver axioms, listing every failure."""
    q = pres.quiver
    string_v: list[str] = []
    gentle_v: list[str] = []
    for v in q.vertices:
        if len(q.outgoing[v]) > 2:
            string_v.append(f"vertex {v} has {len(q.outgoing[v])} outgoing arrows")
        if len(q.incoming[v]) > 2:
            string_v.append(f"vertex {v} has {len(q.incoming[v])} incoming arrows")
    monomial = pres.is_monomial
    if not monomial:
        for r in pres.relations:
            if not r.is_monomial:
                string_v.append(f"relation {r} is not monomial")
    else:
        gens = set(pres.generators)
        for a in q.arrows:
            after = [b.name for b in q.outgoing[a.target]]
            before = [b.name for b in q.incoming[a.source]]
            free_after = [b for b in after if (a.name, b) not in gens]
            free_before = [b for b in before if (b, a.name) not in gens]
            if len(free_after) > 1:
                string_v.append(f"arrow {a.name} has {len(free_after)} nonzero continuations: "
                                + ", ".join(free_after))
            if len(free_before) > 1:
                string_v.append(f"arrow {a.name} has {len(free_before)} nonzero predecessors: "
                                + ", ".join(free_before))
            zero_after = [b for b in after if (a.name, b) in gens]
            zero_before = [b for b in before if (b, a.name) in gens]
            if len(zero_after) > 1:
                gentle_v.append(f"arrow {a.name} has {len(zero_after)} zero continuations: "
                                + ", ".join(zero_after))
            if len(zero_before) > 1:
                gentle_v.append(f"arrow {a.name} has {len(zero_before)} zero predecessors: "
                                + ", ".join(zero_before))
        for g in pres.generators:
            if len(g) != 2:
                gentle_v.append(f"generator {path_label(g)} has length {len(g)}")
        try:
            pres.nonzero_paths()
        except NonAdmissibleError as exc:
            string_v.append(str(exc))
    is_string = not string_v
    is_gentle = is_string and not gentle_v
    return StructureReport(monomial, is_string, is_gentle, string_v + gentle_v)


# -- overlap ------------------------------------------------------------------

@dataclass(frozen=True)
class Overlap:
    meet: Path
    join: Path
    offset: int


def overlap_offsets(p: Sequence[str], q: Sequence[str]) -> list[int]:
    l, m = len(p), len(q)
    return [i for i in range(l) if l <= i + m and tuple(p[i:]) == tuple(q[:l - i])]


def overlap(pres: Presentation, p: Path, q: Path, offset: int | None = None) -> Overlap:
    """Meet and join of ``p = a_1..a_l`` and ``q = a_{i+1}..a_{i+m}`` with ``i < l <= i+m``."""
    if p.is_trivial or q.is_trivial:
        raise OverlapError("overlap needs nontrivial paths")
    found = overlap_offsets(p.arrows, q.arrows)
    if offset is None:
        if not found:
            raise OverlapError(f"{q} does not overlap the end of {p}")
        if len(found) > 1:
            raise OverlapError(f"ambiguous overlap of {p} and {q} at offsets {found}", found)
        offset = found[0]
    elif offset not in found:
        raise OverlapError(f"{q} does not align with {p} at offset {offset}", found)
    meet = pres.quiver.make_path(p.arrows[offset:])
    join = pres.quiver.make_path(p.arrows + q.arrows[len(p) - offset:])
    return Overlap(meet, join, offset)


# -- relation cycles ----------------------------------------------------------

@dataclass(frozen=True)
class PositionedGenerator:
    path: Path
    offset: int
    wraps: int

    def span(self, n: int) -> tuple[int, int]:
        return self.offset, self.offset + len(self.path)


@dataclass(frozen=True)
class RelationCycle:
    cycle: Path
    positioned: tuple[PositionedGenerator, ...]
    chain: tuple[int, ...]
    gentle: bool

    @property
    def length(self):
        return len(self.cycle)

    def reads(self, arrows: Sequence[str], offset: int) -> bool:
        n = len(self.cycle)
        c = self.cycle.arrows
        return all(c[(offset + k) % n] == a for k, a in enumerate(arrows))

    def offsets_of(self, arrows: Sequence[str]) -> list[int]:
        return [o for o in range(len(self.cycle)) if self.reads(arrows, o)]

    def describe(self) -> str:
        gens = ", ".join(f"{g.path}@{g.offset}" for g in self.positioned)
        kind = "gentle" if self.gentle else "non-gentle"
        return f"{self.cycle} ({kind}; {gens})"


def oriented_cycles(q: Quiver) -> list[tuple[str, ...]]:
    """Closed oriented walks with pairwise distinct arrows, each rotated to start at its
    lowest-indexed arrow."""
    idx = q.arrow_index
    out = []
    for start in q.arrows:
        k0 = idx[start.name]
        stack = [(start.target, (start.name,))]
        while stack:
            v, walk = stack.pop()
            if v == start.source:
                out.append(walk)
            for b in reversed(q.outgoing[v]):
                if idx[b.name] > k0 and b.name not in walk:
                    stack.append((b.target, walk + (b.name,)))
    out.sort(key=lambda w: (len(w), [idx[a] for a in w]))
    return out


def _chain_graph(cyc_len: int, gens: list[PositionedGenerator]):
    """Edges i -> j when generator j starts strictly inside generator i (sharing at least
    one arrow) and ends no earlier; the weight is the forward advance along the unrolled
    cycle."""
    edges: dict[int, list[tuple[int, int]]] = {i: [] for i in range(len(gens))}
    for i, g in enumerate(gens):
        a, b = g.offset, g.offset + len(g.path)
        for j, h in enumerate(gens):
            s = h.offset
            while s <= a:
                s += cyc_len
            while s < b:
                if s + len(h.path) >= b:
                    edges[i].append((j, s - a))
                s += cyc_len
    return edges


def _find_cycle(edges: dict[int, list[tuple[int, int]]]) -> list[int] | None:
    color = {v: 0 for v in edges}
    parent: dict[int, int] = {}
    for root in sorted(edges):
        if color[root]:
            continue
        stack = [(root, iter(edges[root]))]
        color[root] = 1
        while stack:
            v, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[v] = 2
                stack.pop()
                continue
            w = nxt[0]
            if color[w] == 0:
                color[w] = 1
                parent[w] = v
                stack.append((w, iter(edges[w])))
            elif color[w] == 1:
                cyc = [w]
                x = v
                while x != w:
                    cyc.append(x)
                    x = parent[x]
                return cyc[::-1] if len(cyc) > 1 else cyc
    return None


def _on_some_cycle(edges) -> set[int]:
    """Vertices lying on a directed cycle (nontrivial SCC or self-loop)."""
    import networkx as nx

    g = nx.DiGraph()
    g.add_nodes_from(edges)
    for i, outs in edges.items():
        for j, _ in outs:
            g.add_edge(i, j)
    keep = set()
    for comp in nx.strongly_connected_components(g):
        if len(comp) > 1 or any(g.has_edge(v, v) for v in comp):
            keep |= comp
    return keep


def relation_cycles(pres: Presentation) -> list[RelationCycle]:
    """Oriented arrow-distinct cycles covered by a closed chain of overlapping generators."""
    if not pres.is_monomial:
        raise NotMonomialError("relation cycles are defined for monomial presentations")
    q = pres.quiver
    found = []
    for walk in oriented_cycles(q):
        n = len(walk)
        cyc = q.make_path(walk)
        probe = RelationCycle(cyc, (), (), False)
        placed = []
        for g in pres.generators:
            for o in probe.offsets_of(g):
                placed.append(PositionedGenerator(q.make_path(g), o, (o + len(g)) // n))
        if not placed:
            continue
        edges = _chain_graph(n, placed)
        chain = _find_cycle(edges)
        if chain is None:
            continue
        keep = sorted(_on_some_cycle(edges))
        remap = {old: new for new, old in enumerate(keep)}
        positioned = tuple(placed[i] for i in keep)
        gentle = all(len(g.path) == 2 for g in positioned)
        found.append(RelationCycle(cyc, positioned, tuple(remap[i] for i in chain), gentle))
    return found


def rotations_equal(a: Sequence, b: Sequence) -> bool:
    if len(a) != len(b):
        return False
    a, b = tuple(a), tuple(b)
    return any(a[i:] + a[:i] == b for i in range(len(a))) or (not a and not b)
