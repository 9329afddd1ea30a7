"""Presentation of the Cohen-Macaulay Auslander algebra of a string algebra.

Every arrow ``i -> j`` of the new quiver stands for a map ``G_j -> G_i`` of
Gorenstein-projective modules sending the generator ``g_j`` to ``g_i * w`` for a
path ``w`` of the original algebra (its label). A path of the new quiver from
``i`` therefore evaluates to ``g_i * W`` where ``W`` concatenates the labels,
and two parallel paths agree as maps iff these values agree. Relations are
read off this evaluation.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field

from .core import (GPROJ, ORIGINAL, Arrow, Path, Presentation, Quiver, Relation,
                   classify, contains_subpath)
from .errors import GConditionError, NotMonomialError, NotStringAlgebraError
from .gproj import GProjReport, perfect_paths
from .gentle import satisfies_g_condition

R1, R2, R3 = "R1", "R2", "R3"


def name_label(arrows) -> str:
    """Label usable inside identifiers: concatenation, or '*' joins for long names."""
    if all(len(a) == 1 for a in arrows):
        return "".join(arrows)
    return "*".join(arrows)


@dataclass
class CmaPresentation:
    presentation: Presentation
    base: Presentation
    vertex_map: dict[str, str]
    generators: dict[str, Path]
    labels: dict[str, Path]
    tags: dict[tuple, str] = field(default_factory=dict)
    diagnostics: list[str] = field(default_factory=list)

    @property
    def quiver(self) -> Quiver:
        return self.presentation.quiver

    def value(self, arrows) -> tuple[str, ...] | None:
        """g_i * W for a path of the new quiver, or None when that product vanishes.

        Trivial values come back as the empty tuple."""
        if not arrows:
            raise ValueError("value of a trivial path is its generator")
        q = self.quiver
        start = q.arrow[arrows[0]].source
        out = self.generators[start].arrows
        for a in arrows:
            out = out + self.labels[a].arrows
        if self.base.is_zero(out):
            return None
        return out

    def is_string_algebra(self) -> bool:
        return classify(self.presentation).is_string

    def relations_by_tag(self, tag: str) -> list[Relation]:
        return [r for r in self.presentation.relations if self.tags.get(r.key()) == tag]

    def semantic_failures(self) -> list[str]:
        """Emitted generators that do not evaluate to zero (monomial) or to equal values."""
        bad = []
        for r in self.presentation.relations:
            if r.is_monomial:
                if self.value(r.terms[0][1].arrows) is not None:
                    bad.append(str(r))
            else:
                v1, v2 = (self.value(p.arrows) for p in r.paths)
                if v1 is None or v1 != v2:
                    bad.append(str(r))
        return bad

    def to_json(self):
        from .core import to_json
        d = to_json(self.presentation)
        d["vertex_map"] = dict(self.vertex_map)
        d["arrow_labels"] = {a: str(p) for a, p in self.labels.items()}
        d["relation_tags"] = [self.tags.get(r.key()) for r in self.presentation.relations]
        return d


def _fresh(name: str, taken: set[str]) -> str:
    while name in taken:
        name += "'"
    taken.add(name)
    return name


def _layout(pres: Presentation, report: GProjReport):
    """Vertices, arrows, generators and labels of the new quiver."""
    q = pres.quiver
    perfect = report.perfect_paths
    length1 = {p.arrows[0] for p in perfect if len(p) == 1}
    vnames = set(q.vertices)
    pvertex: dict[tuple[str, ...], str] = {}
    for p in perfect:
        pvertex[p.arrows] = _fresh(f"v({name_label(p.arrows)})", vnames)
    vertices = tuple(q.vertices) + tuple(pvertex[p.arrows] for p in perfect)
    generators = {v: q.trivial(v) for v in q.vertices}
    for p in perfect:
        generators[pvertex[p.arrows]] = p

    anames = {a.name for a in q.arrows}
    arrows: list[Arrow] = []
    labels: dict[str, Path] = {}
    split: dict[str, tuple[str, str]] = {}
    for a in q.arrows:
        if a.name in length1:
            mid = pvertex[(a.name,)]
            minus = _fresh(a.name + "-", anames)
            plus = _fresh(a.name + "+", anames)
            arrows.append(Arrow(minus, a.source, mid))
            arrows.append(Arrow(plus, mid, a.target))
            labels[minus] = q.make_path((a.name,))
            labels[plus] = q.trivial(a.target)
            split[a.name] = (minus, plus)
        else:
            arrows.append(a)
            labels[a.name] = q.make_path((a.name,))

    def vlabel(v):
        return name_label(generators[v].arrows) if generators[v].arrows else v

    for p in perfect:
        if len(p) < 2:
            continue
        vp = pvertex[p.arrows]
        shorter = [r for r in perfect if len(r) < len(p)]
        prefixes = [r for r in shorter if p.arrows[:len(r)] == r.arrows]
        suffixes = [r for r in shorter if p.arrows[len(p) - len(r):] == r.arrows]
        if prefixes:
            r = max(prefixes, key=len)
            src, w = pvertex[r.arrows], q.make_path(p.arrows[len(r):])
        else:
            src, w = p.source, p
        name = _fresh(f"a_{{{vlabel(src)},{vlabel(vp)}}}", anames)
        arrows.append(Arrow(name, src, vp))
        labels[name] = w
        if suffixes:
            dst = pvertex[max(suffixes, key=len).arrows]
        else:
            dst = p.target
        name = _fresh(f"a_{{{vlabel(vp)},{vlabel(dst)}}}", anames)
        arrows.append(Arrow(name, vp, dst))
        labels[name] = q.trivial(p.target)
    vertex_map = {f"P({v})": v for v in q.vertices}
    vertex_map.update({f"{name_label(p.arrows)}A": pvertex[p.arrows] for p in perfect})
    return Quiver(vertices, tuple(arrows)), generators, labels, split, pvertex


def _starify(gen: tuple[str, ...], split: dict[str, tuple[str, str]]) -> tuple[str, ...]:
    out: list[str] = []
    t = len(gen)
    for i, a in enumerate(gen):
        if a not in split:
            out.append(a)
        elif i == 0:
            out.append(split[a][1])
        elif i == t - 1:
            out.append(split[a][0])
        else:
            out.extend(split[a])
    return tuple(out)


class _Engine:
    """Enumerates nonzero-valued paths and derives binomial and zero generators."""

    def __init__(self, cma: CmaPresentation):
        self.cma = cma
        self.q = cma.quiver
        self.vals: dict[tuple[str, ...], tuple[str, ...]] = {}
        self.by_length: list[list[tuple[str, ...]]] = [[]]
        self._enumerate()

    def _enumerate(self):
        layer = []
        for a in self.q.arrows:
            v = self.cma.value((a.name,))
            if v is not None:
                self.vals[(a.name,)] = v
                layer.append((a.name,))
        while layer:
            self.by_length.append(layer)
            nxt = []
            for p in layer:
                for b in self.q.outgoing[self.q.arrow[p[-1]].target]:
                    cand = p + (b.name,)
                    if cand[1:] not in self.vals:
                        continue
                    val = self.vals[p] + self.cma.labels[b.name].arrows
                    if not self.cma.base.is_zero(val):
                        self.vals[cand] = val
                        nxt.append(cand)
            layer = nxt

    @property
    def max_length(self):
        return len(self.by_length) - 1

    def endpoints(self, p):
        return self.q.arrow[p[0]].source, self.q.arrow[p[-1]].target

    @staticmethod
    def moves(path, binomials):
        for u, v in binomials:
            for x, y in ((u, v), (v, u)):
                m = len(x)
                for i in range(len(path) - m + 1):
                    if path[i:i + m] == x:
                        yield path[:i] + y + path[i + m:]

    def binomials(self) -> list[tuple[tuple[str, ...], tuple[str, ...]]]:
        """Binomials making the congruence on nonzero-valued paths exact, shortest first."""
        key = self._key
        found: list[tuple[tuple[str, ...], tuple[str, ...]]] = []
        for L in range(1, self.max_length + 1):
            pool = [p for k in range(1, L + 1) for p in self.by_length[k]]
            groups: dict[tuple, list] = defaultdict(list)
            for p in pool:
                groups[self.endpoints(p) + (self.vals[p],)].append(p)
            groups = {g: ps for g, ps in groups.items()
                      if len(ps) > 1 and any(len(p) == L for p in ps)}
            if not groups:
                continue
            members = {p for ps in groups.values() for p in ps}
            parent = {p: p for p in members}

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            for p in members:
                for r in self.moves(p, found):
                    if r in parent:
                        a, b = find(p), find(r)
                        if a != b:
                            parent[max(a, b, key=key)] = min(a, b, key=key)
            for g in sorted(groups, key=lambda g: key(min(groups[g], key=key))):
                comps = sorted({find(p) for p in groups[g]}, key=key)
                for other in comps[1:]:
                    found.append((comps[0], other))
                    parent[find(other)] = find(comps[0])
        return found

    def _key(self, p):
        idx = self.q.arrow_index
        return (len(p), tuple(idx[a] for a in p))

    def minimal_zero_paths(self) -> list[tuple[str, ...]]:
        out = []
        for L in range(1, self.max_length + 1):
            for p in self.by_length[L]:
                for b in self.q.outgoing[self.q.arrow[p[-1]].target]:
                    cand = p + (b.name,)
                    if cand[1:] in self.vals and cand not in self.vals:
                        out.append(cand)
        for a in self.q.arrows:
            if (a.name,) not in self.vals:
                out.append((a.name,))
        return sorted(set(out), key=self._key)

    def derivably_zero(self, path, monomials, binomials, cap) -> bool:
        """Whether binomial moves carry ``path`` onto a path containing a known zero."""
        seen = {path}
        todo = deque([path])
        while todo:
            p = todo.popleft()
            if any(contains_subpath(p, m) for m in monomials):
                return True
            for r in self.moves(p, binomials):
                if r not in seen and len(r) <= cap:
                    seen.add(r)
                    todo.append(r)
        return False


def build_cma(pres: Presentation) -> CmaPresentation:
    """Quiver with relations for the endomorphism algebra of all indecomposable
    Gorenstein-projective modules."""
    if not pres.is_monomial:
        raise NotMonomialError("build_cma expects a monomial presentation")
    rep = classify(pres)
    if not rep.is_string:
        raise NotStringAlgebraError("not a string algebra: " + "; ".join(rep.violations))
    report = perfect_paths(pres)
    quiver, generators, labels, split, pvertex = _layout(pres, report)
    kinds = tuple((v, GPROJ) for v in quiver.vertices[len(pres.quiver.vertices):])
    shell = Presentation(quiver, (), kinds)
    cma = CmaPresentation(shell, pres, {}, generators, labels)
    if report.cm_free:
        cma.presentation = Presentation(quiver, pres.relations, kinds)
        cma.vertex_map = {f"P({v})": v for v in pres.quiver.vertices}
        for r in pres.relations:
            cma.tags[r.key()] = R1
        return cma

    engine = _Engine(cma)
    r1 = [_starify(g, split) for g in pres.generators]
    binomials = engine.binomials()
    cap = engine.max_length + max(len(m) for m in r1) + 2
    zeros = list(r1)
    r3 = []
    for p in engine.minimal_zero_paths():
        if engine.derivably_zero(p, zeros, binomials, cap):
            continue
        r3.append(p)
        zeros.append(p)
    monos = [m for m in r1 if not any(o != m and contains_subpath(m, o) for o in r3)]
    dropped = [m for m in r1 if m not in monos]
    rels: list[Relation] = []
    tags: dict[tuple, str] = {}
    for m, tag in [(m, R1) for m in monos] + [(m, R3) for m in r3]:
        r = Relation.monomial(quiver.make_path(m))
        rels.append(r)
        tags[r.key()] = tag
    for u, v in binomials:
        r = Relation.binomial(quiver.make_path(u), quiver.make_path(v))
        rels.append(r)
        tags[r.key()] = R2
    order = {R1: 0, R2: 1, R3: 2}
    rels.sort(key=lambda r: order[tags[r.key()]])
    cma.presentation = Presentation(quiver, tuple(rels), kinds)
    cma.tags = tags
    cma.vertex_map = _vertex_map(pres, report, pvertex)
    for m in dropped:
        cma.diagnostics.append(f"starified generator {'.'.join(m)} contains a shorter zero relation")
    return cma


def _vertex_map(pres, report, pvertex):
    out = {f"P({v})": v for v in pres.quiver.vertices}
    for p in report.perfect_paths:
        out[f"{p}A"] = pvertex[p.arrows]
    return out


def build_cma_split(pres: Presentation) -> CmaPresentation:
    """Arrow-splitting construction for inputs satisfying the G-condition."""
    rep = classify(pres)
    if not rep.is_string:
        raise NotStringAlgebraError("not a string algebra: " + "; ".join(rep.violations))
    g = satisfies_g_condition(pres)
    if not g.ok:
        raise GConditionError(f"G-condition fails on relation cycle {g.witness.describe()}",
                              g.witness)
    report = perfect_paths(pres)
    long = [p for p in report.perfect_paths if len(p) > 1]
    if long:
        raise GConditionError(f"perfect path {long[0]} has length {len(long[0])}")
    quiver, generators, labels, split, pvertex = _layout(pres, report)
    kinds = tuple((v, GPROJ) for v in quiver.vertices[len(pres.quiver.vertices):])
    rels = tuple(Relation.monomial(quiver.make_path(_starify(gen, split)))
                 for gen in pres.generators)
    out = CmaPresentation(Presentation(quiver, rels, kinds), pres,
                          _vertex_map(pres, report, pvertex), generators, labels)
    out.tags = {r.key(): R1 for r in rels}
    return out
