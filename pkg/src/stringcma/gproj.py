"""Perfect pairs, perfect path sequences and the Gorenstein-projective census."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .core import Path, Presentation, PositionedGenerator, RelationCycle, relation_cycles
from .errors import NotMonomialError, ZeroPathError
from .strings import (Word, canonical_string, cyclic_module_string, direct,
                      string_module, word_from_path)


@dataclass(frozen=True)
class PairCheck:
    ok: bool
    witness: str | None = None

    def __bool__(self):
        return self.ok


def _require_monomial(pres: Presentation):
    if not pres.is_monomial:
        raise NotMonomialError("perfect pairs are defined for monomial presentations")


def _nonzero_from(pres: Presentation, v: str) -> list[Path]:
    return [p for p in pres.nonzero_paths() if p.arrows and p.source == v]


def _nonzero_to(pres: Presentation, v: str) -> list[Path]:
    return [p for p in pres.nonzero_paths() if p.arrows and p.target == v]


def is_perfect_pair(pres: Presentation, p: Path, q: Path) -> PairCheck:
    """Check the perfect-pair conditions by quantifying over all nonzero paths.

    A nonzero w from t(p) with pw = 0 must begin with q, and a nonzero w into
    s(q) with wq = 0 must end with p.
    """
    _require_monomial(pres)
    for x in (p, q):
        if x.is_trivial:
            raise ZeroPathError("perfect pairs consist of nontrivial paths")
        if pres.is_zero(x.arrows):
            raise ZeroPathError(f"{x} is zero in the algebra")
    if p.target != q.source:
        return PairCheck(False, f"t({p}) != s({q})")
    if not pres.is_zero(p.arrows + q.arrows):
        return PairCheck(False, f"{p * q} != 0")
    for w in _nonzero_from(pres, p.target):
        if pres.is_zero(p.arrows + w.arrows) and w.arrows[:len(q)] != q.arrows:
            return PairCheck(False, f"{p}.{w} = 0 but {w} does not start with {q}")
    for w in _nonzero_to(pres, q.source):
        if pres.is_zero(w.arrows + q.arrows) and w.arrows[len(w) - len(p):] != p.arrows:
            return PairCheck(False, f"{w}.{q} = 0 but {w} does not end with {p}")
    return PairCheck(True)


def zero_continuations(pres: Presentation, p: Path) -> list[Path]:
    """Nonzero nontrivial paths w from t(p) with pw = 0, shortest first."""
    return [w for w in _nonzero_from(pres, p.target) if pres.is_zero(p.arrows + w.arrows)]


def perfect_partner(pres: Presentation, p: Path) -> Path | None:
    _require_monomial(pres)
    if p.is_trivial or pres.is_zero(p.arrows):
        return None
    return _partner_cached(pres, p)


@lru_cache(maxsize=None)
def _partner_cached(pres: Presentation, p: Path) -> Path | None:
    for w in zero_continuations(pres, p):
        if is_perfect_pair(pres, p, w):
            return w
    return None


@dataclass(frozen=True)
class GProjObject:
    """Projective(v) when ``path`` is None, otherwise the right ideal pA."""

    vertex: str | None
    path: Path | None
    word: Word
    dimvec: tuple[int, ...]

    @property
    def kind(self):
        return "projective" if self.path is None else "nontrivial"

    @property
    def label(self) -> str:
        return f"P({self.vertex})" if self.path is None else f"{self.path}A"

    def support(self, pres: Presentation) -> list[str]:
        """Composition factors listed vertex by vertex, e.g. ['5', '6', '7']."""
        out = []
        for v, n in zip(pres.quiver.vertices, self.dimvec):
            out.extend([v] * n)
        return out

    def to_json(self):
        d = {"kind": self.kind}
        if self.path is None:
            d["vertex"] = self.vertex
        else:
            d["path"] = list(self.path.arrows)
        d["string"] = str(self.word)
        d["dimvec"] = list(self.dimvec)
        return d


@dataclass
class GProjReport:
    perfect_paths: list[Path]
    orbits: list[tuple[Path, ...]]
    gproj: list[GProjObject]
    cm_free: bool
    cm_finite: bool = True

    def nontrivial(self) -> list[GProjObject]:
        return [g for g in self.gproj if g.path is not None]

    def by_length(self) -> dict[int, list[GProjObject]]:
        out: dict[int, list[GProjObject]] = {}
        for g in self.nontrivial():
            out.setdefault(len(g.path), []).append(g)
        return out

    def to_json(self):
        return {
            "perfect_paths": [str(p) for p in self.perfect_paths],
            "orbits": [[str(p) for p in o] for o in self.orbits],
            "gproj": [g.to_json() for g in self.gproj],
            "cm_free": self.cm_free,
            "cm_finite": self.cm_finite,
        }


def projective_word(pres: Presentation, v: str) -> Word:
    """String of the indecomposable projective at v: the two maximal paths from v glued."""
    branches = [Word(tuple(direct(x) for x in _max_forward(pres, a.name)))
                for a in pres.quiver.outgoing[v]]
    if not branches:
        return Word((), v)
    if len(branches) == 1:
        return canonical_string(branches[0])
    left, right = branches[0], branches[1]
    return canonical_string(Word(left.inverse().letters + right.letters))


def _dimvec(pres: Presentation, w: Word) -> tuple[int, ...]:
    return string_module(pres, w).dimvec(pres)


def perfect_paths(pres: Presentation) -> GProjReport:
    """Perfect paths are the periodic points of the partner map p -> perfect_partner(p)."""
    _require_monomial(pres)
    nz = [p for p in pres.nonzero_paths() if p.arrows]
    succ = {p: perfect_partner(pres, p) for p in nz}
    on_cycle: set[Path] = set()
    for start in nz:
        seen = []
        cur = start
        while cur is not None and cur not in seen and cur not in on_cycle:
            seen.append(cur)
            cur = succ[cur]
        if cur is not None and cur in seen:
            on_cycle.update(seen[seen.index(cur):])
    key = pres.path_key
    perfect = sorted(on_cycle, key=key)
    orbits = []
    done: set[Path] = set()
    for p in perfect:
        if p in done:
            continue
        orbit = [p]
        cur = succ[p]
        while cur != p:
            orbit.append(cur)
            cur = succ[cur]
        done.update(orbit)
        orbits.append(tuple(orbit))
    objs = []
    for v in pres.quiver.vertices:
        w = projective_word(pres, v)
        objs.append(GProjObject(v, None, w, _dimvec(pres, w)))
    for p in perfect:
        w = cyclic_module_string(pres, p)
        objs.append(GProjObject(None, p, w, _dimvec(pres, w)))
    return GProjReport(perfect, orbits, objs, cm_free=not perfect)


def gproj_objects(pres: Presentation) -> list[GProjObject]:
    return perfect_paths(pres).gproj


# -- route through perfect relation sequences ---------------------------------

@dataclass(frozen=True)
class PRS:
    relations: tuple[PositionedGenerator, ...]
    pps: tuple[Path, ...]

    def __str__(self):
        rs = [str(r.path) for r in self.relations]
        return "(" + ", ".join(rs + rs[:1]) + ")"


def _max_forward(pres: Presentation, first: str) -> tuple[str, ...]:
    p = pres.quiver.make_path((first,))
    return (first,) + tuple(l.name for l in cyclic_module_string(pres, p).letters)


def _max_backward(pres: Presentation, last: str) -> tuple[str, ...]:
    q = pres.quiver
    cur = (last,)
    while True:
        nxt = [a.name for a in q.incoming[q.arrow[cur[0]].source]
               if not pres.is_zero((a.name,) + cur)]
        if len(nxt) != 1:
            return cur
        cur = (nxt[0],) + cur


def _junction_ok(pres: Presentation, left: Path, right: Path) -> bool:
    """Off-chain arrows at the junction must not kill the neighbouring path."""
    q = pres.quiver
    v = left.target
    for b in q.outgoing[v]:
        if b.name != right.arrows[0]:
            if pres.is_zero(left.arrows + _max_forward(pres, b.name)):
                return False
    for a in q.incoming[v]:
        if a.name != left.arrows[-1]:
            if pres.is_zero(_max_backward(pres, a.name) + right.arrows):
                return False
    return True


def prs_route(pres: Presentation, cycle: RelationCycle) -> list[PRS]:
    """All perfect relation sequences on ``cycle``, one per rotation."""
    n = cycle.length
    gens = list(cycle.positioned)
    at: dict[int, int] = {}
    for i, g in enumerate(gens):
        at[g.offset % n] = i

    def read(start: int, stop: int) -> Path:
        arrows = tuple(cycle.cycle.arrows[k % n] for k in range(start, stop))
        return pres.quiver.make_path(arrows)

    def step(state):
        a, b, delta = state
        la, lb = len(gens[a].path), len(gens[b].path)
        rel = la - delta  # start of the next generator relative to b
        if not 0 < rel < lb:
            return None
        c = at.get((gens[b].offset + rel) % n)
        if c is None:
            return None
        return (b, c, rel)

    states = []
    for a, ga in enumerate(gens):
        for delta in range(1, len(ga.path)):
            b = at.get((ga.offset + delta) % n)
            if b is not None and len(gens[b].path) + delta > len(ga.path):
                states.append((a, b, delta))

    found: dict[tuple, PRS] = {}
    for s0 in states:
        seen = [s0]
        cur = step(s0)
        while cur is not None and cur not in seen:
            seen.append(cur)
            cur = step(cur)
        if cur != s0:
            continue
        # unroll: positions of r_0, r_1, ...
        pos = [0]
        for (_, _, d) in seen:
            pos.append(pos[-1] + d)
        rels = [gens[st[0]] for st in seen]
        t = len(rels)
        base = [gens[seen[0][0]].offset + pos[i] for i in range(t + 1)]
        ends = [base[i] + len(gens[seen[i][0]].path) for i in range(t)]
        # wp_i = r_i meet r_{i+1} = [start of r_{i+1}, end of r_i)
        pps = [read(base[i + 1], ends[i]) for i in range(t)]
        ok = all(not pres.is_zero(p.arrows) for p in pps)
        ok = ok and all(_junction_ok(pres, pps[i - 1], pps[i]) for i in range(t))
        ok = ok and all(pps[i - 1].arrows + pps[i].arrows == rels[i].path.arrows
                        for i in range(t))
        if not ok:
            continue
        prs = PRS(tuple(rels), tuple(pps[-1:] + pps[:-1]))
        found[tuple(s0)] = prs
    return [found[k] for k in sorted(found)]


def prs_perfect_paths(pres: Presentation) -> set[tuple[str, ...]]:
    out = set()
    for rc in relation_cycles(pres):
        for prs in prs_route(pres, rc):
            out.update(p.arrows for p in prs.pps)
    return out
