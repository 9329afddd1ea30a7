"""Strings, bands, the walk automaton and string/band modules."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import networkx as nx

from .core import Path, Presentation, classify, path_label
from .errors import BandError, NotStringAlgebraError, WordError, ZeroPathError


@dataclass(frozen=True, slots=True, order=True)
class Letter:
    inverse: bool
    name: str

    def __str__(self):
        return f"{self.name}^-1" if self.inverse else self.name

    @property
    def key(self):
        return (1 if self.inverse else 0, self.name)

    def inv(self) -> "Letter":
        return Letter(not self.inverse, self.name)


def direct(name: str) -> Letter:
    return Letter(False, name)


def inverse(name: str) -> Letter:
    return Letter(True, name)


@dataclass(frozen=True)
class Word:
    """A walk of arrows and formal inverses, or the trivial walk at ``vertex``."""

    letters: tuple[Letter, ...] = ()
    vertex: str | None = None

    def __len__(self):
        return len(self.letters)

    @property
    def is_trivial(self):
        return not self.letters

    def inverse(self) -> "Word":
        if not self.letters:
            return self
        return Word(tuple(l.inv() for l in reversed(self.letters)))

    def key(self):
        return tuple(l.key for l in self.letters)

    def __str__(self):
        if not self.letters:
            return f"e_{self.vertex}"
        return ".".join(str(l) for l in self.letters)

    @property
    def is_direct(self):
        return bool(self.letters) and not any(l.inverse for l in self.letters)

    @property
    def is_mixed(self):
        return len({l.inverse for l in self.letters}) == 2


def parse_word(text: str) -> Word:
    """Read ``"a.b^-1.c"`` or ``"e_<v>"``."""
    text = text.strip()
    if text.startswith("e_"):
        return Word((), text[2:])
    letters = []
    for tok in text.split("."):
        if tok.endswith("^-1"):
            letters.append(inverse(tok[:-3]))
        elif tok:
            letters.append(direct(tok))
        else:
            raise WordError(f"empty letter in {text!r}")
    return Word(tuple(letters))


def word_from_path(p: Path) -> Word:
    if p.is_trivial:
        return Word((), p.source)
    return Word(tuple(direct(a) for a in p.arrows))


def letter_source(pres: Presentation, l: Letter) -> str:
    a = pres.quiver.arrow[l.name]
    return a.target if l.inverse else a.source


def letter_target(pres: Presentation, l: Letter) -> str:
    a = pres.quiver.arrow[l.name]
    return a.source if l.inverse else a.target


def word_source(pres: Presentation, w: Word) -> str:
    return w.vertex if w.is_trivial else letter_source(pres, w.letters[0])


def word_target(pres: Presentation, w: Word) -> str:
    return w.vertex if w.is_trivial else letter_target(pres, w.letters[-1])


def word_points(pres: Presentation, w: Word) -> list[str]:
    """Vertices visited by the walk, ``len(w) + 1`` of them."""
    if w.is_trivial:
        return [w.vertex]
    return [letter_source(pres, w.letters[0])] + [letter_target(pres, l) for l in w.letters]


def _runs(letters: Sequence[Letter]):
    """Maximal one-direction runs as underlying paths (inverse runs reversed)."""
    run: list[Letter] = []
    for l in letters:
        if run and run[-1].inverse != l.inverse:
            yield run
            run = []
        run.append(l)
    if run:
        yield run


def _run_path(run: Sequence[Letter]) -> tuple[str, ...]:
    names = tuple(l.name for l in run)
    return names[::-1] if run[0].inverse else names


def word_violation(pres: Presentation, w: Word) -> str | None:
    """First failed string axiom of ``w``, or None when ``w`` is a string."""
    if w.is_trivial:
        if w.vertex not in pres.quiver.vertex_index:
            return f"unknown vertex {w.vertex!r}"
        return None
    for l in w.letters:
        if l.name not in pres.quiver.arrow:
            return f"unknown arrow {l.name!r}"
    for x, y in zip(w.letters, w.letters[1:]):
        if letter_target(pres, x) != letter_source(pres, y):
            return f"letters {x} and {y} do not compose"
        if y == x.inv():
            return f"letters {x} and {y} cancel"
    for run in _runs(w.letters):
        p = _run_path(run)
        if pres.is_zero(p):
            return f"contains generator {_first_generator(pres, p)}"
    return None


def _first_generator(pres: Presentation, p: tuple[str, ...]) -> str:
    for i in range(len(p)):
        for j in range(i + 2, len(p) + 1):
            if p[i:j] in pres._generator_set:
                return path_label(p[i:j])
    return path_label(p)


def is_string(pres: Presentation, w: Word) -> bool:
    return word_violation(pres, w) is None


def canonical_string(w: Word) -> Word:
    if w.is_trivial:
        return w
    inv = w.inverse()
    return min(w, inv, key=Word.key)


def canonical_band(w: Word) -> Word:
    best = None
    for cand in (w, w.inverse()):
        ls = cand.letters
        for i in range(len(ls)):
            rot = Word(ls[i:] + ls[:i])
            if best is None or rot.key() < best.key():
                best = rot
    return best


def primitive_root(w: Word) -> Word:
    ls = w.letters
    n = len(ls)
    for d in range(1, n + 1):
        if n % d == 0 and ls[:d] * (n // d) == ls:
            return Word(ls[:d])
    return w


# -- automaton ---------------------------------------------------------------

State = tuple[Letter, tuple[str, ...]]


class WalkAutomaton:
    """States are (last letter, tail of the current one-direction run); transitions are
    the letters that keep the walk a string. Run tails are truncated to one less than the
    longest generator, which is all the memory the relation check needs."""

    def __init__(self, pres: Presentation):
        self.pres = pres
        self.memory = max((len(g) for g in pres.generators), default=1) - 1
        q = pres.quiver
        self.letters_from: dict[str, list[Letter]] = {v: [] for v in q.vertices}
        for a in q.arrows:
            self.letters_from[a.source].append(direct(a.name))
            self.letters_from[a.target].append(inverse(a.name))
        for v in self.letters_from:
            self.letters_from[v].sort(key=lambda l: l.key)

    def start(self, l: Letter) -> State:
        return (l, self._trim((l.name,)))

    def _trim(self, run: tuple[str, ...]) -> tuple[str, ...]:
        return run[-self.memory:] if self.memory > 0 else ()

    def step(self, state: State, l: Letter) -> State | None:
        last, tail = state
        if l == last.inv():
            return None
        if letter_target(self.pres, last) != letter_source(self.pres, l):
            return None
        if l.inverse != last.inverse:
            return (l, self._trim((l.name,)))
        run = tail + (l.name,)
        path = run[::-1] if l.inverse else run
        if self.pres.is_zero(path):
            return None
        return (l, self._trim(run))

    def successors(self, state: State):
        v = letter_target(self.pres, state[0])
        for l in self.letters_from[v]:
            nxt = self.step(state, l)
            if nxt is not None:
                yield l, nxt

    def graph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        seen = set()
        todo = [self.start(l) for ls in self.letters_from.values() for l in ls]
        for s in todo:
            g.add_node(s)
        while todo:
            s = todo.pop()
            if s in seen:
                continue
            seen.add(s)
            for l, t in self.successors(s):
                g.add_edge(s, t, letter=l)
                if t not in seen:
                    todo.append(t)
        return g

    def accepts(self, w: Word) -> bool:
        if w.is_trivial:
            return w.vertex in self.pres.quiver.vertex_index
        if any(l.name not in self.pres.quiver.arrow for l in w.letters):
            return False
        state = self.start(w.letters[0])
        for l in w.letters[1:]:
            state = self.step(state, l)
            if state is None:
                return False
        return True


def _require_string_algebra(pres: Presentation):
    rep = classify(pres)
    if not rep.is_string:
        raise NotStringAlgebraError("not a string algebra: " + "; ".join(rep.violations))


def iter_strings(pres: Presentation, max_len: int):
    """Every string (both orientations) of length 1..max_len."""
    aut = WalkAutomaton(pres)
    stack = []
    if max_len < 1:
        return
    for v in pres.quiver.vertices:
        for l in aut.letters_from[v]:
            stack.append(((l,), aut.start(l)))
    while stack:
        letters, state = stack.pop()
        yield Word(letters)
        if len(letters) < max_len:
            for l, nxt in aut.successors(state):
                stack.append((letters + (l,), nxt))


def string_sort_key(pres: Presentation, w: Word):
    if w.is_trivial:
        return (0, (pres.quiver.vertex_index[w.vertex],))
    return (len(w), w.key())


def enumerate_strings(pres: Presentation, max_len: int) -> list[Word]:
    """One canonical string per class ``w ~ w^-1``, trivial words included."""
    _require_string_algebra(pres)
    found = {Word((), v) for v in pres.quiver.vertices}
    for w in iter_strings(pres, max_len):
        found.add(canonical_string(w))
    return sorted(found, key=lambda w: string_sort_key(pres, w))


@dataclass
class RepTypeReport:
    finite: bool
    witness: Word | None = None
    witness_kind: str | None = None

    def to_json(self):
        return {"finite": self.finite,
                "witness": None if self.witness is None else str(self.witness),
                "witness_kind": self.witness_kind}


def is_representation_finite(pres: Presentation) -> RepTypeReport:
    """Finite iff the walk automaton is acyclic; otherwise report a cyclic witness."""
    _require_string_algebra(pres)
    g = WalkAutomaton(pres).graph()
    if nx.is_directed_acyclic_graph(g):
        return RepTypeReport(True)
    best = None
    for k, cyc in enumerate(nx.simple_cycles(g)):
        letters = tuple(g.edges[cyc[i], cyc[(i + 1) % len(cyc)]]["letter"]
                        for i in range(len(cyc)))
        w = canonical_band(primitive_root(Word(letters)))
        rank = (0 if w.is_mixed else 1, len(w), w.key())
        if best is None or rank < best[0]:
            best = (rank, w)
        if k >= 2000:
            break
    w = best[1]
    kind = "band" if w.is_mixed else "unbounded direct walk"
    return RepTypeReport(False, w, kind)


# -- representations -----------------------------------------------------------

@dataclass
class Representation:
    """Dimensions per vertex and a ``dim(t) x dim(s)`` matrix per arrow (column action)."""

    dims: dict[str, int]
    matrices: dict[str, list[list[Fraction]]]

    @staticmethod
    def zero(pres: Presentation, dims: dict[str, int]) -> "Representation":
        full = {v: dims.get(v, 0) for v in pres.quiver.vertices}
        mats = {a.name: [[Fraction(0)] * full[a.source] for _ in range(full[a.target])]
                for a in pres.quiver.arrows}
        return Representation(full, mats)

    def dimvec(self, pres: Presentation) -> tuple[int, ...]:
        return tuple(self.dims[v] for v in pres.quiver.vertices)

    @property
    def total_dim(self):
        return sum(self.dims.values())

    def path_matrix(self, pres: Presentation, arrows: Sequence[str]):
        """Matrix of the path acting on the representation (first arrow applied first)."""
        if not arrows:
            raise ValueError("trivial path")
        m = self.matrices[arrows[0]]
        for a in arrows[1:]:
            m = _matmul(self.matrices[a], m)
        return m

    def relation_failures(self, pres: Presentation) -> list[str]:
        out = []
        for r in pres.relations:
            mats = [(c, self.path_matrix(pres, p.arrows)) for c, p in r.terms]
            if r.is_monomial:
                if any(x != 0 for row in mats[0][1] for x in row):
                    out.append(str(r))
            elif mats[0][1] != mats[1][1]:
                out.append(str(r))
        return out

    def to_json(self):
        return {"dims": dict(self.dims),
                "matrices": {a: [[_frac_str(x) for x in row] for row in m]
                             for a, m in self.matrices.items()}}

    @staticmethod
    def from_json(data) -> "Representation":
        return Representation(
            {k: int(v) for k, v in data["dims"].items()},
            {a: [[Fraction(x) for x in row] for row in m] for a, m in data["matrices"].items()})


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _matmul(a, b):
    if not a or not b or not b[0]:
        cols = len(b[0]) if b else 0
        return [[Fraction(0)] * cols for _ in range(len(a))]
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def _positions(pres: Presentation, points: Sequence[str]):
    """Index of each walk point inside its vertex's basis."""
    count: dict[str, int] = {}
    pos = []
    for v in points:
        pos.append(count.get(v, 0))
        count[v] = count.get(v, 0) + 1
    return pos, count


def string_module(pres: Presentation, w: Word) -> Representation:
    why = word_violation(pres, w)
    if why:
        raise WordError(f"{w} is not a string: {why}")
    points = word_points(pres, w)
    pos, count = _positions(pres, points)
    rep = Representation.zero(pres, count)
    for i, l in enumerate(w.letters):
        src, dst = (i + 1, i) if l.inverse else (i, i + 1)
        rep.matrices[l.name][pos[dst]][pos[src]] = Fraction(1)
    return rep


def band_violation(pres: Presentation, b: Word) -> str | None:
    if b.is_trivial:
        return "a band is nontrivial"
    why = word_violation(pres, b)
    if why:
        return f"b is not a string: {why}"
    if letter_target(pres, b.letters[-1]) != letter_source(pres, b.letters[0]):
        return "b does not close up"
    why = word_violation(pres, Word(b.letters * 2))
    if why:
        return f"b² {why}"
    if primitive_root(b) != b:
        return f"b is a proper power of {primitive_root(b)}"
    if not b.is_mixed:
        return "b has letters of one direction only"
    return None


def is_band(pres: Presentation, b: Word) -> bool:
    return band_violation(pres, b) is None


def jordan_block(eigenvalue, size: int) -> list[list[Fraction]]:
    lam = Fraction(eigenvalue)
    return [[lam if i == j else Fraction(1) if j == i + 1 else Fraction(0)
             for j in range(size)] for i in range(size)]


def band_module(pres: Presentation, b: Word, eigenvalue=1, size: int = 1) -> Representation:
    """Band module with the last letter acting by the upper-triangular Jordan block."""
    why = band_violation(pres, b)
    if why:
        raise BandError(why)
    if Fraction(eigenvalue) == 0:
        raise BandError("eigenvalue must be nonzero")
    if size < 1:
        raise BandError("size must be positive")
    n = len(b)
    points = word_points(pres, b)[:n]
    pos, count = _positions(pres, points)
    rep = Representation.zero(pres, {v: c * size for v, c in count.items()})
    jb = jordan_block(eigenvalue, size)
    for i, l in enumerate(b.letters):
        block = jb if i == n - 1 else _identity(size)
        a, c = i, (i + 1) % n
        src, dst = (c, a) if l.inverse else (a, c)
        m = rep.matrices[l.name]
        for r in range(size):
            for k in range(size):
                m[pos[dst] * size + r][pos[src] * size + k] = block[r][k]
    return rep


def _identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def cyclic_module_string(pres: Presentation, p: Path) -> Word:
    """The maximal direct path q from t(p) with pq nonzero; M(q) is the right ideal pA."""
    if p.is_trivial:
        raise ZeroPathError("cyclic_module_string needs a nontrivial path")
    if pres.is_zero(p.arrows):
        raise ZeroPathError(f"{p} is zero in the algebra")
    q = pres.quiver
    cur = p.arrows
    tail: list[str] = []
    while True:
        v = q.arrow[cur[-1]].target
        nxt = [b.name for b in q.outgoing[v] if not pres.is_zero(cur + (b.name,))]
        if not nxt:
            break
        if len(nxt) > 1:
            raise NotStringAlgebraError(f"{path_label(cur)} continues along {nxt}")
        cur = cur + (nxt[0],)
        tail.append(nxt[0])
    if not tail:
        return Word((), p.target)
    return Word(tuple(direct(a) for a in tail))


def words_from(items: Iterable[str]) -> list[Word]:
    return [parse_word(s) for s in items]
