import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from randalg import random_algebra
from stringcma.errors import BandError, NotStringAlgebraError, WordError, ZeroPathError
from stringcma.fixtures import NAMES, load
from stringcma.core import build_presentation
from stringcma.oracle import rep_iso
from stringcma.strings import (Representation, WalkAutomaton, Word, band_module, canonical_band,
                               canonical_string, cyclic_module_string, enumerate_strings,
                               is_band, is_representation_finite, jordan_block, letter_source,
                               letter_target, parse_word, primitive_root, string_module,
                               word_violation, words_from)


def names(words):
    return [str(w) for w in words]


def reduced_walks(pres, max_len):
    """All composable reduced letter sequences up to ``max_len``, no relation check."""
    aut = WalkAutomaton(pres)
    out = []
    stack = [(l,) for ls in aut.letters_from.values() for l in ls]
    while stack:
        w = stack.pop()
        out.append(Word(w))
        if len(w) < max_len:
            for l in aut.letters_from[letter_target(pres, w[-1])]:
                if l != w[-1].inv():
                    stack.append(w + (l,))
    return out


def test_parse_word_roundtrip():
    assert str(parse_word("a.b^-1.c")) == "a.b^-1.c"
    assert parse_word("e_3").vertex == "3"
    with pytest.raises(WordError):
        parse_word("a..b")


def test_letter_endpoints(fx):
    p = fx["F4"]
    a, ai = parse_word("a").letters[0], parse_word("a^-1").letters[0]
    assert (letter_source(p, a), letter_target(p, a)) == ("1", "2")
    assert (letter_source(p, ai), letter_target(p, ai)) == ("2", "1")


def test_enumerate_examples(fx):
    assert names(enumerate_strings(fx["F4"], 2)) == ["e_1", "e_2", "a"]
    assert names(enumerate_strings(fx["F5"], 2)) == ["e_1", "e_2", "a", "b", "a.b^-1", "a^-1.b"]
    assert names(enumerate_strings(fx["F3"], 10)) == ["e_1", "e_2", "e_3", "a", "b", "c"]


def test_enumerate_rejects_non_string():
    p = build_presentation("1234", [("a", "1", "2"), ("b", "1", "3"), ("c", "1", "4")])
    with pytest.raises(NotStringAlgebraError):
        enumerate_strings(p, 2)


@pytest.mark.parametrize("name, limit", [("F1", 12), ("F2", 6), ("F3", 3)])
def test_census_stabilizes(name, limit):
    p = load(name)
    first = enumerate_strings(p, limit)
    assert enumerate_strings(p, limit + 4) == first


def test_string_module_examples(fx):
    m = string_module(fx["F1"], parse_word("e.f"))
    assert m.dimvec(fx["F1"]) == (0, 0, 0, 0, 1, 1, 1, 0, 0, 0)
    m = string_module(fx["F3"], parse_word("e_1"))
    assert m.dimvec(fx["F3"]) == (1, 0, 0)
    m = string_module(fx["F2"], parse_word("y.z"))
    assert m.dimvec(fx["F2"]) == (1, 1, 1)


def test_string_module_rejects_non_string(fx):
    with pytest.raises(WordError, match="xyzx"):
        string_module(fx["F2"], parse_word("x.y.z.x"))


def test_word_violation_message(fx):
    assert word_violation(fx["F2"], parse_word("x.y.z.x")) == "contains generator xyzx"
    assert word_violation(fx["F5"], parse_word("a.a^-1")) is not None
    assert word_violation(fx["F5"], parse_word("a.b^-1")) is None


def test_band_module_kronecker(fx):
    p = fx["F5"]
    b = parse_word("a.b^-1")
    m = band_module(p, b)
    assert m.dims == {"1": 1, "2": 1}
    assert m.matrices["a"] == [[1]] and m.matrices["b"] == [[1]]
    m2 = band_module(p, b, eigenvalue=1, size=2)
    assert m2.dims == {"1": 2, "2": 2}
    assert m2.matrices["b"] == jordan_block(1, 2)
    assert m2.matrices["a"] == [[1, 0], [0, 1]]


def test_band_errors(fx):
    with pytest.raises(BandError, match="b² contains generator xyzx"):
        band_module(fx["F2"], parse_word("x.y.z"))
    with pytest.raises(BandError, match="proper power"):
        band_module(fx["F5"], parse_word("a.b^-1.a.b^-1"))
    with pytest.raises(BandError):
        band_module(fx["F5"], parse_word("a.b^-1"), eigenvalue=0)
    with pytest.raises(BandError, match="close"):
        band_module(fx["F5"], parse_word("a"))


def test_jordan_block_upper():
    assert jordan_block(Fraction(2), 3) == [[2, 1, 0], [0, 2, 1], [0, 0, 2]]


def test_reptype(fx):
    r = is_representation_finite(fx["F5"])
    assert not r.finite and str(r.witness) == "a.b^-1" and r.witness_kind == "band"
    for n in ("F1", "F2", "F3", "F4", "F6"):
        assert is_representation_finite(fx[n]).finite
    assert not is_representation_finite(fx["F7"]).finite


def test_cyclic_module_string(fx):
    assert str(cyclic_module_string(fx["F1"], fx["F1"].path("d"))) == "e.f"
    assert str(cyclic_module_string(fx["F2"], fx["F2"].path("x"))) == "y.z"
    assert str(cyclic_module_string(fx["F4"], fx["F4"].path("a"))) == "e_2"
    with pytest.raises(ZeroPathError):
        cyclic_module_string(fx["F3"], fx["F3"].path("ab"))


def test_canonical_forms():
    w = parse_word("b.a^-1")
    assert str(canonical_string(w)) == "a.b^-1"
    assert str(canonical_band(parse_word("b^-1.a"))) == "a.b^-1"
    assert str(primitive_root(parse_word("a.b^-1.a.b^-1"))) == "a.b^-1"


@pytest.mark.parametrize("name, depth", [("F1", 7), ("F2", 8), ("F3", 8), ("F4", 8),
                                         ("F5", 8), ("F6", 8), ("F7", 8)])
def test_automaton_matches_direct_check(name, depth):
    p = load(name)
    aut = WalkAutomaton(p)
    for w in reduced_walks(p, depth):
        assert aut.accepts(w) == (word_violation(p, w) is None), str(w)


@pytest.mark.parametrize("name", ["F1", "F2", "F3", "F5"])
def test_string_modules_satisfy_relations(name):
    p = load(name)
    for w in enumerate_strings(p, 8 if name != "F1" else 6):
        m = string_module(p, w)
        assert m.relation_failures(p) == []
        assert m.total_dim == len(w) + 1


@pytest.mark.parametrize("name", ["F1", "F2", "F5"])
def test_string_inverse_isomorphic(name):
    p = load(name)
    for w in enumerate_strings(p, 4):
        if w.is_trivial:
            continue
        assert rep_iso(p, string_module(p, w), string_module(p, w.inverse()))


def test_representation_json(fx):
    m = band_module(fx["F5"], parse_word("a.b^-1"), eigenvalue=Fraction(1, 2), size=2)
    data = m.to_json()
    assert data["matrices"]["b"][0][0] == "1/2"
    assert Representation.from_json(data) == m


def test_words_from():
    assert names(words_from(["a", "e_1"])) == ["a", "e_1"]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.sampled_from(["a", "b", "a^-1", "b^-1"]), min_size=1, max_size=8))
def test_band_canonical_invariant_under_rotation(tokens):
    w = parse_word(".".join(tokens))
    c = canonical_band(w)
    for i in range(len(w)):
        rot = Word(w.letters[i:] + w.letters[:i])
        assert canonical_band(rot) == c
        assert canonical_band(rot.inverse()) == c


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 10**6))
def test_automaton_on_random_algebras(seed, pick):
    p = random_algebra(random.Random(seed), max_vertices=6)
    aut = WalkAutomaton(p)
    walks = reduced_walks(p, 5)
    w = walks[pick % len(walks)] if walks else None
    if w is not None:
        assert aut.accepts(w) == (word_violation(p, w) is None)
