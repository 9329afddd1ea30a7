import pytest

from randalg import samples
from stringcma.cma import build_cma
from stringcma.core import relation_cycles
from stringcma.errors import NotMonomialError, ZeroPathError
from stringcma.fixtures import NAMES, load
from stringcma.gproj import (is_perfect_pair, perfect_partner, perfect_paths, prs_perfect_paths,
                             prs_route, zero_continuations)
from stringcma.oracle import annihilator, rep_iso, right_ideal

RANDOM = samples(2024, 120) + samples(2025, 60, gentle=True)


def strs(paths):
    return [str(p) for p in paths]


def test_perfect_pair_examples(fx):
    f1, f3 = fx["F1"], fx["F3"]
    assert is_perfect_pair(f1, f1.path("ab"), f1.path("cd"))
    assert is_perfect_pair(f3, f3.path("a"), f3.path("b"))
    r = is_perfect_pair(f1, f1.path("ab"), f1.path("c"))
    assert not r and r.witness == "abc != 0"


def test_perfect_pair_rejects_bad_input(fx):
    f3 = fx["F3"]
    with pytest.raises(ZeroPathError):
        is_perfect_pair(f3, f3.path("ab"), f3.path("c"))
    with pytest.raises(ZeroPathError):
        is_perfect_pair(f3, f3.path("e_1"), f3.path("a"))
    cma = build_cma(fx["F2"]).presentation
    with pytest.raises(NotMonomialError):
        perfect_paths(cma)


def test_partner_examples(fx):
    assert str(perfect_partner(fx["F1"], fx["F1"].path("d"))) == "efg"
    assert str(perfect_partner(fx["F2"], fx["F2"].path("x"))) == "yzx"
    assert perfect_partner(fx["F4"], fx["F4"].path("a")) is None


def test_zero_continuations_shortest_first(fx):
    f1 = fx["F1"]
    assert strs(zero_continuations(f1, f1.path("ab"))) == ["cd", "cde"]


def test_f2_orbits(fx):
    r = perfect_paths(fx["F2"])
    assert [strs(o) for o in r.orbits] == [["x", "yzx", "y", "zxy", "z", "xyz"],
                                          ["xy", "zx", "yz"]]
    assert len(r.gproj) == 12 and not r.cm_free and r.cm_finite


def test_f1_contains_listed_orbits(fx):
    r = perfect_paths(fx["F1"])
    orbits = [strs(o) for o in r.orbits]
    assert ["d", "efg", "h", "abc"] in orbits
    assert ["ab", "cd", "ef", "gh"] in orbits


def test_f1_extra_orbit_is_genuine(fx):
    # c -> def -> g -> hab closes up, and each syzygy is the next ideal
    p = fx["F1"]
    orbit = ["c", "def", "g", "hab"]
    for i, s in enumerate(orbit):
        t = orbit[(i + 1) % 4]
        assert is_perfect_pair(p, p.path(s), p.path(t))
        assert rep_iso(p, annihilator(p, p.path(s)), right_ideal(p, p.path(t)))


def test_cm_free(fx):
    for n in ("F4", "F5", "F6"):
        assert perfect_paths(fx[n]).cm_free


def test_gproj_objects(fx):
    r = perfect_paths(fx["F2"])
    g = {o.label: o for o in r.gproj}
    assert str(g["xA"].word) == "y.z" and g["xA"].dimvec == (1, 1, 1)
    assert g["P(1)"].kind == "projective" and g["P(1)"].dimvec == (2, 1, 1)
    assert g["xyzA"].support(fx["F2"]) == ["1"]
    assert sorted(r.by_length()) == [1, 2, 3]
    data = r.to_json()
    assert set(data) == {"perfect_paths", "orbits", "gproj", "cm_free", "cm_finite"}
    assert data["gproj"][3] == {"kind": "nontrivial", "path": ["x"], "string": "y.z",
                                "dimvec": [1, 1, 1]}


def test_prs_route_f3(fx):
    (c,) = relation_cycles(fx["F3"])
    routes = prs_route(fx["F3"], c)
    assert {tuple(strs(r.pps)) for r in routes} >= {("a", "b", "c")}
    assert prs_perfect_paths(fx["F3"]) == {("a",), ("b",), ("c",)}


def test_prs_route_f2_both_orbits(fx):
    got = prs_perfect_paths(fx["F2"])
    assert got == {p.arrows for p in perfect_paths(fx["F2"]).perfect_paths}


def test_hexagon_pair_without_sequence(fx):
    hexagon = build_cma(fx["F3"]).presentation
    assert is_perfect_pair(hexagon, hexagon.path("a+"), hexagon.path("b-"))
    assert perfect_partner(hexagon, hexagon.path("b-")) is None
    assert perfect_paths(hexagon).cm_free


@pytest.mark.parametrize("name", NAMES)
def test_route_agreement_fixtures(name):
    p = load(name)
    assert prs_perfect_paths(p) == {q.arrows for q in perfect_paths(p).perfect_paths}


def _check_structure(p):
    rep = perfect_paths(p)
    gens = set(p.generators)
    on_cycles = set()
    for rc in relation_cycles(p):
        on_cycles |= set(rc.cycle.arrows)
    for q in p.nonzero_paths():
        if q.arrows:
            partners = [w for w in zero_continuations(p, q) if is_perfect_pair(p, q, w)]
            assert len(partners) <= 1
    for orbit in rep.orbits:
        for i, a in enumerate(orbit):
            b = orbit[(i + 1) % len(orbit)]
            assert a.arrows + b.arrows in gens
            assert set(a.arrows) <= on_cycles
            others = [x for x in p.quiver.outgoing[a.target] if x.name != b.arrows[0]]
            if others:
                assert len(a) == 1 and len(b) == 1
    assert prs_perfect_paths(p) == {q.arrows for q in rep.perfect_paths}


@pytest.mark.parametrize("name", NAMES)
def test_structure_fixtures(name):
    _check_structure(load(name))


def test_structure_random():
    for p in RANDOM:
        _check_structure(p)


def test_syzygy_of_perfect_path_is_partner_ideal():
    for p in RANDOM[:80]:
        for q in perfect_paths(p).perfect_paths:
            assert rep_iso(p, annihilator(p, q), right_ideal(p, perfect_partner(p, q)))
