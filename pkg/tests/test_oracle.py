from fractions import Fraction

import pytest

from randalg import samples
from stringcma.cma import build_cma
from stringcma.errors import ShapeError, TruncationError
from stringcma.fixtures import NAMES, load
from stringcma.oracle import (algebra_dim, annihilator, default_degree_bound, ext1_with_algebra,
                              hom_dim, projective, rep_iso, right_ideal, verify_cma)
from stringcma.strings import Representation, parse_word, string_module

RANDOM = samples(77, 40)


def count_paths(p, src, dst):
    return sum(1 for q in p.nonzero_paths() if q.source == src and q.target == dst)


def test_hom_between_projectives_f4(fx):
    p = fx["F4"]
    assert hom_dim(p, projective(p, "2"), projective(p, "1")) == 1
    assert hom_dim(p, projective(p, "1"), projective(p, "2")) == 0


def test_hom_from_ideal_f3(fx):
    p = fx["F3"]
    assert hom_dim(p, right_ideal(p, p.path("a")), projective(p, "1")) == 1


@pytest.mark.parametrize("name", ["F2", "F3", "F4", "F6"])
def test_hom_projectives_count_paths(name):
    p = load(name)
    for i in p.quiver.vertices:
        for j in p.quiver.vertices:
            assert hom_dim(p, projective(p, i), projective(p, j)) == count_paths(p, j, i)


def test_hom_projectives_random():
    for p in RANDOM[:15]:
        vs = p.quiver.vertices
        for i in vs:
            for j in vs:
                assert hom_dim(p, projective(p, i), projective(p, j)) == count_paths(p, j, i)


def test_projective_dimension_vector(fx):
    p = fx["F3"]
    assert projective(p, "1").dimvec(p) == (1, 1, 0)


def test_rep_iso_basic(fx):
    p = fx["F2"]
    x = right_ideal(p, p.path("x"))
    assert rep_iso(p, x, x)
    assert rep_iso(p, x, string_module(p, parse_word("y.z")))
    assert not rep_iso(p, x, right_ideal(p, p.path("y")))
    # same dimension vector, different modules
    f5 = fx["F5"]
    m = string_module(f5, parse_word("a"))
    n = string_module(f5, parse_word("b"))
    assert m.dimvec(f5) == n.dimvec(f5) and not rep_iso(f5, m, n)


def test_rep_iso_symmetric_random():
    for p in RANDOM[:20]:
        mods = [projective(p, v) for v in p.quiver.vertices]
        for a in mods:
            for b in mods:
                assert rep_iso(p, a, b) == rep_iso(p, b, a)
            assert rep_iso(p, a, a)


def test_annihilator_of_perfect_path(fx):
    p = fx["F3"]
    assert rep_iso(p, annihilator(p, p.path("a")), right_ideal(p, p.path("b")))
    assert ext1_with_algebra(p, p.path("a")) == 0


def test_shape_errors(fx):
    p = fx["F4"]
    bad = Representation.zero(p, {v: 1 for v in p.quiver.vertices})
    bad.matrices[p.quiver.arrows[0].name] = [[Fraction(1), Fraction(0)]]
    with pytest.raises(ShapeError):
        hom_dim(p, bad, bad)


@pytest.mark.parametrize("name,dim", [("F3", 6), ("F2", 12), ("F4", 3), ("F5", 4)])
def test_algebra_dim(name, dim):
    assert algebra_dim(load(name)) == dim


def test_algebra_dim_matches_path_count():
    for p in RANDOM:
        assert algebra_dim(p) == len(p.nonzero_paths())


def test_algebra_dim_cma(fx):
    assert algebra_dim(build_cma(fx["F3"]).presentation) == 15


def test_truncation(fx):
    p = fx["F2"]
    with pytest.raises(TruncationError):
        algebra_dim(p, 2)
    assert algebra_dim(p, default_degree_bound(p)) == 12


@pytest.mark.parametrize("name", NAMES)
def test_verify_cma_fixtures(name):
    rep = verify_cma(load(name))
    assert rep.passed, rep.failures
    assert rep.d1 == rep.d2


def test_verify_cma_f3_value(fx):
    rep = verify_cma(fx["F3"])
    assert rep.d1 == rep.d2 == 15
    data = rep.to_json()
    assert data["pass"] and len(data["per_pair"]) == 36


def test_verify_cma_random():
    for p in samples(78, 25):
        assert verify_cma(p).passed
