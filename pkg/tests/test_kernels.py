import os
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stringcma import _kernels_py, kernels

matrices = st.integers(1, 7).flatmap(
    lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), max_size=8)
    .map(lambda rows: (rows, n)))


def sympy_rank(rows, n):
    import sympy
    return sympy.Matrix(rows).rank() if rows else 0


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_pure_rank_matches_sympy(m):
    rows, n = m
    assert _kernels_py.rank(rows, n) == sympy_rank(rows, n)


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_backends_agree(m):
    rows, n = m
    assert kernels.rank(rows, n) == _kernels_py.rank(rows, n)


def test_rank_does_not_mutate():
    rows = [[1, 2], [2, 4]]
    kernels.rank(rows, 2)
    assert rows == [[1, 2], [2, 4]]


def test_edge_cases():
    assert kernels.rank([], 3) == 0
    assert kernels.rank([[0, 0, 0]], 3) == 0
    assert kernels.rank([[1, 0], [0, 1], [1, 1]], 2) == 2


def test_overflow_falls_back():
    big = 2 ** 40
    rows = [[big, 1, 3], [1, big, 5], [7, 11, big]]
    assert kernels.rank(rows, 3) == _kernels_py.rank(rows, 3) == 3


@pytest.mark.skipif(kernels.BACKEND != "cython", reason="compiled kernel not built")
def test_compiled_kernel_raises_on_overflow():
    from stringcma import _kernels
    big = 2 ** 40
    with pytest.raises(OverflowError):
        _kernels.rank([[big, 1, 3], [1, big, 5], [7, 11, big]], 3)


def test_pure_switch():
    env = dict(os.environ, STRINGCMA_PURE="1")
    out = subprocess.run([sys.executable, "-c", "import stringcma.kernels as k; print(k.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
