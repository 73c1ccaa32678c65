import importlib

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from klrwcyl import _kernels_py as py
from klrwcyl import kernels


@st.composite
def affine_windows(draw, max_n=6, max_wind=2):
    n = draw(st.integers(1, max_n))
    perm = draw(st.permutations(range(n)))
    winds = draw(st.lists(st.integers(-max_wind, max_wind), min_size=n, max_size=n))
    return tuple(p + n * w for p, w in zip(perm, winds))


def _backends():
    out = [py]
    try:
        out.append(importlib.import_module("klrwcyl._kernels"))
    except ImportError:
        pass
    return out


@given(affine_windows())
def test_inverse_is_two_sided(f):
    g = py.inverse(f)
    ident = tuple(range(len(f)))
    assert py.compose(f, g) == ident
    assert py.compose(g, f) == ident


@given(affine_windows())
def test_length_of_inverse(f):
    assert py.length(f) == py.length(py.inverse(f))


@given(affine_windows())
def test_canonical_word_rebuilds_permutation(f):
    letters, m = py.canonical_word(f)
    assert len(letters) == py.length(f)
    g = kernels.tau_power(m, len(f))
    for k in reversed(letters):
        g = py.left_mult(k, g)
    assert g == f


@given(affine_windows(), st.integers(0, 5))
def test_left_mult_changes_length_by_one(f, k):
    if len(f) < 2:
        return
    k %= len(f)
    g = py.left_mult(k, f)
    expected = py.length(f) - 1 if py.is_left_descent(f, k) else py.length(f) + 1
    assert py.length(g) == expected


@pytest.mark.parametrize("impl", _backends(), ids=lambda m: m.__name__.rsplit(".", 1)[-1])
@settings(max_examples=200)
@given(f=affine_windows(), g=affine_windows())
def test_backends_agree(impl, f, g):
    assert impl.length(f) == py.length(f)
    assert impl.inverse(f) == py.inverse(f)
    assert impl.min_left_descent(f) == py.min_left_descent(f)
    assert tuple(impl.canonical_word(f)[0]) == tuple(py.canonical_word(f)[0])
    assert impl.canonical_word(f)[1] == py.canonical_word(f)[1]
    if len(f) == len(g):
        assert impl.compose(f, g) == py.compose(f, g)
    for k in range(len(f)):
        assert impl.left_mult(k, f) == py.left_mult(k, f)
        assert impl.is_left_descent(f, k) == py.is_left_descent(f, k)


def test_backend_name():
    assert kernels.BACKEND in ("cython", "python")


def test_pure_python_fallback_end_to_end():
    import os
    import subprocess
    import sys

    script = (
        "import random, sys; sys.path.insert(0, 'tests');"
        "from conftest import relation_quivers, random_configuration;"
        "from klrwcyl.kernels import BACKEND; from klrwcyl.relations import relation_instances;"
        "q = relation_quivers()['A2 d=(2,1) 2->1'];"
        "insts = relation_instances(random_configuration(q, random.Random(0)));"
        "print(BACKEND, all(i.holds for i in insts), ';'.join(i.lhs.text() for i in insts))"
    )
    root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    outs = {}
    for flag in ("", "1"):
        env = dict(os.environ, KLRW_PURE_PYTHON=flag)
        res = subprocess.run([sys.executable, "-c", script], cwd=root, env=env, capture_output=True, text=True)
        assert res.returncode == 0, res.stderr
        backend, ok, text = res.stdout.split(" ", 2)
        assert ok == "True"
        outs[backend] = text
    assert "python" in outs
    assert len(set(outs.values())) == 1
