import os
import random
import subprocess
import sys

import pytest

from defring import _kernels_py, kernels

try:
    from defring import _kernels as _kernels_c
except ImportError:  # pragma: no cover - no compiler in this environment
    _kernels_c = None

needs_c = pytest.mark.skipif(_kernels_c is None, reason="compiled kernels not built")


def _monos(rng, n, k=4, d=3):
    return [tuple(rng.randint(0, d) for _ in range(k)) for _ in range(n)]


@needs_c
def test_monomial_ops_agree():
    rng = random.Random(7)
    ms = _monos(rng, 200)
    for a, b in zip(ms, ms[1:]):
        for name in ("mono_mul", "mono_lcm", "mono_divides", "mono_coprime"):
            assert getattr(_kernels_py, name)(a, b) == getattr(_kernels_c, name)(a, b), name
        if _kernels_py.mono_divides(b, a):
            assert _kernels_py.mono_div(a, b) == _kernels_c.mono_div(a, b)


@needs_c
def test_find_reducer_agrees():
    rng = random.Random(8)
    leads = _monos(rng, 30)
    vals = [rng.randint(0, 2) for _ in leads]
    for m in _monos(rng, 300, d=5):
        v = rng.randint(0, 3)
        assert _kernels_py.find_reducer(m, v, leads, vals) == _kernels_c.find_reducer(m, v, leads, vals)


@needs_c
@pytest.mark.parametrize("modulus", [0, 3])
def test_sub_mul_agrees(modulus):
    rng = random.Random(9)
    for _ in range(50):
        p = {m: rng.randint(-5, 5) or 1 for m in _monos(rng, 10)}
        g = {m: rng.randint(-5, 5) or 1 for m in _monos(rng, 5)}
        if modulus:
            p = {m: c % modulus for m, c in p.items() if c % modulus}
            g = {m: c % modulus for m, c in g.items() if c % modulus}
        shift = tuple(rng.randint(0, 2) for _ in range(4))
        c = rng.randint(1, 4)
        a, b = dict(p), dict(p)
        _kernels_py.sub_mul(a, g, c, shift, modulus)
        _kernels_c.sub_mul(b, g, c, shift, modulus)
        assert a == b


@needs_c
def test_count_standard_agrees():
    rng = random.Random(10)
    for _ in range(40):
        n = rng.randint(1, 5)
        leads = _monos(rng, rng.randint(0, 4), k=n)
        d = rng.randint(0, 6)
        assert _kernels_py.count_standard(leads, n, d) == _kernels_c.count_standard(leads, n, d)


def test_selected_backend():
    expected = "python" if _kernels_c is None else "cython"
    if os.environ.get("DEFRING_PURE_PYTHON", "") not in ("", "0"):
        expected = "python"
    assert kernels.IMPLEMENTATION == expected


def test_pure_python_override_gives_same_basis():
    code = (
        "from defring import Ideal, VarContext, kernels\n"
        "ctx = VarContext('X,Y,A,B,C,F', 3, 'grevlex')\n"
        "I = Ideal.parse(['A^2 + B*C - 3*F', '2*A*X - B*F + 9', '2*A*Y - C*F', 'B*Y - C*X + 3*A'], ctx)\n"
        "print(kernels.IMPLEMENTATION, I.gb.to_strings())\n"
    )
    outs = []
    for flag in ("1", "0"):
        env = dict(os.environ, DEFRING_PURE_PYTHON=flag)
        res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        outs.append(res.stdout.split(" ", 1))
    assert outs[0][0] == "python"
    assert outs[0][1] == outs[1][1]
