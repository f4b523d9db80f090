import os
import subprocess
import sys

import numpy as np
import pytest

import cubica._kernels as K
from cubica import gf, pg3
from cubica._kernels import numba_impl, numpy_impl

QS = [3, 4, 9, 13]


def _cases(q, n, seed):
    rng = np.random.default_rng(seed)
    vecs = rng.integers(1, q, size=(n, 4)).astype(np.uint8)
    mats = rng.integers(0, q, size=(n, 4, 4)).astype(np.uint8)
    return vecs, mats


@pytest.mark.parametrize("q", QS)
def test_act_rows_parity(q):
    F = gf.field_make(q)
    vecs, mats = _cases(q, 257, 900 + q)
    a = numpy_impl.act_rows(vecs, mats, F.add, F.mul)
    b = numba_impl.act_rows(vecs, mats, F.add, F.mul)
    assert np.array_equal(a, b)


@pytest.mark.parametrize("q", QS)
def test_matmul4_parity(q):
    F = gf.field_make(q)
    _, m1 = _cases(q, 123, 901 + q)
    _, m2 = _cases(q, 123, 902 + q)
    a = numpy_impl.matmul4(m1, m2, F.add, F.mul)
    b = numba_impl.matmul4(m1, m2, F.add, F.mul)
    assert np.array_equal(a, b)


@pytest.mark.parametrize("q", QS)
def test_normalize_rows_parity(q):
    F = gf.field_make(q)
    vecs, _ = _cases(q, 400, 903 + q)
    a = numpy_impl.normalize_rows(vecs, F.mul, F.inv)
    b = numba_impl.normalize_rows(vecs, F.mul, F.inv)
    assert np.array_equal(a, b)
    assert (a[np.arange(len(a)), np.argmax(a != 0, axis=1)] == 1).all()


@pytest.mark.parametrize("q", [3, 5, 9])
def test_pluecker_parity_on_line_bases(q):
    F = gf.field_make(q)
    s = pg3.get_space(q)
    u = s.line_basis[:, 0].copy()
    v = s.line_basis[:, 1].copy()
    a = numpy_impl.pluecker_codes(u, v, F.add, F.mul, F.sub, F.inv, q)
    b = numba_impl.pluecker_codes(u, v, F.add, F.mul, F.sub, F.inv, q)
    assert np.array_equal(a, b)
    assert np.array_equal(np.sort(a), s.line_codes)


def _spawn(env_extra, code):
    env = {**os.environ, **env_extra}
    return subprocess.run([sys.executable, "-c", code],
                          capture_output=True, text=True, env=env)


def test_backend_env_selection():
    code = "import cubica._kernels as K; print(K.BACKEND)"
    assert _spawn({"CUBICA_BACKEND": "numpy"}, code).stdout.strip() == "numpy"
    assert _spawn({"CUBICA_BACKEND": "numba"}, code).stdout.strip() == "numba"
    auto = _spawn({}, code)
    assert auto.stdout.strip() in ("numba", "numpy")


def test_backend_env_rejects_unknown():
    proc = _spawn({"CUBICA_BACKEND": "fortran"},
                  "import cubica._kernels")
    assert proc.returncode != 0
    assert "CUBICA_BACKEND" in proc.stderr


def test_numpy_backend_runs_pipeline():
    proc = _spawn(
        {"CUBICA_BACKEND": "numpy"},
        "from cubica import incidence; r = incidence.verify_all(4); "
        "print(r.passed)")
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.strip() == "True"


def test_thread_cap_accepted():
    proc = _spawn(
        {"CUBICA_THREADS": "1"},
        "import cubica._kernels as K; print(K.BACKEND)")
    assert proc.returncode == 0, proc.stderr
