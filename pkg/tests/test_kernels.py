import random
import subprocess
import sys

import numpy as np
import pytest

from hyperph import kernels
from hyperph.persistence import boundary_pairing
from hyperph.synthetic import random_filtered_complex


def test_pure_python_backend_always_available():
    assert "pure-python" in kernels.available_backends()


def test_compiled_backend_built():
    # the build environment has a C compiler; if this starts failing the
    # fallback still keeps the package functional, but we want to know
    assert "compiled" in kernels.available_backends()


def test_unknown_backend_rejected():
    dims = np.zeros(1, dtype=np.int8)
    faces = np.full(3, -1, dtype=np.int64)
    with pytest.raises(ValueError):
        kernels.pair_simplices(dims, faces, 1, backend="turbo")


def test_empty_input():
    dims = np.zeros(0, dtype=np.int8)
    faces = np.zeros(0, dtype=np.int64)
    for backend in kernels.available_backends():
        out = kernels.pair_simplices(dims, faces, 0, backend=backend)
        assert len(out) == 0


@pytest.mark.skipif(
    "compiled" not in kernels.available_backends(),
    reason="compiled kernel unavailable",
)
def test_backends_agree_on_random_complexes():
    rng = random.Random(31)
    for _ in range(60):
        fc = random_filtered_complex(rng)
        a = boundary_pairing(fc, backend="pure-python")
        b = boundary_pairing(fc, backend="compiled")
        assert np.array_equal(a, b)


def test_env_var_forces_pure_python():
    code = (
        "from hyperph import kernels; "
        "print(kernels.DEFAULT_BACKEND)"
    )
    out = subprocess.run(
        [sys.executable, "-c", code],
        capture_output=True,
        text=True,
        env={"HYPERPH_PURE_PYTHON": "1", "PATH": "/usr/bin:/bin"},
    )
    assert out.stdout.strip() == "pure-python"


def test_pairing_is_an_involution():
    rng = random.Random(32)
    for _ in range(30):
        fc = random_filtered_complex(rng)
        pair_of = boundary_pairing(fc)
        for i, j in enumerate(pair_of):
            if j >= 0:
                assert pair_of[j] == i
                assert j != i
