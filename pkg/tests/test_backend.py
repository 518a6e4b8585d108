import os
import subprocess
import sys

import pytest

from possim import _jit


@pytest.mark.parametrize("flag,want", [("0", "numpy"), ("off", "numpy"), ("1", "numba")])
def test_env_flag_selects_backend(flag, want):
    if want == "numba" and not _jit.HAVE_NUMBA:
        pytest.skip("numba not installed")
    env = dict(os.environ, POSSIM_NUMBA=flag)
    out = subprocess.run([sys.executable, "-c", "from possim import _jit; print(_jit.backend())"],
                         env=env, capture_output=True, text=True, check=True).stdout
    assert out.strip() == want


def test_using_restores_previous_backend():
    before = _jit.backend()
    with _jit.using("numpy"):
        assert not _jit.use_numba()
    assert _jit.backend() == before


def test_unknown_backend():
    with pytest.raises(ValueError):
        _jit.set_backend("cuda")
