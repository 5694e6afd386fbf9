"""Kernel loading.

The stepping kernel lives in _kernel.py, written so the same source runs
interpreted or compiled by Cython.  When the built extension is present the
import system picks it up automatically; this module exposes which variant
is active and can force-load the interpreted one (used by the parity test
and the benchmark).
"""

import importlib.util
import pathlib

from . import _kernel

IMPL = "compiled" if _kernel.IS_COMPILED else "interpreted"

run = _kernel.run


def load_interpreted():
    """Load the pure-Python kernel from source, bypassing any extension."""
    path = pathlib.Path(__file__).with_name("_kernel.py")
    spec = importlib.util.spec_from_file_location("ehsim._kernel_interp", path)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod
