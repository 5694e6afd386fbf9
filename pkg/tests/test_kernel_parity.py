"""The cythonized kernel and the pure-Python fallback must agree bit for bit.

Both are the same source file; the compiled build must not change results,
only speed.  Reports are compared as serialized JSON and waveforms as exact
arrays, over every builtin plus the polled-monitor failure cases.
"""

import numpy as np
import pytest

from ehsim import kernel
from ehsim.engine import report_json, set_param, simulate
from ehsim.scenarios import builtin_names, get_builtin

pytestmark = pytest.mark.skipif(
    kernel.IMPL != "compiled",
    reason="compiled kernel unavailable; nothing to compare against",
)


def _cases():
    cases = [(name, get_builtin(name)) for name in builtin_names()]
    for fs in (0.5, 20.0):
        cases.append((f"bridge-apc@fs={fs}",
                      set_param(get_builtin("bridge-apc"), "solution.fs", fs)))
    return cases


@pytest.mark.parametrize("label,doc", _cases(), ids=[c[0] for c in _cases()])
def test_fallback_matches_compiled(label, doc):
    compiled = simulate(doc)
    fallback = simulate(doc, _impl_module=kernel.load_interpreted())
    assert compiled.impl == "compiled"
    assert fallback.impl == "interpreted"
    assert report_json(fallback) == report_json(compiled)
    np.testing.assert_array_equal(fallback.wave_t, compiled.wave_t)
    np.testing.assert_array_equal(fallback.wave_v, compiled.wave_v)
    np.testing.assert_array_equal(fallback.wave_phase, compiled.wave_phase)
    np.testing.assert_array_equal(fallback.wave_load, compiled.wave_load)
    assert fallback.events == compiled.events
