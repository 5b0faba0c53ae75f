"""Structural analysis of polynomial DAE systems (exact rational arithmetic)."""

import json as _json

try:
    from . import _daestruct as _core
except ImportError:  # running against a build tree
    import _daestruct as _core

__version__ = _core.__version__

System = _core.System
parse_system = _core.parse_system
serialize_system = _core.serialize_system
analyze_json = _core.analyze_json
jacobi_json = _core.jacobi_json
jacobi_number = _core.jacobi_number
membership_json = _core.membership_json
simulate_csv = _core.simulate_csv
DAEError = _core.DAEError
DAEParseError = _core.DAEParseError


def analyze(system, witness_json="", seed=0, trials=3, max_k=0):
    """Full index report as a dict (see analyze_json for the raw JSON)."""
    return _json.loads(analyze_json(system, witness_json, seed, trials, max_k))


def jacobi(system):
    """Jacobi numbers, bounds and a dual cover as a dict."""
    return _json.loads(jacobi_json(system))
