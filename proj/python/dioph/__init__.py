"""Python front end for the dioph library.

Structured results come back as plain dicts and lists; big integers and
rationals stay decimal strings, exactly as in the CLI's JSON output.
"""

import json as _json

from . import _dioph
from ._dioph import DiophError, det3, ea_terms, fibonacci, strong_approx, wedge

__version__ = _dioph.__version__


def _system_text(system):
    return system if isinstance(system, str) else _json.dumps(system)


def sequence(preset, upto, presets=""):
    return _json.loads(_dioph.sequence_json(preset, upto, presets))


def verify_identities(seq, k_lo=3, k_hi=-1):
    text = seq if isinstance(seq, str) else _json.dumps(seq)
    return _json.loads(_dioph.verify_identities_json(text, k_lo, k_hi))


def ea_xi(seq, bits=256):
    text = seq if isinstance(seq, str) else _json.dumps(seq)
    return _json.loads(_dioph.ea_xi_json(text, bits))


def threshold_table(flavor, tol="1e-8"):
    return _json.loads(_dioph.threshold_table_json(flavor, tol))


def hensel_lift(poly, xi, p, prec, target):
    return _json.loads(_dioph.hensel_lift_json(poly, xi, p, prec, target))


def search(system, X, presets="", bits=256):
    return _json.loads(_dioph.search_json(_system_text(system), str(X), presets, bits))


def minkowski(system, X, presets="", bits=256):
    return _json.loads(_dioph.minkowski_json(_system_text(system), str(X), presets, bits))


def approx_poly(system, R, X, presets="", bits=256):
    return _json.loads(_dioph.approx_poly_json(_system_text(system), R, str(X), presets, bits))


__all__ = [
    "DiophError",
    "approx_poly",
    "det3",
    "ea_terms",
    "ea_xi",
    "fibonacci",
    "hensel_lift",
    "minkowski",
    "search",
    "sequence",
    "strong_approx",
    "threshold_table",
    "verify_identities",
    "wedge",
]
