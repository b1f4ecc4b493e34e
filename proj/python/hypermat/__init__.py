"""Matrix gamma, beta and hypergeometric functions with Euler integral identities.

Matrices are complex NumPy arrays; parameters passed together must commute.
"""

import json

import numpy as np

from ._core import (
    AccuracyError,
    ConfluenceError,
    DomainError,
    GenerationError,
    HypermatError,
    NumericalFailure,
    ParseError,
    PreconditionError,
    beta,
    euler_integral,
    gamma,
    pfq,
    pochhammer,
    reciprocal_gamma,
)
from . import _core

__all__ = [
    "AccuracyError",
    "ConfluenceError",
    "DomainError",
    "GenerationError",
    "HypermatError",
    "NumericalFailure",
    "ParseError",
    "PreconditionError",
    "beta",
    "euler_integral",
    "gamma",
    "generate_cases",
    "pfq",
    "pochhammer",
    "reciprocal_gamma",
    "run_suite",
    "verify",
    "matrix_from_json",
    "matrix_to_json",
]


def generate_cases(seed=42, dims=(1, 2, 3), cases=5, tol=1e-7, identities=()):
    """The suite's case file as a dict {"cases": [...]}."""
    return json.loads(_core.generate_cases_json(seed, list(dims), cases, tol, list(identities)))


def verify(cases, threads=0):
    """Verify a case file (dict, list or JSON text); returns {"reports", "summary"}."""
    text = cases if isinstance(cases, str) else json.dumps(cases)
    return json.loads(_core.verify_json(text, threads))


def run_suite(seed=42, dims=(1, 2, 3), cases=5, tol=1e-7, threads=0, identities=()):
    """Run the seeded identity suite; returns {"reports", "summary"}."""
    return json.loads(
        _core.run_suite_json(seed, list(dims), cases, tol, threads, list(identities))
    )


def matrix_from_json(obj):
    """Decode {"dim": n, "entries": [[[re, im], ...], ...]} into a complex array."""
    return np.array([[complex(re, im) for re, im in row] for row in obj["entries"]])


def matrix_to_json(a):
    """Encode a square array in the shared JSON matrix form."""
    a = np.asarray(a, dtype=complex)
    return {
        "dim": a.shape[0],
        "entries": [[[float(v.real), float(v.imag)] for v in row] for row in a],
    }
