"""Continuous iteration of analytic maps through truncated Carleman matrices."""

import json

from ._core import CarlemanError, Iteration, carleman_matrix, lyapunov, validity_window, verify_json


def logistic(mu):
    """Coefficients of x -> mu x (1 - x)."""
    return [0.0, mu, -mu]


def verify(suite="logistic4", dim=32, n=100000):
    """Run a verification suite and return its report as a dict."""
    return json.loads(verify_json(suite, dim, n))


__all__ = [
    "CarlemanError",
    "Iteration",
    "carleman_matrix",
    "logistic",
    "lyapunov",
    "validity_window",
    "verify",
]
