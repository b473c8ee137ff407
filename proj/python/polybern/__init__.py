"""Exact Poisson-binomial entropy checks.

Parameters may be given as Fractions, ints or strings such as "1/3". Exact
results come back as Fractions and reports as dictionaries.
"""

import json
from fractions import Fraction

from . import _polybern
from ._polybern import ConstraintViolation, SizeLimitError, SHANNON_DERIVATIVE_BOUND, psi, psi_q

__all__ = [
    "ConstraintViolation",
    "SizeLimitError",
    "SHANNON_DERIVATIVE_BOUND",
    "pmf",
    "brute_force_pmf",
    "mixing_profile",
    "odd_central_moment",
    "s_chain",
    "entropy",
    "derivative",
    "psi",
    "psi_q",
    "counterexample",
    "verify_monotonicity",
    "verify_spacing",
    "verify_identities",
    "verify_appendix_identities",
    "verify_all",
    "classify_equality",
    "search_tsallis",
    "sweep",
]


def _texts(params):
    out = []
    for p in params:
        if isinstance(p, float):
            raise TypeError("parameters must be exact; pass a Fraction or a string")
        out.append(str(Fraction(p)))
    return out


def _fractions(texts):
    return [Fraction(t) for t in texts]


def pmf(params, exact=True):
    """Mass function of the sum of independent Bernoulli(p_i), indices 0..n."""
    if exact:
        return _fractions(_polybern.exact_pmf(_texts(params)))
    return _polybern.float_pmf(_texts(params))


def brute_force_pmf(params):
    """Same law by enumerating all 2^n outcomes; only for small n."""
    return _fractions(_polybern.brute_force_pmf(_texts(params)))


def mixing_profile(g_params):
    """Mixing coefficients alpha_k for g = law of g_params."""
    return json.loads(_polybern.mixing_profile(_texts(g_params)))


def odd_central_moment(g_params, r):
    """M_r for g = law of g_params and f = g mixed with a fair coin."""
    return Fraction(_polybern.odd_central_moment(_texts(g_params), r))


def s_chain(g_params, r):
    return json.loads(_polybern.s_chain(_texts(g_params), r))


def entropy(params, family="shannon", q=1.0):
    return _polybern.entropy(_texts(params), family, q)


def derivative(params, family="shannon", q=1.0, method="direct", step=1e-5):
    """First and second derivative in the last parameter."""
    return json.loads(_polybern.derivative(_texts(params), family, q, method, step))


def counterexample(q, eps=0.01):
    """Tsallis derivative at (1/2 - eps, 1/2) and its first-order term."""
    exact, leading = _polybern.counterexample(q, eps)
    return {"exact": exact, "leading": leading}


def verify_monotonicity(params, r_max=5):
    return json.loads(_polybern.verify_monotonicity(_texts(params), r_max))


def verify_spacing(params):
    return json.loads(_polybern.verify_spacing(_texts(params)))


def verify_identities(params, seed=1):
    return json.loads(_polybern.verify_identities(_texts(params), seed))


def verify_appendix_identities(params):
    return json.loads(_polybern.verify_appendix_identities(_texts(params)))


def verify_all(params, r_max=5):
    return json.loads(_polybern.verify_all(_texts(params), r_max))


def classify_equality(params):
    cls, m1, consistent = _polybern.classify_equality(_texts(params))
    return {"class": cls, "m1": Fraction(m1), "consistent": consistent}


def search_tsallis(samples=1000, seed=1, n_min=1, n_max=8, q_min=1e-3, q_max=2.0,
                   constraint="half", r_max=5, threads=0):
    return json.loads(_polybern.search_tsallis(samples, seed, n_min, n_max, q_min, q_max,
                                               constraint, r_max, threads))


def sweep(mode="grid", n=2, p_min="1/10", p_max="1/2", p_step="1/10", last="1/2",
          samples=100, seed=1, qs=(), r_max=3, threads=0, csv=False):
    """Sweep rows as a dict, or the CSV text when csv=True."""
    text = _polybern.sweep(mode, n, str(Fraction(p_min)), str(Fraction(p_max)),
                           str(Fraction(p_step)), str(Fraction(last)), samples, seed,
                           list(qs), r_max, threads, csv)
    return text if csv else json.loads(text)
