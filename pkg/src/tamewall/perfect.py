"""Perfectness, eutaxy, and extremeness tests for positive definite forms."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg, lp
from .enumeration import arithmetic_minimum
from .forms import QuadraticForm, dual_form, sym_dimension, value_row
from .linalg import RationalMatrix


@dataclass(frozen=True)
class PerfectionReport:
    """Rank of the minimal-vector images inside Sym(n)."""

    rank: int
    sym_dim: int
    minimal_pair_count: int
    is_perfect: bool


def perfection_report(f: QuadraticForm, allow_large=False) -> PerfectionReport:
    """Perfect iff the rank-1 images of the minimal vectors span Sym(n).

    Tested by rank rather than by reconstruction; the equivalence of the
    two is itself exercised in the test suite.
    """
    report = arithmetic_minimum(f, allow_large=allow_large)
    rows = [value_row(v) for v in report.vectors]
    rk = linalg.rank(RationalMatrix(rows))
    big_n = sym_dimension(f.n)
    return PerfectionReport(rk, big_n, report.pair_count, rk == big_n)


def is_eutactic(f: QuadraticForm, allow_large=False):
    """Exact strict-feasibility test for eutaxy.

    True iff the dual Gram equals sum_k alpha_k v_k v_k^T with every
    alpha_k > 0 over one representative per +-pair of minimal vectors.
    Returns (verdict, weights or None).
    """
    report = arithmetic_minimum(f, allow_large=allow_large)
    vecs = report.vectors
    target = dual_form(f).gram
    n = f.n
    k = len(vecs)
    equalities = []
    for i in range(n):
        for j in range(i, n):
            coeffs = [Fraction(v[i] * v[j]) for v in vecs]
            equalities.append((coeffs, target[i, j]))
    stricts = [([Fraction(0)] * idx + [Fraction(-1)], Fraction(0)) for idx in range(k)]
    result = lp.lp_solve(equalities=equalities, strict_less=stricts, num_vars=k)
    if result.status == "feasible":
        return True, result.witness
    return False, None


def is_extreme(f: QuadraticForm, allow_large=False) -> bool:
    """Voronoi: extreme (local packing maximum) iff perfect and eutactic."""
    if not perfection_report(f, allow_large=allow_large).is_perfect:
        return False
    verdict, _ = is_eutactic(f, allow_large=allow_large)
    return verdict
