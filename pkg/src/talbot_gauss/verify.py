"""Exhaustive verification sweeps over coprime orders, grouped into suites.

Each property is checked one ``q`` at a time; the per-``q`` work items may run
on a thread pool (capped by ``TALBOT_GAUSS_THREADS``) and are collected in
order, so reports are deterministic.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from .gauss_phase import (
    dft,
    gauss_sum_direct,
    is_chu_equivalent,
    periodic_autocorrelation,
    spectral_weights,
    talbot_phases,
    xi0,
    xi0_bruteforce,
)
from .numtheory import gcd
from .talbot_s import (
    TalbotOrder,
    closed_form_s,
    complement_s,
    compute_s,
    compute_s_alt,
    verify_s,
)
from .tai import (
    bin_interference,
    check_concentration,
    equivalent_up_to_shift_and_phase,
    leger_phases,
    r_based_phases,
    tai_forward,
    tai_phases,
)

SUITES = ("s", "dft", "autocorr", "appendixB", "props", "tai", "all")

# caps keep the expensive searches at desk scale
CHU_Q_MAX = 32
PROP5_Q_MAX = 32
TAI_Q_MAX = 16


@dataclass
class PropertyResult:
    suite: str
    name: str
    checked: int = 0
    failed: int = 0
    max_error: float = 0.0
    tolerance: float = 0.0

    @property
    def passed(self) -> bool:
        return self.failed == 0 and self.checked > 0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{status} {self.suite}/{self.name}: {self.checked - self.failed}/{self.checked} "
                f"max_err={self.max_error:.3g} tol={self.tolerance:g}")


def _orders(q: int, sigmas=(1,)) -> Iterable[TalbotOrder]:
    for p in range(1, 2 * q + 1):
        if gcd(p, q) == 1:
            for sigma in sigmas:
                yield TalbotOrder(p, q, sigma)


# each check takes (q, tol) and returns a list of per-case errors (0 on exact success,
# inf on an exact failure)

def _uniqueness(q, tol):
    errs = []
    for order in _orders(q):
        hits = [s for s in range(2 * q) if verify_s(order, s)]
        errs.append(0.0 if hits == [compute_s(order).s] else math.inf)
    return errs


def _periodicity(q, tol):
    errs = []
    for order in _orders(q):
        s = compute_s(order).s
        ok = compute_s(TalbotOrder(order.p + 2 * q, q)).s == s
        if q % 2:
            ok &= compute_s(TalbotOrder(order.p + q, q)).s == s
        errs.append(0.0 if ok else math.inf)
    return errs


def _prop4(q, tol):
    errs = []
    for order in _orders(q, (1, -1)):
        x = talbot_phases(order)
        e1 = np.max(np.abs(dft(x) - np.asarray(spectral_weights(order))))
        direct = np.array([gauss_sum_direct(order, n) for n in range(q)])
        e2 = np.max(np.abs(np.asarray(x) - direct))
        errs.append(float(max(e1, e2)))
    return errs


def _xi0(q, tol):
    errs = []
    for order in _orders(q):
        a, b = xi0(order, "s"), xi0(order, "p")
        if a != b:
            errs.append(math.inf)
            continue
        errs.append(abs(a.to_complex() - xi0_bruteforce(compute_s(order).s, q)))
    return errs


def _autocorr(q, tol):
    errs = []
    delta = np.zeros(q)
    delta[0] = q
    for order in _orders(q, (1, -1)):
        x = np.asarray(talbot_phases(order))
        X = np.asarray(spectral_weights(order)) / math.sqrt(q)
        errs.append(float(max(np.max(np.abs(periodic_autocorrelation(x) - delta)),
                              np.max(np.abs(periodic_autocorrelation(X) - delta)))))
    return errs


def _chu(q, tol):
    if q > CHU_Q_MAX:
        return []
    errs = []
    for order in _orders(q, (1, -1)):
        ok = is_chu_equivalent(talbot_phases(order)) and is_chu_equivalent(spectral_weights(order))
        errs.append(0.0 if ok else math.inf)
    return errs


def _alternative_s(q, tol):
    return [0.0 if compute_s_alt(o) == compute_s(o).s else math.inf for o in _orders(q)]


def _closed_form(q, tol):
    errs = []
    for order in _orders(q):
        s = closed_form_s(order)
        if s is not None:
            errs.append(0.0 if s == compute_s(order).s else math.inf)
    return errs


def _complement(q, tol):
    errs = []
    for p in range(1, q):
        if gcd(p, q) == 1:
            ok = complement_s(TalbotOrder(p, q)) == compute_s(TalbotOrder(q - p, q)).s
            errs.append(0.0 if ok else math.inf)
    return errs


def _prop5(q, tol):
    if q > PROP5_Q_MAX:
        return []
    return [
        0.0 if equivalent_up_to_shift_and_phase(talbot_phases(o), r_based_phases(o), tol) else math.inf
        for o in _orders(q, (1, -1))
    ]


def _tai_forward(q, tol):
    if q > TAI_Q_MAX:
        return []
    errs = []
    for order in _orders(q, (1, -1)):
        design = tai_phases(order)
        report = check_concentration(design, tai_forward(design, 16), tol)
        ok = report["passed"] and abs(report["peak_power_gain"] - q) < 1e3 * tol
        errs.append(report["l_inf_vs_ideal"] if ok else math.inf)
    return errs


def _bin_interference(q, tol):
    delta = np.zeros(q)
    delta[0] = q
    return [float(np.max(np.abs(bin_interference(o) - delta))) for o in _orders(q, (1, -1))]


def _leger(q, tol):
    if q > PROP5_Q_MAX:
        return []
    return [
        0.0 if equivalent_up_to_shift_and_phase(leger_phases(q, sg), tai_phases(TalbotOrder(1, q, sg)).levels(), tol)
        else math.inf
        for sg in (1, -1)
    ]


# (suite, name, check, exact?)
PROPERTIES: list[tuple[str, str, Callable, bool]] = [
    ("s", "uniqueness", _uniqueness, True),
    ("s", "periodicity", _periodicity, True),
    ("dft", "dft_pair", _prop4, False),
    ("dft", "xi0_forms", _xi0, False),
    ("autocorr", "perfect_autocorrelation", _autocorr, False),
    ("autocorr", "chu_membership", _chu, True),
    ("appendixB", "alternative_s", _alternative_s, True),
    ("props", "closed_form_s", _closed_form, True),
    ("props", "complement_s", _complement, True),
    ("props", "r_family_equivalence", _prop5, False),
    ("tai", "concentration", _tai_forward, False),
    ("tai", "bin_interference", _bin_interference, False),
    ("tai", "leger_family", _leger, False),
]


def worker_count() -> int:
    env = os.environ.get("TALBOT_GAUSS_THREADS")
    if env:
        return max(1, int(env))
    return min(8, os.cpu_count() or 1)


def run_suite(suite: str, q_max: int, tolerance: float | None = None) -> list[PropertyResult]:
    """Run every property of ``suite`` (or all suites) for ``q`` in ``[1, q_max]``.

    ``tolerance`` applies to floating-point properties (default 1e-9);
    exact-integer properties always use 0.
    """
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    if q_max < 1:
        raise ValueError(f"q_max must be >= 1, got {q_max}")
    tol = 1e-9 if tolerance is None else tolerance
    results = []
    with ThreadPoolExecutor(max_workers=worker_count()) as pool:
        for name_suite, name, check, exact in PROPERTIES:
            if suite not in ("all", name_suite):
                continue
            res = PropertyResult(name_suite, name, tolerance=0.0 if exact else tol)
            for errs in pool.map(lambda q: check(q, tol), range(1, q_max + 1)):
                for e in errs:
                    res.checked += 1
                    res.max_error = max(res.max_error, e)
                    if (e != 0.0) if exact else not e < tol:
                        res.failed += 1
            results.append(res)
    return results
