"""Talbot array illuminator (TAI) design and verification.

A TAI of order p/q phase-modulates a cw field with ``q`` levels, one per time
bin of width ``T/q``, chosen as the complex conjugates of the Talbot weights
``x_n``. After dispersion to the p/q plane the bins interfere through the
periodic autocorrelation of ``x_n`` and the light collects into a single bin
per period with amplitude ``sqrt(q)``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

import numpy as np

from .errors import GridMismatchError
from .gauss_phase import ExactPhase, PhaseSequence, talbot_phases
from .numtheory import mod_inverse
from .talbot_field import (
    LineSpectrum,
    PeriodicEnvelope,
    balanced_harmonics,
    propagate,
)
from .talbot_s import TalbotOrder, compute_s


@dataclass
class TaiDesign:
    order: TalbotOrder
    s: int
    phases: PhaseSequence

    @property
    def q(self) -> int:
        return self.order.q

    @property
    def bin_width_fraction(self) -> Fraction:
        return Fraction(1, self.order.q)

    def bin_width(self, period: float = 1.0) -> float:
        return period / self.order.q

    def levels(self) -> np.ndarray:
        return np.asarray(self.phases)


def tai_phases(order: TalbotOrder) -> TaiDesign:
    """Levels ``Phi_n = exp(-j sigma (xi_0 + pi s n^2 / q))``, the conjugates of ``x_n``."""
    x = talbot_phases(order)
    levels = PhaseSequence.from_exact(
        [-ph for ph in x.exact], order=order, s=x.s, meta={"kind": "tai"}
    )
    return TaiDesign(order, x.s, levels)


def tai_input(design: TaiDesign, samples_per_bin: int = 16, period: float = 1.0) -> PeriodicEnvelope:
    """Unit cw field modulated by the levels on bins ``[n T/q, (n+1) T/q)``."""
    if samples_per_bin < 2:
        raise ValueError(f"samples_per_bin must be >= 2, got {samples_per_bin}")
    return PeriodicEnvelope(np.repeat(design.levels(), samples_per_bin), period)


def tai_forward(design: TaiDesign, samples_per_bin: int = 16, period: float = 1.0) -> PeriodicEnvelope:
    """Propagate the modulated cw field to the design's Talbot plane.

    When ``p q`` is odd the output pulse sits half a period later, which lands
    on the sample grid only for even ``samples_per_bin``.
    """
    if design.order.e_pq and samples_per_bin % 2:
        raise GridMismatchError("p*q odd needs an even samples_per_bin for the T/2 delay")
    return propagate(tai_input(design, samples_per_bin, period), design.order)


def ideal_pulse_train(order: TalbotOrder, samples_per_bin: int = 16, period: float = 1.0) -> PeriodicEnvelope:
    """``sqrt(q)`` on one bin per period, delayed by ``T/2`` when ``p q`` is odd."""
    q = order.q
    cell = np.zeros(q * samples_per_bin, dtype=complex)
    cell[:samples_per_bin] = math.sqrt(q)
    return PeriodicEnvelope(np.roll(cell, order.e_pq * cell.size // 2), period)


def check_concentration(design: TaiDesign, output: PeriodicEnvelope, tol: float = 1e-9) -> dict:
    """Bin-centre amplitudes of a forward run and the pass/fail predicate.

    Passes when exactly one bin has centre amplitude ``sqrt(q)`` within
    ``tol``, every other bin is below ``tol``, and the whole trace matches the
    ideal pulse train to ``tol``.
    """
    q = design.q
    N = output.N
    spb = N // q
    offset = design.order.e_pq * N // 2
    centres = (offset + np.arange(q) * spb + spb // 2) % N
    amps = np.abs(output.samples[centres])
    target = math.sqrt(q)
    bright = np.flatnonzero(np.abs(amps - target) < tol)
    dark = np.delete(amps, bright)
    ideal = ideal_pulse_train(design.order, spb, output.period)
    l_inf = float(np.max(np.abs(output.samples - ideal.samples)))
    peak = float(np.max(np.abs(output.samples)))
    return {
        "bright_bin": int(bright[0]) if bright.size == 1 else None,
        "centre_amplitudes": amps.tolist(),
        "peak_amplitude": peak,
        "peak_power_gain": peak**2,
        "l_inf_vs_ideal": l_inf,
        "passed": bool(bright.size == 1 and np.all(dark < tol) and l_inf < tol),
    }


def bin_interference(order: TalbotOrder) -> np.ndarray:
    """``sum_n exp(j sigma (xi_{k-n} - xi_n))`` for k = 0..q-1; equals ``q delta_k``."""
    x = np.asarray(talbot_phases(order))
    q = order.q
    return np.array([sum(x[(k - n) % q] * x[n].conjugate() for n in range(q)) for k in range(q)])


def _cell_kernel(order: TalbotOrder, harmonics: np.ndarray, samples_per_bin: Optional[int]) -> np.ndarray:
    """Line coefficient of a unit pulse on ``[0, T/q)``, repeated with period ``T``."""
    q = order.q
    m = np.asarray(harmonics)
    if samples_per_bin is None:
        return np.sinc(m / q) * np.exp(-1j * np.pi * m / q) / q
    N = q * samples_per_bin
    k = np.arange(samples_per_bin)
    return np.exp(-2j * np.pi * np.outer(m, k) / N).sum(axis=1) / N


def _harmonic_range(order, harmonics, samples_per_bin):
    if samples_per_bin is not None:
        return balanced_harmonics(order.q * samples_per_bin)
    M = 4 * order.q if harmonics is None else harmonics
    return np.arange(-M, M + 1)


def tai_spectrum(
    design: TaiDesign,
    harmonics: Optional[int] = None,
    samples_per_bin: Optional[int] = None,
    period: float = 1.0,
) -> LineSpectrum:
    """Spectral lines of the modulated field before dispersion.

    Line ``m`` is the single-bin pulse spectrum times
    ``sqrt(q) exp(j pi sigma p m^2 / q) (-1)^{p q m}``, the DFT of the levels.
    Without ``samples_per_bin`` the pulse is the continuous rectangle (sinc
    lines, ``|m| <= harmonics``); with it, the sampled rectangle on the
    ``q * samples_per_bin`` grid, which matches :func:`analyze` of
    :func:`tai_input` exactly.
    """
    order = design.order
    p, q, sigma = order.p, order.q, order.sigma
    m = _harmonic_range(order, harmonics, samples_per_bin)
    chirp = np.exp(1j * np.pi * sigma * ((p * m * m) % (2 * q)) / q)
    alternation = np.where((p * q * m) % 2, -1.0, 1.0)
    lines = _cell_kernel(order, m, samples_per_bin) * math.sqrt(q) * chirp * alternation
    return LineSpectrum(m, lines, period)


def rect_train_spectrum(
    order: TalbotOrder,
    harmonics: Optional[int] = None,
    samples_per_bin: Optional[int] = None,
    period: float = 1.0,
) -> LineSpectrum:
    """Lines of the chirp-free pulse train of amplitude ``sqrt(q)`` and width ``T/q``."""
    m = _harmonic_range(order, harmonics, samples_per_bin)
    shift = np.where((order.e_pq * m) % 2, -1.0, 1.0)
    lines = math.sqrt(order.q) * _cell_kernel(order, m, samples_per_bin) * shift
    return LineSpectrum(m, lines, period)


def _inverse_mod_q(p: int, q: int) -> int:
    return 0 if q == 1 else mod_inverse(p, q)


def r_based_phases(order: TalbotOrder) -> PhaseSequence:
    """TAI phases written with ``r = [1/p]_q``.

    ``exp(j sigma pi r m^2 / q)`` for even q, ``exp(j sigma pi r m (m-1) / q)``
    for odd q. Equal to the ``s``-based family up to a global phase and a
    cyclic shift.
    """
    q, sigma = order.q, order.sigma
    r = _inverse_mod_q(order.p, q)
    if q % 2 == 0:
        phases = [ExactPhase.of(Fraction(sigma * r * m * m, q)) for m in range(q)]
    else:
        phases = [ExactPhase.of(Fraction(sigma * r * m * (m - 1), q)) for m in range(q)]
    return PhaseSequence.from_exact(phases, order=order, s=compute_s(order).s, meta={"kind": "r", "r": r})


def s_from_r(r: int, q: int, p: Optional[int] = None) -> int:
    """``s`` from ``r = [1/p]_q``.

    Odd q: ``s = r + q e_r (mod 2q)``. Even q: both ``r`` and ``r + q`` are
    odd and ``p`` decides which one inverts it modulo ``2q``.
    """
    if q % 2:
        return (r + q * (r % 2)) % (2 * q)
    if p is None:
        raise ValueError("even q needs p to choose between r and r + q")
    return r if r * p % (2 * q) == 1 else r + q


class Equivalence(NamedTuple):
    shift: int
    global_phase: complex


def equivalent_up_to_shift_and_phase(a, b, tol: float = 1e-10) -> Optional[Equivalence]:
    """Find ``shift`` and unit ``global_phase`` with ``a[n] = global_phase * b[n + shift]``.

    Shifts are searched exhaustively in ``[0, q)``; the phase is fixed by
    index 0 and every entry must then agree to ``tol``. Returns ``None`` when
    no shift works.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise ValueError(f"length mismatch: {a.size} vs {b.size}")
    for shift in range(b.size):
        bs = np.roll(b, -shift)
        if bs[0] == 0:
            continue
        gamma = a[0] / bs[0]
        if abs(abs(gamma) - 1) > tol:
            continue
        if np.max(np.abs(a - gamma * bs)) < tol:
            return Equivalence(shift, complex(gamma))
    return None


def leger_phases(q: int, sigma: int = 1) -> PhaseSequence:
    """The p = 1 family ``(-1)^{n e_q} exp(-j sigma pi n^2 / q)``.

    The chirp sign is the one carried by the conjugated Talbot weights, so the
    family matches ``tai_phases(TalbotOrder(1, q, sigma))`` up to a global
    phase (and, for odd q, a cyclic shift).
    """
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    e_q = q % 2
    phases = [ExactPhase.of(n * e_q + Fraction(-sigma * n * n, q)) for n in range(q)]
    return PhaseSequence.from_exact(phases, order=TalbotOrder(1, q, sigma), meta={"kind": "leger"})


def spectral_talbot_phases(order: TalbotOrder, length: int) -> PhaseSequence:
    """``exp(j sigma pi p n^2 / q)`` for ``n < length``; ``meta['period']`` is its minimal period.

    The period is q when ``p q`` is even and 2q otherwise; it is found here by
    direct search on the exact phases.
    """
    if length < 1:
        raise ValueError(f"length must be >= 1, got {length}")
    p, q, sigma = order.p, order.q, order.sigma

    def ph(n):
        return ExactPhase.of(Fraction(sigma * p * n * n, q))

    period = next(
        t for t in range(1, 2 * q + 1) if all(ph(n + t) == ph(n) for n in range(2 * q))
    )
    phases = [ph(n) for n in range(length)]
    return PhaseSequence.from_exact(phases, order=order, meta={"kind": "spectral", "period": period})


def design_to_json(design: TaiDesign) -> str:
    o = design.order
    doc = {
        "p": o.p,
        "q": o.q,
        "sigma": o.sigma,
        "s": design.s,
        "bin_width_fraction": f"1/{o.q}",
        "levels": [{"num": ph.num, "den": ph.den} for ph in design.phases.exact],
    }
    return json.dumps(doc, indent=1) + "\n"


def design_from_json(text: str) -> TaiDesign:
    doc = json.loads(text)
    order = TalbotOrder(doc["p"], doc["q"], doc["sigma"])
    levels = PhaseSequence.from_exact(
        [ExactPhase(d["num"], d["den"]) for d in doc["levels"]], order=order, s=doc["s"]
    )
    return TaiDesign(order, doc["s"], levels)


def trace_to_csv(env: PeriodicEnvelope) -> str:
    """Plot data ``t,|E|,arg E`` for a forward run."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["t", "|E|", "arg E"])
    for t, v in zip(env.times, env.samples):
        mag = abs(v)
        arg = float(np.angle(v)) if mag > 1e-12 else 0.0
        writer.writerow([repr(float(t)), repr(float(mag)), repr(arg)])
    return buf.getvalue()
