"""Sampled temporal Talbot propagation of periodic envelopes.

An envelope is one period ``T`` sampled on ``t_k = k T / N``. Two routes give
the field at a fractional Talbot order p/q:

* :func:`propagate` multiplies spectral line ``n`` by
  ``exp(-j pi sigma p n^2 / q)``;
* :func:`reconstruct_fractional` adds ``q`` copies of the cell delayed by
  ``n T / q`` and weighted by ``x_n / sqrt(q)``, then delays the result by
  ``T/2`` when ``p q`` is odd.

On a grid with ``q | N`` both routes agree to rounding for any sampled cell.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import GridMismatchError
from .gauss_phase import talbot_phases
from .talbot_s import TalbotOrder


@dataclass
class PeriodicEnvelope:
    samples: np.ndarray
    period: float = 1.0

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=complex)
        if self.samples.ndim != 1 or self.samples.size == 0:
            raise ValueError("envelope needs at least one sample")
        if not self.period > 0:
            raise ValueError(f"period must be positive, got {self.period}")

    @property
    def N(self) -> int:
        return self.samples.size

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.N) * self.period / self.N

    def energy(self) -> float:
        """Mean power over one period."""
        return float(np.mean(np.abs(self.samples) ** 2))

    def shifted(self, k: int) -> "PeriodicEnvelope":
        """Delay by ``k`` samples (cyclically)."""
        return PeriodicEnvelope(np.roll(self.samples, k), self.period)


@dataclass
class LineSpectrum:
    """Fourier-series lines ``c_n`` at harmonics ``n`` (frequencies ``n / T``)."""

    harmonics: np.ndarray
    coefficients: np.ndarray
    period: float = 1.0

    def __getitem__(self, n: int) -> complex:
        idx = np.flatnonzero(self.harmonics == n)
        return complex(self.coefficients[idx[0]]) if idx.size else 0j

    def as_dict(self) -> dict[int, complex]:
        return {int(n): complex(c) for n, c in zip(self.harmonics, self.coefficients)}

    def power(self) -> float:
        return float(np.sum(np.abs(self.coefficients) ** 2))


def balanced_harmonics(N: int) -> np.ndarray:
    """Signed harmonic index of each FFT bin, in ``(-N/2, N/2]``."""
    k = np.arange(N)
    return np.where(k <= N // 2, k, k - N)


def analyze(env: PeriodicEnvelope) -> LineSpectrum:
    """Discrete Fourier-series coefficients ``c_n = (1/N) sum_k E_k e^{-2 pi j n k / N}``."""
    return LineSpectrum(balanced_harmonics(env.N), np.fft.fft(env.samples) / env.N, env.period)


def synthesize(spectrum: LineSpectrum, N: int | None = None) -> PeriodicEnvelope:
    """Sample ``sum_n c_n e^{2 pi j n t / T}`` on an N-point grid.

    ``N`` defaults to the number of lines; harmonics are folded onto the grid
    modulo ``N``.
    """
    N = N or len(spectrum.harmonics)
    bins = np.zeros(N, dtype=complex)
    np.add.at(bins, np.asarray(spectrum.harmonics) % N, spectrum.coefficients)
    return PeriodicEnvelope(np.fft.ifft(bins) * N, spectrum.period)


def transfer(order: TalbotOrder, harmonics: np.ndarray) -> np.ndarray:
    """``H(omega_n) = exp(-j pi sigma p n^2 / q)``, exponent reduced mod 2q in integers."""
    n = np.asarray(harmonics, dtype=np.int64)
    k = (order.p % (2 * order.q)) * (n * n % (2 * order.q)) % (2 * order.q)
    return np.exp(-1j * np.pi * order.sigma * k / order.q)


def propagate(env: PeriodicEnvelope, order: TalbotOrder) -> PeriodicEnvelope:
    """Dispersive propagation to the Talbot plane of the given order."""
    spec = analyze(env)
    spec.coefficients = spec.coefficients * transfer(order, spec.harmonics)
    return synthesize(spec, env.N)


def reconstruct_fractional(cell: PeriodicEnvelope, order: TalbotOrder) -> PeriodicEnvelope:
    """Weighted sum of delayed unit cells, built from the closed-form weights.

    ``(1/sqrt(q)) sum_n x_n w(t - n T/q)`` periodised, then delayed by ``T/2``
    when ``p q`` is odd. Needs ``q | N`` and, for the half-period delay, even
    ``N``.
    """
    q, N = order.q, cell.N
    if N % q:
        raise GridMismatchError(f"N={N} is not divisible by q={q}")
    if order.e_pq and N % 2:
        raise GridMismatchError(f"half-period delay needs even N, got N={N}")
    weights = np.asarray(talbot_phases(order)) / math.sqrt(q)
    step = N // q
    out = np.zeros(N, dtype=complex)
    for n, w in enumerate(weights):
        out += w * np.roll(cell.samples, n * step)
    if order.e_pq:
        out = np.roll(out, N // 2)
    return PeriodicEnvelope(out, cell.period)


def compare(a: PeriodicEnvelope, b: PeriodicEnvelope) -> dict[str, float]:
    """``l_inf`` (max abs difference), ``l2`` (RMS difference) and ``peak_ratio``.

    ``peak_ratio`` is ``max|a| / max|b|`` (``inf`` if ``b`` vanishes).
    """
    if a.N != b.N or not math.isclose(a.period, b.period):
        raise ValueError(f"envelopes differ in shape: N={a.N}/{b.N}, T={a.period}/{b.period}")
    diff = np.abs(a.samples - b.samples)
    peak_b = float(np.max(np.abs(b.samples)))
    peak_a = float(np.max(np.abs(a.samples)))
    return {
        "l_inf": float(np.max(diff)),
        "l2": float(np.sqrt(np.mean(diff**2))),
        "peak_ratio": peak_a / peak_b if peak_b else math.inf,
    }


# --- file formats -------------------------------------------------------------

def envelope_to_csv(env: PeriodicEnvelope) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["k", "t", "re", "im"])
    for k, (t, v) in enumerate(zip(env.times, env.samples)):
        writer.writerow([k, repr(float(t)), repr(float(v.real)), repr(float(v.imag))])
    return buf.getvalue()


def envelope_sidecar(env: PeriodicEnvelope) -> str:
    return json.dumps({"T": env.period, "N": env.N}) + "\n"


def envelope_from_csv(text: str, sidecar: str | None = None) -> PeriodicEnvelope:
    """Parse ``k,t,re,im`` rows; the sidecar ``{T, N}`` fixes the period and checks N.

    Without a sidecar the period is inferred from the time column.
    """
    rows = list(csv.DictReader(io.StringIO(text)))
    if not rows:
        raise ValueError("envelope file has no samples")
    missing = {"k", "re", "im"} - set(rows[0])
    if missing:
        raise ValueError(f"envelope file lacks columns {sorted(missing)}")
    rows.sort(key=lambda r: int(r["k"]))
    if [int(r["k"]) for r in rows] != list(range(len(rows))):
        raise ValueError("sample indices must run 0..N-1")
    samples = np.array([complex(float(r["re"]), float(r["im"])) for r in rows])
    if sidecar is not None:
        meta = json.loads(sidecar)
        period = float(meta["T"])
        if int(meta["N"]) != len(samples):
            raise ValueError(f"sidecar says N={meta['N']} but file has {len(samples)} samples")
    elif len(rows) > 1 and "t" in rows[0]:
        period = float(rows[1]["t"]) * len(rows)
    else:
        period = 1.0
    return PeriodicEnvelope(samples, period)


def spectrum_to_csv(spec: LineSpectrum) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "re", "im"])
    for n, c in sorted(zip(spec.harmonics.tolist(), spec.coefficients)):
        writer.writerow([n, repr(float(c.real)), repr(float(c.imag))])
    return buf.getvalue()
