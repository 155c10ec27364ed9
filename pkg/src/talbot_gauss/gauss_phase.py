"""Closed-form Gauss-sum phase sequences and their DFT pair.

The Talbot weights of order p/q form a length-q DFT pair

    x_n = e^{j sigma xi_0} exp(j pi sigma s n^2 / q)
    X_m = sqrt(q) exp(-j pi sigma p (1 + q e_q) m^2 / q)

with ``s`` from :func:`talbot_gauss.talbot_s.compute_s`. Every closed-form
phase is held as an :class:`ExactPhase` (a rational multiple of pi) and only
turned into a complex number at the boundary. The direct sums here
(:func:`gauss_sum_direct`, :func:`xi0_bruteforce`, :func:`dft`) are plain
floating-point summations and serve as independent oracles.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from .errors import DomainError
from .numtheory import gcd, jacobi
from .talbot_s import TalbotOrder, compute_s


@dataclass(frozen=True)
class ExactPhase:
    """The angle ``pi * num / den``, canonical: reduced, ``0 <= num < 2*den``."""

    num: int
    den: int = 1

    def __post_init__(self):
        if self.den <= 0:
            raise DomainError(f"denominator must be positive, got {self.den}")
        frac = Fraction(self.num, self.den) % 2
        object.__setattr__(self, "num", frac.numerator)
        object.__setattr__(self, "den", frac.denominator)

    @classmethod
    def of(cls, turns_of_pi: Union[Fraction, int]) -> "ExactPhase":
        f = Fraction(turns_of_pi)
        return cls(f.numerator, f.denominator)

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def __add__(self, other: "ExactPhase") -> "ExactPhase":
        return ExactPhase.of(self.fraction + other.fraction)

    def __sub__(self, other: "ExactPhase") -> "ExactPhase":
        return ExactPhase.of(self.fraction - other.fraction)

    def __neg__(self) -> "ExactPhase":
        return ExactPhase.of(-self.fraction)

    def __mul__(self, k: int) -> "ExactPhase":
        return ExactPhase.of(self.fraction * k)

    __rmul__ = __mul__

    @property
    def radians(self) -> float:
        return math.pi * self.num / self.den

    def to_complex(self) -> complex:
        # exact values on the eighth roots keep symmetric sequences bit-symmetric
        f = self.fraction
        if (4 * f).denominator == 1:
            return complex((1, (1 + 1j) / math.sqrt(2), 1j, (-1 + 1j) / math.sqrt(2),
                    -1, (-1 - 1j) / math.sqrt(2), -1j, (1 - 1j) / math.sqrt(2))[int(4 * f)])
        # evaluate on (-pi, pi] so that conjugate phases give bit-exact conjugates
        signed = f if f <= 1 else f - 2
        theta = math.pi * signed.numerator / signed.denominator
        return complex(math.cos(theta), math.sin(theta))

    def __str__(self):
        return f"{self.num}pi/{self.den}"


@dataclass
class PhaseSequence:
    """A length-q sequence ``gain * exp(j*phase_n)`` with periodic indexing.

    ``values`` holds the unit-magnitude factors, ``gain`` the common real
    amplitude. ``exact`` is present when the sequence comes from a closed form.
    ``seq[n]`` returns ``gain * values[n mod q]``.
    """

    values: np.ndarray
    exact: Optional[tuple[ExactPhase, ...]] = None
    gain: float = 1.0
    order: Optional[TalbotOrder] = None
    s: Optional[int] = None
    meta: dict = field(default_factory=dict)

    @classmethod
    def from_exact(cls, phases: Sequence[ExactPhase], **kw) -> "PhaseSequence":
        phases = tuple(phases)
        values = np.array([ph.to_complex() for ph in phases], dtype=complex)
        return cls(values, phases, **kw)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, n: int) -> complex:
        return self.gain * self.values[n % len(self.values)]

    def __array__(self, dtype=None, copy=None):
        arr = self.gain * self.values
        return arr if dtype is None else arr.astype(dtype)

    def phase(self, n: int) -> ExactPhase:
        if self.exact is None:
            raise ValueError("sequence has no exact phase backing")
        return self.exact[n % len(self.exact)]

    def conj(self) -> "PhaseSequence":
        exact = None if self.exact is None else tuple(-ph for ph in self.exact)
        order = None if self.order is None else self.order.conjugate()
        return PhaseSequence(self.values.conj(), exact, self.gain, order, self.s, dict(self.meta))


def _xi0_s_form(s: int, q: int) -> Fraction:
    if q % 2:
        return Fraction(1 - jacobi(s, q), 2) + Fraction(q - 1, 4)
    return Fraction(1 - jacobi(q, s), 2) - Fraction(s, 4)


def _xi0_p_form(p: int, q: int) -> Fraction:
    if q % 2:
        return Fraction(1 - jacobi(p, q), 2) + Fraction(q - 1, 4)
    return Fraction(1 - jacobi(q, p), 2) - Fraction(p, 4)


def xi0(order: TalbotOrder, form: str = "s") -> ExactPhase:
    """Global phase xi_0 of the Gauss sums for sigma = +1.

    q odd:  e^{j xi_0} = (s/q) e^{j pi (q-1)/4} = (p/q) e^{j pi (q-1)/4}
    q even: e^{j xi_0} = (q/s) e^{-j pi s/4}    = (q/p) e^{-j pi p/4}

    A Jacobi value of -1 contributes an extra pi. ``form`` selects the
    expression in ``s`` or in ``p``; both give the same phase.
    """
    if form == "s":
        return ExactPhase.of(_xi0_s_form(compute_s(order).s, order.q))
    if form == "p":
        return ExactPhase.of(_xi0_p_form(order.p, order.q))
    raise ValueError(f"form must be 's' or 'p', got {form!r}")


def xi0_bruteforce(s: int, q: int) -> complex:
    """``(1/sqrt(q)) * sum_m exp(-j pi s m^2 / q)`` by direct summation."""
    if q < 1:
        raise DomainError(f"q must be >= 1, got {q}")
    m = np.arange(q)
    # reduce the exponent mod 2q in integers before going to floats
    k = (s * m * m) % (2 * q)
    return complex(np.exp(-1j * np.pi * k / q).sum() / math.sqrt(q))


def talbot_phases(order: TalbotOrder) -> PhaseSequence:
    """The weights ``x_n = e^{j sigma xi_0} exp(j pi sigma s n^2 / q)``."""
    q, sigma = order.q, order.sigma
    s = compute_s(order).s
    base = xi0(order).fraction
    phases = [ExactPhase.of(sigma * (base + Fraction(s * n * n, q))) for n in range(q)]
    return PhaseSequence.from_exact(phases, order=order, s=s, meta={"kind": "x"})


def spectral_weights(order: TalbotOrder) -> PhaseSequence:
    """The DFT partner ``X_m = sqrt(q) exp(-j pi sigma p (1 + q e_q) m^2 / q)``."""
    p, q, sigma = order.p, order.q, order.sigma
    c = p * (1 + q * order.e_q)
    phases = [ExactPhase.of(Fraction(-sigma * c * m * m, q)) for m in range(q)]
    return PhaseSequence.from_exact(
        phases, gain=math.sqrt(q), order=order, s=compute_s(order).s, meta={"kind": "X"}
    )


def gauss_sum_direct(order: TalbotOrder, n: int) -> complex:
    """Direct q-term Gauss sum for the weight of replica ``n``.

    ``(1/sqrt(q)) sum_m exp(-j pi sigma p (1 + q e_q) m^2 / q) exp(2 pi j n m / q)``
    """
    p, q, sigma = order.p, order.q, order.sigma
    m = np.arange(q)
    quad = (p * (1 + q * order.e_q) * m * m) % (2 * q)
    lin = (2 * n * m) % (2 * q)
    return complex(np.exp(1j * np.pi * (lin - sigma * quad) / q).sum() / math.sqrt(q))


def _as_array(seq) -> np.ndarray:
    arr = np.asarray(seq, dtype=complex)
    if arr.ndim != 1 or arr.size == 0:
        raise DomainError("a non-empty one-dimensional sequence is required")
    return arr


def _dft_matrix(q: int, sign: int) -> np.ndarray:
    n = np.arange(q)
    return np.exp(sign * 2j * np.pi * (np.outer(n, n) % q) / q)


def dft(seq) -> np.ndarray:
    """``X_m = sum_n x_n exp(-2 pi j n m / q)`` by direct O(q^2) summation."""
    x = _as_array(seq)
    return _dft_matrix(len(x), -1) @ x


def idft(seq) -> np.ndarray:
    """``x_n = (1/q) sum_m X_m exp(2 pi j n m / q)``."""
    X = _as_array(seq)
    return _dft_matrix(len(X), 1) @ X / len(X)


def periodic_autocorrelation(seq) -> np.ndarray:
    """``R(n) = sum_k conj(x_k) x_{(k+n) mod q}`` for n = 0..q-1."""
    x = _as_array(seq)
    return np.array([np.vdot(x, np.roll(x, -n)) for n in range(len(x))])


def chu_sequence(N: int, M: int, sign: int = 1) -> np.ndarray:
    """Chu polyphase sequence of length M with root N.

    ``exp(sign j pi N m^2 / M)`` for even M, ``exp(sign j pi N m (m+1) / M)``
    for odd M.
    """
    if M < 1:
        raise DomainError(f"length must be >= 1, got {M}")
    if gcd(N, M) != 1:
        raise DomainError(f"N={N} and M={M} are not coprime")
    if sign not in (1, -1):
        raise DomainError(f"sign must be +1 or -1, got {sign}")
    m = np.arange(M)
    k = (N * m * m if M % 2 == 0 else N * m * (m + 1)) % (2 * M)
    return np.exp(sign * 1j * np.pi * k / M)


def is_chu_equivalent(seq, tol: float = 1e-10) -> bool:
    """Whether ``seq`` is a Chu sequence up to a global factor and a cyclic shift.

    Exhaustive over roots N in [1, 2q] coprime to q, both signs and all shifts.
    A :class:`PhaseSequence` is compared through its unit-magnitude values.
    """
    x = seq.values if isinstance(seq, PhaseSequence) else _as_array(seq)
    q = len(x)
    if np.any(np.abs(np.abs(x) - np.abs(x[0])) > tol) or abs(x[0]) == 0:
        return False
    rows = (np.arange(q)[:, None] + np.arange(q)[None, :]) % q  # row k is the shift by k
    for N in range(1, 2 * q + 1):
        if gcd(N, q) != 1:
            continue
        for sign in (1, -1):
            shifted = chu_sequence(N, q, sign)[rows]
            ratio = x[None, :] / shifted
            if np.min(np.max(np.abs(ratio - ratio[:, :1]), axis=1)) < tol * (1 + abs(x[0])):
                return True
    return False


def _phase_json(ph: ExactPhase) -> dict:
    return {"num": ph.num, "den": ph.den}


def sequence_to_json(seq: PhaseSequence) -> str:
    """``{p, q, sigma, s, xi0, gain, phases, complex}`` for a closed-form sequence."""
    order = seq.order
    doc = {
        "p": order.p,
        "q": order.q,
        "sigma": order.sigma,
        "s": seq.s,
        "xi0": _phase_json(ExactPhase.of(order.sigma * xi0(order).fraction)),
        "gain": seq.gain,
        "phases": [_phase_json(ph) for ph in seq.exact],
        "complex": [[float(v.real), float(v.imag)] for v in np.asarray(seq)],
    }
    return json.dumps(doc, indent=1) + "\n"


def sequence_from_json(text: str) -> PhaseSequence:
    doc = json.loads(text)
    order = TalbotOrder(doc["p"], doc["q"], doc["sigma"])
    phases = [ExactPhase(d["num"], d["den"]) for d in doc["phases"]]
    return PhaseSequence.from_exact(phases, gain=doc.get("gain", 1.0), order=order, s=doc["s"])


def sequence_to_csv(seq: PhaseSequence) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "num", "den", "re", "im"])
    for n, (ph, v) in enumerate(zip(seq.exact, np.asarray(seq))):
        writer.writerow([n, ph.num, ph.den, repr(float(v.real)), repr(float(v.imag))])
    return buf.getvalue()
