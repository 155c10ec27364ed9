"""The parity-dependent modular inverse ``s`` of a fractional Talbot order p/q.

``s`` is the unique integer in ``[1, 2q-1]`` with ``s*p = 1 + q*e_q (mod 2q)``
and parity opposite to ``q``. For ``q == 1`` no such integer exists in
``[1, 1]``; the residue ``s = 0`` is used instead (it satisfies the modular
equation and the parity rule, and every phase built from it is trivial).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Optional

from .errors import DomainError
from .numtheory import gcd, mod_inverse, parity


@dataclass(frozen=True)
class TalbotOrder:
    """Coprime pair (p, q) with the dispersion sign ``sigma``."""

    p: int
    q: int
    sigma: int = 1

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise DomainError(f"p and q must be positive, got p={self.p}, q={self.q}")
        if gcd(self.p, self.q) != 1:
            raise DomainError(f"p={self.p} and q={self.q} are not coprime")
        if self.sigma not in (1, -1):
            raise DomainError(f"sigma must be +1 or -1, got {self.sigma}")

    @property
    def e_q(self) -> int:
        return parity(self.q)

    @property
    def e_pq(self) -> int:
        return parity(self.p * self.q)

    def conjugate(self) -> "TalbotOrder":
        return TalbotOrder(self.p, self.q, -self.sigma)


@dataclass(frozen=True)
class TalbotS:
    s: int
    order: TalbotOrder


def _order(p_or_order, q=None) -> TalbotOrder:
    if isinstance(p_or_order, TalbotOrder):
        return p_or_order
    return TalbotOrder(p_or_order, q)


def _inv(a: int, m: int) -> int:
    # modulo 1 every integer is an inverse; the canonical residue is 0
    return 0 if m == 1 else mod_inverse(a, m)


def compute_s(order: TalbotOrder) -> TalbotS:
    """Construct ``s`` for the order.

    q even: ``s = [1/p]_{2q}``; q odd: ``s = 2 [1/(2p)]_q``.

    >>> compute_s(TalbotOrder(5, 8)).s
    13
    """
    p, q = order.p, order.q
    if q % 2 == 0:
        s = mod_inverse(p, 2 * q)
    else:
        s = 2 * _inv(2 * p, q)
    return TalbotS(s, order)


def verify_s(order: TalbotOrder, s: int) -> bool:
    """Independent check of the four defining properties of ``s``.

    Range, modular equation, opposite parity to ``q`` and coprimality with
    ``q``. For ``q == 1`` the range is the single residue ``{0}``.
    """
    p, q = order.p, order.q
    lo, hi = (0, 0) if q == 1 else (1, 2 * q - 1)
    if not lo <= s <= hi:
        return False
    if (s * p - 1 - q * parity(q)) % (2 * q):
        return False
    if parity(s) == parity(q):
        return False
    return gcd(s, q) == 1


def compute_s_alt(order: TalbotOrder) -> int:
    """``s`` from the alternative squared-inverse formulas, reduced mod 2q.

    p, q odd: ``4p [1/(2p)]_q**2``; otherwise ``p [1/p]_q**2``.
    """
    p, q = order.p, order.q
    if p % 2 and q % 2:
        return 4 * p * _inv(2 * p, q) ** 2 % (2 * q)
    return p * _inv(p, q) ** 2 % (2 * q)


def closed_form_s(order: TalbotOrder) -> Optional[int]:
    """``s`` for the special series of orders, or ``None`` if none applies.

    (a) p = 1 (mod 2q): s = 1 + q e_q
    (b) p = q +/- 1 (mod 2q): s = q +/- 1
    (c) q = 1 + 2np: s = -2n;  q = -1 + 2np: s = +2n  (both mod 2q)

    The sign pairing in (c) is anti-correlated; it is the one that satisfies
    the defining modular equation.
    """
    p, q = order.p, order.q
    m = 2 * q
    if p % m == 1 % m:
        return (1 + q * parity(q)) % m
    if p % m == (q + 1) % m:
        return (q + 1) % m
    if p % m == (q - 1) % m:
        return (q - 1) % m
    if (q - 1) % (2 * p) == 0 and q > 1:
        return -2 * ((q - 1) // (2 * p)) % m
    if (q + 1) % (2 * p) == 0:
        return 2 * ((q + 1) // (2 * p)) % m
    return None


def complement_s(order: TalbotOrder, s: Optional[int] = None) -> int:
    """``s`` of the complementary order (q-p)/q from the ``s`` of p/q."""
    p, q = order.p, order.q
    if p >= q:
        raise DomainError(f"complement rule needs p < q, got p={p}, q={q}")
    if s is None:
        s = compute_s(order).s
    if q % 2:
        return 2 * q - s
    if s < q:
        return q - s
    return 3 * q - s


def s_table(q_max: int, p_max: int) -> dict[tuple[int, int], Optional[int]]:
    """``s`` for every ``q`` in ``[2, q_max]`` and ``p`` in ``[1, p_max]``.

    Keys are ``(q, p)``; non-coprime cells map to ``None``.
    """
    if q_max < 2:
        raise DomainError(f"q_max must be >= 2, got {q_max}")
    if p_max < 1:
        raise DomainError(f"p_max must be >= 1, got {p_max}")
    table = {}
    for q in range(2, q_max + 1):
        for p in range(1, p_max + 1):
            table[q, p] = compute_s(TalbotOrder(p, q)).s if gcd(p, q) == 1 else None
    return table


def table_to_csv(table: dict[tuple[int, int], Optional[int]]) -> str:
    qs = sorted({q for q, _ in table})
    ps = sorted({p for _, p in table})
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["q"] + ps)
    for q in qs:
        writer.writerow([q] + ["" if table[q, p] is None else table[q, p] for p in ps])
    return buf.getvalue()


def table_to_json(table: dict[tuple[int, int], Optional[int]]) -> str:
    rows = [{"p": p, "q": q, "s": s} for (q, p), s in sorted(table.items()) if s is not None]
    return json.dumps(rows, indent=1) + "\n"


def table_from_csv(text: str) -> dict[tuple[int, int], Optional[int]]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    ps = [int(p) for p in header[1:]]
    table = {}
    for row in reader:
        q = int(row[0])
        for p, cell in zip(ps, row[1:]):
            table[q, p] = int(cell) if cell else None
    return table
