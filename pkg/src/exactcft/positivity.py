"""Positivity data of the restricted six-point structures.

For each middle-channel weight pair (k+, k-), the amplitude matrix between
helicity pairs carries the channel constants of the chosen structure times
the chiral 4-point expansion coefficients. After projecting onto odd helicity
and a fixed helicity sign, each block is symmetric with exact rational
entries; the report carries the blocks and their exact inertia and stops
there, with no admissibility verdict.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .amplitudes import AmplitudeMatrix, fourpoint_amplitudes
from .channels import channel_coefficients
from .errors import ConsistencyError
from .linsolve import symmetric_inertia
from .special import format_rational

STRUCTURES = ("B", "H", "E2")


def helicity_labels(h_max: int, sign: int) -> list[tuple[int, int]]:
    """Odd-helicity pairs (h+, h-) with the given helicity sign, sorted."""
    out = []
    for hp in range(1, h_max + 1):
        for hm in range(1, h_max + 1):
            h = hp - hm
            if h % 2 == 0:
                continue
            if sign > 0 and h > 0:
                out.append((hp, hm))
            if sign < 0 and h < 0:
                out.append((hp, hm))
    return sorted(out)


def _channel_constant(structure: str, hp: int, hm: int) -> Fraction:
    if structure in ("B", "H"):
        return channel_coefficients(hp, hm, structure)
    raise ValueError(f"unknown structure {structure!r}")


@dataclass(frozen=True)
class PositivityBlock:
    k_plus: Fraction
    k_minus: Fraction
    sign: int
    labels: list[tuple[int, int]]
    entries: list[list[Fraction]]
    inertia: tuple[int, int, int]

    def to_json(self) -> dict:
        return {
            "k_plus": format_rational(self.k_plus),
            "k_minus": format_rational(self.k_minus),
            "helicity_sign": "+" if self.sign > 0 else "-",
            "labels": [list(l) for l in self.labels],
            "entries": [[format_rational(v) for v in row] for row in self.entries],
            "inertia": {
                "positive": self.inertia[0],
                "negative": self.inertia[1],
                "zero": self.inertia[2],
            },
        }


@dataclass(frozen=True)
class PositivityReport:
    structure: str
    h_max: int
    k_max: int
    blocks: list[PositivityBlock]

    def block(self, n_plus: int, n_minus: int, sign: int) -> PositivityBlock:
        for b in self.blocks:
            if (
                b.k_plus == Fraction(3, 2) + n_plus
                and b.k_minus == Fraction(3, 2) + n_minus
                and b.sign == sign
            ):
                return b
        raise KeyError((n_plus, n_minus, sign))

    def to_json(self) -> dict:
        return {
            "structure": self.structure,
            "h_max": self.h_max,
            "k_max": self.k_max,
            "blocks": [b.to_json() for b in self.blocks],
        }


class _AmplitudeCache:
    def __init__(self, cap_n: int):
        self.cap_n = cap_n
        self._tables: dict[tuple[int, int], AmplitudeMatrix] = {}

    def value(self, h: int, h_prime: int, n: int) -> Fraction:
        key = (min(h, h_prime), max(h, h_prime))
        table = self._tables.get(key)
        if table is None:
            table = fourpoint_amplitudes(key[0], key[1], self.cap_n)
            self._tables[key] = table
        return table.value(n)


def _entry(
    structure: str,
    cache: _AmplitudeCache,
    row: tuple[int, int],
    col: tuple[int, int],
    n_plus: int,
    n_minus: int,
) -> Fraction:
    hp, hm = row
    hpp, hmp = col
    bb = cache.value(hp, hpp, n_plus) * cache.value(hm, hmp, n_minus)
    if structure == "E2":
        cb = _channel_constant("B", hp, hm) * _channel_constant("B", hpp, hmp)
        ch = _channel_constant("H", hp, hm) * _channel_constant("H", hpp, hmp)
        return 2 * (cb - ch) * bb
    c = _channel_constant(structure, hp, hm) * _channel_constant(structure, hpp, hmp)
    return c * bb


def positivity_report(structure: str, h_max: int, k_max: int) -> PositivityReport:
    """Assemble all odd-projected, sign-projected blocks with exact inertia.

    structure "B" and "H" follow the two weightings; "E2" is the twist-2 part
    of the exotic structure (twice the difference of the two), whose
    equal-sign blocks vanish identically. No admissibility verdict is drawn
    from the signatures.
    """
    if structure not in STRUCTURES:
        raise ValueError(f"structure must be one of {STRUCTURES}")
    if h_max < 2:
        raise ValueError("h_max must be >= 2 to contain any odd helicity pair")
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    cache = _AmplitudeCache(k_max)
    blocks = []
    for n_plus in range(k_max + 1):
        for n_minus in range(k_max + 1):
            for sign in (1, -1):
                labels = helicity_labels(h_max, sign)
                rows = [
                    [
                        _entry(structure, cache, r, c, n_plus, n_minus)
                        for c in labels
                    ]
                    for r in labels
                ]
                for i in range(len(labels)):
                    for j in range(len(labels)):
                        if rows[i][j] != rows[j][i]:
                            raise ConsistencyError(
                                "assembled block is not symmetric"
                            )
                blocks.append(
                    PositivityBlock(
                        Fraction(3, 2) + n_plus,
                        Fraction(3, 2) + n_minus,
                        sign,
                        labels,
                        rows,
                        symmetric_inertia(rows),
                    )
                )
    return PositivityReport(structure, h_max, k_max, blocks)
