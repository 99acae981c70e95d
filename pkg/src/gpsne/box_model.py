"""Particle in an infinite one-dimensional well.

Closed-form spectra: the Schrodinger levels, the Grave de Peralta (GP)
relativistic levels, and the second-order expansion of the latter in
``(p / m c)^2`` with ``p = hbar n pi / L``. Reference energies from a Dirac
calculation are not computed here; they are read from a table and compared.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from .errors import DomainError
from .gp_gamma import gamma_from_kinetic
from .unit_scales import PhysicalConstants

__all__ = [
    "BoxSpec",
    "BoxLevel",
    "ReferenceRow",
    "ReferenceTable",
    "ComparisonRow",
    "ComparisonReport",
    "energy_nr",
    "gamma_box",
    "energy_gp",
    "energy_expansion",
    "spectrum",
    "compare_reference",
]


@dataclass(frozen=True)
class BoxSpec:
    mass: float
    width: float
    level: int = 1

    def __post_init__(self):
        if not self.mass > 0:
            raise DomainError(f"mass must be positive, got {self.mass!r}")
        if not self.width > 0:
            raise DomainError(f"width must be positive, got {self.width!r}")
        if int(self.level) != self.level or self.level < 1:
            raise DomainError(f"level must be an integer >= 1, got {self.level!r}")


@dataclass(frozen=True)
class BoxLevel:
    level: int
    width: float
    mass: float
    energy_nr: float
    energy_gp: float
    energy_expansion: float
    gamma: float


def _momentum(spec, consts):
    return consts.hbar * spec.level * math.pi / spec.width


def energy_nr(spec: BoxSpec, consts: PhysicalConstants) -> float:
    """Schrodinger level hbar^2 n^2 pi^2 / (2 m L^2)."""
    p = _momentum(spec, consts)
    return p * p / (2.0 * spec.mass)


def gamma_box(spec: BoxSpec, consts: PhysicalConstants) -> float:
    """gamma = sqrt(1 + (hbar n pi / (m c L))^2), i.e. the generic formula on a box eigenstate."""
    return gamma_from_kinetic(energy_nr(spec, consts), spec.mass, consts.c).gamma


def energy_gp(spec: BoxSpec, consts: PhysicalConstants) -> float:
    """GP level hbar^2 n^2 pi^2 / ([1 + gamma] m L^2).

    This form has no cancellation; it tends to ``p c`` as ``L -> 0`` and to
    the Schrodinger level as ``L -> inf``.
    """
    p = _momentum(spec, consts)
    return p * p / ((1.0 + gamma_box(spec, consts)) * spec.mass)


def energy_expansion(spec: BoxSpec, consts: PhysicalConstants) -> float:
    """Second-order truncation: E_nr - p^4 / (8 m^3 c^2)."""
    p = _momentum(spec, consts)
    e = p * p / (2.0 * spec.mass)
    if math.isinf(consts.c):
        return e
    return e - p ** 4 / (8.0 * spec.mass ** 3 * consts.c ** 2)


def spectrum(mass: float, width: float, n_max: int, consts: PhysicalConstants) -> List[BoxLevel]:
    """Levels 1..n_max of a box of the given width."""
    if int(n_max) != n_max or n_max < 1:
        raise DomainError(f"n_max must be an integer >= 1, got {n_max!r}")
    levels = []
    for n in range(1, int(n_max) + 1):
        spec = BoxSpec(mass, width, n)
        levels.append(
            BoxLevel(
                level=n,
                width=width,
                mass=mass,
                energy_nr=energy_nr(spec, consts),
                energy_gp=energy_gp(spec, consts),
                energy_expansion=energy_expansion(spec, consts),
                gamma=gamma_box(spec, consts),
            )
        )
    return levels


# -- reference comparison ---------------------------------------------------

@dataclass(frozen=True)
class ReferenceRow:
    width: float
    level: int
    energy_ref: float


@dataclass(frozen=True)
class ReferenceTable:
    rows: Sequence[ReferenceRow]
    provenance: str = ""

    def __post_init__(self):
        seen = set()
        for row in self.rows:
            if not (row.width > 0 and row.energy_ref > 0):
                raise DomainError(f"non-positive entry in reference row {row!r}")
            key = (row.width, row.level)
            if key in seen:
                raise DomainError(f"duplicate (width, level) pair {key!r}")
            seen.add(key)


@dataclass(frozen=True)
class ComparisonRow:
    level: int
    width: float
    energy_gp: float
    energy_ref: Optional[float]
    abs_dev: Optional[float]
    rel_dev: Optional[float]
    matched: bool
    above_threshold: Optional[bool] = None


@dataclass
class ComparisonReport:
    rows: List[ComparisonRow]
    warnings: List[str] = field(default_factory=list)


def _same_width(a, b, rtol=1e-12):
    return abs(a - b) <= rtol * max(abs(a), abs(b))


def compare_reference(
    levels: Sequence[BoxLevel],
    table: ReferenceTable,
    rest_energy: Optional[float] = None,
) -> ComparisonReport:
    """Deviation of computed GP levels from a reference table.

    Every computed level produces a row; levels with no matching
    ``(width, level)`` entry are kept with ``matched=False``. Reference rows
    that match no computed level are reported as warnings. When
    `rest_energy` (m c^2) is given, ``above_threshold`` marks reference
    energies above the pair-creation threshold 2 m c^2, where larger
    deviations are expected.
    """
    report = ComparisonReport(rows=[])
    if not table.rows:
        report.warnings.append("empty reference table")
        return report

    used = set()
    for lev in levels:
        match = None
        for i, row in enumerate(table.rows):
            if row.level == lev.level and _same_width(row.width, lev.width):
                match = i
                break
        if match is None:
            report.rows.append(
                ComparisonRow(lev.level, lev.width, lev.energy_gp, None, None, None, False)
            )
            continue
        used.add(match)
        ref = table.rows[match].energy_ref
        dev = lev.energy_gp - ref
        above = None if rest_energy is None else ref > 2.0 * rest_energy
        report.rows.append(
            ComparisonRow(lev.level, lev.width, lev.energy_gp, ref, abs(dev), abs(dev) / ref, True, above)
        )

    n_unmatched = sum(not r.matched for r in report.rows)
    if n_unmatched:
        report.warnings.append(f"{n_unmatched} computed level(s) have no reference value")
    for i, row in enumerate(table.rows):
        if i not in used:
            report.warnings.append(
                f"reference row width={row.width!r} level={row.level} matches no computed level"
            )
    return report
