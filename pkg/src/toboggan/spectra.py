"""Closed-form large-l spectra, rescaled levels, gaps, and their limits."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import TextIO

from .expansion import tau_general
from .util import format_sig

SOURCE_CLOSED_FORM = "closed_form"
SOURCE_ORACLE = "oracle"


def energy_toboggan(winding_number: int, ell: float, n: int) -> float:
    """Closed-form level n of the N-winding cubic problem,

        E = -(10N+5)/2 * tau**(6N+3)
            + (2n+1)/(2N+1) * sqrt((10N+3)(10N+5)/2) * tau**(N+1/2),

    with tau = tau_general(N, l).  Asymptotic in l; the first neglected
    correction scales like tau**(-(6N+3)/4) (see energy_error_scale).
    """
    big_n = int(winding_number)
    if n != int(n) or n < 0:
        raise ValueError("quantum number n must be a non-negative integer")
    tau = tau_general(big_n, ell)
    well = -(10 * big_n + 5) / 2.0 * tau ** (6 * big_n + 3)
    rung = ((2 * int(n) + 1) / (2 * big_n + 1)
            * math.sqrt((10 * big_n + 3) * (10 * big_n + 5) / 2.0)
            * tau ** (big_n + 0.5))
    return well + rung


def energy_cubic(ell: float, n: int) -> float:
    """Non-winding (N = 0) spectrum -(5/2) tau**3 + sqrt(15 tau/2) (2n+1).

    Delegates to energy_toboggan(0, ...) so the two agree bit for bit.
    """
    return energy_toboggan(0, ell, n)


def density_parameter(ell: float) -> float:
    """The natural smallness parameter rho = 1/(l + 1/2)**2."""
    return 1.0 / (ell + 0.5) ** 2


def rescaled_level(winding_number: int, ell: float, n: int) -> float:
    """rho**(3/5) * E, which stays finite as l -> infinity."""
    return density_parameter(ell) ** 0.6 * energy_toboggan(winding_number, ell, n)


def rescaled_level_limit(winding_number: int) -> float:
    """l -> infinity limit of rescaled_level: -(10N+5)/2 * (2/(10N+3))**(3/5).

    Strictly decreasing in N, so winding pushes the rescaled spectrum down.
    """
    big_n = int(winding_number)
    return -(10 * big_n + 5) / 2.0 * (2.0 / (10 * big_n + 3)) ** 0.6


def gap(winding_number: int, ell: float, n: int = 0) -> float:
    """Level spacing E_{n+1} - E_n in closed form,

        G = 2/(2N+1) * sqrt((10N+3)(10N+5)/2) * tau**(N+1/2).

    The ladder is exactly equidistant, so the result is independent of n;
    the argument is accepted for interface symmetry only.
    """
    big_n = int(winding_number)
    if n != int(n) or n < 0:
        raise ValueError("quantum number n must be a non-negative integer")
    tau = tau_general(big_n, ell)
    return (2.0 / (2 * big_n + 1)
            * math.sqrt((10 * big_n + 3) * (10 * big_n + 5) / 2.0)
            * tau ** (big_n + 0.5))


def gap_constant(winding_number: float) -> float:
    """l -> infinity limit of gap / l**(1/5) as a function of real-valued N,

        2/(2N+1) * sqrt((10N+3)(10N+5)/2) * (2/(10N+3))**(1/10).

    Maximal at N = 1/2; among integers the ordering is g3 < g0 < g2 < g1.
    """
    big_n = float(winding_number)
    if big_n < 0:
        raise ValueError("winding number must be non-negative")
    return (2.0 / (2 * big_n + 1)
            * math.sqrt((10 * big_n + 3) * (10 * big_n + 5) / 2.0)
            * (2.0 / (10 * big_n + 3)) ** 0.1)


def energy_error_scale(winding_number: int, ell: float) -> float:
    """Size tau**(-(6N+3)/4) of the first neglected closed-form correction."""
    big_n = int(winding_number)
    return tau_general(big_n, ell) ** (-(6 * big_n + 3) / 4.0)


def energy_ho_exact(ell: float, omega: float, n: int) -> float:
    """Exact oscillator level omega*(4n + 1 - 2l), valid for n < l + 1/2."""
    if not omega > 0:
        raise ValueError("omega must be positive")
    if n != int(n) or n < 0:
        raise ValueError("quantum number n must be a non-negative integer")
    if not n < ell + 0.5:
        raise ValueError(f"level n = {n} out of range: need n < l + 1/2 = {ell + 0.5:g}")
    return omega * (4 * int(n) + 1 - 2.0 * ell)


def energy_ho_approx(ell: float, omega: float, n: int) -> float:
    """Stationary-point estimate -omega*sqrt((2l+1)**2 - 1) + 2*omega*(2n+1).

    Exceeds the exact level by omega*[(2l+1) - sqrt((2l+1)**2 - 1)],
    independently of n.
    """
    if not omega > 0:
        raise ValueError("omega must be positive")
    if n != int(n) or n < 0:
        raise ValueError("quantum number n must be a non-negative integer")
    x = 2.0 * ell + 1.0
    if x * x < 1.0:
        raise ValueError("need (2l+1)**2 >= 1")
    return -omega * math.sqrt(x * x - 1.0) + 2.0 * omega * (2 * int(n) + 1)


@dataclass(frozen=True)
class SpectrumEntry:
    winding_number: int
    ell: float
    n: int
    energy: float
    rescaled: float
    gap: float
    source: str


@dataclass
class SpectrumTable:
    """Per-level energies E, rescaled levels F and gaps G at a fixed l."""

    entries: list[SpectrumEntry]
    rho: float

    @classmethod
    def closed_form(cls, winding_number: int, ell: float, levels: int) -> "SpectrumTable":
        if levels < 1:
            raise ValueError("levels must be at least 1")
        spacing = gap(winding_number, ell)
        entries = [
            SpectrumEntry(int(winding_number), float(ell), n,
                          energy_toboggan(winding_number, ell, n),
                          rescaled_level(winding_number, ell, n),
                          spacing, SOURCE_CLOSED_FORM)
            for n in range(levels)
        ]
        return cls(entries, density_parameter(ell))

    def write_csv(self, stream: TextIO, digits: int = 17) -> None:
        stream.write("N,ell,rho,n,E,F,G,source\n")
        for e in self.entries:
            stream.write(",".join([
                str(e.winding_number),
                format_sig(e.ell, digits),
                format_sig(self.rho, digits),
                str(e.n),
                format_sig(e.energy, digits),
                format_sig(e.rescaled, digits),
                format_sig(e.gap, digits),
                e.source,
            ]) + "\n")

    def to_json(self) -> dict:
        return {
            "rho": self.rho,
            "entries": [
                {"N": e.winding_number, "ell": e.ell, "n": e.n,
                 "E": e.energy, "F": e.rescaled, "G": e.gap, "source": e.source}
                for e in self.entries
            ],
        }

    def write_json(self, stream: TextIO) -> None:
        json.dump(self.to_json(), stream, indent=2)
        stream.write("\n")
