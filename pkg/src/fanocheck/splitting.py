"""Frobenius-splitting verdicts for hypersurface rings.

The divisibility test behind the verdict: R/f is F-split exactly when
f^(p-1) survives outside the Frobenius power (x_0^p, ..., x_n^p) of the
homogeneous maximal ideal.  Everything here is exact mod-p arithmetic; a
verdict is a theorem about the specific input, not a numerical judgement.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

from .poly import (
    Monomial,
    Polynomial,
    Prime,
    VariableSet,
    as_prime,
    delta1,
    grevlex_key,
    pow_mod_frobenius,
    weighted_degree,
)


class SplitStatus(enum.Enum):
    FSPLIT = "FSplit"
    NOT_FSPLIT = "NotFSplit"


@dataclass(frozen=True)
class SplitVerdict:
    status: SplitStatus
    witness: Optional[Monomial] = None  # surviving monomial, grevlex-largest


class HypersurfaceRing:
    """A weighted-homogeneous hypersurface R = k[x]/f over F_p."""

    def __init__(self, prime, variables: VariableSet, f: Polynomial):
        prime = as_prime(prime)
        if f.field != prime or f.vars != variables:
            raise ValueError("polynomial does not live in the declared ring")
        if f.is_zero:
            raise ValueError("hypersurface polynomial must be nonzero")
        self.prime = prime
        self.vars = variables
        self.f = f

    @cached_property
    def degree(self) -> tuple:
        """Weighted multidegree of f; validates homogeneity on first use."""
        return weighted_degree(self.f)

    @property
    def p(self) -> int:
        return self.prime.p


def fedder_residue(ring: HypersurfaceRing) -> Polynomial:
    """f^(p-1) reduced modulo (x_0^p, ..., x_n^p)."""
    return pow_mod_frobenius(ring.f, ring.p - 1, ring.p)


def fedder_fsplit(ring: HypersurfaceRing) -> SplitVerdict:
    """F-splitting verdict with a surviving-monomial witness when split."""
    residue = fedder_residue(ring)
    if residue.is_zero:
        return SplitVerdict(SplitStatus.NOT_FSPLIT)
    witness = max(residue.terms, key=grevlex_key)
    return SplitVerdict(SplitStatus.FSPLIT, witness)


def delta1_probe(ring: HypersurfaceRing, a: int, b: int, s: int) -> Polynomial:
    """f^a * delta1(f)^b reduced modulo (x_i^(p^s)).

    These products are the terms whose survival higher splitting criteria
    inspect; the probe only performs the exact arithmetic and reduction.
    """
    if a < 0 or b < 0 or s < 1:
        raise ValueError("need a >= 0, b >= 0, s >= 1")
    q = ring.p ** s
    fa = pow_mod_frobenius(ring.f, a, q)
    db = pow_mod_frobenius(delta1(ring.f), b, q)
    prod = fa * db
    return pow_mod_frobenius(prod, 1, q)


def mono_str(variables: VariableSet, mono: Monomial) -> str:
    parts = []
    for name, e in zip(variables.names, mono):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


@dataclass(frozen=True)
class FedderReport:
    """Everything the splitting check computed, in printable form."""

    status: str
    witness: Optional[str]
    residue_terms: int
    delta1_terms: int
    delta1_degree: Optional[tuple]
    elapsed_ms: float

    def as_dict(self) -> dict:
        return {
            "status": self.status,
            "witness": self.witness,
            "residue_terms": self.residue_terms,
            "delta1_terms": self.delta1_terms,
            "delta1_degree": list(self.delta1_degree) if self.delta1_degree else None,
            "elapsed_ms": self.elapsed_ms,
        }


def fedder_report(ring: HypersurfaceRing) -> FedderReport:
    start = time.perf_counter()
    residue = fedder_residue(ring)
    carry = delta1(ring.f)
    elapsed = (time.perf_counter() - start) * 1000.0
    if residue.is_zero:
        status, witness = SplitStatus.NOT_FSPLIT.value, None
    else:
        status = SplitStatus.FSPLIT.value
        witness = mono_str(ring.vars, max(residue.terms, key=grevlex_key))
    return FedderReport(
        status=status,
        witness=witness,
        residue_terms=residue.num_terms,
        delta1_terms=carry.num_terms,
        delta1_degree=None if carry.is_zero else weighted_degree(carry),
        elapsed_ms=round(elapsed, 3),
    )
