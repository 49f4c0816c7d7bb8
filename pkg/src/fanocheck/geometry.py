"""Smoothness certification for hypersurfaces in products of (weighted)
projective spaces.

The workhorse is the affine-cone Jacobian criterion: the cone minus the
irrelevant locus is covered by the charts g != 0 where g runs over products
picking one variable from each factor, and on each chart the Jacobian ideal
must become the unit ideal after inverting g.  For weighted factors the
ambient itself carries quotient singularities along coordinate strata, so a
cone-smooth hypersurface is only quasi-smooth until it is also known to
avoid those strata.
"""

from __future__ import annotations

import enum
import itertools
import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

from .ideals import PolyIdeal, localized_is_unit
from .poly import (
    AlgebraError,
    ParseError,
    Polynomial,
    Prime,
    VariableSet,
    as_prime,
    weighted_degree,
)


class UnsupportedStratumError(Exception):
    """A positive-dimensional ambient singular stratum; not handled here."""


_FACTOR_LETTERS = "xyzwvuts"


@dataclass(frozen=True)
class AmbientFactor:
    """One weighted projective factor: variable names and positive weights."""

    names: tuple
    weights: tuple

    def __post_init__(self):
        if len(self.names) != len(self.weights) or not self.names:
            raise ValueError("factor needs matching nonempty names and weights")
        if any(w < 1 for w in self.weights):
            raise ValueError("weights must be positive")


class AmbientSpace:
    """A product of weighted projective factors with globally unique names."""

    def __init__(self, factors: Sequence[AmbientFactor]):
        if not factors:
            raise ValueError("need at least one factor")
        self.factors = tuple(factors)
        seen = set()
        for fac in self.factors:
            for name in fac.names:
                if name in seen:
                    raise ValueError(f"variable name {name!r} repeats across factors")
                seen.add(name)

    @cached_property
    def variable_set(self) -> VariableSet:
        """All variables, graded with one component per factor."""
        k = len(self.factors)
        names = []
        weights = []
        for j, fac in enumerate(self.factors):
            for name, w in zip(fac.names, fac.weights):
                names.append(name)
                weights.append(tuple(w if c == j else 0 for c in range(k)))
        return VariableSet(tuple(names), tuple(weights))

    @property
    def nfactors(self) -> int:
        return len(self.factors)

    def chart_tuples(self):
        """All ways of picking one variable name from each factor."""
        return itertools.product(*(fac.names for fac in self.factors))


def parse_ambient(text: str, names: Optional[Sequence[str]] = None) -> AmbientSpace:
    """Parse 'P(w1,...,wn)' factors separated by 'x', e.g. 'P(1,1,1) x P(1,1,1)'.

    ``names`` optionally supplies every variable name, flat, in factor order;
    the default is letter-per-factor naming x0..,y0..,z0.. .
    """
    weights_per_factor = []
    i, n = 0, len(text)
    expect_factor = True
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if not expect_factor:
            if ch in "xX*":
                expect_factor = True
                i += 1
                continue
            raise ParseError("expected 'x' between factors", i)
        if ch not in "Pp":
            raise ParseError("expected a factor 'P(...)'", i)
        i += 1
        if i >= n or text[i] != "(":
            raise ParseError("expected '(' after P", i)
        j = text.find(")", i)
        if j < 0:
            raise ParseError("unclosed factor", i)
        body = text[i + 1:j]
        try:
            ws = tuple(int(part.strip()) for part in body.split(","))
        except ValueError:
            raise ParseError(f"bad weight list {body!r}", i + 1) from None
        if any(w < 1 for w in ws):
            raise ParseError("weights must be positive integers", i + 1)
        weights_per_factor.append(ws)
        i = j + 1
        expect_factor = False
    if expect_factor:
        raise ParseError("empty ambient description", 0)
    total = sum(len(ws) for ws in weights_per_factor)
    if names is not None:
        names = [s.strip() for s in names]
        if len(names) != total:
            raise ValueError(f"need {total} variable names, got {len(names)}")
        flat = list(names)
    else:
        if len(weights_per_factor) > len(_FACTOR_LETTERS):
            raise ValueError("too many factors for default naming")
        flat = []
        for j, ws in enumerate(weights_per_factor):
            letter = _FACTOR_LETTERS[j]
            flat.extend(f"{letter}{i}" for i in range(len(ws)))
    factors = []
    pos = 0
    for ws in weights_per_factor:
        factors.append(AmbientFactor(tuple(flat[pos:pos + len(ws)]), ws))
        pos += len(ws)
    return AmbientSpace(factors)


# ---------------------------------------------------------------------------
# ambient singular strata
# ---------------------------------------------------------------------------

def _gcd_all(values) -> int:
    import math
    g = 0
    for v in values:
        g = math.gcd(g, v)
    return g


@dataclass(frozen=True)
class SingularStratum:
    """Coordinate stratum of ambient quotient singularities.

    ``variables`` spans the stratum (all other variables of its factor
    vanish); ``order`` is the gcd of their weights.
    """

    variables: tuple
    order: int


def ambient_singular_strata(space: AmbientSpace) -> list:
    """Maximal coordinate strata where some prime divides all active weights."""
    strata = {}
    for fac in space.factors:
        prime_divisors = set()
        for w in fac.weights:
            d = 2
            m = w
            while d * d <= m:
                if m % d == 0:
                    prime_divisors.add(d)
                    while m % d == 0:
                        m //= d
                d += 1
            if m > 1:
                prime_divisors.add(m)
        subsets = set()
        for ell in sorted(prime_divisors):
            members = tuple(name for name, w in zip(fac.names, fac.weights)
                            if w % ell == 0)
            if members:
                subsets.add(members)
        # keep only subsets maximal under inclusion
        for members in subsets:
            mset = set(members)
            if any(other != members and mset < set(other) for other in subsets):
                continue
            order = _gcd_all(w for name, w in zip(fac.names, fac.weights)
                             if name in members)
            strata[members] = SingularStratum(members, order)
    return sorted(strata.values(), key=lambda s: s.variables)


# ---------------------------------------------------------------------------
# hypersurfaces
# ---------------------------------------------------------------------------

class HypersurfaceVariety:
    """A multihomogeneous hypersurface inside an ambient product."""

    def __init__(self, prime, space: AmbientSpace, f: Polynomial):
        prime = as_prime(prime)
        if f.field != prime or f.vars != space.variable_set:
            raise ValueError("polynomial does not live in the ambient coordinate ring")
        if f.is_zero:
            raise ValueError("hypersurface polynomial must be nonzero")
        self.prime = prime
        self.space = space
        self.f = f
        if all(d == 0 for d in self.multidegree):
            raise ValueError("hypersurface must have nonzero multidegree")

    @cached_property
    def multidegree(self) -> tuple:
        return weighted_degree(self.f)

    @property
    def p(self) -> int:
        return self.prime.p


def jacobian_ideal(variety: HypersurfaceVariety) -> PolyIdeal:
    """(f, all partial derivatives of f)."""
    gens = [variety.f]
    for name in variety.space.variable_set.names:
        gens.append(variety.f.partial(name))
    return PolyIdeal(variety.prime, variety.space.variable_set, gens)


@dataclass(frozen=True)
class ConeResult:
    smooth_away_from_irrelevant: bool
    witness_chart: Optional[str] = None  # product of variables that failed
    witness_ideal: Optional[PolyIdeal] = None


def cone_smoothness(variety: HypersurfaceVariety) -> ConeResult:
    """Jacobian criterion on the affine cone away from the irrelevant locus.

    Localizes the Jacobian ideal at every product picking one variable per
    factor; these charts cover exactly the complement of the irrelevant
    locus, so passing them all certifies the punctured cone is smooth.
    """
    jac = jacobian_ideal(variety)
    vset = variety.space.variable_set
    for chart in variety.space.chart_tuples():
        g = Polynomial.constant(variety.prime, vset, 1)
        for name in chart:
            g = g * Polynomial.variable(variety.prime, vset, name)
        if not localized_is_unit(jac, g):
            return ConeResult(False, "*".join(chart), jac)
    return ConeResult(True)


class SmoothnessStatus(enum.Enum):
    SMOOTH = "Smooth"
    QUASI_SMOOTH_ONLY = "QuasiSmoothOnly"
    SINGULAR = "Singular"


def _has_pure_power(f: Polynomial, name: str) -> bool:
    idx = f.vars.index(name)
    for mono in f.terms:
        if mono[idx] and all(e == 0 for i, e in enumerate(mono) if i != idx):
            return True
    return False


def smoothness_verdict(variety: HypersurfaceVariety) -> SmoothnessStatus:
    """Full verdict: cone criterion plus avoidance of ambient singular points.

    Only zero-dimensional ambient strata are supported; a hypersurface is
    Smooth when the punctured cone is smooth and f carries a pure power of
    each stratum variable (so the stratum point misses the hypersurface),
    QuasiSmoothOnly when cone-smooth but some stratum point lies on it.
    """
    cone = cone_smoothness(variety)
    if not cone.smooth_away_from_irrelevant:
        return SmoothnessStatus.SINGULAR
    verdict = SmoothnessStatus.SMOOTH
    for stratum in ambient_singular_strata(variety.space):
        if len(stratum.variables) > 1:
            raise UnsupportedStratumError(
                f"stratum {stratum.variables} has positive dimension")
        (name,) = stratum.variables
        if not _has_pure_power(variety.f, name):
            verdict = SmoothnessStatus.QUASI_SMOOTH_ONLY
    return verdict


def euler_relation_report(variety: HypersurfaceVariety) -> list:
    """Check sum_x w_c(x) * x * df/dx == d_c * f in each grading component.

    Components whose degree is divisible by p are reported as skipped (the
    identity degenerates to 0 == 0 there) and flagged with a warning.
    Returns a list of (component, status) pairs with status 'ok' or
    'skipped'.
    """
    vset = variety.space.variable_set
    f = variety.f
    report = []
    for c, d_c in enumerate(variety.multidegree):
        if d_c % variety.p == 0:
            warnings.warn(
                f"Euler check skipped in component {c}: degree {d_c} is divisible "
                f"by the characteristic {variety.p}")
            report.append((c, "skipped"))
            continue
        total = Polynomial.zero(variety.prime, vset)
        for i, name in enumerate(vset.names):
            w = vset.weights[i][c]
            if w:
                total = total + w * (Polynomial.variable(variety.prime, vset, name)
                                     * f.partial(name))
        if total != d_c * f:
            raise AlgebraError(
                f"Euler relation failed in component {c}; grading bug")
        report.append((c, "ok"))
    return report
