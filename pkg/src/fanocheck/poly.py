"""Sparse multivariate polynomials over F_p with weighted multi-gradings.

A monomial is a tuple of exponents, one slot per variable.  A polynomial
stores a dict mapping monomials to coefficients in {1, ..., p-1}; zero
coefficients are never kept.  The canonical term order everywhere is graded
reverse lexicographic (grevlex), ties broken towards earlier variables.

Exponents are capped at 2**16 so that products and powers fail loudly
instead of silently blowing up.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence, Union

EXPONENT_LIMIT = 1 << 16

Monomial = tuple


class AlgebraError(Exception):
    """Base class for failures in the exact-algebra layer."""


class ExponentOverflowError(AlgebraError):
    """An exponent reached the 2**16 cap."""


class ZeroPolynomialError(AlgebraError):
    """An operation that needs a nonzero polynomial got the zero one."""


class NonHomogeneousError(AlgebraError):
    """A weighted-homogeneity check failed; carries two witness monomials."""

    def __init__(self, mono_a: Monomial, mono_b: Monomial):
        self.mono_a = mono_a
        self.mono_b = mono_b
        super().__init__(
            f"monomials {mono_a} and {mono_b} have different multidegrees"
        )


class ParseError(AlgebraError):
    """Syntax error in a polynomial or class expression; knows its position."""

    def __init__(self, message: str, pos: int):
        self.pos = pos
        super().__init__(f"{message} (at position {pos})")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Prime:
    """A prime characteristic in the supported range 2..97."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not (2 <= self.p <= 97):
            raise ValueError(f"characteristic must be an integer in 2..97, got {self.p}")
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")


def as_prime(p: Union[int, Prime]) -> Prime:
    return p if isinstance(p, Prime) else Prime(p)


# ---------------------------------------------------------------------------
# monomial helpers
# ---------------------------------------------------------------------------

def grevlex_key(mono: Monomial):
    """Sort key: larger key means grevlex-larger monomial."""
    return (sum(mono), tuple(-e for e in reversed(mono)))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    out = tuple(x + y for x, y in zip(a, b))
    if any(e >= EXPONENT_LIMIT for e in out):
        raise ExponentOverflowError(f"exponent cap {EXPONENT_LIMIT} exceeded in {out}")
    return out


def mono_pow(a: Monomial, e: int) -> Monomial:
    out = tuple(x * e for x in a)
    if any(x >= EXPONENT_LIMIT for x in out):
        raise ExponentOverflowError(f"exponent cap {EXPONENT_LIMIT} exceeded in {out}")
    return out


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True when a divides b."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    """Quotient b / a; caller guarantees divisibility."""
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# variables and gradings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VariableSet:
    """Ordered variable names plus a weight vector per variable.

    Weight vectors all have the same length k, one slot per grading
    component (k > 1 happens for products of weighted projective spaces).
    Every variable must have a positive weight in at least one component.
    """

    names: tuple
    weights: tuple

    def __post_init__(self):
        if not self.names:
            raise ValueError("need at least one variable")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")
        if len(self.weights) != len(self.names):
            raise ValueError("one weight vector per variable required")
        k = len(self.weights[0])
        for name, w in zip(self.names, self.weights):
            if len(w) != k:
                raise ValueError("weight vectors must share one length")
            if any(c < 0 for c in w) or all(c == 0 for c in w):
                raise ValueError(f"variable {name} needs a nonnegative weight vector "
                                 "with some positive component")

    @classmethod
    def unit(cls, names) -> "VariableSet":
        """All variables of weight 1 in a single grading component."""
        names = tuple(names.split(",")) if isinstance(names, str) else tuple(names)
        names = tuple(n.strip() for n in names)
        return cls(names, tuple((1,) for _ in names))

    @classmethod
    def weighted(cls, names, weights: Sequence[int]) -> "VariableSet":
        """Single grading component with one integer weight per variable."""
        names = tuple(names.split(",")) if isinstance(names, str) else tuple(names)
        names = tuple(n.strip() for n in names)
        return cls(names, tuple((int(w),) for w in weights))

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def ncomponents(self) -> int:
        return len(self.weights[0])

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def multidegree(self, mono: Monomial) -> tuple:
        """Weighted multidegree of a monomial, one entry per component."""
        out = [0] * self.ncomponents
        for e, w in zip(mono, self.weights):
            if e:
                for c in range(len(out)):
                    out[c] += e * w[c]
        return tuple(out)


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

class Polynomial:
    """Immutable sparse polynomial over F_p.

    ``terms`` is exposed directly for the ideal machinery; treat it as
    read-only.  Coefficients are stored as their canonical lifts 1..p-1.
    """

    __slots__ = ("field", "vars", "terms")

    def __init__(self, field: Union[int, Prime], variables: VariableSet,
                 terms: Mapping):
        field = as_prime(field)
        p = field.p
        n = variables.n
        clean = {}
        for mono, coeff in terms.items():
            mono = tuple(mono)
            if len(mono) != n:
                raise ValueError(f"monomial {mono} does not fit {n} variables")
            if any(e < 0 or e >= EXPONENT_LIMIT for e in mono):
                raise ExponentOverflowError(f"bad exponent tuple {mono}")
            c = coeff % p
            if c:
                clean[mono] = c
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "vars", variables)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, field, variables: VariableSet) -> "Polynomial":
        return cls(field, variables, {})

    @classmethod
    def constant(cls, field, variables: VariableSet, c: int) -> "Polynomial":
        return cls(field, variables, {(0,) * variables.n: c})

    @classmethod
    def variable(cls, field, variables: VariableSet, name: str) -> "Polynomial":
        i = variables.index(name)
        mono = tuple(1 if j == i else 0 for j in range(variables.n))
        return cls(field, variables, {mono: 1})

    # -- basic queries -----------------------------------------------------

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def num_terms(self) -> int:
        return len(self.terms)

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise ZeroPolynomialError("zero polynomial has no leading monomial")
        return max(self.terms, key=grevlex_key)

    def leading_coefficient(self) -> int:
        return self.terms[self.leading_monomial()]

    def sorted_terms(self):
        """Terms in decreasing grevlex order."""
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in m) for m in self.terms)

    def constant_value(self) -> int:
        """Value of a constant polynomial (0 for the zero polynomial)."""
        if not self.is_constant():
            raise AlgebraError("polynomial is not constant")
        return next(iter(self.terms.values()), 0)

    # -- arithmetic --------------------------------------------------------

    def _check_compatible(self, other: "Polynomial"):
        if self.field != other.field or self.vars != other.vars:
            raise ValueError("polynomials live in different rings")

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (self.field == other.field and self.vars == other.vars
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.field, self.vars, frozenset(self.terms.items())))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_compatible(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Polynomial(self.field, self.vars, out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        self._check_compatible(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) - c
        return Polynomial(self.field, self.vars, out)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.field, self.vars,
                          {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return Polynomial(self.field, self.vars,
                              {m: c * other for m, c in self.terms.items()})
        self._check_compatible(other)
        p = self.p
        out = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = mono_mul(ma, mb)
                out[m] = (out.get(m, 0) + ca * cb) % p
        return Polynomial(self.field, self.vars, out)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.__mul__(other)
        return NotImplemented

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise ValueError("negative exponent")
        result = Polynomial.constant(self.field, self.vars, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def monic(self) -> "Polynomial":
        if self.is_zero:
            raise ZeroPolynomialError("cannot normalize the zero polynomial")
        inv = pow(self.leading_coefficient(), -1, self.p)
        return self * inv

    def partial(self, name: str) -> "Polynomial":
        """Formal partial derivative with respect to one variable."""
        i = self.vars.index(name)
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                lowered = m[:i] + (e - 1,) + m[i + 1:]
                out[lowered] = out.get(lowered, 0) + c * e
        return Polynomial(self.field, self.vars, out)

    # -- printing ----------------------------------------------------------

    def _term_str(self, mono: Monomial, coeff: int) -> str:
        factors = []
        for name, e in zip(self.vars.names, mono):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        if coeff != 1 or not factors:
            factors.insert(0, str(coeff))
        return "*".join(factors)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(self._term_str(m, c) for m, c in self.sorted_terms())

    def __repr__(self):
        return f"Polynomial(p={self.p}, {self})"


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str  # "int" | "ident" | "op" | "end"
    text: str
    pos: int


_OP_CHARS = set("+-*^(),")


def tokenize(text: str) -> list:
    """Shared lexer for polynomial and class expressions."""
    out = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            out.append(Token("int", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append(Token("ident", text[i:j], i))
            i = j
            continue
        if ch in _OP_CHARS:
            out.append(Token("op", ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    out.append(Token("end", "", n))
    return out


class _TokenStream:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    @property
    def cur(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        if tok.kind != "end":
            self.i += 1
        return tok

    def accept_op(self, ch: str) -> bool:
        if self.cur.kind == "op" and self.cur.text == ch:
            self.advance()
            return True
        return False


def _parse_uint(ts: _TokenStream, what: str) -> int:
    tok = ts.cur
    if tok.kind != "int":
        raise ParseError(f"expected {what}", tok.pos)
    ts.advance()
    return int(tok.text)


def _parse_factor(ts: _TokenStream, variables: VariableSet):
    """One variable with an optional ^exponent; returns (index, exponent)."""
    tok = ts.cur
    if tok.kind != "ident":
        raise ParseError("expected a variable name", tok.pos)
    ts.advance()
    try:
        idx = variables.index(tok.text)
    except KeyError:
        raise ParseError(f"unknown variable {tok.text!r}", tok.pos) from None
    e = 1
    if ts.accept_op("^"):
        e = _parse_uint(ts, "an exponent")
        if e >= EXPONENT_LIMIT:
            raise ParseError(f"exponent {e} exceeds the cap {EXPONENT_LIMIT}", tok.pos)
    return idx, e


def _parse_term(ts: _TokenStream, variables: VariableSet, p: int):
    """coeff ('*'? factor)* | factor ('*'? factor)* ; returns (coeff, mono)."""
    tok = ts.cur
    coeff = 1
    exps = [0] * variables.n
    if tok.kind == "int":
        ts.advance()
        coeff = int(tok.text) % p
    elif tok.kind == "ident":
        idx, e = _parse_factor(ts, variables)
        exps[idx] += e
    else:
        raise ParseError("expected a term", tok.pos)
    while True:
        if ts.accept_op("*"):
            idx, e = _parse_factor(ts, variables)
            exps[idx] += e
            continue
        if ts.cur.kind == "ident":
            idx, e = _parse_factor(ts, variables)
            exps[idx] += e
            continue
        break
    if any(e >= EXPONENT_LIMIT for e in exps):
        raise ParseError(f"exponent cap {EXPONENT_LIMIT} exceeded", tok.pos)
    return coeff, tuple(exps)


def parse_poly(text: str, variables: VariableSet, p: Union[int, Prime]) -> Polynomial:
    """Parse ``text`` into a polynomial; coefficients reduce mod p as parsed.

    Grammar: expr := term (('+'|'-') term)*, with a single optional unary
    minus in front of the leading term.  Adjacency means multiplication, as
    does '*'.
    """
    field = as_prime(p)
    ts = _TokenStream(tokenize(text))
    terms = {}
    sign = -1 if ts.accept_op("-") else 1
    while True:
        coeff, mono = _parse_term(ts, variables, field.p)
        terms[mono] = terms.get(mono, 0) + sign * coeff
        tok = ts.cur
        if tok.kind == "op" and tok.text in "+-":
            sign = 1 if tok.text == "+" else -1
            ts.advance()
            continue
        if tok.kind == "end":
            break
        raise ParseError(f"unexpected {tok.text!r}", tok.pos)
    return Polynomial(field, variables, terms)


# ---------------------------------------------------------------------------
# graded structure and Frobenius helpers
# ---------------------------------------------------------------------------

def weighted_degree(f: Polynomial) -> tuple:
    """Common multidegree of all terms; raises on zero or inhomogeneous input."""
    if f.is_zero:
        raise ZeroPolynomialError("the zero polynomial has no multidegree")
    it = iter(f.terms)
    first = next(it)
    deg = f.vars.multidegree(first)
    for m in it:
        if f.vars.multidegree(m) != deg:
            raise NonHomogeneousError(first, m)
    return deg


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


def poly_pow(f: Polynomial, e: int) -> Polynomial:
    return f ** e


def _box_filter(terms: dict, q: int) -> dict:
    return {m: c for m, c in terms.items() if all(e < q for e in m)}


def _mul_boxed(a: dict, b: dict, p: int, q: int) -> dict:
    """Multiply coefficient dicts, dropping any monomial with an exponent >= q.

    Dropping after every product is sound because the discarded monomials
    generate an ideal: they can never contribute back below the cap.
    """
    out = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            if any(e >= q for e in m):
                continue
            v = (out.get(m, 0) + ca * cb) % p
            if v:
                out[m] = v
            elif m in out:
                del out[m]
    return out


def pow_mod_frobenius(f: Polynomial, e: int, q: int) -> Polynomial:
    """f**e reduced modulo the Frobenius-power ideal (x_0^q, ..., x_n^q).

    q must be a power of the characteristic.  Reduction happens after every
    multiplication, which keeps intermediate supports inside the q-box.
    """
    if e < 0:
        raise ValueError("negative exponent")
    p = f.p
    m = q
    s = 0
    while m > 1 and m % p == 0:
        m //= p
        s += 1
    if m != 1 or s < 1:
        raise ValueError(f"{q} is not a positive power of the characteristic {p}")
    one = {(0,) * f.vars.n: 1}
    result = one
    base = _box_filter(f.terms, q)
    while e:
        if e & 1:
            result = _mul_boxed(result, base, p, q)
        e >>= 1
        if e:
            base = _mul_boxed(base, base, p, q)
    return Polynomial(f.field, f.vars, result)


# ---------------------------------------------------------------------------
# Witt carry
# ---------------------------------------------------------------------------

def _int_mul(a: dict, b: dict) -> dict:
    out = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = mono_mul(ma, mb)
            v = out.get(m, 0) + ca * cb
            if v:
                out[m] = v
            elif m in out:
                del out[m]
    return out


def _int_pow(a: dict, e: int, nvars: int) -> dict:
    result = {(0,) * nvars: 1}
    base = dict(a)
    while e:
        if e & 1:
            result = _int_mul(result, base)
        e >>= 1
        if e:
            base = _int_mul(base, base)
    return result


def delta1(f: Polynomial) -> Polynomial:
    """First Witt carry of f: ((sum of lifted terms)^p - sum of p-th powers)/p mod p.

    Each coefficient lifts to its canonical representative in 0..p-1; the
    difference is divisible by p over the integers by the multinomial
    theorem, so the division below is exact.  A single-term polynomial has
    carry zero.
    """
    p = f.p
    n = f.vars.n
    if f.num_terms <= 1:
        return Polynomial.zero(f.field, f.vars)
    lifted = dict(f.terms)  # canonical lifts already
    total = _int_pow(lifted, p, n)
    for mono, c in lifted.items():
        mp = mono_pow(mono, p)
        v = total.get(mp, 0) - c ** p
        if v:
            total[mp] = v
        elif mp in total:
            del total[mp]
    out = {}
    for mono, c in total.items():
        if c % p:
            raise AlgebraError("Witt carry division was not exact; this is a bug")
        out[mono] = (c // p) % p
    return Polynomial(f.field, f.vars, out)
