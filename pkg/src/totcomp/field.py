"""Exact scalars: arbitrary-precision rationals and prime fields GF(p).

Scalars are plain values (fractions.Fraction for the rationals, canonical
residues in range(p) for GF(p)); a field object supplies the arithmetic.
Both representations keep a unique canonical zero, so hot loops may test
zero-ness by truthiness.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import DivisionByZero, NotInField, NotPrime, ParseError

_SCALAR_RE = re.compile(r"[+-]?\d+(?:/\d+)?\Z")
_MAX_PRIME = 2**31


def _clean(text):
    # accept the unicode minus sign on input, never emit it
    return text.strip().replace("−", "-")


class Rationals:
    """The field of rational numbers."""

    kind = "Q"
    p = None
    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if not a:
            raise DivisionByZero("inverse of zero")
        return 1 / a

    def div(self, a, b):
        return a * self.inv(b)

    def eq(self, a, b):
        return a == b

    def coerce(self, n):
        return Fraction(n)

    def parse(self, text):
        t = _clean(text)
        if not _SCALAR_RE.fullmatch(t):
            raise ParseError(f"bad scalar {text!r}")
        if "/" in t:
            num, den = t.split("/")
            if int(den) == 0:
                raise NotInField("zero denominator")
            return Fraction(int(num), int(den))
        return Fraction(int(t))

    def format(self, a):
        return str(a)

    def sample(self, rng):
        return Fraction(rng.randint(-6, 6), rng.randint(1, 4))

    def sample_nonzero(self, rng):
        while True:
            a = self.sample(rng)
            if a:
                return a

    def to_json(self):
        return {"field": "Q"}

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class PrimeField:
    """GF(p) for a prime p; scalars are ints in range(p)."""

    kind = "GF"

    def __init__(self, p):
        if not isinstance(p, int) or isinstance(p, bool):
            raise NotPrime(f"modulus must be an integer, got {p!r}")
        if p >= _MAX_PRIME:
            raise NotPrime(f"modulus {p} too large (must be < 2**31)")
        if not _is_prime(p):
            raise NotPrime(f"{p} is not prime")
        self.p = p
        self.zero = 0
        self.one = 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZero("inverse of zero")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return (a * self.inv(b)) % self.p

    def eq(self, a, b):
        return (a - b) % self.p == 0

    def coerce(self, n):
        return n % self.p

    def parse(self, text):
        t = _clean(text)
        if not _SCALAR_RE.fullmatch(t):
            raise ParseError(f"bad scalar {text!r}")
        if "/" in t:
            num, den = t.split("/")
            if int(den) % self.p == 0:
                raise NotInField(f"denominator {den} vanishes in GF({self.p})")
            return self.div(int(num) % self.p, int(den) % self.p)
        return int(t) % self.p

    def format(self, a):
        return str(a)

    def sample(self, rng):
        return rng.randrange(self.p)

    def sample_nonzero(self, rng):
        return rng.randrange(1, self.p)

    def to_json(self):
        return {"field": "GF", "p": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = Rationals()


def GF(p):
    return PrimeField(p)


def field_from_json(obj):
    if not isinstance(obj, dict) or "field" not in obj:
        raise ParseError(f"bad field description {obj!r}")
    if obj["field"] == "Q":
        return QQ
    if obj["field"] == "GF":
        if "p" not in obj:
            raise ParseError("GF field description needs a modulus 'p'")
        return PrimeField(obj["p"])
    raise ParseError(f"unknown field kind {obj['field']!r}")


def field_to_json(field):
    return field.to_json()


def field_from_text(text):
    """Parse a command-line field spec: 'Q', 'GF2', 'GF(2)' or 'GF:2'."""
    t = text.strip()
    if t == "Q":
        return QQ
    m = re.fullmatch(r"GF[:(]?(\d+)\)?", t)
    if m:
        return PrimeField(int(m.group(1)))
    raise ParseError(f"bad field spec {text!r} (expected Q or GF<p>)")
