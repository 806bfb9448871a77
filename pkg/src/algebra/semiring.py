"""
Max-plus scalar domain.

A TropScalar is one of three variants: a finite exact real, epsilon (-inf,
the max-plus zero) or top (+inf, which only appears through conjugation).
The primal structure is (max, +) with epsilon absorbing; the dual structure
is (min, +) where the epsilon/top clash resolves to top.
"""

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import total_ordering
from numbers import Integral, Rational
from typing import Optional, Union

from src.errors import DomainError, ParseError

# Exact finite payload: int when integral, Fraction otherwise
Number = Union[int, Fraction]
# Storage payload inside matrices: a Number or one of the two infinities
Payload = Union[int, Fraction, float]

NEG_INF = float('-inf')
POS_INF = float('inf')

EPSILON_TOKENS = ('*', '-inf')
TOP_TOKEN = '+inf'

_DECIMAL_RE = re.compile(r'^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$')
_RATIO_RE = re.compile(r'^[+-]?\d+/\d+$')


class Kind(Enum):
    EPSILON = 'epsilon'
    FINITE = 'finite'
    TOP = 'top'


_RANK = {Kind.EPSILON: 0, Kind.FINITE: 1, Kind.TOP: 2}


def _exact(value) -> Number:
    """Normalize a finite real to int (if integral) or Fraction."""
    if isinstance(value, bool):
        raise DomainError(f"Boolean is not a tropical scalar: {value!r}")
    if isinstance(value, Integral):
        return int(value)
    if isinstance(value, float):
        if value != value:
            raise DomainError("NaN is not a tropical scalar")
        value = Fraction(value)
    elif isinstance(value, Rational):
        value = Fraction(value)
    else:
        raise DomainError(f"Unsupported scalar payload: {value!r}")
    return value.numerator if value.denominator == 1 else value


@total_ordering
@dataclass(frozen=True)
class TropScalar:
    """Extended real: finite exact value, epsilon or top."""

    kind: Kind
    value: Optional[Number] = None

    def __post_init__(self):
        if self.kind is Kind.FINITE:
            if self.value is None:
                raise DomainError("Finite scalar needs a value")
            object.__setattr__(self, 'value', _exact(self.value))
        elif self.value is not None:
            raise DomainError(f"{self.kind.value} carries no payload")

    @classmethod
    def finite(cls, value) -> 'TropScalar':
        return cls(Kind.FINITE, value)

    @classmethod
    def from_number(cls, value) -> 'TropScalar':
        """Build a scalar from a storage payload (int, Fraction, float, +-inf)."""
        if isinstance(value, TropScalar):
            return value
        if isinstance(value, float):
            if value == NEG_INF:
                return EPSILON
            if value == POS_INF:
                return TOP
        return cls(Kind.FINITE, value)

    def to_number(self) -> Payload:
        if self.kind is Kind.EPSILON:
            return NEG_INF
        if self.kind is Kind.TOP:
            return POS_INF
        return self.value

    @property
    def is_finite(self) -> bool:
        return self.kind is Kind.FINITE

    @property
    def is_epsilon(self) -> bool:
        return self.kind is Kind.EPSILON

    @property
    def is_top(self) -> bool:
        return self.kind is Kind.TOP

    def _key(self):
        return (_RANK[self.kind], self.value if self.kind is Kind.FINITE else 0)

    def __lt__(self, other: 'TropScalar') -> bool:
        if not isinstance(other, TropScalar):
            return NotImplemented
        return self._key() < other._key()

    def __str__(self) -> str:
        return format_token(self)


EPSILON = TropScalar(Kind.EPSILON)
TOP = TropScalar(Kind.TOP)
ZERO = TropScalar(Kind.FINITE, 0)


def as_payload(value) -> Payload:
    """
    Convert any accepted scalar input to its matrix storage payload.

    Accepts TropScalar, int, Fraction, finite floats and the two float
    infinities. Finite floats are converted exactly.
    """
    if isinstance(value, TropScalar):
        return value.to_number()
    if isinstance(value, float) and value in (NEG_INF, POS_INF):
        return value
    return _exact(value)


def oplus(a: TropScalar, b: TropScalar) -> TropScalar:
    """a ⊕ b = max(a, b) under epsilon < finite < top."""
    return a if a >= b else b


def otimes(a: TropScalar, b: TropScalar) -> TropScalar:
    """a ⊗ b = a + b; epsilon absorbs every value, top included."""
    if a.is_epsilon or b.is_epsilon:
        return EPSILON
    if a.is_top or b.is_top:
        return TOP
    return TropScalar.finite(a.value + b.value)


def oplus_prime(a: TropScalar, b: TropScalar) -> TropScalar:
    """a ⊕' b = min(a, b)."""
    return a if a <= b else b


def otimes_prime(a: TropScalar, b: TropScalar) -> TropScalar:
    """a ⊗' b = a + b, except that the epsilon/top clash yields top."""
    if a.is_top or b.is_top:
        return TOP
    if a.is_epsilon or b.is_epsilon:
        return EPSILON
    return TropScalar.finite(a.value + b.value)


def neg(a: TropScalar) -> TropScalar:
    """Scalar ingredient of conjugation: -a, swapping epsilon and top."""
    if a.is_epsilon:
        return TOP
    if a.is_top:
        return EPSILON
    return TropScalar.finite(-a.value)


def parse_token(token: str) -> TropScalar:
    """
    Parse one scalar token.

    Grammar: decimal literal, ratio ``p/q``, ``*`` or ``-inf`` for epsilon,
    ``+inf`` for top.
    """
    if token in EPSILON_TOKENS:
        return EPSILON
    if token == TOP_TOKEN:
        return TOP
    if _DECIMAL_RE.match(token):
        return TropScalar.finite(Fraction(token))
    if _RATIO_RE.match(token):
        numerator, denominator = token.split('/')
        if int(denominator) == 0:
            raise ParseError(f"zero denominator in '{token}'")
        return TropScalar.finite(Fraction(int(numerator), int(denominator)))
    raise ParseError(f"malformed scalar token '{token}'")


def _terminating_digits(denominator: int) -> Optional[int]:
    """Number of decimal places needed for 1/denominator, None if it never terminates."""
    twos = fives = 0
    while denominator % 2 == 0:
        denominator //= 2
        twos += 1
    while denominator % 5 == 0:
        denominator //= 5
        fives += 1
    return max(twos, fives) if denominator == 1 else None


def format_token(scalar: TropScalar) -> str:
    """Render a scalar in the token grammar; parse_token inverts it exactly."""
    if scalar.is_epsilon:
        return EPSILON_TOKENS[0]
    if scalar.is_top:
        return TOP_TOKEN
    value = scalar.value
    if isinstance(value, int):
        return str(value)

    places = _terminating_digits(value.denominator)
    if places is None:
        return f"{value.numerator}/{value.denominator}"

    sign = '-' if value < 0 else ''
    scaled = abs(value.numerator) * 10 ** places // value.denominator
    whole, frac = divmod(scaled, 10 ** places)
    return f"{sign}{whole}.{frac:0{places}d}".rstrip('0')
