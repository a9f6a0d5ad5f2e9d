"""Laurent scalars in q and their images at primitive roots of unity."""

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, Tuple

from sympy import Poly, Symbol, totient
from sympy import cyclotomic_poly as _sympy_cyclotomic

Q = Symbol("q")


def _canonical(pairs: Iterable[Tuple[int, int]]) -> Tuple[Tuple[int, int], ...]:
    acc: Dict[int, int] = {}
    for exp, coeff in pairs:
        acc[exp] = acc.get(exp, 0) + coeff
    return tuple(sorted((e, c) for e, c in acc.items() if c != 0))


@dataclass(frozen=True)
class LaurentScalar:
    """Finite sum of c * q^e with integer c. `terms` is sorted by exponent, zero-free."""

    terms: Tuple[Tuple[int, int], ...] = ()

    @classmethod
    def from_terms(cls, pairs):
        if isinstance(pairs, dict):
            pairs = pairs.items()
        return cls(_canonical(pairs))

    @classmethod
    def const(cls, c: int):
        return cls(((0, c),) if c else ())

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1):
        return cls(((exp, coeff),) if coeff else ())

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_unit_monomial(self):
        return len(self.terms) == 1 and abs(self.terms[0][1]) == 1

    def __add__(self, other):
        other = _coerce(other)
        return LaurentScalar(_canonical(self.terms + other.terms))

    __radd__ = __add__

    def __neg__(self):
        return LaurentScalar(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if not self.terms or not other.terms:
            return ZERO
        return LaurentScalar(_canonical(
            (e1 + e2, c1 * c2) for e1, c1 in self.terms for e2, c2 in other.terms
        ))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_unit_monomial():
                raise ValueError(f"Only ±q^e can be inverted, got: {self}")
            (e, c), = self.terms
            return LaurentScalar.monomial(e * k, c ** (-k))
        result = ONE
        for _ in range(k):
            result = result * self
        return result

    def shift(self, k: int):
        """Multiply by q^k."""
        return LaurentScalar(tuple((e + k, c) for e, c in self.terms))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for i, (e, c) in enumerate(reversed(self.terms)):
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                base = "q" if e == 1 else f"q^{e}"
                body = base if mag == 1 else f"{mag}*{base}"
            if i == 0:
                parts.append(f"-{body}" if c < 0 else body)
            else:
                parts.append(f" - {body}" if c < 0 else f" + {body}")
        return "".join(parts)

    def __repr__(self):
        return f"LaurentScalar({self})"


def _coerce(x) -> LaurentScalar:
    if isinstance(x, LaurentScalar):
        return x
    if isinstance(x, int):
        return LaurentScalar.const(x)
    raise TypeError(f"Cannot use {type(x).__name__} as a Laurent scalar")


ZERO = LaurentScalar()
ONE = LaurentScalar.const(1)
Q_SCALAR = LaurentScalar.monomial(1)
Q_INV = LaurentScalar.monomial(-1)
Q_MINUS_QINV = Q_SCALAR - Q_INV

_ARITH_OPS = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
}


def laurent_arith(a: LaurentScalar, b: LaurentScalar, op: str) -> LaurentScalar:
    if op not in _ARITH_OPS:
        raise ValueError(f"Unknown op: {op}. Use: {list(_ARITH_OPS)}")
    return _ARITH_OPS[op](a, b)


# --- Roots of unity ---

@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> Poly:
    if m < 1:
        raise ValueError(f"Cyclotomic index must be >= 1, got: {m}")
    return Poly(_sympy_cyclotomic(m, Q), Q, domain="ZZ")


@lru_cache(maxsize=None)
def phi(m: int) -> int:
    return int(totient(m))


def _reduce_coeffs(low_to_high, m: int) -> Tuple[int, ...]:
    width = phi(m)
    if not any(low_to_high):
        return (0,) * width
    poly = Poly(list(reversed(low_to_high)), Q, domain="ZZ")
    # Phi_m is monic, so the remainder stays integral
    rem = poly.rem(cyclotomic_poly(m))
    coeffs = [int(c) for c in reversed(rem.all_coeffs())]
    coeffs += [0] * (width - len(coeffs))
    return tuple(coeffs[:width])


@dataclass(frozen=True)
class CyclotomicScalar:
    """Residue of an integer polynomial modulo the m-th cyclotomic polynomial."""

    modulus: int
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != phi(self.modulus):
            raise ValueError(
                f"Expected {phi(self.modulus)} coefficients for m={self.modulus}, got {len(self.coeffs)}"
            )

    @classmethod
    def zero(cls, m: int):
        return cls(m, (0,) * phi(m))

    def _check(self, other):
        if other.modulus != self.modulus:
            raise ValueError(f"Modulus mismatch: {self.modulus} vs {other.modulus}")

    def __add__(self, other):
        self._check(other)
        return CyclotomicScalar(self.modulus, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return CyclotomicScalar(self.modulus, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        prod = [0] * (2 * len(self.coeffs))
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod[i + j] += a * b
        return CyclotomicScalar(self.modulus, _reduce_coeffs(prod, self.modulus))

    def is_zero(self):
        return not any(self.coeffs)


def reduce_at_root(a: LaurentScalar, m: int) -> CyclotomicScalar:
    """Image of `a` under q -> primitive m-th root of unity (q^-1 becomes q^(m-1))."""
    if m < 1:
        raise ValueError(f"Root order must be >= 1, got: {m}")
    folded = [0] * m
    for e, c in a.terms:
        folded[e % m] += c
    return CyclotomicScalar(m, _reduce_coeffs(folded, m))
