"""Quantum minors, the theta / psi minor families and central-element candidates."""

from dataclasses import dataclass
from itertools import permutations
from math import gcd
from typing import Dict, List, Optional, Tuple

import numpy as np
from sympy import isprime

from qmat.laurent import LaurentScalar
from qmat.ncalgebra import AlgebraDescriptor, GeneratorId, NcPolynomial, multiply
from utils.logger import log


@dataclass(frozen=True)
class MinorDescriptor:
    """Row set I and column set J of a quantum minor D(I, J). Empty means the scalar 1."""

    rows: Tuple[int, ...]
    cols: Tuple[int, ...]

    def __post_init__(self):
        rows, cols = tuple(sorted(self.rows)), tuple(sorted(self.cols))
        if len(rows) != len(cols):
            raise ValueError(f"Minor needs |I| == |J|, got rows={rows}, cols={cols}")
        if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
            raise ValueError(f"Repeated index in minor rows={rows}, cols={cols}")
        if rows and min(rows + cols) < 1:
            raise ValueError("Minor indices start at 1")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)

    @classmethod
    def span(cls, row_lo, row_hi, col_lo, col_hi):
        return cls(tuple(range(row_lo, row_hi + 1)), tuple(range(col_lo, col_hi + 1)))

    @property
    def size(self):
        return len(self.rows)

    def is_empty(self):
        return not self.rows

    def transpose(self):
        return MinorDescriptor(self.cols, self.rows)

    def diagonal(self) -> List[GeneratorId]:
        return [GeneratorId(i, j) for i, j in zip(self.rows, self.cols)]

    def label(self):
        if self.is_empty():
            return "1"
        return f"D({','.join(map(str, self.rows))}|{','.join(map(str, self.cols))})"


@dataclass(frozen=True)
class ExponentMatrix:
    """Exponents of a PBW monomial laid out on the generator frame; reduced mod `modulus` if set."""

    entries: Tuple[Tuple[int, ...], ...]
    modulus: Optional[int] = None

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        if len({len(row) for row in rows}) > 1:
            raise ValueError("Ragged exponent matrix")
        if self.modulus is not None:
            if self.modulus < 1:
                raise ValueError(f"Modulus must be >= 1, got: {self.modulus}")
            rows = tuple(tuple(x % self.modulus for x in row) for row in rows)
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_array(cls, arr, modulus=None):
        return cls(tuple(tuple(int(x) for x in row) for row in arr), modulus)

    @classmethod
    def from_vec(cls, vec, alg: AlgebraDescriptor, modulus=None):
        arr = np.zeros(alg.shape, dtype=object)
        for g, x in zip(alg.generators, vec):
            arr[g.row - 1, g.col - 1] = int(x)
        return cls.from_array(arr, modulus)

    @property
    def shape(self):
        return (len(self.entries), len(self.entries[0]) if self.entries else 0)

    def as_array(self):
        return np.array(self.entries, dtype=object).reshape(self.shape)

    def vec(self, alg: AlgebraDescriptor) -> List[int]:
        """Entries on the generators of `alg`, PBW order. Support must lie inside the generator set."""
        if self.shape != alg.shape:
            raise ValueError(f"Exponent matrix {self.shape} does not fit {alg.describe()} frame {alg.shape}")
        for i, row in enumerate(self.entries, start=1):
            for j, x in enumerate(row, start=1):
                if x and not alg.contains((i, j)):
                    raise ValueError(f"Exponent at ({i},{j}) lies outside {alg.describe()}")
        return [self.entries[g.row - 1][g.col - 1] for g in alg.generators]

    def reduce(self, m: int):
        return ExponentMatrix(self.entries, m)

    def is_zero(self):
        return not any(any(row) for row in self.entries)


# --- Quantum minors ---

def _inversions(perm) -> int:
    return sum(1 for a in range(len(perm)) for b in range(a + 1, len(perm)) if perm[a] > perm[b])


def quantum_minor(d: MinorDescriptor, alg: AlgebraDescriptor) -> NcPolynomial:
    """Sum over bijections s: I -> J of (-q)^inv(s) Z_{i1,s(i1)} ... Z_{ik,s(ik)}."""
    if d.is_empty():
        return NcPolynomial.one(alg)
    for i in d.rows:
        for j in d.cols:
            if not alg.contains((i, j)):
                raise ValueError(f"Minor {d.label()} is not contained in {alg.describe()}")
    coeffs: Dict[Tuple[int, ...], LaurentScalar] = {}
    for perm in permutations(range(d.size)):
        mono = [0] * len(alg)
        # rows increase left to right, so the product is already PBW ordered
        for p, s in enumerate(perm):
            mono[alg.index((d.rows[p], d.cols[s]))] += 1
        inv = _inversions(perm)
        coeffs[tuple(mono)] = LaurentScalar.monomial(inv, (-1) ** inv)
    return NcPolynomial.from_dict(alg, coeffs)


def quantum_determinant(alg: AlgebraDescriptor, size: Optional[int] = None) -> NcPolynomial:
    size = size or min(alg.shape)
    return quantum_minor(MinorDescriptor.span(1, size, 1, size), alg)


# --- Minor families ---

def theta(k: int, n: int, r: int) -> MinorDescriptor:
    """Sliding r-minors on rows 1..r, shrinking to top-right corners once they hit column n."""
    if not 1 <= r <= n:
        raise ValueError(f"theta needs 1 <= r <= n, got n={n}, r={r}")
    if not 1 <= k <= n:
        raise ValueError(f"theta index out of range: {k} (valid 1..{n})")
    if k <= n + 1 - r:
        return MinorDescriptor.span(1, r, k, k + r - 1)
    return MinorDescriptor.span(1, n - k + 1, k, n)


def theta_tilde(t: int, n: int, r: int) -> MinorDescriptor:
    return theta(t, n, r).transpose()


def psi(t: int, n: int, r: int) -> MinorDescriptor:
    """Minor of M_q(n, r) whose diagonal is the line col - row = 1 - t."""
    if not 1 <= r <= n:
        raise ValueError(f"psi needs 1 <= r <= n, got n={n}, r={r}")
    if not 1 - r <= t <= n:
        raise ValueError(f"psi index out of range: {t} (valid {1 - r}..{n})")
    if t <= 0:
        j = 2 - t
        return MinorDescriptor.span(1, r - j + 1, j, r)
    if t <= n - r + 1:
        return MinorDescriptor.span(t, t + r - 1, 1, r)
    k = n - t + 1
    return MinorDescriptor.span(n - k + 1, n, 1, k)


def covariance_exponents_structural(d: MinorDescriptor, alg: AlgebraDescriptor) -> ExponentMatrix:
    """e per generator Z_ab with Z_ab * D = q^e D * Z_ab, read off the diagonal of D."""
    partner_col = dict(zip(d.rows, d.cols))
    partner_row = dict(zip(d.cols, d.rows))
    arr = np.zeros(alg.shape, dtype=object)
    for g in alg.generators:
        a, b = g
        in_rows, in_cols = a in partner_col, b in partner_row
        if in_rows and not in_cols:
            arr[a - 1, b - 1] = 1 if b < partner_col[a] else -1
        elif in_cols and not in_rows:
            arr[a - 1, b - 1] = 1 if a < partner_row[b] else -1
    return ExponentMatrix.from_array(arr)


# --- Central candidates ---

@dataclass(frozen=True)
class CentralCandidate:
    """Formal product of minor powers. Negative exponents stand for (m-1)-fold powers at order m."""

    label: str
    factors: Tuple[Tuple[MinorDescriptor, int], ...]
    shape: Tuple[int, int]
    modulus: Optional[int] = None

    def realized(self, m: Optional[int] = None) -> List[Tuple[MinorDescriptor, int]]:
        m = m or self.modulus
        out = []
        for d, e in self.factors:
            if e < 0:
                if m is None:
                    raise ValueError(f"{self.label} has negative exponents; a modulus is needed to realize it")
                e = (m - 1) * (-e)
            out.append((d, e))
        return out

    def expand(self, alg: AlgebraDescriptor, m: Optional[int] = None) -> NcPolynomial:
        result = NcPolynomial.one(alg)
        for d, e in self.realized(m):
            result = multiply(result, quantum_minor(d, alg) ** e)
        return result

    def describe(self):
        parts = []
        for d, e in self.factors:
            parts.append(d.label() if e == 1 else f"{d.label()}^{e}")
        return "*".join(parts) or "1"


def _candidate(label, factors, shape, m) -> CentralCandidate:
    merged: Dict[MinorDescriptor, int] = {}
    order: List[MinorDescriptor] = []
    for d, e in factors:
        if d.is_empty():
            continue
        if d not in merged:
            order.append(d)
            merged[d] = 0
        merged[d] += e
    return CentralCandidate(label, tuple((d, merged[d]) for d in order if merged[d]), shape, m)


def _monomial_candidate(label, arr, m) -> CentralCandidate:
    factors = []
    for (i, j), e in np.ndenumerate(arr):
        if e:
            factors.append((MinorDescriptor((i + 1,), (j + 1,)), int(e)))
    return CentralCandidate(label, tuple(factors), tuple(arr.shape), m)


def candidate_Za(a: int, n: int, r: int, m: Optional[int] = None) -> CentralCandidate:
    """Alternating product of psi minors stepping by s = gcd(n, r), anchored at a.

    Wide frames (r > n) are built on M_q(r, n) and carried back by Z_ij -> Z_ji.
    """
    if n < 1 or r < 1:
        raise ValueError(f"Z_a needs n, r >= 1, got n={n}, r={r}")
    if r > n:
        tall = candidate_Za(a, r, n, m)
        return _candidate(tall.label, [(d.transpose(), e) for d, e in tall.factors], (n, r), m)
    s = gcd(n, r)
    quotient_n, quotient_r = n // s, r // s
    if quotient_n % 2 == 0 or quotient_r % 2 == 0:
        raise ValueError(
            f"No Z_a family for (n, r) = ({n}, {r}): n/s={quotient_n} and r/s={quotient_r} must both be odd"
        )
    if not 1 <= a <= s:
        raise ValueError(f"Z_a index out of range: {a} (valid 1..{s})")
    factors = []
    for ell in range(-quotient_r, quotient_n):
        factors.append((psi(a + ell * s, n, r), 1 if ell % 2 == 0 else -1))
    return _candidate(f"Z_{a}", factors, (n, r), m)


def candidates_Za(n: int, r: int, m: Optional[int] = None) -> List[CentralCandidate]:
    s = gcd(n, r)
    if (n // s) % 2 == 0 or (r // s) % 2 == 0:
        return []
    return [candidate_Za(a, n, r, m) for a in range(1, s + 1)]


def _anchored_chain(j: int, n: int, r: int):
    """Alternating theta / theta-tilde chain anchored at column j (hook algebras)."""
    factors = []
    k = 0
    while j - k * r >= 1:
        factors.append((theta(j - k * r, n, r), 1 if k % 2 == 0 else -1))
        k += 1
    if (k - 1) % 2 == 1:
        factors.append((theta(1, n, r), 1))
    k = 0
    while n - j + 2 + k * r <= n:
        factors.append((theta_tilde(n - j + 2 + k * r, n, r), -1 if k % 2 == 0 else 1))
        k += 1
    return factors


def candidates_theta_chain(n: int, r: int, m: Optional[int] = None) -> List[CentralCandidate]:
    """Central candidates of the hook A(n, r) built from theta and theta-tilde minors."""
    if not 1 <= r <= n:
        raise ValueError(f"theta chains need 1 <= r <= n, got n={n}, r={r}")
    th = lambda k: theta(k, n, r)
    tt = lambda k: theta_tilde(k, n, r)
    shape = (n, n)
    out = []
    if n == r:
        out.append(_candidate("det_q", [(th(1), 1)], shape, m))
        for i in range(1, n):
            out.append(_candidate(f"c_{i + 1}", [(tt(n + 1 - i), 1), (th(i + 1), -1)], shape, m))
    elif n == r + 1:
        for j in range(1, r + 1):
            out.append(_candidate(f"c_{j}", [(th(r + 2 - j), 1), (tt(j + 1), -1)], shape, m))
    elif n == r + 2:
        out.append(_candidate(
            "c_1", [(th(r + 2), 1), (th(2), -1), (tt(r + 2), 1), (tt(2), -1), (th(1), 1)], shape, m
        ))
        for j in range(2, r + 1):
            out.append(_candidate(f"c_{j}", [(tt(r + 3 - j), 1), (th(j + 1), -1)], shape, m))
    else:
        # one anchored chain per column n, n - 1, ..., n - r + 1
        for j in range(n, n - r, -1):
            out.append(_candidate(f"c_{n + 1 - j}", _anchored_chain(j, n, r), shape, m))
    log("Minors", f"theta chains for A({n},{r}): {len(out)} candidates")
    return out


def d_family(n: int, m: Optional[int] = None) -> List[CentralCandidate]:
    """d_{i+1} = theta-tilde_{n+1-i}^(-1) theta_{i+1} in M_q(n)."""
    return [
        _candidate(f"d_{i + 1}", [(theta_tilde(n + 1 - i, n, n), -1), (theta(i + 1, n, n), 1)], (n, n), m)
        for i in range(1, n)
    ]


def candidates_even_m(n: int, r: int, m: int) -> List[CentralCandidate]:
    """Four-corner m/2 monomials, plus the row-1/column-1 monomial when n + r is even."""
    if m % 2:
        raise ValueError(f"Even-m candidates need even m, got: {m}")
    half = m // 2
    out = []
    for k in range(1, n + 1):
        for ell in range(k + 1, n + 1):
            for i in range(1, r + 1):
                for j in range(i + 1, r + 1):
                    arr = np.zeros((n, r), dtype=object)
                    for a in (k, ell):
                        for b in (i, j):
                            arr[a - 1, b - 1] = half
                    out.append(_monomial_candidate(f"corners[{k},{ell}|{i},{j}]", arr, m))
    if (n + r) % 2 == 0:
        arr = np.zeros((n, r), dtype=object)
        arr[0, :] = half
        arr[:, 0] = half
        if n % 2 == 0:
            arr[0, 0] = 0
        out.append(_monomial_candidate("row1+col1", arr, m))
    return out


def candidate_quarter(n: int, r: int, m: int) -> CentralCandidate:
    """m/4 staircase plus m/2 column-one monomial for n = z*r, z even, r an odd prime."""
    if r % 2 == 0 or not isprime(r):
        raise ValueError(f"Quarter central needs r an odd prime, got: {r}")
    if n % r or (n // r) % 2:
        raise ValueError(f"Quarter central needs n = z*r with z even, got n={n}, r={r}")
    if m % 4:
        raise ValueError(f"Quarter central needs 4 | m, got: {m}")
    z = n // r
    # built on the r x n frame, then transposed onto M_q(n, r)
    a1 = np.zeros((r, n), dtype=object)
    a1[r - 1, 0] = 1
    for i in range(1, r + 1):
        for j in range(z):
            for e in (0, 1):
                col = i + j * r + e
                if col <= z * r:
                    a1[i - 1, col - 1] = 1
    a2 = np.zeros((r, n), dtype=object)
    a2[:, 0] = 1
    for j in range(1, z):
        a2[r - 1, j * r] = 1
    total = (a1 * (m // 4) + a2 * (m // 2)) % m
    return _monomial_candidate("A1+A2", total.T, m)


def leading_exponent(c: CentralCandidate, m: Optional[int] = None) -> ExponentMatrix:
    """Exponent matrix of the leading PBW monomial: diagonals of the factors, weighted."""
    m = m or c.modulus
    arr = np.zeros(c.shape, dtype=object)
    for d, e in c.factors:
        for g in d.diagonal():
            arr[g.row - 1, g.col - 1] += e
    return ExponentMatrix.from_array(arr, m)


def structural_covariance(c: CentralCandidate, alg: AlgebraDescriptor, m: Optional[int] = None) -> ExponentMatrix:
    """Exponent-weighted sum of the factors' structural covariance, reduced mod m."""
    m = m or c.modulus
    arr = np.zeros(alg.shape, dtype=object)
    for d, e in c.factors:
        arr = arr + covariance_exponents_structural(d, alg).as_array() * e
    return ExponentMatrix.from_array(arr, m)
