"""Skew-symmetric integer matrices: defining matrices, congruence normal form, kernels mod m."""

from dataclasses import dataclass
from math import gcd, prod
from typing import List, Optional, Sequence, Tuple

import numpy as np
from sympy import ZZ, Matrix

from qmat.minors import ExponentMatrix
from qmat.ncalgebra import AlgebraDescriptor, GeneratorId
from utils.logger import log


def _as_tuple(arr) -> Tuple[Tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in row) for row in arr)


@dataclass(frozen=True)
class SkewMatrix:
    """Integer J with J^T = -J. `labels` names the generator behind each coordinate, if known."""

    entries: Tuple[Tuple[int, ...], ...]
    labels: Optional[Tuple[GeneratorId, ...]] = None

    def __post_init__(self):
        rows = _as_tuple(self.entries)
        size = len(rows)
        for i, row in enumerate(rows):
            if len(row) != size:
                raise ValueError(f"Row {i + 1} has {len(row)} entries, expected {size}")
        for i in range(size):
            for j in range(i, size):
                if rows[i][j] != -rows[j][i]:
                    raise ValueError(f"Matrix is not skew-symmetric at ({i + 1},{j + 1})")
        if self.labels is not None and len(self.labels) != size:
            raise ValueError(f"{len(self.labels)} labels for a {size}x{size} matrix")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_array(cls, arr, labels=None):
        return cls(_as_tuple(arr), labels)

    @property
    def size(self):
        return len(self.entries)

    def as_array(self):
        return np.array(self.entries, dtype=object).reshape(self.size, self.size)


@dataclass(frozen=True)
class SkewNormalForm:
    """U unimodular with U J U^T = diag([[0, d], [-d, 0]] ...) + zero block; d_1 | d_2 | ..."""

    transform: Tuple[Tuple[int, ...], ...]
    divisors: Tuple[int, ...]
    zero_rank: int

    def block_form(self):
        size = 2 * len(self.divisors) + self.zero_rank
        out = np.zeros((size, size), dtype=object)
        for b, d in enumerate(self.divisors):
            out[2 * b, 2 * b + 1] = d
            out[2 * b + 1, 2 * b] = -d
        return out

    def as_array(self):
        size = len(self.transform)
        return np.array(self.transform, dtype=object).reshape(size, size)


@dataclass(frozen=True)
class LatticeBasisModM:
    """Generators of {w : J w = 0 mod m}, with the kernel's cardinality."""

    modulus: int
    generators: Tuple[Tuple[int, ...], ...]
    cardinality: int
    defining: SkewMatrix

    def contains(self, w: Sequence[int]) -> bool:
        if len(w) != self.defining.size:
            raise ValueError(f"Vector of length {len(w)} against a {self.defining.size}x{self.defining.size} matrix")
        image = self.defining.as_array().dot(np.array(list(w), dtype=object))
        return all(int(x) % self.modulus == 0 for x in image)


# --- Defining matrices ---

def defining_matrix(alg: AlgebraDescriptor) -> SkewMatrix:
    """J with x_g x_h = q^J[g,h] x_h x_g once the correction terms are dropped."""
    gens = alg.generators
    size = len(gens)
    J = np.zeros((size, size), dtype=object)
    for a in range(size):
        for b in range(a + 1, size):
            (i, j), (s, t) = gens[a], gens[b]
            if i == s or j == t:
                J[a, b], J[b, a] = 1, -1
    return SkewMatrix.from_array(J, gens)


def h_matrix(k: int):
    if k < 1:
        raise ValueError(f"k must be >= 1, got: {k}")
    H = np.zeros((k, k), dtype=object)
    for i in range(k):
        for j in range(k):
            if i > j:
                H[i, j] = 1
            elif i < j:
                H[i, j] = -1
    return H


def s_matrix(k: int):
    if k < 1:
        raise ValueError(f"k must be >= 1, got: {k}")
    S = np.zeros((k, k), dtype=object)
    S[0, k - 1] = -1
    for i in range(1, k):
        S[i, i - 1] = 1
    return S


def rectangle_h_map(n: int, r: int):
    """Matrix of A -> H_n A - A H_r on n x r matrices, row-major vectorization."""
    hn = h_matrix(n).astype(np.int64)
    hr = h_matrix(r).astype(np.int64)
    M = np.kron(hn, np.eye(r, dtype=np.int64)) - np.kron(np.eye(n, dtype=np.int64), hr.T)
    return M.astype(object)


# Sign relating the two: defining_matrix(rectangle(n, r)) == RECTANGLE_SIGN * rectangle_h_map(n, r)
RECTANGLE_SIGN = -1


def _matrix_power(M, e: int):
    size = M.shape[0]
    out = np.eye(size, dtype=int).astype(object)
    for _ in range(e):
        out = out.dot(M)
    return out


def _s_power(k: int, e: int):
    if e >= 0:
        return _matrix_power(s_matrix(k), e)
    # S_k^k = -1, so S_k^-1 = -S_k^(k-1)
    return _matrix_power(-_matrix_power(s_matrix(k), k - 1), -e)


def s_symmetry_orbit(A: ExponentMatrix, i: int, j: int, n: int, r: int) -> ExponentMatrix:
    """S_n^i A S_r^j."""
    if A.shape != (n, r):
        raise ValueError(f"Exponent matrix {A.shape} is not {n}x{r}")
    B = _s_power(n, i).dot(A.as_array()).dot(_s_power(r, j))
    return ExponentMatrix.from_array(B, A.modulus)


# --- Normal form ---

class _Congruence:
    """Simultaneous congruence A -> E A E^T and U -> E U for elementary E."""

    def __init__(self, J):
        self.A = np.array(J, dtype=object)
        self.U = np.eye(self.A.shape[0], dtype=int).astype(object)

    def add(self, dst, src, t):
        if t == 0:
            return
        self.A[dst, :] += t * self.A[src, :]
        self.A[:, dst] += t * self.A[:, src]
        self.U[dst, :] += t * self.U[src, :]

    def swap(self, a, b):
        if a == b:
            return
        self.A[[a, b], :] = self.A[[b, a], :]
        self.A[:, [a, b]] = self.A[:, [b, a]]
        self.U[[a, b], :] = self.U[[b, a], :]

    def negate(self, a):
        self.A[a, :] *= -1
        self.A[:, a] *= -1
        self.U[a, :] *= -1


def _pivot(A, p):
    best = None
    size = A.shape[0]
    for i in range(p, size):
        for j in range(p, size):
            x = abs(A[i, j])
            if x and (best is None or x < best[0]):
                best = (x, i, j)
    return best


def skew_normal_form(J: SkewMatrix) -> SkewNormalForm:
    c = _Congruence(J.as_array())
    A = c.A
    size = J.size
    divisors: List[int] = []
    p = 0
    while p + 1 < size:
        found = _pivot(A, p)
        if found is None:
            break
        _, i, j = found
        # minimal entries come in pairs; the row-major first one has i < j
        c.swap(p, i)
        c.swap(p + 1, j)
        if A[p, p + 1] < 0:
            c.negate(p + 1)
        d = A[p, p + 1]
        for k in range(p + 2, size):
            c.add(k, p + 1, -(A[p, k] // d))
            c.add(k, p, A[p + 1, k] // d)
        if any(A[p, k] or A[p + 1, k] for k in range(p + 2, size)):
            continue
        stray = next(
            ((i2, j2) for i2 in range(p + 2, size) for j2 in range(p + 2, size) if A[i2, j2] % d),
            None,
        )
        if stray is not None:
            c.add(p, stray[0], 1)
            continue
        divisors.append(int(d))
        p += 2
    zero_rank = size - 2 * len(divisors)
    log("Skewlat", f"normal form of {size}x{size}: divisors={divisors}, zero_rank={zero_rank}")
    return SkewNormalForm(_as_tuple(c.U), tuple(divisors), zero_rank)


def normal_form_defects(J: SkewMatrix, snf: SkewNormalForm) -> List[str]:
    """Broken normal-form invariants, empty when U is unimodular, U J U^T is the block form and d_i | d_i+1."""
    defects = []
    U = snf.as_array()
    if J.size and abs(int(Matrix(U.tolist()).det())) != 1:
        defects.append("transform is not unimodular")
    if J.size and not (U.dot(J.as_array()).dot(U.T) == snf.block_form()).all():
        defects.append("U J U^T is not the block form")
    divs = snf.divisors
    if any(d < 1 for d in divs) or any(b % a for a, b in zip(divs, divs[1:])):
        defects.append(f"divisors {divs} do not form a divisibility chain")
    if 2 * len(divs) + snf.zero_rank != J.size:
        defects.append("block sizes do not add up to N")
    return defects


def corank(J: SkewMatrix) -> int:
    return skew_normal_form(J).zero_rank


def image_cardinality(J: SkewMatrix, m: int, snf: Optional[SkewNormalForm] = None) -> int:
    """|{J w mod m}| = prod over divisors d of (m / gcd(d, m))^2."""
    if m < 1:
        raise ValueError(f"Modulus must be >= 1, got: {m}")
    snf = snf or skew_normal_form(J)
    return prod((m // gcd(d, m)) ** 2 for d in snf.divisors)


def kernel_mod_m(J: SkewMatrix, m: int, snf: Optional[SkewNormalForm] = None) -> LatticeBasisModM:
    if m < 1:
        raise ValueError(f"Modulus must be >= 1, got: {m}")
    snf = snf or skew_normal_form(J)
    U = snf.as_array()
    gens = []
    cardinality = 1
    for b, d in enumerate(snf.divisors):
        g = gcd(d, m)
        cardinality *= g * g
        for row in (2 * b, 2 * b + 1):
            gens.append(tuple(int(x) % m for x in U[row, :] * (m // g)))
    for row in range(2 * len(snf.divisors), J.size):
        gens.append(tuple(int(x) % m for x in U[row, :]))
    cardinality *= m ** snf.zero_rank
    gens = tuple(v for v in gens if any(v))
    return LatticeBasisModM(m, gens, cardinality, J)


def subgroup_order(vectors, m: int, size: int) -> int:
    """Order of the subgroup of (Z/m)^size generated by `vectors`.

    Echelonizes the lattice spanned by m*e_k and the vectors with unimodular
    row steps only; the subgroup order is m^size over the lattice index.
    """
    H = (np.eye(size, dtype=int) * m).astype(object)
    for vec in vectors:
        v = np.array([int(x) % m for x in vec], dtype=object)
        if len(v) != size:
            raise ValueError(f"Vector of length {len(v)}, expected {size}")
        for i in range(size):
            if v[i] == 0:
                continue
            a, b = H[i, i], v[i]
            x, y, g = (int(t) for t in ZZ.gcdex(ZZ(int(a)), ZZ(int(b))))
            new_row = x * H[i, :] + y * v
            v = (a // g) * v - (b // g) * H[i, :]
            H[i, :] = new_row
    index = prod(abs(int(H[i, i])) for i in range(size))
    return m ** size // index


def pairing(A: ExponentMatrix, B: ExponentMatrix, J: SkewMatrix) -> int:
    """vec(A)^T J vec(B): the q-exponent in u^A u^B = q^s u^B u^A."""
    def vectorize(E):
        if J.labels is not None:
            return [E.entries[g.row - 1][g.col - 1] for g in J.labels]
        flat = [x for row in E.entries for x in row]
        if len(flat) != J.size:
            raise ValueError(f"Exponent matrix with {len(flat)} entries against a {J.size}x{J.size} matrix")
        return flat

    va = np.array(vectorize(A), dtype=object)
    vb = np.array(vectorize(B), dtype=object)
    return int(va.dot(J.as_array()).dot(vb))


# --- Matrix files ---

def parse_matrix(text: str) -> SkewMatrix:
    lines = [ln.split() for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise ValueError("Empty matrix file")
    try:
        size = int(lines[0][0])
        rows = [[int(x) for x in ln] for ln in lines[1:]]
    except ValueError as e:
        raise ValueError(f"Malformed matrix file: {e}") from e
    if len(lines[0]) != 1 or len(rows) != size:
        raise ValueError(f"Header says N={lines[0][0]} but found {len(rows)} rows")
    if size == 0:
        return SkewMatrix(())
    return SkewMatrix(tuple(tuple(r) for r in rows))


def load_matrix(path: str) -> SkewMatrix:
    with open(path, "r", encoding="utf-8") as f:
        return parse_matrix(f.read())


def format_matrix(J: SkewMatrix) -> str:
    lines = [str(J.size)] + [" ".join(str(x) for x in row) for row in J.entries]
    return "\n".join(lines) + "\n"
