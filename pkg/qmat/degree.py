"""Degrees, block classification and centrality verdicts."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from math import gcd, isqrt
from typing import List, Optional, Tuple

import numpy as np
from sympy import isprime

import config
from qmat.errors import GuardExceededError
from qmat.minors import (
    CentralCandidate,
    candidate_quarter,
    candidates_even_m,
    candidates_theta_chain,
    candidates_Za,
    d_family,
    leading_exponent,
    structural_covariance,
)
from qmat.ncalgebra import AlgebraDescriptor, commutator_witness
from qmat.skewlat import (
    SkewMatrix,
    SkewNormalForm,
    defining_matrix,
    image_cardinality,
    kernel_mod_m,
    skew_normal_form,
    subgroup_order,
)
from utils.logger import log


@dataclass(frozen=True)
class Finding:
    """A proposition instance whose computed value disagrees with the closed form."""

    claim: str
    expected: object
    actual: object
    witness: Optional[str] = None

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class DegreeReport:
    algebra: str
    modulus: int
    h: int
    degree: int
    divisors: Tuple[int, ...]
    corank: int
    closed_form: Optional[int]
    match: Optional[bool]  # None when no closed form applies

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class BlockReport:
    algebra: str
    divisors: Tuple[int, ...]
    count_1: int
    count_2: int
    count_4: int
    other: Tuple[int, ...]
    corank: int
    findings: Tuple[Finding, ...] = ()

    @property
    def passed(self):
        return not self.findings

    def to_dict(self):
        out = asdict(self)
        out["findings"] = [f.to_dict() for f in self.findings]
        return out


@dataclass(frozen=True)
class CentralityVerdict:
    candidate: str
    mode: str
    passed: bool
    witness: Optional[str] = None
    detail: str = ""

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class GenerationVerdict:
    n: int
    r: int
    modulus: int
    kernel_order: int
    generated_order: int
    candidates: Tuple[str, ...]
    equal: bool
    findings: Tuple[Finding, ...] = field(default=())

    def to_dict(self):
        out = asdict(self)
        out["findings"] = [f.to_dict() for f in self.findings]
        return out


# --- Degrees ---

def degree_quasipoly(J: SkewMatrix, m: int, snf: Optional[SkewNormalForm] = None) -> int:
    h = image_cardinality(J, m, snf)
    root = isqrt(h)
    if root * root != h:
        raise RuntimeError(f"Image cardinality {h} is not a perfect square; the normal form is broken")
    return root


def is_good_modulus(snf: SkewNormalForm, m: int) -> bool:
    """m odd and coprime to every elementary divisor."""
    return m % 2 == 1 and all(gcd(d, m) == 1 for d in snf.divisors)


def rectangle_corank_formula(n: int, r: int) -> int:
    s = gcd(n, r)
    return s if (n // s) % 2 == 1 and (r // s) % 2 == 1 else 0


def closed_form_degree(alg: AlgebraDescriptor, m: int, snf: Optional[SkewNormalForm] = None) -> Optional[int]:
    """Degree predicted by the closed forms, or None when none applies to (alg, m)."""
    n, r = alg.n, alg.r
    if alg.kind == "square":
        return m ** (n * (n - 1) // 2) if m % 2 else None
    if alg.kind == "rectangle":
        if m == 2:
            return 2 ** ((n + r - 1) // 2)
        snf = snf or skew_normal_form(defining_matrix(alg))
        if not is_good_modulus(snf, m):
            return None
        return m ** ((n * r - rectangle_corank_formula(n, r)) // 2)
    if alg.kind == "hook":
        top = n * r - r * (r + 1) // 2
        if m % 2:
            return m ** top
        return m ** (n - 1) * (m // 2) ** (top - (n - 1))
    return None


def degree_report(alg: AlgebraDescriptor, m: int) -> DegreeReport:
    if m < 1:
        raise ValueError(f"Modulus must be >= 1, got: {m}")
    J = defining_matrix(alg)
    snf = skew_normal_form(J)
    h = image_cardinality(J, m, snf)
    deg = degree_quasipoly(J, m, snf)
    closed = closed_form_degree(alg, m, snf)
    match = None if closed is None else deg == closed
    log("Degree", f"{alg.describe()} m={m}: h={h} degree={deg} closed_form={closed}")
    return DegreeReport(alg.describe(), m, h, deg, snf.divisors, snf.zero_rank, closed, match)


# --- Brute-force oracle ---

def _image_codes(Jm, m, start, stop):
    size = Jm.shape[0]
    powers = m ** np.arange(size, dtype=np.int64)
    idx = np.arange(start, stop, dtype=np.int64)
    digits = (idx[:, None] // powers[None, :]) % m
    images = (digits @ Jm.T) % m
    return np.unique(images @ powers)


def brute_force_h(J: SkewMatrix, m: int, guard: Optional[int] = None, workers: int = 1) -> int:
    """|{J w mod m : w in (Z/m)^N}| by direct enumeration."""
    if m < 1:
        raise ValueError(f"Modulus must be >= 1, got: {m}")
    guard = config.ENUM_GUARD if guard is None else guard
    total = m ** J.size
    if total > guard:
        raise GuardExceededError(
            f"Enumeration of m^N = {m}^{J.size} = {total} vectors exceeds the bound {guard}; "
            f"raise it with --unsafe-guard-enum"
        )
    if J.size == 0:
        return 1
    Jm = np.array([[int(x) % m for x in row] for row in J.entries], dtype=np.int64)
    bounds = [(s, min(s + config.ENUM_CHUNK, total)) for s in range(0, total, config.ENUM_CHUNK)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda b: _image_codes(Jm, m, *b), bounds))
    else:
        parts = [_image_codes(Jm, m, *b) for b in bounds]
    seen = np.unique(np.concatenate(parts))
    log("Degree", f"brute force over {total} vectors (m={m}): h={len(seen)}")
    return int(len(seen))


# --- Blocks ---

def _check(findings, claim, expected, actual):
    if expected != actual:
        findings.append(Finding(claim, expected, actual))


def classify_blocks(alg: AlgebraDescriptor) -> BlockReport:
    snf = skew_normal_form(defining_matrix(alg))
    divs = snf.divisors
    count_1, count_2, count_4 = divs.count(1), divs.count(2), divs.count(4)
    other = tuple(d for d in divs if d not in (1, 2, 4))
    findings: List[Finding] = []
    n, r = alg.n, alg.r

    if alg.kind == "rectangle":
        c = rectangle_corank_formula(n, r)
        d0 = (n + r - 1) // 2
        _check(findings, "corank = gcd formula", c, snf.zero_rank)
        _check(findings, "divisors in {1,2,4}", (), other)
        _check(findings, "one-blocks = floor((n+r-1)/2)", d0, count_1)
        _check(findings, "two/four-blocks = max(0, (nr-c)/2 - d0)",
               max(0, (n * r - c) // 2 - d0), count_2 + count_4)
        if isprime(r) and n >= r:
            expected_4 = (r - 1) // 2 if r % 2 and n % r == 0 and (n // r) % 2 == 0 else 0
            _check(findings, "four-blocks for prime r", expected_4, count_4)
    elif alg.kind in ("hook", "square"):
        r = n if alg.kind == "square" else r
        _check(findings, "divisors in {1,2}", (), tuple(d for d in divs if d not in (1, 2)))
        _check(findings, "one-blocks = n-1", n - 1, count_1)
        _check(findings, "two-blocks = nr - r(r+1)/2 - (n-1)",
               n * r - r * (r + 1) // 2 - (n - 1), count_2)

    for f in findings:
        log("Degree", f"{alg.describe()} finding: {f.claim} expected={f.expected} actual={f.actual}")
    return BlockReport(alg.describe(), divs, count_1, count_2, count_4, other, snf.zero_rank, tuple(findings))


# --- Centrality ---

VERIFY_MODES = ["lattice", "symbolic"]


def verify_central_candidate(
    c: CentralCandidate,
    alg: AlgebraDescriptor,
    m: int,
    mode: str = "lattice",
    max_generators: Optional[int] = None,
    max_modulus: Optional[int] = None,
) -> CentralityVerdict:
    if mode not in VERIFY_MODES:
        raise ValueError(f"Unknown mode: {mode}. Use: {VERIFY_MODES}")
    if c.shape != alg.shape:
        raise ValueError(f"{c.label} lives on a {c.shape} frame, {alg.describe()} on {alg.shape}")

    if mode == "symbolic":
        max_generators = config.SYMBOLIC_MAX_GENERATORS if max_generators is None else max_generators
        max_modulus = config.SYMBOLIC_MAX_MODULUS if max_modulus is None else max_modulus
        if len(alg) > max_generators or m > max_modulus:
            raise GuardExceededError(
                f"Symbolic check on {len(alg)} generators at m={m} exceeds the bound "
                f"({max_generators} generators, m <= {max_modulus}); raise it with --unsafe-guard-symbolic"
            )
        witness = commutator_witness(c.expand(alg, m), alg, m)
        return CentralityVerdict(
            c.label, mode, witness is None,
            witness.label() if witness else None,
            "commutes with every generator mod the cyclotomic polynomial" if witness is None
            else "commutator survives reduction",
        )

    J = defining_matrix(alg)
    w = leading_exponent(c, m).vec(alg)
    image = J.as_array().dot(np.array(w, dtype=object))
    bad = [k for k, x in enumerate(image) if int(x) % m]
    residues = [int(x) % m for x in image]
    structural = structural_covariance(c, alg, m).vec(alg)
    mismatched = [k for k, (e, x) in enumerate(zip(structural, residues)) if e != x]
    detail = "leading exponent in kernel mod m"
    if mismatched:
        detail += "; structural covariance rule disagrees with the pairing"
    first = bad or mismatched
    witness = alg.generators[first[0]].label() if first else None
    if witness:
        log("Degree", f"{c.label} fails on {alg.describe()} m={m}, witness {witness}")
    return CentralityVerdict(c.label, mode, not first, witness, detail)


def candidates_for(alg: AlgebraDescriptor, m: int) -> List[CentralCandidate]:
    """Every built-in central family that applies to (alg, m)."""
    n, r = alg.n, alg.r
    out: List[CentralCandidate] = []
    if alg.kind in ("square", "hook"):
        out += candidates_theta_chain(n, n if alg.kind == "square" else r, m)
    if alg.kind == "square":
        out += candidates_Za(n, n, m)
        out += d_family(n, m)
    if alg.kind == "rectangle":
        out += candidates_Za(n, r, m)
        if m % 2 == 0:
            out += candidates_even_m(n, r, m)
        if r <= n and m % 4 == 0 and r % 2 and isprime(r) and n % r == 0 and (n // r) % 2 == 0:
            out.append(candidate_quarter(n, r, m))
    return out


def center_generation_check(n: int, r: int, m: int) -> GenerationVerdict:
    """Do the leading exponents of the Z_a (with all m-th powers) fill the kernel mod m?"""
    alg = AlgebraDescriptor.rectangle(n, r)
    J = defining_matrix(alg)
    snf = skew_normal_form(J)
    if not is_good_modulus(snf, m):
        raise ValueError(f"m={m} is not a good modulus for {alg.describe()} (divisors {snf.divisors})")
    kernel = kernel_mod_m(J, m, snf)
    cands = candidates_Za(n, r, m)
    vecs = [leading_exponent(c, m).vec(alg) for c in cands]
    findings = [
        Finding("leading exponent in kernel", True, False, c.label)
        for c, v in zip(cands, vecs) if not kernel.contains(v)
    ]
    generated = subgroup_order(vecs, m, len(alg))
    if generated != kernel.cardinality:
        findings.append(Finding("generated subgroup = kernel", kernel.cardinality, generated))
    log("Degree", f"center generation M_q({n},{r}) m={m}: kernel={kernel.cardinality} generated={generated}")
    return GenerationVerdict(
        n, r, m, kernel.cardinality, generated, tuple(c.label for c in cands), not findings, tuple(findings)
    )
