"""PBW rewriting for quantum matrix algebras and their generator-subset subalgebras."""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, NamedTuple, Optional, Tuple

from qmat.errors import ClosureError
from qmat.laurent import ONE, Q_INV, Q_MINUS_QINV, ZERO, LaurentScalar, reduce_at_root

NOT_COVARIANT = None

ALGEBRA_KINDS = ["square", "rectangle", "hook", "cross", "custom"]


class GeneratorId(NamedTuple):
    """Z_{row,col}. Tuple order is the PBW order (row-major)."""

    row: int
    col: int

    def label(self):
        if self.row > 9 or self.col > 9:
            return f"Z{self.row}_{self.col}"
        return f"Z{self.row}{self.col}"


PbwMonomial = Tuple[int, ...]  # exponent per generator, in PBW order


@dataclass(frozen=True)
class AlgebraDescriptor:
    kind: str
    n: int
    r: Optional[int]
    generators: Tuple[GeneratorId, ...]
    shape: Tuple[int, int]
    _index: Dict[GeneratorId, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in ALGEBRA_KINDS:
            raise ValueError(f"Unknown algebra kind: {self.kind}. Use: {ALGEBRA_KINDS}")
        gens = tuple(sorted(GeneratorId(*g) for g in self.generators))
        if not gens:
            raise ValueError("An algebra needs at least one generator")
        if len(set(gens)) != len(gens):
            raise ValueError("Duplicate generators")
        rows, cols = self.shape
        for g in gens:
            if not (1 <= g.row <= rows and 1 <= g.col <= cols):
                raise ValueError(f"Generator {g.label()} outside the {rows}x{cols} frame")
        members = set(gens)
        for a in gens:
            for b in gens:
                if a.row < b.row and a.col < b.col:
                    missing = {GeneratorId(a.row, b.col), GeneratorId(b.row, a.col)} - members
                    if missing:
                        names = ", ".join(sorted(g.label() for g in missing))
                        raise ClosureError(
                            f"Generator set not closed: {a.label()}, {b.label()} need {names}"
                        )
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "_index", {g: k for k, g in enumerate(gens)})

    # --- Constructors ---

    @classmethod
    def square(cls, n: int):
        _check_positive(n=n)
        gens = tuple(GeneratorId(i, j) for i in range(1, n + 1) for j in range(1, n + 1))
        return cls("square", n, None, gens, (n, n))

    @classmethod
    def rectangle(cls, n: int, r: int):
        """M_q(n, r): n rows, r columns."""
        _check_positive(n=n, r=r)
        gens = tuple(GeneratorId(i, j) for i in range(1, n + 1) for j in range(1, r + 1))
        return cls("rectangle", n, r, gens, (n, r))

    @classmethod
    def hook(cls, n: int, r: int):
        """A(n, r): the n x n grid minus the lower-right (n-r) x (n-r) corner."""
        _check_positive(n=n, r=r)
        if r > n:
            raise ValueError(f"Hook needs r <= n, got n={n}, r={r}")
        gens = tuple(
            GeneratorId(i, j)
            for i in range(1, n + 1) for j in range(1, n + 1)
            if i <= r or j <= r
        )
        return cls("hook", n, r, gens, (n, n))

    @classmethod
    def cross(cls, n: int, r: int):
        """S(n, r): first row Z_{1,1..r} together with first column Z_{1..n,1}."""
        _check_positive(n=n, r=r)
        gens = {GeneratorId(1, j) for j in range(1, r + 1)}
        gens |= {GeneratorId(i, 1) for i in range(1, n + 1)}
        return cls("cross", n, r, tuple(gens), (n, r))

    @classmethod
    def custom(cls, generators):
        gens = tuple(GeneratorId(*g) for g in generators)
        if not gens:
            raise ValueError("An algebra needs at least one generator")
        rows = max(g.row for g in gens)
        cols = max(g.col for g in gens)
        if min(min(g.row, g.col) for g in gens) < 1:
            raise ValueError("Generator indices start at 1")
        return cls("custom", max(rows, cols), None, gens, (rows, cols))

    # --- Queries ---

    def __len__(self):
        return len(self.generators)

    def index(self, g) -> int:
        g = GeneratorId(*g)
        if g not in self._index:
            raise ValueError(f"Generator {g.label()} is not in {self.describe()}")
        return self._index[g]

    def contains(self, g) -> bool:
        return GeneratorId(*g) in self._index

    def describe(self):
        if self.kind == "square":
            return f"M_q({self.n})"
        if self.kind == "rectangle":
            return f"M_q({self.n},{self.r})"
        if self.kind == "hook":
            return f"A({self.n},{self.r})"
        if self.kind == "cross":
            return f"S({self.n},{self.r})"
        return f"custom({len(self.generators)} generators)"


def _check_positive(**dims):
    for name, value in dims.items():
        if value < 1:
            raise ValueError(f"{name} must be >= 1, got: {value}")


def build_algebra(kind: str, n: int, r: Optional[int] = None) -> AlgebraDescriptor:
    """Descriptor by kind name; rectangle, hook and cross need r."""
    if kind == "square":
        return AlgebraDescriptor.square(n)
    if kind in ("rectangle", "hook", "cross"):
        if r is None:
            raise ValueError(f"Algebra kind {kind} needs r")
        return getattr(AlgebraDescriptor, kind)(n, r)
    raise ValueError(f"Unknown algebra kind: {kind}. Use: {ALGEBRA_KINDS[:-1]}")


# --- Rewriting ---

def _pair_rewrite(alg: AlgebraDescriptor, a: int, b: int) -> List[Tuple[LaurentScalar, Tuple[int, ...]]]:
    """Rewrite the out-of-order product x_a x_b (a > b) as ordered pairs."""
    (i, j), (s, t) = alg.generators[a], alg.generators[b]
    if i == s or j == t:
        return [(Q_INV, (b, a))]
    if j < t:
        return [(ONE, (b, a))]
    # i > s and j > t
    x = alg.index((s, j))
    y = alg.index((i, t))
    return [(ONE, (b, a)), (-Q_MINUS_QINV, (x, y))]


def _measure(alg: AlgebraDescriptor, word: Tuple[int, ...]):
    gens = alg.generators
    weight = sum(gens[w].row * gens[w].col for w in word)
    inversions = sum(1 for p in range(len(word)) for q in range(p + 1, len(word)) if word[p] > word[q])
    return weight, inversions


def _find_pair(word, strategy):
    positions = range(len(word) - 1)
    if strategy == "rightmost":
        positions = reversed(positions)
    for p in positions:
        if word[p] > word[p + 1]:
            return p
    return None


@lru_cache(maxsize=200_000)
def _normal_form_cached(alg: AlgebraDescriptor, word: Tuple[int, ...], strategy: str):
    p = _find_pair(word, strategy)
    if p is None:
        mono = [0] * len(alg)
        for w in word:
            mono[w] += 1
        return ((tuple(mono), ONE),)
    before = _measure(alg, word)
    acc: Dict[PbwMonomial, LaurentScalar] = {}
    for coeff, pair in _pair_rewrite(alg, word[p], word[p + 1]):
        new_word = word[:p] + pair + word[p + 2:]
        if not _measure(alg, new_word) < before:
            raise RuntimeError(f"Rewriting measure did not decrease on word {word}")
        for mono, c in _normal_form_cached(alg, new_word, strategy):
            acc[mono] = acc.get(mono, ZERO) + coeff * c
    return tuple((mono, c) for mono, c in acc.items() if c)


STRATEGIES = ["leftmost", "rightmost"]


def normal_form(word, alg: AlgebraDescriptor, strategy: str = "leftmost") -> "NcPolynomial":
    if strategy not in STRATEGIES:
        raise ValueError(f"Unknown strategy: {strategy}. Use: {STRATEGIES}")
    idx = tuple(alg.index(g) for g in word)
    return NcPolynomial.from_dict(alg, dict(_normal_form_cached(alg, idx, strategy)))


def relation(g1, g2, alg: AlgebraDescriptor) -> "NcPolynomial":
    """Ordered expansion of the out-of-order product g1 * g2."""
    g1, g2 = GeneratorId(*g1), GeneratorId(*g2)
    if not g1 > g2:
        raise ValueError(f"{g1.label()}*{g2.label()} is already in PBW order")
    a, b = alg.index(g1), alg.index(g2)
    acc: Dict[PbwMonomial, LaurentScalar] = {}
    for coeff, (x, y) in _pair_rewrite(alg, a, b):
        mono = [0] * len(alg)
        mono[x] += 1
        mono[y] += 1
        acc[tuple(mono)] = acc.get(tuple(mono), ZERO) + coeff
    return NcPolynomial.from_dict(alg, acc)


# --- Polynomials ---

def _word_of(mono: PbwMonomial) -> Tuple[int, ...]:
    return tuple(k for k, e in enumerate(mono) for _ in range(e))


@dataclass(frozen=True)
class NcPolynomial:
    """Sum of PBW monomials with Laurent coefficients; terms sorted leading-first."""

    alg: AlgebraDescriptor
    terms: Tuple[Tuple[PbwMonomial, LaurentScalar], ...] = ()

    @classmethod
    def from_dict(cls, alg, coeffs: Dict[PbwMonomial, LaurentScalar]):
        items = sorted(((m, c) for m, c in coeffs.items() if c), reverse=True, key=lambda t: t[0])
        return cls(alg, tuple(items))

    @classmethod
    def one(cls, alg):
        return cls(alg, (((0,) * len(alg), ONE),))

    @classmethod
    def generator(cls, g, alg):
        mono = [0] * len(alg)
        mono[alg.index(g)] = 1
        return cls(alg, ((tuple(mono), ONE),))

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def as_dict(self):
        return dict(self.terms)

    def _same(self, other):
        if other.alg != self.alg:
            raise ValueError(f"Descriptor mismatch: {self.alg.describe()} vs {other.alg.describe()}")

    def __add__(self, other):
        self._same(other)
        acc = self.as_dict()
        for m, c in other.terms:
            acc[m] = acc.get(m, ZERO) + c
        return NcPolynomial.from_dict(self.alg, acc)

    def __neg__(self):
        return NcPolynomial(self.alg, tuple((m, -c) for m, c in self.terms))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: LaurentScalar):
        return NcPolynomial.from_dict(self.alg, {m: c * v for m, v in self.terms})

    def __mul__(self, other):
        return multiply(self, other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError(f"Negative powers are not defined, got: {k}")
        result = NcPolynomial.one(self.alg)
        for _ in range(k):
            result = multiply(result, self)
        return result

    def leading(self) -> Tuple[PbwMonomial, LaurentScalar]:
        if not self.terms:
            raise ValueError("Zero polynomial has no leading term")
        return self.terms[0]

    def degree(self) -> int:
        return max((sum(m) for m, _ in self.terms), default=0)

    def __str__(self):
        return render_polynomial(self)


def multiply(p: NcPolynomial, r: NcPolynomial, strategy: str = "leftmost") -> NcPolynomial:
    p._same(r)
    acc: Dict[PbwMonomial, LaurentScalar] = {}
    for m1, c1 in p.terms:
        w1 = _word_of(m1)
        for m2, c2 in r.terms:
            c = c1 * c2
            for mono, v in _normal_form_cached(p.alg, w1 + _word_of(m2), strategy):
                acc[mono] = acc.get(mono, ZERO) + c * v
    return NcPolynomial.from_dict(p.alg, acc)


# --- Covariance and centrality ---

def _ratio_power(left: NcPolynomial, right: NcPolynomial) -> Optional[int]:
    """n with left == q^n * right, or None."""
    if not left.terms or not right.terms:
        return None
    (_, cl), (_, cr) = left.terms[0], right.terms[0]
    n = cl.terms[0][0] - cr.terms[0][0]
    if right.scale(LaurentScalar.monomial(n)) == left:
        return n
    return None


def covariance_profile(p: NcPolynomial, alg: AlgebraDescriptor) -> Dict[GeneratorId, Optional[int]]:
    """n_g with p*g = q^(n_g) g*p per generator, NOT_COVARIANT where no such n exists."""
    if p.is_zero():
        raise ValueError("Covariance of the zero polynomial is undefined")
    profile = {}
    for g in alg.generators:
        z = NcPolynomial.generator(g, alg)
        profile[g] = _ratio_power(multiply(p, z), multiply(z, p))
    return profile


def _vanishes(p: NcPolynomial, m: Optional[int]) -> bool:
    if m is None:
        return p.is_zero()
    return all(reduce_at_root(c, m).is_zero() for _, c in p.terms)


def commutator_witness(p: NcPolynomial, alg: AlgebraDescriptor, m: Optional[int] = None) -> Optional[GeneratorId]:
    """First generator g (PBW order) with p*g != g*p, or None when p is central."""
    for g in alg.generators:
        z = NcPolynomial.generator(g, alg)
        if not _vanishes(multiply(p, z) - multiply(z, p), m):
            return g
    return None


def is_central(p: NcPolynomial, alg: AlgebraDescriptor, m: Optional[int] = None) -> bool:
    if p.is_zero():
        raise ValueError("Centrality of the zero polynomial is not tested")
    return commutator_witness(p, alg, m) is None


# --- Rendering ---

def render_monomial(mono: PbwMonomial, alg: AlgebraDescriptor) -> str:
    parts = []
    for g, e in zip(alg.generators, mono):
        if e == 1:
            parts.append(g.label())
        elif e > 1:
            parts.append(f"{g.label()}^{e}")
    return "*".join(parts)


def render_polynomial(p: NcPolynomial) -> str:
    if not p.terms:
        return "0"
    out = []
    for k, (mono, c) in enumerate(p.terms):
        negative = c.terms[-1][1] < 0
        mag = -c if negative else c
        word = render_monomial(mono, p.alg)
        if not word:
            body = str(mag)
            if len(mag.terms) > 1 and len(p.terms) > 1:
                body = f"({body})"
        elif mag == ONE:
            body = word
        elif len(mag.terms) > 1:
            body = f"({mag})*{word}"
        else:
            body = f"{mag}*{word}"
        if k == 0:
            out.append(f"-{body}" if negative else body)
        else:
            out.append(f" - {body}" if negative else f" + {body}")
    return "".join(out)
