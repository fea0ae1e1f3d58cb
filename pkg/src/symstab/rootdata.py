"""Root systems of types A, F4 and E6 with Killing-normalised weight data.

Weights are integer tuples of Dynkin labels (coordinates over the
fundamental weights, Bourbaki numbering).  Roots are stored in simple-root
coordinates.  The inner product on t* is fixed by the condition that the
adjoint representation has Casimir eigenvalue 1, which is the normalisation
induced by the Killing form.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable

from .exactlin import ExactMatrix, inverse

Weight = tuple[int, ...]
Multiset = Counter  # Counter[Weight, int]


class UnsupportedType(ValueError):
    pass


class NotACharacter(ValueError):
    """Raised when a weight multiset is not a nonnegative sum of characters."""


@dataclass(frozen=True)
class CartanType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family == "A":
            if self.rank < 2:
                raise UnsupportedType("type A needs rank >= 2 (SU(n) with n >= 3)")
        elif self.family == "F":
            if self.rank != 4:
                raise UnsupportedType("F only exists in rank 4")
        elif self.family == "E":
            if self.rank != 6:
                raise UnsupportedType("only E6 is supported")
        else:
            raise UnsupportedType(f"unsupported Cartan family {self.family!r}")

    @classmethod
    def parse(cls, name: str) -> "CartanType":
        """Parse ``"A2"``, ``"F4"``, ``"E6"`` (case-insensitive)."""
        name = name.strip().upper()
        if len(name) < 2 or not name[1:].isdigit():
            raise UnsupportedType(f"cannot parse Cartan type {name!r}")
        return cls(name[0], int(name[1:]))

    @classmethod
    def su(cls, n: int) -> "CartanType":
        return cls("A", n - 1)

    def __str__(self):
        return f"{self.family}{self.rank}"


def cartan_matrix(t: CartanType) -> list[list[int]]:
    """Cartan matrix with ``A[i][j] = <alpha_i, alpha_j^vee>``."""
    r = t.rank
    if t.family == "A":
        return [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(r)] for i in range(r)]
    if t.family == "F":
        return [
            [2, -1, 0, 0],
            [-1, 2, -2, 0],
            [0, -1, 2, -1],
            [0, 0, -1, 2],
        ]
    # E6: chain 1-3-4-5-6 with node 2 attached to node 4
    return [
        [2, 0, -1, 0, 0, 0],
        [0, 2, 0, -1, 0, 0],
        [-1, 0, 2, -1, 0, 0],
        [0, -1, -1, 2, -1, 0],
        [0, 0, 0, -1, 2, -1],
        [0, 0, 0, 0, -1, 2],
    ]


def _symmetrizer(a: list[list[int]]) -> list[Fraction]:
    """Positive d with ``a[i][j] * d[j] == a[j][i] * d[i]`` (half squared lengths)."""
    r = len(a)
    d: list[Fraction | None] = [None] * r
    d[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(r):
            if j != i and a[i][j] != 0 and d[j] is None:
                d[j] = d[i] * a[j][i] / a[i][j]
                stack.append(j)
    if any(x is None for x in d):
        raise UnsupportedType("Dynkin diagram is not connected")
    return d  # type: ignore[return-value]


@dataclass(frozen=True)
class ProductWeight:
    """Highest weight of an irreducible representation of K x K."""

    left: Weight
    right: Weight

    def __iter__(self):
        return iter((self.left, self.right))


@dataclass(frozen=True, eq=False)
class RootSystem:
    cartan_type: CartanType
    cartan: list[list[int]] = field(repr=False)
    positive_roots: list[Weight] = field(repr=False)
    gram_tstar: ExactMatrix = field(repr=False)

    @property
    def rank(self) -> int:
        return self.cartan_type.rank

    @property
    def delta(self) -> Weight:
        return (1,) * self.rank

    @cached_property
    def _gram(self) -> list[list[Fraction]]:
        return self.gram_tstar.real_entries()

    def inner(self, lam: Iterable, mu: Iterable) -> Fraction:
        lam, mu = list(lam), list(mu)
        g = self._gram
        return sum(
            (lam[i] * g[i][j] * mu[j] for i in range(self.rank) for j in range(self.rank) if lam[i] and mu[j]),
            Fraction(0),
        )

    def root_to_weight(self, root: Iterable[int]) -> Weight:
        """Simple-root coordinates to Dynkin labels."""
        root = list(root)
        a = self.cartan
        return tuple(sum(root[i] * a[i][j] for i in range(self.rank)) for j in range(self.rank))

    @cached_property
    def positive_roots_as_weights(self) -> list[Weight]:
        return [self.root_to_weight(r) for r in self.positive_roots]

    @cached_property
    def simple_roots_as_weights(self) -> list[Weight]:
        return [tuple(row) for row in self.cartan]

    @cached_property
    def highest_root(self) -> Weight:
        top = max(self.positive_roots, key=sum)
        return self.root_to_weight(top)

    @cached_property
    def _cartan_inverse(self) -> list[list[Fraction]]:
        return inverse(ExactMatrix(self.cartan)).real_entries()

    def height(self, weight: Iterable[int]) -> Fraction:
        """Sum of simple-root coordinates; strictly increasing along dominance."""
        w = list(weight)
        ainv = self._cartan_inverse
        return sum((w[j] * ainv[j][k] for j in range(self.rank) for k in range(self.rank) if w[j]), Fraction(0))


def build_root_system(t: CartanType) -> RootSystem:
    a = cartan_matrix(t)
    r = t.rank
    simple = [tuple(1 if i == j else 0 for j in range(r)) for i in range(r)]
    # reflection closure: s_i(beta) = beta - <beta, alpha_i^vee> alpha_i
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        new = []
        for beta in frontier:
            for i in range(r):
                pairing = sum(beta[j] * a[j][i] for j in range(r))
                image = tuple(beta[j] - (pairing if j == i else 0) for j in range(r))
                if all(x >= 0 for x in image) and any(image) and image not in roots:
                    roots.add(image)
                    new.append(image)
        frontier = new
    positive = sorted(roots, key=lambda x: (sum(x), x))

    d = _symmetrizer(a)
    # <omega_i, omega_j> = (A^{-1})_{ij} * (alpha_j, alpha_j) / 2
    ainv = inverse(ExactMatrix(a)).real_entries()
    raw = [[ainv[i][j] * d[j] for j in range(r)] for i in range(r)]
    rs = RootSystem(t, a, positive, ExactMatrix(raw))

    delta2 = tuple(sum(c) for c in zip(*rs.positive_roots_as_weights))
    if delta2 != tuple(2 for _ in range(r)):
        raise AssertionError("half-sum of positive roots is not (1, ..., 1)")
    theta = rs.highest_root
    scale = rs.inner(theta, [x + 2 for x in theta])
    gram = ExactMatrix(raw).scale(1 / scale)
    return RootSystem(t, a, positive, gram)


_CACHE: dict[CartanType, RootSystem] = {}


def root_system(t: CartanType | str) -> RootSystem:
    """Cached :func:`build_root_system`."""
    if isinstance(t, str):
        t = CartanType.parse(t)
    if t not in _CACHE:
        _CACHE[t] = build_root_system(t)
    return _CACHE[t]


def _check_weight(rs: RootSystem, lam: Iterable[int], dominant: bool = True) -> Weight:
    lam = tuple(int(x) for x in lam)
    if len(lam) != rs.rank:
        raise ValueError(f"weight {lam} has length {len(lam)}, expected {rs.rank}")
    if dominant and any(x < 0 for x in lam):
        raise ValueError(f"weight {lam} is not dominant")
    return lam


def fundamental_weight(rs: RootSystem, r: int) -> Weight:
    """omega_r (1-based, Bourbaki numbering)."""
    return tuple(1 if i == r - 1 else 0 for i in range(rs.rank))


def casimir(rs: RootSystem, lam: Iterable[int]) -> Fraction:
    """Casimir eigenvalue <lam, lam + 2 delta> on V_lam."""
    lam = _check_weight(rs, lam)
    return rs.inner(lam, [x + 2 for x in lam])


def casimir_product(rs: RootSystem, pw: ProductWeight) -> Fraction:
    return casimir(rs, pw.left) + casimir(rs, pw.right)


def weyl_dimension(rs: RootSystem, lam: Iterable[int]) -> int:
    lam = _check_weight(rs, lam)
    shifted = [x + 1 for x in lam]
    num, den = Fraction(1), Fraction(1)
    for alpha in rs.positive_roots_as_weights:
        num *= rs.inner(shifted, alpha)
        den *= rs.inner(rs.delta, alpha)
    dim = num / den
    if dim.denominator != 1:
        raise AssertionError("Weyl dimension is not an integer")
    return int(dim)


def weight_multiplicities(rs: RootSystem, lam: Iterable[int]) -> Multiset:
    """All weights of V_lam with multiplicities (Freudenthal recursion)."""
    lam = _check_weight(rs, lam)
    pos = rs.positive_roots_as_weights
    simple = rs.simple_roots_as_weights
    lam_delta = [x + 1 for x in lam]
    top = rs.inner(lam_delta, lam_delta)
    pos_data = [(alpha, rs.inner(alpha, alpha), sum(root)) for alpha, root in zip(pos, rs.positive_roots)]

    mult: dict[Weight, int] = {lam: 1}
    level = [lam]
    depth = 0
    while level:
        depth += 1
        candidates = {
            tuple(m - s for m, s in zip(mu, alpha)) for mu in level for alpha in simple
        }
        nxt = []
        for mu in sorted(candidates):
            mu_delta = [x + 1 for x in mu]
            denom = top - rs.inner(mu_delta, mu_delta)
            total = Fraction(0)
            for alpha, alpha_sq, ht in pos_data:
                base = rs.inner(mu, alpha)
                nu = mu
                for k in range(1, depth // ht + 1):
                    nu = tuple(m + a for m, a in zip(nu, alpha))
                    m_nu = mult.get(nu)
                    if m_nu:
                        total += m_nu * (base + k * alpha_sq)
            if total == 0:
                continue
            if denom <= 0:
                raise AssertionError("Freudenthal denominator vanished at a weight")
            m = 2 * total / denom
            if m.denominator != 1 or m < 0:
                raise AssertionError(f"non-integral multiplicity {m} at {mu}")
            mult[mu] = int(m)
            nxt.append(mu)
        level = nxt
    return Counter(mult)


_CHAR_CACHE: dict[tuple[CartanType, Weight], Multiset] = {}


def character(rs: RootSystem, lam: Iterable[int]) -> Multiset:
    """Cached weight multiset of V_lam (callers must not mutate it)."""
    key = (rs.cartan_type, _check_weight(rs, lam))
    if key not in _CHAR_CACHE:
        _CHAR_CACHE[key] = weight_multiplicities(rs, key[1])
    return _CHAR_CACHE[key]


def sym_square_multiset(ms: Multiset) -> Multiset:
    """Character of Sym^2 V from the character of V."""
    items = sorted(ms.items())
    out: Counter = Counter()
    for i, (w, m) in enumerate(items):
        if m <= 0:
            continue
        out[tuple(2 * x for x in w)] += m * (m + 1) // 2
        for w2, m2 in items[i + 1 :]:
            if m2 > 0:
                out[tuple(x + y for x, y in zip(w, w2))] += m * m2
    return out


def tensor_multiset(a: Multiset, b: Multiset) -> Multiset:
    """Character of V (x) W."""
    out: Counter = Counter()
    for w, m in a.items():
        for w2, m2 in b.items():
            out[tuple(x + y for x, y in zip(w, w2))] += m * m2
    return out


def decompose_multiset(rs: RootSystem, ms: Multiset) -> list[tuple[Weight, int]]:
    """Irreducible constituents of a character, by peeling off highest weights.

    The highest remaining weight is chosen by (height, then lexicographic),
    which refines the dominance order.
    """
    rest = Counter({w: m for w, m in ms.items() if m})
    result: list[tuple[Weight, int]] = []
    while rest:
        if any(m < 0 for m in rest.values()):
            raise NotACharacter("negative multiplicity encountered")
        top = max(rest, key=lambda w: (rs.height(w), w))
        if any(x < 0 for x in top):
            raise NotACharacter(f"maximal weight {top} is not dominant")
        count = rest[top]
        for w, m in character(rs, top).items():
            rest[w] -= count * m
            if rest[w] < 0:
                raise NotACharacter(f"subtraction went negative at weight {w}")
            if rest[w] == 0:
                del rest[w]
        result.append((top, count))
    return result


def reconstruct_multiset(rs: RootSystem, parts: Iterable[tuple[Weight, int]]) -> Multiset:
    out: Counter = Counter()
    for w, m in parts:
        for mu, k in character(rs, w).items():
            out[mu] += m * k
    return out


def subcritical_weights(rs: RootSystem, threshold) -> list[tuple[Weight, Fraction]]:
    """All dominant weights with Casimir strictly below ``threshold``.

    Only coefficient tuples with ``sum a_r Cas(omega_r) < threshold`` are
    examined; superadditivity of the Casimir makes this search complete.
    Output is in lexicographic order of the coefficient tuples.
    """
    threshold = Fraction(threshold)
    if threshold <= 0:
        return []
    fund = [casimir(rs, fundamental_weight(rs, r + 1)) for r in range(rs.rank)]
    out: list[tuple[Weight, Fraction]] = []

    def extend(prefix: list[int], bound: Fraction):
        r = len(prefix)
        if r == rs.rank:
            lam = tuple(prefix)
            c = casimir(rs, lam)
            if c < threshold:
                out.append((lam, c))
            return
        a = 0
        while a * fund[r] < bound:
            extend(prefix + [a], bound - a * fund[r])
            a += 1

    extend([], threshold)
    return out


def subcritical_product_weights(
    rs: RootSystem, threshold, up_to_swap: bool = True
) -> list[tuple[ProductWeight, Fraction]]:
    """Highest weights (lam, mu) of K x K with Cas(lam) + Cas(mu) < threshold.

    With ``up_to_swap`` only one of (lam, mu) and (mu, lam) is kept, namely
    the one whose concatenated label tuple is lexicographically larger.
    """
    threshold = Fraction(threshold)
    singles = subcritical_weights(rs, threshold)
    out = []
    for lam, c1 in singles:
        for mu, c2 in singles:
            if c1 + c2 < threshold:
                if up_to_swap and lam + mu < mu + lam:
                    continue
                out.append((ProductWeight(lam, mu), c1 + c2))
    return out
