"""The Albert algebra H of Hermitian 3x3 octonionic matrices.

An element is stored as ``a, b, c`` (diagonal) and octonions ``x, y, z`` for

    [[a,      x,      conj(y)],
     [conj(x), b,      z      ],
     [y,      conj(z), c      ]]

Coordinates on H follow the basis E_1, E_2, E_3, F_1(e_k), F_2(e_k), F_3(e_k)
(k = 0..7), where F_1 fills the ``z`` slot, F_2 the ``y`` slot and F_3 the
``x`` slot.  The trace-free part H_0 uses E_1 - E_2, E_2 - E_3 and the 24
F-vectors.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactlin import (
    IMAG,
    ExactMatrix,
    GaussianRational,
    GramSpace,
    as_fraction,
    inverse,
    rref,
)
from .octonion import ONE, ZERO, Octonion
from .spaces import SpaceModel
from .symsquare import SymSquare

DIM = 27
DIM0 = 26

_SLOTS = ("z", "y", "x")  # F_1, F_2, F_3


@dataclass(frozen=True)
class AlbertElement:
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    c: Fraction = Fraction(0)
    x: Octonion = ZERO
    y: Octonion = ZERO
    z: Octonion = ZERO

    def __post_init__(self):
        for name in "abc":
            object.__setattr__(self, name, as_fraction(getattr(self, name)))

    @classmethod
    def from_coords(cls, coords) -> "AlbertElement":
        c = [as_fraction(v) for v in coords]
        if len(c) != DIM:
            raise ValueError("an Albert element has 27 coordinates")
        return cls(c[0], c[1], c[2], x=Octonion(c[19:27]), y=Octonion(c[11:19]), z=Octonion(c[3:11]))

    @property
    def coords(self) -> list[Fraction]:
        return [self.a, self.b, self.c, *self.z.coords, *self.y.coords, *self.x.coords]

    def column(self) -> ExactMatrix:
        return ExactMatrix.column(self.coords)

    def matrix(self) -> list[list[Octonion]]:
        x, y, z = self.x, self.y, self.z
        return [
            [Octonion.real(self.a), x, y.conjugate()],
            [x.conjugate(), Octonion.real(self.b), z],
            [y, z.conjugate(), Octonion.real(self.c)],
        ]

    @classmethod
    def from_matrix(cls, m: list[list[Octonion]]) -> "AlbertElement":
        for i in range(3):
            if any(m[i][i].coords[1:]):
                raise ValueError("diagonal entries must be real")
        if m[1][0] != m[0][1].conjugate() or m[0][2] != m[2][0].conjugate() or m[2][1] != m[1][2].conjugate():
            raise ValueError("matrix is not Hermitian")
        return cls(m[0][0].real_part(), m[1][1].real_part(), m[2][2].real_part(), x=m[0][1], y=m[2][0], z=m[1][2])

    def __add__(self, other: "AlbertElement") -> "AlbertElement":
        return AlbertElement.from_coords([p + q for p, q in zip(self.coords, other.coords)])

    def __sub__(self, other: "AlbertElement") -> "AlbertElement":
        return AlbertElement.from_coords([p - q for p, q in zip(self.coords, other.coords)])

    def __neg__(self) -> "AlbertElement":
        return AlbertElement.from_coords([-p for p in self.coords])

    def __mul__(self, s) -> "AlbertElement":
        s = as_fraction(s)
        return AlbertElement.from_coords([s * p for p in self.coords])

    __rmul__ = __mul__

    def trace(self) -> Fraction:
        return self.a + self.b + self.c

    def is_zero(self) -> bool:
        return not any(self.coords)


def E(i: int) -> AlbertElement:
    """Diagonal idempotent E_i, i = 1..3."""
    return AlbertElement.from_coords([1 if k == i - 1 else 0 for k in range(DIM)])


def F(i: int, x: Octonion = ONE) -> AlbertElement:
    """F_i(x), i = 1..3."""
    return AlbertElement(**{_SLOTS[i - 1]: x})


IDENTITY = AlbertElement(1, 1, 1)


def basis() -> list[AlbertElement]:
    return [E(1), E(2), E(3)] + [F(i, Octonion.unit(k)) for i in (1, 2, 3) for k in range(8)]


def basis_labels() -> list[str]:
    return ["E1", "E2", "E3"] + [f"F{i}(e{k})" if k else f"F{i}(1)" for i in (1, 2, 3) for k in range(8)]


def traceless_labels() -> list[str]:
    return ["E1-E2", "E2-E3"] + basis_labels()[3:]


def _matmul(p, q):
    return [[p[i][0] * q[0][j] + p[i][1] * q[1][j] + p[i][2] * q[2][j] for j in range(3)] for i in range(3)]


def jordan(A: AlbertElement, B: AlbertElement) -> AlbertElement:
    """X o Y = (XY + YX) / 2."""
    p, q = A.matrix(), B.matrix()
    pq, qp = _matmul(p, q), _matmul(q, p)
    half = Fraction(1, 2)
    return AlbertElement.from_matrix([[(pq[i][j] + qp[i][j]) * half for j in range(3)] for i in range(3)])


def inner(A: AlbertElement, B: AlbertElement) -> Fraction:
    """Trace form tr(A o B)."""
    return A.a * B.a + A.b * B.b + A.c * B.c + 2 * (A.x.inner(B.x) + A.y.inner(B.y) + A.z.inner(B.z))


def pi_albert(A: AlbertElement, B: AlbertElement) -> AlbertElement:
    """pi(A (.) B) = AB + BA = 2 A o B."""
    return jordan(A, B) * 2


# -- coordinates --------------------------------------------------------------


@lru_cache(maxsize=None)
def gram() -> ExactMatrix:
    return ExactMatrix.diagonal([1, 1, 1] + [2] * 24)


@lru_cache(maxsize=None)
def traceless_embedding() -> ExactMatrix:
    """H_0 coordinates -> H coordinates (27 x 26)."""
    e = {(0, 0): 1, (1, 0): -1, (1, 1): 1, (2, 1): -1}
    for k in range(24):
        e[(3 + k, 2 + k)] = 1
    return ExactMatrix.from_sparse(DIM, DIM0, e)


@lru_cache(maxsize=None)
def traceless_projection() -> ExactMatrix:
    """pr_{H_0} as a map from H coordinates to H_0 coordinates (26 x 27)."""
    t = Fraction(1, 3)
    # a E1 + b E2 + c E3 minus the trace part is p(E1-E2) + q(E2-E3) with
    # p = a - s/3 and q = a + b - 2s/3, s = a + b + c
    e = {(0, 0): 1 - t, (0, 1): -t, (0, 2): -t, (1, 0): 1 - 2 * t, (1, 1): 1 - 2 * t, (1, 2): -2 * t}
    for k in range(24):
        e[(2 + k, 3 + k)] = 1
    return ExactMatrix.from_sparse(DIM0, DIM, e)


@lru_cache(maxsize=None)
def traceless_gram() -> ExactMatrix:
    emb = traceless_embedding()
    return emb.T @ gram() @ emb


def space() -> GramSpace:
    return GramSpace(DIM, gram())


def traceless_space() -> GramSpace:
    return GramSpace(DIM0, traceless_gram())


@lru_cache(maxsize=None)
def _structure_constants() -> tuple:
    """``table[a][b]`` lists the nonzero coordinates of e_a o e_b."""
    bs = basis()
    table = [[None] * DIM for _ in range(DIM)]
    for a in range(DIM):
        for b in range(a, DIM):
            prod = jordan(bs[a], bs[b])
            entry = tuple((k, v) for k, v in enumerate(prod.coords) if v)
            table[a][b] = table[b][a] = entry
    return tuple(tuple(row) for row in table)


def multiplication_operator(A) -> ExactMatrix:
    """Matrix of L_A : B -> A o B on H coordinates; ``A`` may be a coordinate column."""
    coords = A.coords if isinstance(A, AlbertElement) else [row[0] for row in A.tolist()]
    table = _structure_constants()
    entries: dict = defaultdict(GaussianRational)
    for a, s in enumerate(coords):
        if not s:
            continue
        for b in range(DIM):
            for k, v in table[a][b]:
                entries[(k, b)] = entries[(k, b)] + s * v
    return ExactMatrix.from_sparse(DIM, DIM, entries)


@lru_cache(maxsize=None)
def basis_multiplication_operators() -> tuple:
    return tuple(multiplication_operator(e) for e in basis())


# -- derivations --------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Derivation:
    """A derivation of (H, o) as a 27 x 27 matrix on H coordinates."""

    matrix: ExactMatrix

    def __post_init__(self):
        if self.matrix.shape != (DIM, DIM):
            raise ValueError("a derivation acts on the 27 coordinates of H")

    def apply(self, A: AlbertElement) -> AlbertElement:
        out = self.matrix @ A.column()
        return AlbertElement.from_coords([row[0].re for row in out.tolist()])

    def satisfies_leibniz(self, pairs=None) -> bool:
        d = self.matrix
        ops = basis_multiplication_operators()
        # D L_a - L_a D = L_{D e_a} on every basis vector a
        idx = range(DIM) if pairs is None else pairs
        for a in idx:
            lhs = d @ ops[a] - ops[a] @ d
            if lhs != multiplication_operator(d.col(a)):
                return False
        return True

    def is_skew(self) -> bool:
        g = gram()
        return (self.matrix.T @ g + g @ self.matrix).is_zero()

    def commutator(self, other: "Derivation") -> "Derivation":
        return Derivation(self.matrix @ other.matrix - other.matrix @ self.matrix)


def derivation_from_pair(A: AlbertElement, B: AlbertElement) -> Derivation:
    la, lb = multiplication_operator(A), multiplication_operator(B)
    return Derivation(la @ lb - lb @ la)


def _flatten(m: ExactMatrix) -> ExactMatrix:
    return m.reshape(1, m.rows * m.cols)


def _stack_flat(mats: list[ExactMatrix]) -> ExactMatrix:
    return ExactMatrix.vstack([_flatten(m) for m in mats])


@lru_cache(maxsize=None)
def _independent_derivations() -> tuple:
    ops = basis_multiplication_operators()
    cands = [ops[a] @ ops[b] - ops[b] @ ops[a] for a in range(DIM) for b in range(a + 1, DIM)]
    _, pivots = rref(_stack_flat(cands).T)
    if len(pivots) != 52:
        raise ArithmeticError(f"derivation algebra has rank {len(pivots)}, expected 52")
    return tuple(cands[p] for p in pivots)


def span_coordinates(mats: list[ExactMatrix], targets: list[ExactMatrix]) -> ExactMatrix:
    """Column j holds the coordinates of ``targets[j]`` in the basis ``mats``."""
    stack = _stack_flat(mats)
    _, piv = rref(stack)
    sub_inv = inverse(stack.submatrix(None, piv))
    flat = _stack_flat(targets)
    c = flat.submatrix(None, piv) @ sub_inv
    if c @ stack != flat:
        raise ValueError("matrix is not in the span")
    return c.T


def killing_form(mats: list[ExactMatrix]) -> ExactMatrix:
    """tr(ad D_i ad D_j) inside the Lie algebra spanned by ``mats``."""
    k = len(mats)
    brackets = [mats[i] @ mats[j] - mats[j] @ mats[i] for i in range(k) for j in range(k)]
    c = span_coordinates(mats, brackets)  # column i*k + j is [D_i, D_j]
    ads = [c.submatrix(None, range(i * k, (i + 1) * k)) for i in range(k)]
    left = _stack_flat(ads)
    right = _stack_flat([a.T for a in ads])
    return left @ right.T


def gram_schmidt(g: ExactMatrix) -> tuple[ExactMatrix, list[Fraction]]:
    """Rows ``T`` with ``T g T^T`` diagonal, ``g`` real symmetric definite."""
    n = g.rows
    gl = g.real_entries()
    t = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    gt: list[list[Fraction]] = []  # g @ t_k for finished rows
    norms: list[Fraction] = []
    for k in range(n):
        row = t[k]
        for j in range(k):
            c = sum((row[p] * gt[j][p] for p in range(n) if row[p]), Fraction(0)) / norms[j]
            if c:
                row = [r - c * s for r, s in zip(row, t[j])]
        t[k] = row
        gv = [sum((gl[p][q] * row[q] for q in range(n) if row[q]), Fraction(0)) for p in range(n)]
        gt.append(gv)
        norms.append(sum((row[p] * gv[p] for p in range(n)), Fraction(0)))
    return ExactMatrix(t), norms


@lru_cache(maxsize=None)
def f4_basis() -> tuple[list[Derivation], ExactMatrix]:
    """52 independent derivations of H and their Killing gram."""
    mats = list(_independent_derivations())
    return [Derivation(m) for m in mats], killing_form(mats)


@lru_cache(maxsize=None)
def f4_orthogonal_basis() -> tuple[list[Derivation], ExactMatrix]:
    """A Killing-orthogonal basis of Der(H); the gram is diagonal."""
    ders, kill = f4_basis()
    t, norms = gram_schmidt(-kill)
    rows = t.real_entries()
    out = []
    for row in rows:
        acc = ExactMatrix.zeros(DIM, DIM)
        for c, d in zip(row, ders):
            if c:
                acc = acc + d.matrix.scale(c)
        out.append(Derivation(acc))
    return out, ExactMatrix.diagonal([-v for v in norms])


def random_element(rng: random.Random, bound: int = 5) -> AlbertElement:
    return AlbertElement.from_coords([Fraction(rng.randint(-bound, bound), rng.randint(1, 3)) for _ in range(DIM)])


# -- the E6/F4 model ----------------------------------------------------------


@lru_cache(maxsize=None)
def traceless_sym() -> SymSquare:
    return SymSquare(traceless_space())


@lru_cache(maxsize=None)
def pi_full_matrix() -> ExactMatrix:
    """pi on Sym^2(H_0), valued in H coordinates (27 x 351)."""
    sym = traceless_sym()
    emb = traceless_embedding()
    cols = [emb.col(k) for k in range(DIM0)]
    ops = [multiplication_operator(c) for c in cols]
    images = {(a, b): (ops[a] @ cols[b]).scale(2) for a, b in sym.pairs}
    return sym.map_from_bilinear(images, DIM)


@lru_cache(maxsize=None)
def pi_matrix() -> ExactMatrix:
    """pi on Sym^2_0(H_0) in H_0 coordinates (26 x 350)."""
    sym = traceless_sym()
    img = pi_full_matrix() @ sym.traceless_basis
    if not (ExactMatrix([[1, 1, 1] + [0] * 24]) @ img).is_zero():
        raise ArithmeticError("pi does not map Sym^2_0 H_0 into H_0")
    return traceless_projection() @ img


@lru_cache(maxsize=None)
def e6f4_space_model() -> SpaceModel:
    emb = traceless_embedding()
    proj = traceless_projection()
    action = [multiplication_operator(emb.col(k)).scale(IMAG) for k in range(DIM0)]
    ders, _ = f4_orthogonal_basis()
    return SpaceModel(
        name="E6/F4",
        rep_label="H^C",
        m_space=traceless_space(),
        m_labels=traceless_labels(),
        v_space=space(),
        v_labels=basis_labels(),
        action=action,
        target_proj=proj,
        sym=traceless_sym(),
        pi_matrix=pi_matrix(),
        k_action_v=[d.matrix for d in ders],
        k_action_m=[proj @ d.matrix @ emb for d in ders],
        witness=(3, 2),  # F = F_1(1) in H, X = F_1(1) in H_0
    )


__all__ = [
    "AlbertElement",
    "Derivation",
    "E",
    "F",
    "IDENTITY",
    "basis",
    "basis_labels",
    "derivation_from_pair",
    "e6f4_space_model",
    "f4_basis",
    "f4_orthogonal_basis",
    "gram",
    "inner",
    "jordan",
    "multiplication_operator",
    "pi_albert",
    "pi_matrix",
    "traceless_embedding",
    "traceless_projection",
]
