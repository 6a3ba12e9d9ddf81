"""Exact arithmetic in GF(p^m) and dense linear algebra over it.

A field is described by a :class:`FieldSpec` (characteristic, extension
degree, irreducible modulus); elements are coefficient vectors over
GF(p).  The irreducible polynomial is always the lexicographically
first monic irreducible, so a spec is reproducible from (p, m) alone
across runs and platforms.

Extension fields come with an explicit embedding of the base field,
computed by sending the base generator to a root of the base modulus
inside the extension (trivial for prime base fields).

Everything here is desk scale: degrees up to 8, orders up to ~10^5 for
root scans, dense Gaussian elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

from .config import Ceilings, DEFAULT_CEILINGS
from .errors import CeilingError

_ROOT_SCAN_LIMIT = 100_000


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


# -- polynomial helpers over GF(p), coefficients low-to-high ---------------

def _poly_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mulmod(a: Sequence[int], b: Sequence[int], mod: Sequence[int], p: int) -> list[int]:
    deg = len(mod) - 1
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    # reduce modulo the monic modulus
    for i in range(len(out) - 1, deg - 1, -1):
        c = out[i]
        if c:
            out[i] = 0
            for j in range(deg):
                out[i - deg + j] = (out[i - deg + j] - c * mod[j]) % p
    out = out[:deg]
    out += [0] * (deg - len(out))
    return out


def _poly_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    a = list(a)
    inv_lead = pow(b[-1], -1, p)
    q = [0] * max(0, len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * inv_lead % p
        if c:
            q[i] = c
            for j, y in enumerate(b):
                a[i + j] = (a[i + j] - c * y) % p
    return _poly_trim(q), _poly_trim(a)


def _poly_is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(poly) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for tail in product(range(p), repeat=d):
            divisor = list(tail) + [1]
            _, rem = _poly_divmod(list(poly), divisor, p)
            if not rem:
                return False
    return True


@lru_cache(maxsize=None)
def _first_irreducible(p: int, m: int) -> tuple[int, ...]:
    if m == 1:
        return (0, 1)
    for tail in product(range(p), repeat=m):
        # tail is (c_0, ..., c_{m-1}) in ascending lexicographic order
        candidate = list(tail) + [1]
        if _poly_is_irreducible(candidate, p):
            return tuple(candidate)
    raise AssertionError("an irreducible polynomial of every degree exists")


# ---------------------------------------------------------------------------
# FieldSpec / FieldElement
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    """GF(p^m) presented as GF(p)[x] modulo a monic irreducible of degree m."""

    p: int
    m: int
    irreducible: tuple[int, ...]  # length m+1, low-to-high, monic

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if not 1 <= self.m:
            raise ValueError("extension degree must be >= 1")
        if len(self.irreducible) != self.m + 1 or self.irreducible[-1] != 1:
            raise ValueError("modulus must be monic of degree m")
        if self.m > 1 and not _poly_is_irreducible(self.irreducible, self.p):
            raise ValueError("modulus is reducible")

    @property
    def order(self) -> int:
        return self.p ** self.m

    # -- element constructors ------------------------------------------

    def element(self, coeffs: Iterable[int]) -> "FieldElement":
        c = tuple(x % self.p for x in coeffs)
        if len(c) != self.m:
            raise ValueError(f"need {self.m} coefficients")
        return FieldElement(self, c)

    def from_int(self, value: int) -> "FieldElement":
        """Constant embedding of an integer (value mod p)."""
        return self.element([value] + [0] * (self.m - 1))

    def from_index(self, index: int) -> "FieldElement":
        """Canonical enumeration: index digits base p, low coefficient first."""
        if not 0 <= index < self.order:
            raise ValueError(f"index {index} out of range for order {self.order}")
        coeffs = []
        for _ in range(self.m):
            coeffs.append(index % self.p)
            index //= self.p
        return FieldElement(self, tuple(coeffs))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, (0,) * self.m)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, (1,) + (0,) * (self.m - 1))

    def x(self) -> "FieldElement":
        """The class of the variable, a generator of the extension over GF(p)."""
        if self.m == 1:
            raise ValueError("prime field has no extension generator")
        return FieldElement(self, (0, 1) + (0,) * (self.m - 2))

    def elements(self):
        for i in range(self.order):
            yield self.from_index(i)

    def __repr__(self):
        return f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})"


class FieldElement:
    """Immutable element of a FieldSpec; arithmetic is exact."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: FieldSpec, coeffs: tuple[int, ...]):
        self.spec = spec
        self.coeffs = coeffs

    def _wrap(self, coeffs) -> "FieldElement":
        return FieldElement(self.spec, tuple(coeffs))

    def __add__(self, other: "FieldElement") -> "FieldElement":
        p = self.spec.p
        return self._wrap((a + b) % p for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        p = self.spec.p
        return self._wrap((a - b) % p for a, b in zip(self.coeffs, other.coeffs))

    def __neg__(self) -> "FieldElement":
        p = self.spec.p
        return self._wrap(-a % p for a in self.coeffs)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        spec = self.spec
        if spec.m == 1:
            return self._wrap(((self.coeffs[0] * other.coeffs[0]) % spec.p,))
        return self._wrap(
            _poly_mulmod(self.coeffs, other.coeffs, spec.irreducible, spec.p)
        )

    def inverse(self) -> "FieldElement":
        spec = self.spec
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        if spec.m == 1:
            return self._wrap((pow(self.coeffs[0], -1, spec.p),))
        # extended Euclid in GF(p)[x]
        p = spec.p
        r0, r1 = list(spec.irreducible), _poly_trim(list(self.coeffs))
        s0, s1 = [], [1]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1, p)
            # s_next = s0 - q * s1
            prod = [0] * (len(q) + len(s1) - 1) if q and s1 else []
            for i, a in enumerate(q):
                if a:
                    for j, b in enumerate(s1):
                        prod[i + j] = (prod[i + j] + a * b) % p
            s_next = [0] * max(len(s0), len(prod))
            for i, a in enumerate(s0):
                s_next[i] = a
            for i, a in enumerate(prod):
                s_next[i] = (s_next[i] - a) % p
            r0, r1, s0, s1 = r1, r, s1, _poly_trim(s_next)
        # r1 is a nonzero constant gcd
        scale = pow(r1[0], -1, p)
        inv = [a * scale % p for a in s1]
        inv += [0] * (spec.m - len(inv))
        return self._wrap(inv[: spec.m])

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        return self * other.inverse()

    def __pow__(self, exponent: int) -> "FieldElement":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.spec.one
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def to_index(self) -> int:
        index = 0
        for c in reversed(self.coeffs):
            index = index * self.spec.p + c
        return index

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldElement)
            and self.spec == other.spec
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.spec.p, self.spec.m, self.coeffs))

    def __repr__(self):
        if self.spec.m == 1:
            return str(self.coeffs[0])
        return "(" + ",".join(map(str, self.coeffs)) + ")"


def field_make(p: int, m: int, *, ceilings: Ceilings = DEFAULT_CEILINGS) -> FieldSpec:
    """GF(p^m) with the lexicographically first monic irreducible modulus."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not 1 <= m <= ceilings.field_degree:
        raise CeilingError(f"extension degree must be in [1, {ceilings.field_degree}]")
    return FieldSpec(p, m, _first_irreducible(p, m))


@dataclass(frozen=True)
class FieldEmbedding:
    """Ring embedding of a base field into an extension with the same p."""

    base: FieldSpec
    ext: FieldSpec
    generator_image: "FieldElement"  # image of the base field's x

    def __call__(self, elt: FieldElement) -> FieldElement:
        if elt.spec != self.base:
            raise ValueError("element not from the base field")
        acc = self.ext.zero
        power = self.ext.one
        for c in elt.coeffs:
            if c:
                acc = acc + self.ext.from_int(c) * power
            power = power * self.generator_image
        return acc


def field_extension_above(
    base: FieldSpec, threshold: int, *, ceilings: Ceilings = DEFAULT_CEILINGS
) -> tuple[FieldSpec, FieldEmbedding]:
    """Smallest extension GF(p^(m*l)) whose order exceeds `threshold`.

    Returns the extension spec together with an explicit embedding of
    the base.  If the base order already exceeds the threshold, the
    base itself is returned with the identity embedding.
    """
    if threshold < 1:
        raise ValueError("threshold must be >= 1")
    l = 1
    while base.order ** l <= threshold:
        l += 1
    degree = base.m * l
    if degree > ceilings.field_degree:
        raise CeilingError(
            f"extension degree {degree} exceeds ceiling {ceilings.field_degree}"
        )
    if l == 1:
        return base, FieldEmbedding(base, base, base.x() if base.m > 1 else base.one)
    ext = field_make(base.p, degree, ceilings=ceilings)
    if base.m == 1:
        # constants embed as constants
        return ext, FieldEmbedding(base, ext, ext.one)
    if ext.order > _ROOT_SCAN_LIMIT:
        raise CeilingError(
            f"root scan for embedding limited to order {_ROOT_SCAN_LIMIT}"
        )
    # send the base generator to the first root of the base modulus in ext
    for idx in range(ext.order):
        cand = ext.from_index(idx)
        acc = ext.zero
        power = ext.one
        for c in base.irreducible:
            if c:
                acc = acc + ext.from_int(c) * power
            power = power * cand
        if acc.is_zero():
            return ext, FieldEmbedding(base, ext, cand)
    raise AssertionError("base modulus must split in a degree-multiple extension")


# ---------------------------------------------------------------------------
# Dense matrices
# ---------------------------------------------------------------------------

class Matrix:
    """Row-major dense matrix over one FieldSpec."""

    __slots__ = ("spec", "rows", "cols", "data")

    def __init__(self, spec: FieldSpec, data: Sequence[Sequence[FieldElement]]):
        self.spec = spec
        self.data = tuple(tuple(row) for row in data)
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.data else 0
        for row in self.data:
            if len(row) != self.cols:
                raise ValueError("ragged matrix")
            for x in row:
                if x.spec != spec:
                    raise ValueError("mixed field elements in matrix")

    @classmethod
    def from_ints(cls, spec: FieldSpec, rows: Sequence[Sequence[int]]) -> "Matrix":
        return cls(spec, [[spec.from_int(x) for x in row] for row in rows])

    @classmethod
    def identity(cls, spec: FieldSpec, n: int) -> "Matrix":
        return cls(
            spec,
            [[spec.one if i == j else spec.zero for j in range(n)] for i in range(n)],
        )

    def __getitem__(self, idx: tuple[int, int]) -> FieldElement:
        return self.data[idx[0]][idx[1]]

    def transpose(self) -> "Matrix":
        return Matrix(self.spec, list(zip(*self.data))) if self.data else self

    def matvec(self, vec: Sequence[FieldElement]) -> list[FieldElement]:
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch")
        out = []
        for row in self.data:
            acc = self.spec.zero
            for a, b in zip(row, vec):
                acc = acc + a * b
            out.append(acc)
        return out

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.spec == other.spec and self.data == other.data

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols} over {self.spec})"


def row_reduce(matrix: Matrix) -> tuple[Matrix, int, list[int]]:
    """Reduced row echelon form, rank, and pivot columns (ascending)."""
    spec = matrix.spec
    rows = [list(r) for r in matrix.data]
    n_rows, n_cols = matrix.rows, matrix.cols
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        pivot_row = next((i for i in range(r, n_rows) if not rows[i][c].is_zero()), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(n_rows):
            if i != r and not rows[i][c].is_zero():
                factor = rows[i][c]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return Matrix(spec, rows), r, pivots


def matrix_rank(matrix: Matrix) -> int:
    return row_reduce(matrix)[1]


def determinant(matrix: Matrix) -> FieldElement:
    """Exact determinant via elimination with row-swap sign tracking."""
    if matrix.rows != matrix.cols:
        raise ValueError("determinant needs a square matrix")
    spec = matrix.spec
    n = matrix.rows
    if n == 0:
        return spec.one
    rows = [list(r) for r in matrix.data]
    det = spec.one
    for c in range(n):
        pivot_row = next((i for i in range(c, n) if not rows[i][c].is_zero()), None)
        if pivot_row is None:
            return spec.zero
        if pivot_row != c:
            rows[c], rows[pivot_row] = rows[pivot_row], rows[c]
            det = -det
        det = det * rows[c][c]
        inv = rows[c][c].inverse()
        for i in range(c + 1, n):
            if not rows[i][c].is_zero():
                factor = rows[i][c] * inv
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[c])]
    return det


def vectors_rank(spec: FieldSpec, vectors: Sequence[Sequence[FieldElement]]) -> int:
    if not vectors:
        return 0
    return matrix_rank(Matrix(spec, vectors))


class SpanBasis:
    """Incremental row-space membership tester (online Gaussian elimination)."""

    def __init__(self, spec: FieldSpec, dim: int):
        self.spec = spec
        self.dim = dim
        self.rows: list[list[FieldElement]] = []
        self.pivots: list[int] = []

    def _reduce(self, vec: Sequence[FieldElement]) -> list[FieldElement]:
        v = list(vec)
        for row, piv in zip(self.rows, self.pivots):
            if not v[piv].is_zero():
                factor = v[piv]
                v = [a - factor * b for a, b in zip(v, row)]
        return v

    def contains(self, vec: Sequence[FieldElement]) -> bool:
        return all(x.is_zero() for x in self._reduce(vec))

    def add(self, vec: Sequence[FieldElement]) -> bool:
        """Insert vec; returns False when it was already in the span."""
        v = self._reduce(vec)
        piv = next((i for i, x in enumerate(v) if not x.is_zero()), None)
        if piv is None:
            return False
        inv = v[piv].inverse()
        v = [x * inv for x in v]
        self.rows.append(v)
        self.pivots.append(piv)
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)
