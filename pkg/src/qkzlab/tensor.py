"""Dense operators on V^(tensor n) with V = C^2, over an exact scalar ring.

Index convention: leg 1 is the most significant index.  A row or column
index encodes the basis labels (a_1, ..., a_n), a_l in {1, 2}, as
sum over l of (a_l - 1) * 2^(n - l).  The basis of V is (v_1, v_2).

Entries may be Rat, RatFunc, or HSeries; a matrix is homogeneous in one
ring and operations require matching leg counts.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import HSeries, PoleEncountered, RatFunc, rat_to_str


class BadLegIndex(IndexError):
    """Leg index outside 1..n_legs, or a repeated leg pair."""


class SingularOperator(ArithmeticError):
    """Exact inversion of a non-invertible matrix."""


def ring_one_like(x):
    if isinstance(x, HSeries):
        return x.one_like()
    if isinstance(x, RatFunc):
        return RatFunc.const(1)
    return Fraction(1)


def ring_zero_like(x):
    return x * 0


def ring_is_zero(x) -> bool:
    if isinstance(x, (HSeries, RatFunc)):
        return x.is_zero()
    return x == 0


def ring_is_invertible(x) -> bool:
    if isinstance(x, HSeries):
        c0 = x.constant_term()
        return not ring_is_zero(c0)
    return not ring_is_zero(x)


def ring_inverse(x):
    if isinstance(x, HSeries):
        return x.inverse()
    if isinstance(x, RatFunc):
        return x.reciprocal()
    if x == 0:
        raise ZeroDivisionError("inverse of zero")
    return 1 / x


def scalar_to_str(x) -> str:
    return rat_to_str(x) if isinstance(x, Fraction) else str(x)


class TensorMat:
    """Square matrix of side 2^n_legs with tensor-leg structure."""

    __slots__ = ("n_legs", "rows")

    def __init__(self, n_legs: int, rows):
        if n_legs < 1:
            raise BadLegIndex("need at least one leg")
        dim = 1 << n_legs
        rows = tuple(tuple(r) for r in rows)
        if len(rows) != dim or any(len(r) != dim for r in rows):
            raise ValueError(f"expected a {dim}x{dim} matrix")
        self.n_legs = n_legs
        self.rows = rows

    @property
    def dim(self) -> int:
        return 1 << self.n_legs

    @staticmethod
    def identity(n_legs: int, one=Fraction(1)) -> "TensorMat":
        zero = ring_zero_like(one)
        dim = 1 << n_legs
        return TensorMat(
            n_legs, [[one if r == c else zero for c in range(dim)] for r in range(dim)]
        )

    @staticmethod
    def zero(n_legs: int, zero=Fraction(0)) -> "TensorMat":
        dim = 1 << n_legs
        return TensorMat(n_legs, [[zero] * dim for _ in range(dim)])

    def entry(self, r: int, c: int):
        return self.rows[r][c]

    def map_entries(self, f) -> "TensorMat":
        return TensorMat(self.n_legs, [[f(x) for x in row] for row in self.rows])

    def __eq__(self, other):
        if not isinstance(other, TensorMat) or self.n_legs != other.n_legs:
            return NotImplemented
        return all(
            ring_is_zero(a - b)
            for ra, rb in zip(self.rows, other.rows)
            for a, b in zip(ra, rb)
        )

    def __add__(self, other):
        self._check_compatible(other)
        return TensorMat(
            self.n_legs,
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
        )

    def __sub__(self, other):
        self._check_compatible(other)
        return TensorMat(
            self.n_legs,
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
        )

    def __neg__(self):
        return self.map_entries(lambda x: -x)

    def scale(self, s) -> "TensorMat":
        return self.map_entries(lambda x: x * s)

    def _check_compatible(self, other):
        if not isinstance(other, TensorMat):
            raise TypeError("expected a TensorMat")
        if self.n_legs != other.n_legs:
            raise ValueError("leg-count mismatch")

    def __matmul__(self, other) -> "TensorMat":
        self._check_compatible(other)
        dim = self.dim
        zero = ring_zero_like(self.rows[0][0])
        out = [[zero] * dim for _ in range(dim)]
        brows = other.rows
        for r in range(dim):
            arow = self.rows[r]
            orow = out[r]
            for k in range(dim):
                a = arow[k]
                if ring_is_zero(a):
                    continue
                brow = brows[k]
                for c in range(dim):
                    b = brow[c]
                    if not ring_is_zero(b):
                        orow[c] = orow[c] + a * b
        return TensorMat(self.n_legs, out)

    def mul_vec(self, vec):
        if len(vec) != self.dim:
            raise ValueError("vector length mismatch")
        zero = ring_zero_like(self.rows[0][0])
        out = []
        for row in self.rows:
            acc = zero
            for a, v in zip(row, vec):
                if not (ring_is_zero(a) or ring_is_zero(v)):
                    acc = acc + a * v
            out.append(acc)
        return tuple(out)

    def transpose(self) -> "TensorMat":
        dim = self.dim
        return TensorMat(
            self.n_legs, [[self.rows[c][r] for c in range(dim)] for r in range(dim)]
        )

    def is_identity(self) -> bool:
        one = ring_one_like(self.rows[0][0])
        return self == TensorMat.identity(self.n_legs, one)

    def inverse(self) -> "TensorMat":
        """Exact inverse by Gaussian elimination over the fraction field
        (or the series ring, pivoting on invertible entries)."""
        dim = self.dim
        one = ring_one_like(self.rows[0][0])
        zero = ring_zero_like(one)
        a = [list(row) for row in self.rows]
        b = [[one if r == c else zero for c in range(dim)] for r in range(dim)]
        for col in range(dim):
            piv = None
            for r in range(col, dim):
                if ring_is_invertible(a[r][col]):
                    piv = r
                    break
            if piv is None:
                raise SingularOperator(f"no invertible pivot in column {col}")
            if piv != col:
                a[piv], a[col] = a[col], a[piv]
                b[piv], b[col] = b[col], b[piv]
            inv = ring_inverse(a[col][col])
            a[col] = [x * inv for x in a[col]]
            b[col] = [x * inv for x in b[col]]
            for r in range(dim):
                if r == col:
                    continue
                f = a[r][col]
                if ring_is_zero(f):
                    continue
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                b[r] = [x - f * y for x, y in zip(b[r], b[col])]
        return TensorMat(self.n_legs, b)

    def __str__(self):
        return "\n".join(
            "[" + ", ".join(scalar_to_str(x) for x in row) + "]" for row in self.rows
        )

    __repr__ = __str__


def first_nonzero_entry(m: TensorMat):
    """(row, col, value) of the first nonzero entry in row-major order,
    or None for the zero matrix."""
    for r, row in enumerate(m.rows):
        for c, x in enumerate(row):
            if not ring_is_zero(x):
                return r, c, x
    return None


def perm_p() -> TensorMat:
    """Permutation operator on V tensor V: P(v_a (x) v_b) = v_b (x) v_a."""
    zero, one = Fraction(0), Fraction(1)
    rows = [[zero] * 4 for _ in range(4)]
    for a in range(2):
        for b in range(2):
            rows[(b << 1) | a][(a << 1) | b] = one
    return TensorMat(2, rows)


def _leg_bit(n: int, leg: int) -> int:
    return n - leg


def embed(m: TensorMat, n: int, i: int, j: int) -> TensorMat:
    """Embed a 2-leg operator into n legs, with the first tensor slot of m
    acting on leg i and the second on leg j, identity elsewhere.

    Works for i > j directly by index arithmetic; no conjugation shortcut.
    """
    if m.n_legs != 2:
        raise BadLegIndex("embed expects a 2-leg operator")
    if not (1 <= i <= n and 1 <= j <= n) or i == j:
        raise BadLegIndex(f"bad leg pair ({i}, {j}) for n = {n}")
    bi, bj = _leg_bit(n, i), _leg_bit(n, j)
    zero = ring_zero_like(m.rows[0][0])
    dim = 1 << n
    rows = [[zero] * dim for _ in range(dim)]
    for r in range(dim):
        ai = (r >> bi) & 1
        aj = (r >> bj) & 1
        base = r & ~(1 << bi) & ~(1 << bj)
        mrow = m.rows[(ai << 1) | aj]
        for ci in range(2):
            for cj in range(2):
                v = mrow[(ci << 1) | cj]
                if ring_is_zero(v):
                    continue
                c = base | (ci << bi) | (cj << bj)
                rows[r][c] = v
    return TensorMat(n, rows)


def partial_transpose(m: TensorMat, leg: int) -> TensorMat:
    """Transpose the indices of one leg only; involutive."""
    if not (1 <= leg <= m.n_legs):
        raise BadLegIndex(f"bad leg {leg} for n = {m.n_legs}")
    bit = _leg_bit(m.n_legs, leg)
    dim = m.dim
    zero = ring_zero_like(m.rows[0][0])
    rows = [[zero] * dim for _ in range(dim)]
    for r in range(dim):
        for c in range(dim):
            rr = (r & ~(1 << bit)) | (((c >> bit) & 1) << bit)
            cc = (c & ~(1 << bit)) | (((r >> bit) & 1) << bit)
            rows[rr][cc] = m.rows[r][c]
    return TensorMat(m.n_legs, rows)


def swap_legs(m: TensorMat) -> TensorMat:
    """The operator with the two tensor slots of a 2-leg matrix exchanged."""
    return embed(m, 2, 2, 1)


__all__ = [
    "BadLegIndex",
    "PoleEncountered",
    "SingularOperator",
    "TensorMat",
    "embed",
    "first_nonzero_entry",
    "partial_transpose",
    "perm_p",
    "swap_legs",
]
