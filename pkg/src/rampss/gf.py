"""Exact linear algebra over prime fields GF(q).

Field elements are plain ints in [0, q).  Matrices and subspaces are
immutable; every operation returns a new value, so all of this is safe to
share across threads.  Elimination is delegated to the selected kernel
backend (compiled or pure Python).
"""

from . import kernels
from .errors import ValidationError

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n):
    """Deterministic Miller-Rabin, exact for every n < 3.2e18."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeField:
    """The field GF(q) for a prime modulus q, 2 <= q < 2**31."""

    __slots__ = ("q",)

    def __init__(self, q):
        if not isinstance(q, int) or not (2 <= q < 2**31):
            raise ValidationError(f"modulus must be an int in [2, 2**31), got {q!r}")
        if not is_prime(q):
            raise ValidationError(f"modulus {q} is not prime")
        self.q = q

    def __repr__(self):
        return f"PrimeField({self.q})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and self.q == other.q

    def __hash__(self):
        return hash(("PrimeField", self.q))

    def element(self, x):
        return x % self.q

    def add(self, a, b):
        return (a + b) % self.q

    def sub(self, a, b):
        return (a - b) % self.q

    def mul(self, a, b):
        return (a * b) % self.q

    def neg(self, a):
        return (-a) % self.q

    def inv(self, a):
        if a % self.q == 0:
            raise ZeroDivisionError("0 has no inverse")
        return kernels.inv_mod(a, self.q)

    def pow(self, a, e):
        return pow(a % self.q, e, self.q)


class Matrix:
    """Immutable matrix over a PrimeField, stored as a tuple of row tuples."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field, entries, cols=None):
        rows = tuple(tuple(field.element(x) for x in row) for row in entries)
        if rows:
            cols = len(rows[0])
            if any(len(r) != cols for r in rows):
                raise ValidationError("ragged rows")
        elif cols is None:
            raise ValidationError("column count required for an empty matrix")
        self.field = field
        self.rows = len(rows)
        self.cols = cols
        self.entries = rows

    @classmethod
    def zero(cls, field, rows, cols):
        return cls(field, [[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, field, n):
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def row(self, i):
        return self.entries[i]

    def column(self, j):
        return tuple(r[j] for r in self.entries)

    def transpose(self):
        return Matrix(
            self.field,
            [self.column(j) for j in range(self.cols)],
            cols=self.rows,
        )

    def column_submatrix(self, columns):
        cols = tuple(columns)
        return Matrix(
            self.field,
            [[r[j] for j in cols] for r in self.entries],
            cols=len(cols),
        )

    def stack(self, other):
        if other.field != self.field or other.cols != self.cols:
            raise ValidationError("shape/field mismatch in stack")
        return Matrix(self.field, self.entries + other.entries, cols=self.cols)

    def __matmul__(self, other):
        if self.field != other.field or self.cols != other.rows:
            raise ValidationError("shape/field mismatch in product")
        prod = kernels.mul_mod(self.field.q, self.entries, other.entries)
        return Matrix(self.field, prod, cols=other.cols)

    def vec_mul(self, vec):
        """Row vector times this matrix."""
        if len(vec) != self.rows:
            raise ValidationError("vector length mismatch")
        if self.rows == 0:
            return (0,) * self.cols
        prod = kernels.mul_mod(self.field.q, [list(vec)], self.entries)
        return tuple(prod[0])

    def rref(self):
        """(RREF with zero rows removed, pivot columns)."""
        reduced, pivots = kernels.rref_mod(self.field.q, self.entries)
        return Matrix(self.field, reduced, cols=self.cols), list(pivots)

    def rank(self):
        return kernels.rank_mod(self.field.q, self.entries)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.field, self.cols, self.entries))

    def __repr__(self):
        return f"Matrix(GF({self.field.q}), {self.rows}x{self.cols})"


class Subspace:
    """A subspace of GF(q)^n, canonically represented by its RREF basis.

    Two subspaces are equal exactly when their bases coincide, which makes
    equality decidable by tuple comparison.
    """

    __slots__ = ("field", "ambient_dim", "basis")

    def __init__(self, field, ambient_dim, basis_rows):
        reduced, pivots = kernels.rref_mod(field.q, [list(r) for r in basis_rows])
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = Matrix(field, reduced, cols=ambient_dim)
        if self.basis.cols != ambient_dim:
            raise ValidationError("basis width does not match ambient dimension")

    @classmethod
    def zero(cls, field, n):
        return cls(field, n, [])

    @classmethod
    def full(cls, field, n):
        return cls(field, n, Matrix.identity(field, n).entries)

    @property
    def dim(self):
        return self.basis.rows

    def pivots(self):
        piv = []
        for row in self.basis.entries:
            for j, x in enumerate(row):
                if x:
                    piv.append(j)
                    break
        return piv

    def reduce(self, vec):
        """Canonical coset representative of vec modulo this subspace."""
        if len(vec) != self.ambient_dim:
            raise ValidationError("vector length mismatch")
        q = self.field.q
        v = [x % q for x in vec]
        for piv, row in zip(self.pivots(), self.basis.entries):
            c = v[piv]
            if c:
                v = [(v[i] - c * row[i]) % q for i in range(len(v))]
        return tuple(v)

    def contains(self, vec):
        return all(x == 0 for x in self.reduce(vec))

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self.basis.entries == other.basis.entries
        )

    def __hash__(self):
        return hash((self.field, self.ambient_dim, self.basis.entries))

    def __repr__(self):
        return f"Subspace(GF({self.field.q})^{self.ambient_dim}, dim={self.dim})"


def rref(m):
    """RREF of a Matrix: (reduced matrix with zero rows removed, pivots)."""
    return m.rref()


def left_kernel(m):
    """The subspace {v : v @ m = 0} of GF(q)^rows(m).

    Row-reduces [m | I]; the rows whose m-part vanished carry the kernel
    basis in the identity part, already in RREF.
    """
    field = m.field
    k = m.rows
    aug = [
        list(m.entries[i]) + [1 if j == i else 0 for j in range(k)]
        for i in range(k)
    ]
    reduced, pivots = kernels.rref_mod(field.q, aug)
    kernel_rows = [
        row[m.cols :] for row, piv in zip(reduced, pivots) if piv >= m.cols
    ]
    return Subspace(field, k, kernel_rows)


def solve_affine(m, rhs):
    """All solutions x of x @ m = rhs, if any.

    Returns (particular solution, left kernel of m), or None when the system
    is inconsistent.  The full solution set is particular + kernel.
    """
    field = m.field
    if len(rhs) != m.cols:
        raise ValidationError("rhs length must equal the column count")
    # Solve m^T y = rhs^T by eliminating the augmented matrix.
    aug = [
        [m.entries[i][j] for i in range(m.rows)] + [field.element(rhs[j])]
        for j in range(m.cols)
    ]
    reduced, pivots = kernels.rref_mod(field.q, aug)
    if m.rows in pivots:
        return None
    particular = [0] * m.rows
    for row, piv in zip(reduced, pivots):
        particular[piv] = row[m.rows]
    return tuple(particular), left_kernel(m)
