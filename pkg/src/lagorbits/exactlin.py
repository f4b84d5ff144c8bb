"""Exact linear algebra over the rationals and small prime fields.

Conventions used throughout the package:

* vectors are columns, stored as plain tuples of field scalars;
* a :class:`Subspace` is a column span, kept in reduced column-echelon form,
  so two subspaces are equal exactly when their stored bases are equal;
* rationals are ``gmpy2.mpq`` (unbounded, always in lowest terms),
  prime-field residues are :class:`ModInt`.

Everything here is immutable once constructed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import gmpy2
from gmpy2 import mpq

from .errors import DimensionMismatch, PreconditionError, SchemaError, ShapeError

Vector = tuple


# ---------------------------------------------------------------------------
# fields


@dataclass(frozen=True)
class Rationals:
    kind = "Rationals"

    def __call__(self, x):
        if isinstance(x, float):
            raise TypeError("floats are not exact field elements")
        if isinstance(x, str):
            try:
                return mpq(x.strip())
            except (ValueError, ZeroDivisionError) as exc:
                raise SchemaError(f"not a rational: {x!r}") from exc
        if isinstance(x, ModInt):
            raise TypeError("cannot coerce a prime-field residue to a rational")
        return mpq(x)

    @property
    def zero(self):
        return mpq(0)

    @property
    def one(self):
        return mpq(1)

    @property
    def characteristic(self) -> int:
        return 0

    def to_json(self) -> dict:
        return {"kind": "Rationals"}

    def __str__(self) -> str:
        return "QQ"


class ModInt:
    """Residue class modulo a prime ``p``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = int(v) % p
        self.p = p

    def _other(self, o):
        if isinstance(o, ModInt):
            if o.p != self.p:
                raise ValueError("mixing residues of different primes")
            return o.v
        if isinstance(o, int):
            return o
        return None

    def __add__(self, o):
        w = self._other(o)
        return NotImplemented if w is None else ModInt(self.v + w, self.p)

    __radd__ = __add__

    def __sub__(self, o):
        w = self._other(o)
        return NotImplemented if w is None else ModInt(self.v - w, self.p)

    def __rsub__(self, o):
        w = self._other(o)
        return NotImplemented if w is None else ModInt(w - self.v, self.p)

    def __mul__(self, o):
        w = self._other(o)
        return NotImplemented if w is None else ModInt(self.v * w, self.p)

    __rmul__ = __mul__

    def __truediv__(self, o):
        w = self._other(o)
        if w is None:
            return NotImplemented
        if w % self.p == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return ModInt(self.v * pow(w, -1, self.p), self.p)

    def __rtruediv__(self, o):
        w = self._other(o)
        if w is None:
            return NotImplemented
        return ModInt(w, self.p) / self

    def __neg__(self):
        return ModInt(-self.v, self.p)

    def __eq__(self, o):
        w = self._other(o)
        if w is None:
            return NotImplemented
        return (self.v - w) % self.p == 0

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"ModInt({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


@dataclass(frozen=True)
class PrimeField:
    p: int
    kind = "PrimeField"

    def __post_init__(self):
        if self.p < 2 or not gmpy2.is_prime(self.p):
            raise PreconditionError(f"{self.p} is not a prime")

    def __call__(self, x):
        if isinstance(x, ModInt):
            if x.p != self.p:
                raise TypeError("residue of a different prime")
            return x
        if isinstance(x, float):
            raise TypeError("floats are not exact field elements")
        if isinstance(x, str):
            s = x.strip()
            try:
                q = mpq(s)
            except (ValueError, ZeroDivisionError) as exc:
                raise SchemaError(f"not a residue: {x!r}") from exc
            if q.denominator % self.p == 0:
                raise SchemaError(f"{x!r} has a denominator divisible by {self.p}")
            return ModInt(int(q.numerator), self.p) / ModInt(int(q.denominator), self.p)
        if isinstance(x, int):
            return ModInt(x, self.p)
        q = mpq(x)
        return ModInt(int(q.numerator), self.p) / ModInt(int(q.denominator), self.p)

    @property
    def zero(self):
        return ModInt(0, self.p)

    @property
    def one(self):
        return ModInt(1, self.p)

    @property
    def characteristic(self) -> int:
        return self.p

    def elements(self):
        return [ModInt(v, self.p) for v in range(self.p)]

    def to_json(self) -> dict:
        return {"kind": "PrimeField", "p": self.p}

    def __str__(self) -> str:
        return f"GF({self.p})"


QQ = Rationals()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_json(obj) -> Rationals | PrimeField:
    if obj is None or obj in ("Q", "QQ", "Rationals"):
        return QQ
    if isinstance(obj, dict):
        if obj.get("kind") == "Rationals":
            return QQ
        if obj.get("kind") == "PrimeField" and isinstance(obj.get("p"), int):
            return PrimeField(obj["p"])
    raise SchemaError(f"unknown field tag {obj!r}")


# ---------------------------------------------------------------------------
# matrices


class Mat:
    """Dense immutable matrix; ``data`` is a tuple of row tuples."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field, rows: int, cols: int, data: tuple):
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ShapeError(f"entries do not form a {rows}x{cols} matrix")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "data", data)

    def __setattr__(self, name, value):
        raise AttributeError("Mat is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_rows(cls, field, rows: Iterable[Sequence], cols: int | None = None) -> "Mat":
        data = tuple(tuple(field(x) for x in r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(field, len(data), cols, data)

    @classmethod
    def from_cols(cls, field, cols: Sequence[Sequence], rows: int | None = None) -> "Mat":
        cols = [tuple(field(x) for x in c) for c in cols]
        if rows is None:
            if not cols:
                raise ShapeError("row count needed for a matrix with no columns")
            rows = len(cols[0])
        if any(len(c) != rows for c in cols):
            raise ShapeError("columns of unequal length")
        data = tuple(tuple(c[r] for c in cols) for r in range(rows))
        return cls(field, rows, len(cols), data)

    @classmethod
    def zeros(cls, field, rows: int, cols: int) -> "Mat":
        z = field.zero
        return cls(field, rows, cols, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, field, n: int) -> "Mat":
        z, o = field.zero, field.one
        return cls(field, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def diag(cls, field, entries: Sequence) -> "Mat":
        n = len(entries)
        z = field.zero
        entries = [field(x) for x in entries]
        return cls(field, n, n, tuple(tuple(entries[i] if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def block_diag(cls, *blocks: "Mat") -> "Mat":
        field = blocks[0].field
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        z = field.zero
        data = []
        off = 0
        for b in blocks:
            for r in b.data:
                data.append((z,) * off + r + (z,) * (cols - off - b.cols))
            off += b.cols
        return cls(field, rows, cols, tuple(data))

    # -- access -------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, idx):
        r, c = idx
        return self.data[r][c]

    def row(self, r: int) -> Vector:
        return self.data[r]

    def col(self, c: int) -> Vector:
        return tuple(row[c] for row in self.data)

    def columns(self) -> list[Vector]:
        return [self.col(c) for c in range(self.cols)]

    @property
    def T(self) -> "Mat":
        data = tuple(zip(*self.data)) if self.rows else tuple(() for _ in range(self.cols))
        return Mat(self.field, self.cols, self.rows, data)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Mat":
        return Mat(self.field, len(rows), len(cols), tuple(tuple(self.data[r][c] for c in cols) for r in rows))

    def hstack(self, other: "Mat") -> "Mat":
        if self.rows != other.rows:
            raise ShapeError("hstack row mismatch")
        return Mat(self.field, self.rows, self.cols + other.cols, tuple(a + b for a, b in zip(self.data, other.data)))

    def vstack(self, other: "Mat") -> "Mat":
        if self.cols != other.cols:
            raise ShapeError("vstack column mismatch")
        return Mat(self.field, self.rows + other.rows, self.cols, self.data + other.data)

    # -- arithmetic ---------------------------------------------------------

    def __matmul__(self, other):
        if isinstance(other, Mat):
            if self.cols != other.rows:
                raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
            ocols = list(zip(*other.data)) if other.rows else [()] * other.cols
            z = self.field.zero
            data = tuple(
                tuple(_dot(r, c, z) for c in ocols) for r in self.data
            )
            return Mat(self.field, self.rows, other.cols, data)
        v = tuple(other)
        if len(v) != self.cols:
            raise ShapeError("vector length mismatch")
        z = self.field.zero
        return tuple(_dot(r, v, z) for r in self.data)

    def __add__(self, other: "Mat") -> "Mat":
        if self.shape != other.shape:
            raise ShapeError("shape mismatch in addition")
        return Mat(self.field, self.rows, self.cols,
                   tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.data, other.data)))

    def __sub__(self, other: "Mat") -> "Mat":
        if self.shape != other.shape:
            raise ShapeError("shape mismatch in subtraction")
        return Mat(self.field, self.rows, self.cols,
                   tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.data, other.data)))

    def __neg__(self) -> "Mat":
        return Mat(self.field, self.rows, self.cols, tuple(tuple(-a for a in r) for r in self.data))

    def scale(self, s) -> "Mat":
        s = self.field(s)
        return Mat(self.field, self.rows, self.cols, tuple(tuple(s * a for a in r) for r in self.data))

    def is_zero(self) -> bool:
        return all(not a for r in self.data for a in r)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def rank(self) -> int:
        return len(rref(self)[1])

    def inverse(self) -> "Mat":
        if not self.is_square():
            raise ShapeError("only square matrices are invertible")
        n = self.rows
        R, piv = rref(self.hstack(Mat.identity(self.field, n)))
        if piv[:n] != list(range(n)):
            raise PreconditionError("matrix is singular")
        return R.submatrix(range(n), range(n, 2 * n))

    def is_invertible(self) -> bool:
        return self.is_square() and self.rank() == self.rows

    # -- comparison / io ----------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self.data == other.data

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __repr__(self):
        body = "; ".join(" ".join(str(a) for a in r) for r in self.data)
        return f"Mat[{self.field}]({self.rows}x{self.cols}: {body})"

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols,
                "entries": [str(a) for r in self.data for a in r]}

    @classmethod
    def from_json(cls, obj, field=QQ) -> "Mat":
        try:
            rows, cols, entries = obj["rows"], obj["cols"], obj["entries"]
        except (KeyError, TypeError) as exc:
            raise SchemaError("matrix needs rows, cols and entries") from exc
        if not (isinstance(rows, int) and isinstance(cols, int) and rows >= 0 and cols >= 0):
            raise SchemaError("rows and cols must be nonnegative integers")
        if not isinstance(entries, list) or len(entries) != rows * cols:
            raise SchemaError("entries must be a list of rows*cols scalars")
        vals = [_parse_scalar(field, e) for e in entries]
        return cls(field, rows, cols, tuple(tuple(vals[r * cols:(r + 1) * cols]) for r in range(rows)))


def _parse_scalar(field, e):
    if isinstance(e, bool) or not isinstance(e, (str, int)):
        raise SchemaError(f"scalar must be a string or integer, got {e!r}")
    return field(e)


def _dot(r, c, z):
    s = z
    for a, b in zip(r, c):
        if a and b:
            s = s + a * b
    return s


def vec(field, entries: Iterable) -> Vector:
    return tuple(field(x) for x in entries)


def unit(field, n: int, k: int) -> Vector:
    return tuple(field.one if i == k else field.zero for i in range(n))


# ---------------------------------------------------------------------------
# elimination


def rref(M: Mat) -> tuple[Mat, list[int]]:
    """Reduced row-echelon form and pivot columns."""
    rows = [list(r) for r in M.data]
    nr, nc = M.rows, M.cols
    pivots: list[int] = []
    pr = 0
    for c in range(nc):
        if pr == nr:
            break
        sel = next((r for r in range(pr, nr) if rows[r][c]), None)
        if sel is None:
            continue
        rows[pr], rows[sel] = rows[sel], rows[pr]
        prow = rows[pr]
        inv = M.field.one / prow[c]
        if inv != 1:
            for k in range(c, nc):
                if prow[k]:
                    prow[k] = prow[k] * inv
        for r in range(nr):
            if r != pr:
                f = rows[r][c]
                if f:
                    row = rows[r]
                    for k in range(c, nc):
                        if prow[k]:
                            row[k] = row[k] - f * prow[k]
        pivots.append(c)
        pr += 1
    return Mat(M.field, nr, nc, tuple(tuple(r) for r in rows)), pivots


def rank(M: Mat) -> int:
    return len(rref(M)[1])


def kernel(M: Mat) -> "Subspace":
    """``{x : M x = 0}`` as a canonical subspace of field^cols."""
    R, piv = rref(M)
    field = M.field
    free = [c for c in range(M.cols) if c not in set(piv)]
    vecs = []
    for f in free:
        x = [field.zero] * M.cols
        x[f] = field.one
        for r, pc in enumerate(piv):
            x[pc] = -R.data[r][f]
        vecs.append(tuple(x))
    return Subspace.span(field, M.cols, vecs)


def solve(A: Mat, b: Sequence):
    """One solution of ``A x = b`` (free variables set to zero), or None."""
    b = tuple(A.field(x) for x in b)
    if len(b) != A.rows:
        raise ShapeError("right-hand side has the wrong length")
    aug = A.hstack(Mat(A.field, A.rows, 1, tuple((x,) for x in b)))
    R, piv = rref(aug)
    if piv and piv[-1] == A.cols:
        return None
    x = [A.field.zero] * A.cols
    for r, pc in enumerate(piv):
        x[pc] = R.data[r][A.cols]
    return tuple(x)


# ---------------------------------------------------------------------------
# subspaces


class Subspace:
    """A column span in reduced column-echelon form.

    ``basis`` holds the basis vectors as columns; ``pivots[k]`` is the
    coordinate where column ``k`` has its leading 1 (all other basis columns
    vanish there).
    """

    __slots__ = ("field", "ambient_dim", "basis", "pivots")

    def __init__(self, field, ambient_dim: int, basis: Mat, pivots: tuple[int, ...]):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "pivots", pivots)

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def span(cls, field, ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        vecs = [tuple(field(x) for x in v) for v in vectors]
        if any(len(v) != ambient_dim for v in vecs):
            raise DimensionMismatch("vector length differs from the ambient dimension")
        if not vecs:
            return cls.zero(field, ambient_dim)
        R, piv = rref(Mat(field, len(vecs), ambient_dim, tuple(vecs)))
        rows = R.data[:len(piv)]
        basis = Mat(field, ambient_dim, len(piv), tuple(zip(*rows)) if piv else tuple(() for _ in range(ambient_dim)))
        return cls(field, ambient_dim, basis, tuple(piv))

    @classmethod
    def zero(cls, field, ambient_dim: int) -> "Subspace":
        return cls(field, ambient_dim, Mat(field, ambient_dim, 0, tuple(() for _ in range(ambient_dim))), ())

    @classmethod
    def full(cls, field, ambient_dim: int) -> "Subspace":
        return cls(field, ambient_dim, Mat.identity(field, ambient_dim), tuple(range(ambient_dim)))

    @classmethod
    def from_mat(cls, M: Mat) -> "Subspace":
        return cls.span(M.field, M.rows, M.columns())

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def vectors(self) -> list[Vector]:
        return self.basis.columns()

    def contains(self, v: Sequence) -> bool:
        v = tuple(self.field(x) for x in v)
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("vector length differs from the ambient dimension")
        rest = list(v)
        for k, p in enumerate(self.pivots):
            c = v[p]
            if c:
                for r in range(self.ambient_dim):
                    b = self.basis.data[r][k]
                    if b:
                        rest[r] = rest[r] - c * b
        return all(not x for x in rest)

    def coordinates(self, v: Sequence) -> Vector | None:
        """Coefficients of ``v`` in the stored basis, or None when v is outside."""
        if not self.contains(v):
            return None
        return tuple(self.field(v[p]) for p in self.pivots)

    def issubspace(self, other: "Subspace") -> bool:
        _check_compatible(self, other)
        return all(other.contains(v) for v in self.vectors())

    def map(self, g: Mat) -> "Subspace":
        """Image under the linear map ``g`` (need not be injective)."""
        if g.cols != self.ambient_dim:
            raise DimensionMismatch("map domain differs from the ambient dimension")
        return Subspace.span(self.field, g.rows, [g @ v for v in self.vectors()])

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.field == other.field and self.ambient_dim == other.ambient_dim
                and self.basis.data == other.basis.data)

    def __hash__(self):
        return hash((self.ambient_dim, self.basis.data))

    def key(self) -> tuple:
        return (self.ambient_dim, self.basis.data)

    def __repr__(self):
        vs = ", ".join("(" + ",".join(str(a) for a in v) + ")" for v in self.vectors())
        return f"Subspace[{self.field}, {self.ambient_dim}]<{vs}>"

    def to_json(self) -> dict:
        return {"ambient_dim": self.ambient_dim, "basis": self.basis.to_json()}

    @classmethod
    def from_json(cls, obj, field=QQ, ambient_dim: int | None = None) -> "Subspace":
        """Accepts ``{ambient_dim?, basis}`` where basis is a matrix whose
        columns span the subspace, or a list of column vectors."""
        if isinstance(obj, list):
            obj = {"basis": obj}
        if not isinstance(obj, dict) or "basis" not in obj:
            raise SchemaError("subspace needs a basis")
        amb = obj.get("ambient_dim", ambient_dim)
        if ambient_dim is not None and amb != ambient_dim:
            raise SchemaError(f"ambient_dim {amb} does not match the expected {ambient_dim}")
        basis = obj["basis"]
        if isinstance(basis, list):
            if amb is None:
                if not basis:
                    raise SchemaError("ambient_dim required for an empty basis")
                amb = len(basis[0]) if isinstance(basis[0], list) else None
            if not isinstance(amb, int) or not all(isinstance(v, list) and len(v) == amb for v in basis):
                raise SchemaError("basis vectors must be lists of length ambient_dim")
            vecs = [[_parse_scalar(field, e) for e in v] for v in basis]
        else:
            M = Mat.from_json(basis, field)
            if amb is None:
                amb = M.rows
            if M.rows != amb:
                raise SchemaError("basis row count differs from ambient_dim")
            vecs = M.columns()
        return cls.span(field, amb, vecs)


def _check_compatible(A: Subspace, B: Subspace):
    if A.field != B.field or A.ambient_dim != B.ambient_dim:
        raise DimensionMismatch("subspaces live in different ambient spaces")


def intersect(A: Subspace, B: Subspace) -> Subspace:
    """A ∩ B via the kernel of the stacked system [A | -B]."""
    _check_compatible(A, B)
    if A.dim == 0 or B.dim == 0:
        return Subspace.zero(A.field, A.ambient_dim)
    stacked = A.basis.hstack(-B.basis)
    K = kernel(stacked)
    vecs = [A.basis @ x[:A.dim] for x in K.vectors()]
    return Subspace.span(A.field, A.ambient_dim, vecs)


def subspace_sum(A: Subspace, B: Subspace) -> Subspace:
    _check_compatible(A, B)
    return Subspace.span(A.field, A.ambient_dim, A.vectors() + B.vectors())


def member(v: Sequence, S: Subspace) -> bool:
    return S.contains(v)


def complement_basis(S: Subspace, T: Subspace) -> list[Vector]:
    """Greedy complement of S inside T: scan T's canonical basis columns in
    order and keep each one that is independent of S plus those kept so far."""
    _check_compatible(S, T)
    if not S.issubspace(T):
        raise PreconditionError("complement_in needs S contained in T")
    chosen: list[Vector] = []
    current = S
    for v in T.vectors():
        if current.dim == T.dim:
            break
        if not current.contains(v):
            chosen.append(v)
            current = Subspace.span(S.field, S.ambient_dim, current.vectors() + [v])
    return chosen


def complement_in(S: Subspace, T: Subspace) -> Subspace:
    return Subspace.span(S.field, S.ambient_dim, complement_basis(S, T))
