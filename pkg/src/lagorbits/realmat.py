"""Exact real matrices with square-root entries.

A :class:`RealMat` is a finite sum ``Σ √N · M_N`` with rational matrices
``M_N`` and positive integer radicands ``N`` lying in pairwise distinct
square classes.  Square roots of rationals from distinct square classes are
linearly independent over Q, so such a sum is zero exactly when every
``M_N`` is zero, and a real vector ``Σ √N v_N`` lies in a rational subspace
exactly when every ``v_N`` does.  No integer factorisation is needed: two
radicands share a class iff their product is a perfect square.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import gmpy2
from gmpy2 import mpq

from .errors import ShapeError
from .exactlin import QQ, Mat

_SMALL_PRIMES = [p for p in range(2, 200) if gmpy2.is_prime(p)]


def _normalize(r) -> tuple[int, mpq]:
    """Write ``√r = c · √N`` with integer N free of small square factors."""
    r = mpq(r)
    if r <= 0:
        raise ValueError("radicand must be positive")
    num, den = int(r.numerator), int(r.denominator)
    N = num * den
    c = mpq(1, den)
    for p in _SMALL_PRIMES:
        pp = p * p
        if pp > N:
            break
        while N % pp == 0:
            N //= pp
            c *= p
    if gmpy2.is_square(N):
        c *= int(gmpy2.isqrt(N))
        N = 1
    return N, c


class RealMat:
    __slots__ = ("rows", "cols", "terms")

    def __init__(self, rows: int, cols: int, terms: dict[int, Mat] | None = None):
        self.rows = rows
        self.cols = cols
        self.terms: dict[int, Mat] = {}
        for N, M in (terms or {}).items():
            self._add(N, mpq(1), M)

    def _add(self, N: int, c, M: Mat):
        if M.shape != (self.rows, self.cols):
            raise ShapeError("term has the wrong shape")
        for K in self.terms:
            if gmpy2.is_square(K * N):
                c = c * mpq(int(gmpy2.isqrt(K * N)), K)
                N = K
                break
        if not c or M.is_zero():
            return
        M = M.scale(c) if c != 1 else M
        total = self.terms[N] + M if N in self.terms else M
        if total.is_zero():
            self.terms.pop(N, None)
        else:
            self.terms[N] = total

    @classmethod
    def from_rational(cls, M: Mat) -> "RealMat":
        return cls(M.rows, M.cols, {1: M})

    @classmethod
    def sqrt_diag(cls, radicands: Sequence) -> "RealMat":
        """``diag(√r_1, …, √r_k)`` for positive rationals r."""
        k = len(radicands)
        out = cls(k, k)
        for idx, r in enumerate(radicands):
            N, c = _normalize(r)
            entries = [0] * k
            entries[idx] = 1
            out._add(N, c, Mat.diag(QQ, entries))
        return out

    def __matmul__(self, other) -> "RealMat":
        if isinstance(other, Mat):
            other = RealMat.from_rational(other)
        if self.cols != other.rows:
            raise ShapeError("shape mismatch in product")
        out = RealMat(self.rows, other.cols)
        for N1, A in self.terms.items():
            for N2, B in other.terms.items():
                N, c = _normalize(N1 * N2)
                out._add(N, c, A @ B)
        return out

    def __rmatmul__(self, other: Mat) -> "RealMat":
        return RealMat.from_rational(other) @ self

    @property
    def T(self) -> "RealMat":
        return RealMat(self.cols, self.rows, {N: M.T for N, M in self.terms.items()})

    def radicands(self) -> list[int]:
        return sorted(self.terms)

    def component(self, N: int) -> Mat:
        return self.terms.get(N, Mat.zeros(QQ, self.rows, self.cols))

    def is_rational(self) -> bool:
        return set(self.terms) <= {1}

    def rational(self) -> Mat:
        if not self.is_rational():
            raise ValueError("matrix has irrational entries")
        return self.component(1)

    def __eq__(self, other):
        if isinstance(other, Mat):
            other = RealMat.from_rational(other)
        if not isinstance(other, RealMat):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        diff = RealMat(self.rows, self.cols, dict(self.terms))
        for N, M in other.terms.items():
            diff._add(N, mpq(1), -M)
        return not diff.terms

    __hash__ = None

    def entry_str(self, r: int, c: int) -> str:
        parts = []
        for N in self.radicands():
            a = self.terms[N][r, c]
            if not a:
                continue
            if N == 1:
                parts.append(str(a))
            elif abs(a) == 1:
                parts.append(f"{'-' if a < 0 else ''}sqrt({N})")
            else:
                parts.append(f"{a}*sqrt({N})")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        body = "; ".join(" ".join(self.entry_str(r, c) for c in range(self.cols)) for r in range(self.rows))
        return f"RealMat({self.rows}x{self.cols}: {body})"

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [self.entry_str(r, c) for r in range(self.rows) for c in range(self.cols)],
            "terms": [{"sqrt": str(N), "matrix": self.terms[N].to_json()} for N in self.radicands()],
        }


def identity(n: int) -> RealMat:
    return RealMat.from_rational(Mat.identity(QQ, n))


def block_diag(blocks: Iterable[RealMat]) -> RealMat:
    blocks = list(blocks)
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    keys = sorted({N for b in blocks for N in b.terms})
    out = RealMat(rows, cols)
    for N in keys:
        out._add(N, mpq(1), Mat.block_diag(*[b.component(N) for b in blocks]))
    return out
