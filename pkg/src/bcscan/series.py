"""Truncated power series over a packed finite field.

A ``TruncSeries`` holds coefficients 0..n-1 of a series known mod z^n.
Operations are precision-honest: anything that genuinely loses knowledge
of top coefficients (derivative, division by z) returns a shorter
series, and binary operations between different truncation orders work
at the shorter one.  No coefficient in a result is ever a guess.

Coefficients live in a numpy int32 array (packed field elements), and
multiplication/frobenius/scaling run through the field's vector tables.
"""

from __future__ import annotations

import numpy as np

from .fields import FieldError


class TruncSeries:
    __slots__ = ("field", "n", "c")

    def __init__(self, field, n: int, coeffs: np.ndarray):
        if n < 1:
            raise FieldError("truncation order must be >= 1")
        if coeffs.shape != (n,):
            raise FieldError("coefficient array length mismatch")
        self.field = field
        self.n = n
        self.c = coeffs.astype(np.int32, copy=False)
        self.c.setflags(write=False)

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(field, n: int) -> "TruncSeries":
        return TruncSeries(field, n, np.zeros(n, dtype=np.int32))

    @staticmethod
    def const(field, n: int, c0: int) -> "TruncSeries":
        out = np.zeros(n, dtype=np.int32)
        out[0] = c0
        return TruncSeries(field, n, out)

    @staticmethod
    def one(field, n: int) -> "TruncSeries":
        return TruncSeries.const(field, n, 1)

    @staticmethod
    def monomial(field, n: int, k: int, coeff: int = 1) -> "TruncSeries":
        out = np.zeros(n, dtype=np.int32)
        if 0 <= k < n:
            out[k] = coeff
        return TruncSeries(field, n, out)

    @staticmethod
    def from_coeffs(field, n: int, coeffs) -> "TruncSeries":
        out = np.zeros(n, dtype=np.int32)
        m = min(n, len(coeffs))
        out[:m] = [int(v) for v in coeffs[:m]]
        return TruncSeries(field, n, out)

    # -- inspection -------------------------------------------------------

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(f"coefficient {i} outside known range 0..{self.n - 1}")
        return int(self.c[i])

    @property
    def is_zero(self) -> bool:
        return not self.c.any()

    def valuation(self) -> int:
        """Index of first nonzero coefficient; n when the series is 0 mod z^n."""
        nz = np.flatnonzero(self.c)
        return int(nz[0]) if nz.size else self.n

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TruncSeries)
            and self.field is other.field
            and self.n == other.n
            and bool(np.array_equal(self.c, other.c))
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"TruncSeries({self.to_str()} + O(z^{self.n}))"

    def to_str(self, var: str = "z") -> str:
        terms = []
        for i in np.flatnonzero(self.c):
            c = int(self.c[i])
            head = "" if (c == 1 and i > 0) else f"{c}*"
            if i == 0:
                terms.append(str(c))
            else:
                terms.append(f"{head}{var}" + (f"^{i}" if i > 1 else ""))
        return " + ".join(terms) if terms else "0"

    # -- precision management ---------------------------------------------

    def truncate(self, m: int) -> "TruncSeries":
        if m > self.n:
            raise FieldError(f"cannot extend precision {self.n} to {m}")
        if m == self.n:
            return self
        return TruncSeries(self.field, m, self.c[:m].copy())

    def _align(self, other: "TruncSeries") -> tuple[int, np.ndarray, np.ndarray]:
        if self.field is not other.field:
            raise FieldError("series live over different fields")
        n = min(self.n, other.n)
        return n, self.c[:n], other.c[:n]

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        n, a, b = self._align(other)
        return TruncSeries(self.field, n, self.field.vadd(a, b))

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        n, a, b = self._align(other)
        return TruncSeries(self.field, n, self.field.vsub(a, b))

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(self.field, self.n, self.field.vneg(self.c))

    def scale(self, k: int) -> "TruncSeries":
        return TruncSeries(self.field, self.n, self.field.vscale(k, self.c))

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        n, a, b = self._align(other)
        F = self.field
        if np.count_nonzero(a) > np.count_nonzero(b):
            a, b = b, a
        idx = np.flatnonzero(a)
        if F.p == 2:
            out = np.zeros(n, dtype=np.int32)
            for i in idx:
                out[i:] ^= F.vscale(int(a[i]), b[: n - i])
        else:
            acc = np.zeros((n, F.m), dtype=np.int64)
            for i in idx:
                acc[i:] += F._unpack[F.vscale(int(a[i]), b[: n - i])]
            out = ((acc % F.p) @ F._packw).astype(np.int32)
        return TruncSeries(F, n, out)

    def __pow__(self, e: int) -> "TruncSeries":
        if e < 0:
            raise ValueError("negative exponent")
        result = TruncSeries.one(self.field, self.n)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "TruncSeries":
        """Multiplicative inverse mod z^n; constant term must be a unit."""
        F, n = self.field, self.n
        c0 = int(self.c[0])
        if c0 == 0:
            raise ZeroDivisionError("series has no inverse: zero constant term")
        y = TruncSeries.const(F, n, F.inv(c0))
        prec = 1
        while prec < n:
            prec *= 2
            # y <- 2y - a*y^2, correct mod z^prec
            y2 = y * y
            ay2 = self * y2
            y = y + y - ay2
        return y

    def shift_up(self, k: int) -> "TruncSeries":
        """Multiply by z^k (same truncation order)."""
        if k == 0:
            return self
        out = np.zeros(self.n, dtype=np.int32)
        if k < self.n:
            out[k:] = self.c[: self.n - k]
        return TruncSeries(self.field, self.n, out)

    def shift_down(self, k: int) -> "TruncSeries":
        """Exact division by z^k; the result is known only mod z^(n-k)."""
        if k == 0:
            return self
        if self.c[:k].any():
            raise FieldError(f"series is not divisible by z^{k}")
        return TruncSeries(self.field, self.n - k, self.c[k:].copy())

    def derivative(self) -> "TruncSeries":
        """d/dz; coefficient i of the result needs coefficient i+1 here."""
        F, n = self.field, self.n
        if n == 1:
            raise FieldError("cannot differentiate a series known only mod z")
        out = np.zeros(n - 1, dtype=np.int32)
        scalars = np.arange(1, n, dtype=np.int64) % F.p
        # i * c_i computed as repeated addition collapsed to a scale by (i mod p)
        for s in range(1, F.p):
            sel = np.flatnonzero(scalars == s)
            if sel.size:
                out[sel] = F.vscale(s, self.c[sel + 1]) if s != 1 else self.c[sel + 1]
        return TruncSeries(F, n - 1, out)

    def frobenius_q(self) -> "TruncSeries":
        """q-power: sum a_i z^(i q) with coefficients raised to the q."""
        F, n = self.field, self.n
        q = F.frob_exponent
        out = np.zeros(n, dtype=np.int32)
        top = (n - 1) // q
        idx = np.arange(top + 1)
        out[idx * q] = F.vfrobq(self.c[idx])
        return TruncSeries(F, n, out)

    def compose(self, inner: "TruncSeries") -> "TruncSeries":
        """self(inner); inner must have zero constant term."""
        n, _, _ = self._align(inner)
        if inner.c[0] != 0:
            raise FieldError("composition needs inner valuation >= 1")
        g = inner.truncate(n)
        acc = TruncSeries.zero(self.field, n)
        for i in range(n - 1, -1, -1):
            acc = acc * g
            ci = int(self.c[i])
            if ci:
                acc = acc + TruncSeries.const(self.field, n, ci)
        return acc

    def eval_poly_coeffs(self, coeffs) -> "TruncSeries":
        """Horner evaluation of a packed-coefficient polynomial at this series."""
        acc = TruncSeries.zero(self.field, self.n)
        for c in reversed(list(coeffs)):
            acc = acc * self
            if c:
                acc = acc + TruncSeries.const(self.field, self.n, int(c))
        return acc
