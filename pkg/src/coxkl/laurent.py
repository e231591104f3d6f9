"""Sparse exact Laurent polynomials in one variable v, and dense matrices over them.

A polynomial is a map {exponent: coefficient} with no stored zeros, so equality
is structural.  Coefficients live in an exact field (Fraction or Sqrt5, see
`scalars`); the weight group is fixed to the integers, so exponents are ints.

The valuation of a polynomial is its minimal stored exponent (+infinity for 0,
encoded as None).  The bar involution negates exponents.  Division is only
defined by units, i.e. single-term polynomials.

>>> f = LaurentPoly({2: 1, 5: 3})
>>> f.valuation()
2
>>> bar(LaurentPoly({2: 1}))
LaurentPoly({-2: 1})
"""

from __future__ import annotations

import re
from fractions import Fraction

from .scalars import Sqrt5, scalar_inv, scalar_str


class LaurentPoly:
    """Sparse Laurent polynomial over an exact coefficient field."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        if coeffs:
            self.coeffs = {k: c for k, c in coeffs.items() if c}
        else:
            self.coeffs = {}

    # -- construction helpers ------------------------------------------------

    @staticmethod
    def scalar(c) -> "LaurentPoly":
        return LaurentPoly({0: c})

    @staticmethod
    def v_power(k: int, c=1) -> "LaurentPoly":
        return LaurentPoly({k: c})

    # -- basic protocol ------------------------------------------------------

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.scalar(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __repr__(self):
        return f"LaurentPoly({self.coeffs!r})"

    def __str__(self):
        return format_laurent(self)

    # -- ring operations -----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.scalar(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        res = LaurentPoly.__new__(LaurentPoly)
        res.coeffs = out
        return res

    __radd__ = __add__

    def __neg__(self):
        res = LaurentPoly.__new__(LaurentPoly)
        res.coeffs = {k: -c for k, c in self.coeffs.items()}
        return res

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.scalar(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Sqrt5)):
            if not other:
                return LaurentPoly()
            res = LaurentPoly.__new__(LaurentPoly)
            res.coeffs = {k: c * other for k, c in self.coeffs.items()}
            return res
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return LaurentPoly()
        a, b = self.coeffs, other.coeffs
        if len(a) > len(b):
            a, b = b, a
        out: dict = {}
        for k1, c1 in a.items():
            for k2, c2 in b.items():
                k = k1 + k2
                s = out.get(k, 0) + c1 * c2
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        res = LaurentPoly.__new__(LaurentPoly)
        res.coeffs = out
        return res

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.unit_inverse() ** (-n)
        out = LaurentPoly.scalar(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- valuation-ring structure ---------------------------------------------

    def valuation(self):
        """Minimal exponent, or None for the zero polynomial (+infinity)."""
        if not self.coeffs:
            return None
        return min(self.coeffs)

    def degree(self):
        """Maximal exponent, or None for the zero polynomial (-infinity)."""
        if not self.coeffs:
            return None
        return max(self.coeffs)

    def lowest_term(self):
        """Coefficient at the valuation; errors on the zero polynomial."""
        if not self.coeffs:
            raise ZeroDivisionError("zero polynomial has no lowest term")
        return self.coeffs[min(self.coeffs)]

    def constant_term(self):
        return self.coeffs.get(0, Fraction(0))

    def coefficient(self, k: int):
        return self.coeffs.get(k, Fraction(0))

    def is_unit(self) -> bool:
        """Units of F[v, v^-1] are the single-term polynomials."""
        return len(self.coeffs) == 1

    def unit_inverse(self) -> "LaurentPoly":
        if not self.is_unit():
            raise ZeroDivisionError("only units (monomials) are invertible")
        ((k, c),) = self.coeffs.items()
        return LaurentPoly({-k: scalar_inv(c)})

    def divexact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact division in F[v, v^-1]; raises if the quotient is not exact."""
        if not isinstance(other, LaurentPoly) or not other.coeffs:
            raise ZeroDivisionError("division by zero polynomial")
        if not self.coeffs:
            return LaurentPoly()
        if other.is_unit():
            return self * other.unit_inverse()
        num = dict(self.coeffs)
        dd = other.degree()
        lead = other.coeffs[dd]
        # an exact quotient has all exponents >= nu(self) - nu(other)
        kmin = self.valuation() - other.valuation()
        out: dict = {}
        while num:
            nd = max(num)
            k = nd - dd
            if k < kmin:
                raise ArithmeticError("inexact Laurent division")
            q = num[nd] * scalar_inv(lead)
            out[k] = q
            for e, c in other.coeffs.items():
                t = e + k
                s = num.get(t, 0) - q * c
                if s:
                    num[t] = s
                else:
                    num.pop(t, None)
        return LaurentPoly(out)


ZERO = LaurentPoly()
ONE = LaurentPoly({0: 1})


def bar(f: LaurentPoly) -> LaurentPoly:
    """The involution v^k -> v^-k."""
    res = LaurentPoly.__new__(LaurentPoly)
    res.coeffs = {-k: c for k, c in f.coeffs.items()}
    return res


def split_parts(f: LaurentPoly):
    """Split f = negative + constant + positive by exponent sign."""
    neg, pos = {}, {}
    const = Fraction(0)
    for k, c in f.coeffs.items():
        if k < 0:
            neg[k] = c
        elif k > 0:
            pos[k] = c
        else:
            const = c
    return LaurentPoly(neg), const, LaurentPoly(pos)


def negative_part(f: LaurentPoly) -> LaurentPoly:
    return LaurentPoly({k: c for k, c in f.coeffs.items() if k < 0})


def positive_part(f: LaurentPoly) -> LaurentPoly:
    return LaurentPoly({k: c for k, c in f.coeffs.items() if k > 0})


def is_bar_invariant(f: LaurentPoly) -> bool:
    return bar(f) == f


def laurent_gcd(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """A gcd in F[v, v^-1], normalized to valuation 0 and lowest term 1.

    Units of the Laurent ring are monomials, so the gcd is only canonical up
    to that normalization.
    """
    def norm(p: LaurentPoly) -> LaurentPoly:
        val = p.valuation()
        shifted = p * LaurentPoly({-val: 1}) if val else p
        lt = shifted.coeffs[0]
        if lt != 1:
            shifted = shifted * scalar_inv(lt)
        return shifted

    if not f:
        return norm(g) if g else LaurentPoly()
    if not g:
        return norm(f)
    a, b = norm(f), norm(g)
    while b:
        # ordinary polynomial remainder after the valuation shift
        r = a
        while r and r.degree() >= b.degree():
            lead = r.coeffs[r.degree()] * scalar_inv(b.coeffs[b.degree()])
            r = r - b * LaurentPoly({r.degree() - b.degree(): lead})
        a, b = b, norm(r) if r else LaurentPoly()
    return norm(a)


# -- text format -------------------------------------------------------------
#
# Wire format: sum of terms "c*v^k", constants written bare, e.g.
# "-1*v^-1 + 2 + 1*v^3".  The parser is whitespace-insensitive and accepts
# omitted unit coefficients ("v^3", "-v^-1") and "v" for v^1.

_TERM_RE = re.compile(
    r"^(?P<coeff>\d+(?:/\d+)?)?(?P<var>\*?v(?:\^(?P<exp>[+-]?\d+))?)?$"
)


def format_laurent(f: LaurentPoly) -> str:
    if not f.coeffs:
        return "0"
    parts = []
    for k in sorted(f.coeffs):
        c = f.coeffs[k]
        cs = scalar_str(c)
        parts.append(cs if k == 0 else f"{cs}*v^{k}")
    return " + ".join(parts)


def parse_laurent(text: str) -> LaurentPoly:
    s = "".join(text.split())
    if not s or s == "0":
        return LaurentPoly()
    # split into signed terms; exponent signs follow '^' and are protected
    s = s.replace("^-", "^n").replace("^+", "^p")
    s = s.replace("-", "+-")
    out: dict = {}
    for raw in s.split("+"):
        if not raw:
            continue
        term = raw.replace("^n", "^-").replace("^p", "^+")
        sign = 1
        if term.startswith("-"):
            sign = -1
            term = term[1:]
        m = _TERM_RE.match(term)
        if not m or not term or (m.group("coeff") is None and m.group("var") is None):
            raise ValueError(f"bad Laurent term {raw!r} in {text!r}")
        cs = m.group("coeff")
        c = Fraction(cs) if cs is not None else Fraction(1)
        if m.group("var"):
            es = m.group("exp")
            k = int(es) if es is not None else 1
        else:
            k = 0
        cur = out.get(k, Fraction(0)) + sign * c
        if cur:
            out[k] = cur
        else:
            out.pop(k, None)
    return LaurentPoly(out)


# -- matrices ----------------------------------------------------------------


class LaurentMatrix:
    """Dense matrix of LaurentPoly entries with dimension-checked arithmetic."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries=None):
        if rows <= 0 or cols <= 0:
            raise ValueError("matrix dimensions must be positive")
        self.rows = rows
        self.cols = cols
        if entries is None:
            self.entries = [[ZERO for _ in range(cols)] for _ in range(rows)]
        else:
            if len(entries) != rows or any(len(r) != cols for r in entries):
                raise ValueError("entry grid does not match dimensions")
            self.entries = [list(r) for r in entries]

    @staticmethod
    def identity(n: int) -> "LaurentMatrix":
        m = LaurentMatrix(n, n)
        for i in range(n):
            m.entries[i][i] = ONE
        return m

    @staticmethod
    def from_scalar_rows(rows) -> "LaurentMatrix":
        """Build from a grid of bare field scalars."""
        r = len(rows)
        c = len(rows[0])
        return LaurentMatrix(
            r, c, [[LaurentPoly({0: x}) if x else ZERO for x in row] for row in rows]
        )

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]

    def __setitem__(self, ij, val):
        self.entries[ij[0]][ij[1]] = val

    def __eq__(self, other):
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __repr__(self):
        body = "; ".join(
            ", ".join(format_laurent(e) for e in row) for row in self.entries
        )
        return f"LaurentMatrix({self.rows}x{self.cols}: [{body}])"

    def copy(self) -> "LaurentMatrix":
        return LaurentMatrix(self.rows, self.cols, self.entries)

    def __add__(self, other):
        self._check_same_shape(other)
        return LaurentMatrix(
            self.rows,
            self.cols,
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ],
        )

    def __sub__(self, other):
        self._check_same_shape(other)
        return LaurentMatrix(
            self.rows,
            self.cols,
            [
                [a - b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ],
        )

    def __neg__(self):
        return LaurentMatrix(
            self.rows, self.cols, [[-a for a in r] for r in self.entries]
        )

    def _check_same_shape(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("matrix shape mismatch")

    def __matmul__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        if self.cols != other.rows:
            raise ValueError("matrix shape mismatch in product")
        out = LaurentMatrix(self.rows, other.cols)
        bt = other.entries
        for i in range(self.rows):
            arow = self.entries[i]
            orow = out.entries[i]
            for k in range(self.cols):
                a = arow[k]
                if not a.coeffs:
                    continue
                brow = bt[k]
                for j in range(other.cols):
                    b = brow[j]
                    if b.coeffs:
                        orow[j] = orow[j] + a * b
        return out

    def scale(self, f) -> "LaurentMatrix":
        """Multiply every entry by a LaurentPoly or scalar."""
        return LaurentMatrix(
            self.rows, self.cols, [[e * f for e in row] for row in self.entries]
        )

    def transpose(self) -> "LaurentMatrix":
        return LaurentMatrix(
            self.cols,
            self.rows,
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
        )

    def trace(self) -> LaurentPoly:
        if self.rows != self.cols:
            raise ValueError("trace of a non-square matrix")
        t = ZERO
        for i in range(self.rows):
            t = t + self.entries[i][i]
        return t

    def is_zero(self) -> bool:
        return all(not e for row in self.entries for e in row)

    def valuation(self):
        """min over entry valuations; None (=+infinity) for the zero matrix."""
        vals = [e.valuation() for row in self.entries for e in row if e.coeffs]
        return min(vals) if vals else None

    def max_degree(self):
        degs = [e.degree() for row in self.entries for e in row if e.coeffs]
        return max(degs) if degs else None

    def residue(self):
        """Entrywise constant terms, as a scalar grid; requires valuation >= 0."""
        v = self.valuation()
        if v is not None and v < 0:
            raise ValueError("matrix has a pole: valuation < 0")
        return [[e.constant_term() for e in row] for row in self.entries]

    def is_constant(self) -> bool:
        return all(
            not e.coeffs or set(e.coeffs) == {0} for row in self.entries for e in row
        )


def matrix_valuation(a: LaurentMatrix):
    return a.valuation()
