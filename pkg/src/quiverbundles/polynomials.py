"""Homogeneous binary forms in (s, t) with exact rational coefficients.

A form of degree d is stored as the coefficient tuple of
(s^d, s^(d-1) t, ..., t^d).  The zero form is a distinguished value with
degree None so that matrices of forms can mix entry degrees without
ambiguity.  Includes gcd (via the s/t-power split and univariate Euclid),
determinants of form matrices, and rational-root factoring for display.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as int_gcd
from typing import Iterable, Sequence

from . import linalg

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class HomogPoly:
    """Homogeneous form; degree None with empty coeffs encodes zero."""

    degree: int | None
    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        if self.degree is None:
            if self.coeffs:
                raise ValueError("zero form must have empty coefficients")
        else:
            if self.degree < 0:
                raise ValueError(f"negative degree {self.degree}")
            if len(self.coeffs) != self.degree + 1:
                raise ValueError(
                    f"degree {self.degree} form needs {self.degree + 1} coefficients, "
                    f"got {len(self.coeffs)}"
                )

    @staticmethod
    def zero() -> HomogPoly:
        return _ZERO_POLY

    @staticmethod
    def of(degree: int, coeffs: Iterable[object]) -> HomogPoly:
        cs = tuple(Fraction(c) for c in coeffs)
        if all(c == 0 for c in cs):
            return _ZERO_POLY
        return HomogPoly(degree, cs)

    @staticmethod
    def constant(c: object) -> HomogPoly:
        c = Fraction(c)
        return _ZERO_POLY if c == 0 else HomogPoly(0, (c,))

    @staticmethod
    def monomial(degree: int, t_power: int, c: object = 1) -> HomogPoly:
        """c * s^(degree - t_power) * t^t_power."""
        if not 0 <= t_power <= degree:
            raise ValueError(f"t-power {t_power} out of range for degree {degree}")
        c = Fraction(c)
        if c == 0:
            return _ZERO_POLY
        return HomogPoly(
            degree, tuple(c if k == t_power else ZERO for k in range(degree + 1))
        )

    def is_zero(self) -> bool:
        return self.degree is None

    def __add__(self, other: HomogPoly) -> HomogPoly:
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise ValueError(f"degree mismatch {self.degree} + {other.degree}")
        return HomogPoly.of(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: HomogPoly) -> HomogPoly:
        return self + (-other)

    def __neg__(self) -> HomogPoly:
        if self.is_zero():
            return self
        return HomogPoly(self.degree, tuple(-c for c in self.coeffs))

    def __mul__(self, other: HomogPoly) -> HomogPoly:
        if self.is_zero() or other.is_zero():
            return _ZERO_POLY
        d = self.degree + other.degree
        out = [ZERO] * (d + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b != 0:
                    out[i + j] += a * b
        return HomogPoly.of(d, out)

    def scaled(self, c: object) -> HomogPoly:
        c = Fraction(c)
        if c == 0 or self.is_zero():
            return _ZERO_POLY
        return HomogPoly(self.degree, tuple(c * x for x in self.coeffs))

    def evaluate(self, s0: object, t0: object) -> Fraction:
        if self.is_zero():
            return ZERO
        s0, t0 = Fraction(s0), Fraction(t0)
        d = self.degree
        total = ZERO
        for k, c in enumerate(self.coeffs):
            if c != 0:
                total += c * s0 ** (d - k) * t0**k
        return total

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = _monomial_str(self.degree - k, k)
            if mono == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


_ZERO_POLY = HomogPoly(None, ())


def _monomial_str(s_pow: int, t_pow: int) -> str:
    factors = []
    for sym, p in (("s", s_pow), ("t", t_pow)):
        if p == 1:
            factors.append(sym)
        elif p > 1:
            factors.append(f"{sym}^{p}")
    return "*".join(factors) if factors else "1"


# ---------------------------------------------------------------------------
# gcd


def _split(p: HomogPoly) -> tuple[int, int, tuple[Fraction, ...]]:
    """Factor p = s^a * t^b * core, core with nonzero ends, as t-coefficients."""
    assert not p.is_zero()
    ks = [k for k, c in enumerate(p.coeffs) if c != 0]
    b, kmax = ks[0], ks[-1]
    a = p.degree - kmax
    core = tuple(p.coeffs[b : kmax + 1])
    return a, b, core


def _univ_mod(u: Sequence[Fraction], v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Remainder of u by v; both ascending t-coefficient lists, v[-1] != 0."""
    r = list(u)
    dv = len(v) - 1
    lead = v[-1]
    while len(r) - 1 >= dv and any(c != 0 for c in r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) - 1 < dv:
            break
        f = r[-1] / lead
        off = len(r) - 1 - dv
        for i, c in enumerate(v):
            r[off + i] -= f * c
        r.pop()
    while r and r[-1] == 0:
        r.pop()
    return tuple(r)


def _univ_gcd(u: Sequence[Fraction], v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    a, b = tuple(u), tuple(v)
    while b:
        a, b = b, _univ_mod(a, b)
    return a


def _primitive(coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Scale to coprime integer coefficients with positive leading one."""
    den = 1
    for c in coeffs:
        den = den * c.denominator // int_gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for v in ints:
        g = int_gcd(g, abs(v))
    if g == 0:
        return tuple(coeffs)
    if ints[-1] < 0:
        g = -g
    return tuple(Fraction(v, g) for v in ints)


def poly_gcd(p: HomogPoly, q: HomogPoly) -> HomogPoly:
    """Normalized gcd: coprime integer coefficients, positive top t-coefficient."""
    if p.is_zero():
        return _normalized(q)
    if q.is_zero():
        return _normalized(p)
    ap, bp, cp = _split(p)
    aq, bq, cq = _split(q)
    core = _primitive(_univ_gcd(cp, cq))
    a, b = min(ap, aq), min(bp, bq)
    d = a + b + len(core) - 1
    coeffs = [ZERO] * (d + 1)
    for i, c in enumerate(core):
        coeffs[b + i] = c
    return HomogPoly.of(d, coeffs)


def _normalized(p: HomogPoly) -> HomogPoly:
    if p.is_zero():
        return p
    a, b, core = _split(p)
    core = _primitive(core)
    coeffs = [ZERO] * (p.degree + 1)
    for i, c in enumerate(core):
        coeffs[b + i] = c
    return HomogPoly.of(p.degree, coeffs)


def poly_gcd_many(ps: Iterable[HomogPoly]) -> HomogPoly:
    g = _ZERO_POLY
    for p in ps:
        g = poly_gcd(g, p)
        if g.degree == 0:
            break
    return g


# ---------------------------------------------------------------------------
# matrices of forms

PolyMatrix = tuple[tuple[HomogPoly, ...], ...]


def poly_mat(rows: Iterable[Iterable[HomogPoly]]) -> PolyMatrix:
    out = tuple(tuple(row) for row in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise ValueError("ragged rows in form matrix")
    return out


def poly_zeros(m: int, n: int) -> PolyMatrix:
    return tuple((_ZERO_POLY,) * n for _ in range(m))


def poly_mat_is_zero(a: PolyMatrix) -> bool:
    return all(e.is_zero() for row in a for e in row)


def poly_matmul(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    if (a and b) and len(a[0]) != len(b):
        raise ValueError("form matrix shape mismatch")
    n = len(b[0]) if b else 0
    out = []
    for row in a:
        orow = []
        for j in range(n):
            acc = _ZERO_POLY
            for k, e in enumerate(row):
                if not e.is_zero() and not b[k][j].is_zero():
                    acc = acc + e * b[k][j]
            orow.append(acc)
        out.append(tuple(orow))
    return tuple(out)


def poly_mat_add(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def poly_mat_sub(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def poly_mat_eval(a: PolyMatrix, s0: object, t0: object) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(e.evaluate(s0, t0) for e in row) for row in a)


def poly_det(a: PolyMatrix) -> HomogPoly:
    """Determinant by first-row expansion with a column-mask memo."""
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("determinant of non-square form matrix")
    if n == 0:
        return HomogPoly.constant(1)
    memo: dict[tuple[int, int], HomogPoly] = {}

    def minor(row: int, mask: int) -> HomogPoly:
        if row == n:
            return HomogPoly.constant(1)
        key = (row, mask)
        got = memo.get(key)
        if got is not None:
            return got
        acc = _ZERO_POLY
        sign = 1
        for j in range(n):
            bit = 1 << j
            if mask & bit:
                continue
            e = a[row][j]
            if not e.is_zero():
                term = e * minor(row + 1, mask | bit)
                acc = acc + (term if sign > 0 else -term)
            sign = -sign
        memo[key] = acc
        return acc

    return minor(0, 0)


def generic_rank(a: PolyMatrix) -> int:
    """Rank of a form matrix over the function field of the line.

    Evaluates at deterministic rational points until the numeric rank
    stops growing; a point count of (max entry degree * min(m,n) + 1)
    distinct evaluations certifies the maximum found is the true generic
    rank, since any nonzero minor is a nonzero form vanishing at no more
    than its degree many points of the projective line.
    """
    m = len(a)
    n = len(a[0]) if a else 0
    if m == 0 or n == 0:
        return 0
    maxdeg = max((e.degree for row in a for e in row if not e.is_zero()), default=0)
    bound = maxdeg * min(m, n) + 1
    best = 0
    for k in range(bound + 1):
        s0, t0 = ONE, Fraction(k)
        pt = poly_mat_eval(a, s0, t0)
        best = max(best, linalg.rank(pt))
        if best == min(m, n):
            return best
    return best


# ---------------------------------------------------------------------------
# display factoring


def factor_binary_form(p: HomogPoly) -> tuple[Fraction, list[tuple[HomogPoly, int]]]:
    """Split off s, t and rational linear factors.

    Returns (constant, [(primitive_factor, multiplicity), ...]) with
    constant * product == p exactly; a rational-root-free remainder, when
    present, is the last factor with multiplicity 1.
    """
    if p.is_zero():
        return ZERO, []
    a, b, core_t = _split(p)
    factors: list[tuple[HomogPoly, int]] = []
    if a:
        factors.append((HomogPoly.monomial(1, 0), a))
    if b:
        factors.append((HomogPoly.monomial(1, 1), b))
    core = list(_primitive(core_t))
    lin: dict[Fraction, int] = {}
    while len(core) > 1:
        root = _rational_root(core)
        if root is None:
            break
        core = list(_primitive(_deflate(core, root)))
        lin[root] = lin.get(root, 0) + 1
    for root in sorted(lin):
        factor = HomogPoly.of(1, (Fraction(-root.numerator), Fraction(root.denominator)))
        factors.append((factor, lin[root]))
    if len(core) > 1:
        factors.append((HomogPoly.of(len(core) - 1, core), 1))
    prod = HomogPoly.constant(1)
    for f, mult in factors:
        for _ in range(mult):
            prod = prod * f
    idx = next(k for k, c in enumerate(prod.coeffs) if c != 0)
    const = p.coeffs[idx] / prod.coeffs[idx]
    assert p == prod.scaled(const)
    return const, factors


def format_factored(p: HomogPoly) -> str:
    """Human-readable factored form, deterministic for equal inputs."""
    if p.is_zero():
        return "0"
    const, factors = factor_binary_form(p)
    parts = [] if const == 1 and factors else [str(const)]
    for f, mult in factors:
        text = str(f)
        if not f.is_zero() and (f.degree > 0 and sum(1 for c in f.coeffs if c != 0) > 1):
            text = f"({text})"
        parts.append(text if mult == 1 else f"{text}^{mult}")
    return " * ".join(parts)


def _rational_root(core: Sequence[Fraction]) -> Fraction | None:
    ints = [int(c) for c in core]
    a0, an = ints[0], ints[-1]
    if a0 == 0:
        return ZERO
    for pn in sorted(_divisors(abs(a0))):
        for qn in sorted(_divisors(abs(an))):
            for sgn in (1, -1):
                cand = Fraction(sgn * pn, qn)
                if _eval_univ(core, cand) == 0:
                    return cand
    return None


def _eval_univ(core: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = ZERO
    for c in reversed(core):
        acc = acc * x + c
    return acc


def _deflate(core: Sequence[Fraction], root: Fraction) -> list[Fraction]:
    # synthetic division by (t - root), ascending coefficients
    desc = list(reversed(core))
    out = [desc[0]]
    for c in desc[1:-1]:
        out.append(c + root * out[-1])
    rem = desc[-1] + root * out[-1]
    assert rem == 0
    return list(reversed(out))


def _divisors(n: int) -> list[int]:
    assert n > 0
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return out
