"""
Dense univariate polynomials
Exact arithmetic over the rationals plus a floating-point path with a
complex root finder for the low-degree polynomials of the theta machinery.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np
from sympy.polys.domains import QQ
from sympy.polys.euclidtools import dup_gcd
from sympy.polys.sqfreetools import dup_sqf_list

from quadzeros.errors import DegenerateLeadingCoefficient, RootAccuracyError

Scalar = Union[int, Fraction]

LEADING_FLOOR = 1e-300


def as_fraction(value) -> Fraction:
    """Convert ints, fractions, floats and strings like "-3", "1/3", "0.3" exactly"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        if not np.isfinite(value):
            raise ValueError(f"non-finite value {value!r}")
        return Fraction(value)
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


@dataclass(frozen=True)
class RationalPoly:
    """Polynomial with Fraction coefficients in ascending degree; () is zero"""

    coeffs: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        cs = [as_fraction(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, 'coeffs', tuple(cs))

    # construction

    @classmethod
    def zero(cls) -> RationalPoly:
        return cls(())

    @classmethod
    def constant(cls, value: Scalar) -> RationalPoly:
        return cls((value,))

    @classmethod
    def monomial(cls, degree: int, coeff: Scalar = 1) -> RationalPoly:
        return cls((0,) * degree + (coeff,))

    @classmethod
    def linear(cls, c0: Scalar, c1: Scalar) -> RationalPoly:
        return cls((c0, c1))

    # basic queries

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        """Degree; -1 for the zero polynomial"""
        return len(self.coeffs) - 1

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coefficient(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    # ring operations

    def __add__(self, other) -> RationalPoly:
        other = _lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return RationalPoly(tuple(self.coefficient(k) + other.coefficient(k) for k in range(n)))

    __radd__ = __add__

    def __neg__(self) -> RationalPoly:
        return RationalPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> RationalPoly:
        return self + (-_lift(other))

    def __rsub__(self, other) -> RationalPoly:
        return _lift(other) - self

    def __mul__(self, other) -> RationalPoly:
        if not isinstance(other, RationalPoly):
            return self.scale(other)
        if self.is_zero() or other.is_zero():
            return RationalPoly.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RationalPoly(tuple(out))

    __rmul__ = __mul__

    def scale(self, k: Scalar) -> RationalPoly:
        k = as_fraction(k)
        return RationalPoly(tuple(k * c for c in self.coeffs))

    def __truediv__(self, k: Scalar) -> RationalPoly:
        return self.scale(1 / as_fraction(k))

    def __pow__(self, n: int) -> RationalPoly:
        result = RationalPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def derivative(self) -> RationalPoly:
        return RationalPoly(tuple(k * c for k, c in enumerate(self.coeffs) if k > 0))

    def __divmod__(self, divisor: RationalPoly) -> Tuple[RationalPoly, RationalPoly]:
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = divisor.degree()
        lead = divisor.leading()
        quot = [Fraction(0)] * max(len(rem) - dd, 1)
        for k in range(len(rem) - 1 - dd, -1, -1):
            q = rem[k + dd] / lead
            quot[k] = q
            if q:
                for j, d in enumerate(divisor.coeffs):
                    rem[k + j] -= q * d
        return RationalPoly(tuple(quot)), RationalPoly(tuple(rem[:dd]))

    def __floordiv__(self, divisor: RationalPoly) -> RationalPoly:
        return divmod(self, divisor)[0]

    def __mod__(self, divisor: RationalPoly) -> RationalPoly:
        return divmod(self, divisor)[1]

    # evaluation

    def __call__(self, x):
        """Horner evaluation; exact for rational x, numeric for float/complex x"""
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + (c if isinstance(acc, Fraction) else float(c))
        return acc

    def sign_at(self, x: Fraction) -> int:
        v = self(x)
        return (v > 0) - (v < 0)

    # transformations

    def monic(self) -> RationalPoly:
        return self if self.is_zero() else self / self.leading()

    def to_dense(self) -> list:
        """Descending QQ coefficients, the layout of sympy's dup_* routines"""
        return [QQ(c.numerator, c.denominator) for c in reversed(self.coeffs)]

    @classmethod
    def from_dense(cls, coeffs: Sequence) -> RationalPoly:
        # QQ and ZZ elements (python or gmpy backed) all expose numerator/denominator
        return cls(tuple(Fraction(int(c.numerator), int(c.denominator)) for c in reversed(coeffs)))

    def compose(self, inner: RationalPoly) -> RationalPoly:
        """p(inner(z)) by Horner over polynomials"""
        acc = RationalPoly.zero()
        for c in reversed(self.coeffs):
            acc = acc * inner + RationalPoly.constant(c)
        return acc

    def to_float(self) -> FloatPoly:
        return FloatPoly(tuple(float(c) for c in self.coeffs))

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            elif k == 1:
                terms.append(f"{c}*z")
            else:
                terms.append(f"{c}*z^{k}")
        return " + ".join(terms)


def _lift(value) -> RationalPoly:
    return value if isinstance(value, RationalPoly) else RationalPoly.constant(value)


# module-level operations

def add(p: RationalPoly, q) -> RationalPoly:
    return p + q


def mul(p: RationalPoly, q) -> RationalPoly:
    return p * q


def scale(p: RationalPoly, k: Scalar) -> RationalPoly:
    return p.scale(k)


def derivative(p: RationalPoly) -> RationalPoly:
    return p.derivative()


def eval_rational(p: RationalPoly, x: Scalar) -> Fraction:
    return p(as_fraction(x))


def gcd(p: RationalPoly, q: RationalPoly) -> RationalPoly:
    """Monic greatest common divisor; gcd(0, 0) is the zero polynomial"""
    h = dup_gcd(p.to_dense(), q.to_dense(), QQ)
    return RationalPoly.from_dense(h).monic()


def compose(p: RationalPoly, q: RationalPoly) -> RationalPoly:
    return p.compose(q)


def squarefree_decomposition(p: RationalPoly) -> List[Tuple[RationalPoly, int]]:
    """Monic nonconstant factors a_i with prod a_i^i == p / lc(p), ascending in i"""
    if p.degree() < 1:
        return []
    _, factors = dup_sqf_list(p.to_dense(), QQ)
    return [(RationalPoly.from_dense(f).monic(), k) for f, k in factors]


def cubic_discriminant(a, b, c, d):
    """Discriminant of a*x^3 + b*x^2 + c*x + d over any commutative ring"""
    return 18 * a * b * c * d - 4 * b ** 3 * d + b ** 2 * c ** 2 - 4 * a * c ** 3 - 27 * a ** 2 * d ** 2


# floating-point path

@dataclass(frozen=True)
class FloatPoly:
    """Polynomial with float coefficients in ascending degree"""

    coeffs: Tuple[float, ...]

    def __post_init__(self):
        cs = tuple(float(c) for c in self.coeffs)
        if not all(np.isfinite(cs)):
            raise ValueError(f"non-finite coefficient in {cs}")
        object.__setattr__(self, 'coeffs', cs)

    def trimmed(self) -> FloatPoly:
        cs = list(self.coeffs)
        while cs and cs[-1] == 0.0:
            cs.pop()
        return FloatPoly(tuple(cs))

    def degree(self) -> int:
        return len(self.trimmed().coeffs) - 1

    def __call__(self, x):
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


@dataclass(frozen=True)
class ComplexRootSet:
    roots: Tuple[complex, ...]
    residuals: Tuple[float, ...]
    coeffs: Tuple[complex, ...] = ()

    def real_roots(self, imag_tol: float = 1e-9) -> List[float]:
        return [r.real for r in self.roots if abs(r.imag) <= imag_tol * max(1.0, abs(r))]

    def vieta_sum_error(self) -> float:
        """Relative mismatch between sum(roots) and -c_{n-1}/c_n"""
        expected = -self.coeffs[-2] / self.coeffs[-1]
        got = sum(self.roots)
        return abs(got - expected) / max(1.0, abs(expected), max(abs(r) for r in self.roots))


def _horner(coeffs: np.ndarray, x: complex) -> complex:
    acc = 0j
    for c in coeffs[::-1]:
        acc = acc * x + c
    return acc


def _eval_scale(coeffs: np.ndarray, x: complex) -> float:
    r = abs(x)
    return float(sum(abs(c) * r ** k for k, c in enumerate(coeffs)))


def _quadratic_roots(c0: complex, c1: complex, c2: complex) -> List[complex]:
    disc = cmath.sqrt(c1 * c1 - 4 * c2 * c0)
    if (c1.conjugate() * disc).real < 0:
        disc = -disc
    q = -(c1 + disc) / 2
    if q == 0:
        return [0j, 0j]
    return [q / c2, c0 / q]


def _companion_roots(coeffs: np.ndarray) -> np.ndarray:
    n = len(coeffs) - 1
    matrix = np.zeros((n, n), dtype=coeffs.dtype)
    matrix.reshape(-1)[n::n + 1] = 1
    matrix[:, -1] -= coeffs[:-1] / coeffs[-1]
    return np.linalg.eigvals(matrix)


def _polish(coeffs: np.ndarray, root: complex, steps: int = 3) -> complex:
    dcoeffs = np.array([k * c for k, c in enumerate(coeffs)][1:], dtype=complex)
    best, best_res = root, abs(_horner(coeffs, root))
    for _ in range(steps):
        dp = _horner(dcoeffs, best)
        if dp == 0:
            break
        cand = best - _horner(coeffs, best) / dp
        res = abs(_horner(coeffs, cand))
        if not res < best_res:
            break
        best, best_res = cand, res
    return best


def solve_coefficients(coeffs: Sequence[complex], tol: float = 1e-10) -> ComplexRootSet:
    """All roots of sum coeffs[k] t^k, real or complex coefficients

    The residual |p(r)| of every root is bounded by tol * sum |c_k| |r|^k.
    """
    arr = np.asarray(list(coeffs))
    if not np.iscomplexobj(arr):
        arr = arr.astype(float)
    n = len(arr) - 1
    if n < 1:
        raise ValueError("root finding needs degree >= 1")
    if abs(arr[-1]) <= LEADING_FLOOR:
        raise DegenerateLeadingCoefficient(f"leading coefficient {arr[-1]!r} is zero at working precision")

    if n == 1:
        roots = [complex(-arr[0] / arr[1])]
    elif n == 2:
        roots = _quadratic_roots(complex(arr[0]), complex(arr[1]), complex(arr[2]))
    else:
        roots = [complex(r) for r in _companion_roots(arr)]
        roots = [_polish(arr, r) for r in roots]
        # real coefficients: keep real eigenvalues on the real axis
        if not np.iscomplexobj(arr):
            roots = [complex(r.real, 0.0) if abs(r.imag) <= 1e-14 * max(1.0, abs(r)) else r for r in roots]

    residuals = []
    for r in roots:
        res = abs(_horner(arr, r))
        if res > tol * _eval_scale(arr, r):
            raise RootAccuracyError(f"root {r} has residual {res:.3e} above tolerance {tol:.1e}")
        residuals.append(float(res))
    return ComplexRootSet(tuple(roots), tuple(residuals), tuple(complex(c) for c in arr))


def complex_roots(p: FloatPoly, tol: float = 1e-10) -> ComplexRootSet:
    return solve_coefficients(p.coeffs, tol)


def polys_from_strings(rows: Iterable[Sequence[str]]) -> List[RationalPoly]:
    """Parse coefficient rows written as exact "p/q" strings"""
    return [RationalPoly(tuple(as_fraction(s) for s in row)) for row in rows]
