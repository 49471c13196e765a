from dataclasses import dataclass, field
from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np
import numpy.polynomial.polynomial as npoly

from ..config import ZERO_THRESHOLD
from ..utils.exceptions import ParseError

# Degree of the zero polynomial, ordered below every integer
NEG_INF_DEGREE = float('-inf')

Number = Union[int, float, complex]


def _trim(coeffs: Sequence[complex], threshold: float) -> Tuple[complex, ...]:
    values = [complex(c) for c in coeffs]
    if not values:
        return ()
    scale = max(abs(c) for c in values)
    if scale == 0.0:
        return ()
    cutoff = threshold * scale
    end = len(values)
    while end > 0 and abs(values[end - 1]) <= cutoff:
        end -= 1
    return tuple(values[:end])


@dataclass(frozen=True)
class Polynomial:
    """Complex polynomial, coefficients in ascending power order"""
    coeffs: Tuple[complex, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, 'coeffs', _trim(self.coeffs, ZERO_THRESHOLD))

    @classmethod
    def constant(cls, value: Number) -> 'Polynomial':
        return cls((complex(value),))

    @classmethod
    def x(cls) -> 'Polynomial':
        return cls((0j, 1 + 0j))

    @classmethod
    def from_roots(cls, roots: Iterable[Tuple[complex, int]],
                   leading: Number = 1.0) -> 'Polynomial':
        """Build leading * prod (x - r)^m from (root, multiplicity) pairs"""
        flat: List[complex] = []
        for root, mult in roots:
            flat.extend([complex(root)] * int(mult))
        if not flat:
            return cls.constant(leading)
        coeffs = npoly.polyfromroots(flat) * complex(leading)
        return cls(tuple(coeffs))

    @property
    def degree(self) -> Union[int, float]:
        if not self.coeffs:
            return NEG_INF_DEGREE
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> complex:
        return self.coeffs[-1] if self.coeffs else 0j

    def as_array(self) -> np.ndarray:
        return np.asarray(self.coeffs, dtype=complex)

    def __call__(self, x):
        if self.is_zero:
            return np.zeros_like(np.asarray(x, dtype=complex))
        return npoly.polyval(x, self.as_array())

    def _coerce(self, other) -> 'Polynomial':
        if isinstance(other, Polynomial):
            return other
        return Polynomial.constant(other)

    def __add__(self, other) -> 'Polynomial':
        other = self._coerce(other)
        # numpy rejects empty coefficient arrays
        if other.is_zero:
            return self
        if self.is_zero:
            return other
        return Polynomial(tuple(npoly.polyadd(self.as_array(), other.as_array())))

    __radd__ = __add__

    def __sub__(self, other) -> 'Polynomial':
        other = self._coerce(other)
        if other.is_zero:
            return self
        if self.is_zero:
            return -other
        return Polynomial(tuple(npoly.polysub(self.as_array(), other.as_array())))

    def __rsub__(self, other) -> 'Polynomial':
        return self._coerce(other) - self

    def __neg__(self) -> 'Polynomial':
        return Polynomial(tuple(-c for c in self.coeffs))

    def __mul__(self, other) -> 'Polynomial':
        other = self._coerce(other)
        if self.is_zero or other.is_zero:
            return Polynomial(())
        return Polynomial(tuple(npoly.polymul(self.as_array(), other.as_array())))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> 'Polynomial':
        result = Polynomial.constant(1.0)
        for _ in range(int(exponent)):
            result = result * self
        return result

    def derivative(self) -> 'Polynomial':
        if self.degree == NEG_INF_DEGREE or self.degree < 1:
            return Polynomial(())
        return Polynomial(tuple(npoly.polyder(self.as_array())))

    def monic(self) -> 'Polynomial':
        if self.is_zero:
            return self
        return Polynomial(tuple(c / self.leading for c in self.coeffs))

    def conj_reflect(self) -> 'Polynomial':
        return Polynomial(tuple(np.conj(c) for c in self.coeffs))

    def is_real(self, tol: float = ZERO_THRESHOLD) -> bool:
        if self.is_zero:
            return True
        scale = max(abs(c) for c in self.coeffs)
        return all(abs(c.imag) <= tol * scale for c in self.coeffs)

    def is_close(self, other: 'Polynomial', threshold: float = 1e-9) -> bool:
        """Relative coefficient comparison"""
        a, b = self.as_array(), other.as_array()
        size = max(len(a), len(b))
        a = np.pad(a, (0, size - len(a)))
        b = np.pad(b, (0, size - len(b)))
        scale = max(np.max(np.abs(a), initial=0.0), np.max(np.abs(b), initial=0.0), 1e-300)
        return bool(np.max(np.abs(a - b), initial=0.0) <= threshold * scale)

    def to_text(self) -> str:
        return ','.join(_format_complex(c) for c in self.coeffs) if self.coeffs else '0'

    def __str__(self) -> str:
        if self.is_zero:
            return '0'
        terms = []
        for power, c in enumerate(self.coeffs):
            if c == 0:
                continue
            coef = _format_complex(c)
            if power == 0:
                terms.append(coef)
            elif power == 1:
                terms.append(f"({coef})x")
            else:
                terms.append(f"({coef})x^{power}")
        return ' + '.join(terms) if terms else '0'


def _format_complex(c: complex) -> str:
    c = complex(c)
    if c.imag == 0:
        return f"{c.real:.15g}"
    if c.real == 0:
        return f"{c.imag:.15g}i"
    sign = '+' if c.imag >= 0 else '-'
    return f"{c.real:.15g}{sign}{abs(c.imag):.15g}i"


def parse_complex(text: str) -> complex:
    """Parse a coefficient such as `2`, `-1.5`, `i`, `1-2i` or `0.5+i`"""
    token = text.strip().replace(' ', '')
    if not token:
        raise ParseError("Empty coefficient")
    try:
        value = complex(token.replace('i', 'j'))
    except ValueError:
        raise ParseError(f"Cannot parse coefficient '{text}'")
    if not np.isfinite(value):
        raise ParseError(f"Coefficient '{text}' is not finite")
    return value


def parse_polynomial(text: str) -> Polynomial:
    """Parse comma-separated ascending coefficients, e.g. `-1,0,1` is x^2 - 1"""
    if text is None or not text.strip():
        raise ParseError("Empty polynomial text")
    return Polynomial(tuple(parse_complex(part) for part in text.split(',')))


def conj_reflect(p: Polynomial) -> Polynomial:
    """Conjugate every coefficient; roots map to their complex conjugates"""
    return p.conj_reflect()
