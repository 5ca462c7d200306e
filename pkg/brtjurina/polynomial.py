"""Exact multivariate polynomials over the rationals.

Polynomials are sparse maps from exponent vectors to `Fraction`
coefficients. Values are immutable after construction: every operation
returns a new object, so they can be shared freely between threads and
processes.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Sequence, Tuple

from brtjurina.errors import ArgumentRangeError, InputError, RingMismatchError


Exponent = Tuple[int, ...]


def _is_identifier(name):
    return isinstance(name, str) and name.isidentifier()


@dataclass(frozen=True)
class Ring:
    """Polynomial ring Q[x_1, ..., x_n] with an ordered variable list.

    The variable order fixes the coefficient order of 1-forms and the
    tie-breaking of the monomial orders.
    """

    variables: Tuple[str, ...]

    def __post_init__(self):
        variables = tuple(self.variables)
        object.__setattr__(self, 'variables', variables)
        if not variables:
            raise InputError('A ring needs at least one variable.')
        for name in variables:
            if not _is_identifier(name):
                raise InputError(f"'{name}' is not a valid variable name.")
        if len(set(variables)) != len(variables):
            raise InputError(
                f"Variable names must be distinct: {', '.join(variables)}")

    @property
    def n(self):
        return len(self.variables)

    def zero_exponent(self) -> Exponent:
        return (0,) * self.n

    def zero(self):
        return Polynomial(self)

    def one(self):
        return self.const(1)

    def const(self, value):
        return Polynomial(self, {self.zero_exponent(): value})

    def var(self, name_or_index):
        if isinstance(name_or_index, str):
            if name_or_index not in self.variables:
                raise InputError(f"Unknown variable '{name_or_index}'.")
            index = self.variables.index(name_or_index)
        else:
            index = name_or_index
            _check_index(index, self.n)
        exp = tuple(1 if i == index else 0 for i in range(self.n))
        return Polynomial(self, {exp: 1})

    def gens(self):
        return [self.var(i) for i in range(self.n)]

    def monomial(self, exp, coeff=1):
        return Polynomial(self, {tuple(exp): coeff})

    def __str__(self):
        return f"Q[{', '.join(self.variables)}]"


def _check_index(i, n):
    if not isinstance(i, int) or not 0 <= i < n:
        raise ArgumentRangeError(
            f'Variable index {i} out of range for a ring with {n} variables.')


def _check_same_ring(p, q):
    if p.ring != q.ring:
        raise RingMismatchError(
            f'Ring mismatch: {p.ring} and {q.ring}.')


class Polynomial:
    """Exact polynomial with rational coefficients.

    Args:
        ring (Ring): The ambient ring.
        terms (dict, optional): Map exponent tuple -> coefficient. Zero
            coefficients are pruned; coefficients are converted to Fraction.
    """

    __slots__ = ('ring', '_terms', '_hash')

    def __init__(self, ring: Ring, terms: Dict[Exponent, object] = None):
        cleaned = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != ring.n or any(e < 0 for e in exp):
                raise InputError(
                    f'Exponent {exp} does not fit a ring with {ring.n} '
                    'variables.')
            coeff = Fraction(coeff)
            if coeff:
                cleaned[exp] = cleaned.get(exp, 0) + coeff
                if not cleaned[exp]:
                    del cleaned[exp]
        self.ring = ring
        self._terms = cleaned
        self._hash = None

    @classmethod
    def _from_clean(cls, ring, terms):
        """Wrap a dict that is already pruned and Fraction-valued."""
        poly = cls.__new__(cls)
        poly.ring = ring
        poly._terms = terms
        poly._hash = None
        return poly

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self):
        """Read-only view of the exponent -> coefficient map."""
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, exp):
        return self._terms.get(tuple(exp), Fraction(0))

    def constant_term(self):
        return self.coefficient(self.ring.zero_exponent())

    def is_zero(self):
        return not self._terms

    def is_unit(self):
        """True iff the polynomial is a unit of the local ring at 0."""
        return self.constant_term() != 0

    def vanishes_at_origin(self):
        return self.constant_term() == 0

    def degree(self):
        """Maximal total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def order(self):
        """Minimal total degree of a term; -1 for the zero polynomial."""
        return min((sum(e) for e in self._terms), default=-1)

    def sorted_terms(self, order=None):
        """Terms as (exponent, coefficient) pairs, greatest first under `order`."""
        if order is None:
            from brtjurina.orders import DEFAULT_ORDER
            order = DEFAULT_ORDER
        return sorted(self._terms.items(), key=lambda t: order.key(t[0]),
                      reverse=True)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            _check_same_ring(self, other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for exp, coeff in other._terms.items():
            value = terms.get(exp, 0) + coeff
            if value:
                terms[exp] = value
            else:
                terms.pop(exp, None)
        return Polynomial._from_clean(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._from_clean(
            self.ring, {exp: -c for exp, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                value = terms.get(exp, 0) + c1 * c2
                if value:
                    terms[exp] = value
                else:
                    terms.pop(exp, None)
        return Polynomial._from_clean(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ArgumentRangeError(f'Exponent must be a nonnegative '
                                     f'integer, got {k}.')
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, coeff):
        coeff = Fraction(coeff)
        if not coeff:
            return self.ring.zero()
        return Polynomial._from_clean(
            self.ring, {exp: c * coeff for exp, c in self._terms.items()})

    def shift(self, exp):
        """Multiply by the monomial x^exp."""
        return Polynomial._from_clean(
            self.ring,
            {tuple(a + b for a, b in zip(e, exp)): c
             for e, c in self._terms.items()})

    def derivative(self, i):
        _check_index(i, self.ring.n)
        terms = {}
        for exp, coeff in self._terms.items():
            if exp[i]:
                new_exp = exp[:i] + (exp[i] - 1,) + exp[i + 1:]
                terms[new_exp] = coeff * exp[i]
        return Polynomial._from_clean(self.ring, terms)

    def gradient(self):
        return [self.derivative(i) for i in range(self.ring.n)]

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f'Polynomial({self})'

    def __str__(self):
        return format_polynomial(self)


def format_coefficient(coeff):
    if coeff.denominator == 1:
        return str(coeff.numerator)
    return f'{coeff.numerator}/{coeff.denominator}'


def format_monomial(exp, variables):
    factors = []
    for name, e in zip(variables, exp):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f'{name}^{e}')
    return '*'.join(factors)


def format_polynomial(p, order=None):
    """Render p in the case-file expression syntax (re-parsable)."""
    if p.is_zero():
        return '0'
    pieces = []
    for exp, coeff in p.sorted_terms(order):
        sign = '-' if coeff < 0 else '+'
        magnitude = abs(coeff)
        monomial = format_monomial(exp, p.ring.variables)
        if not monomial:
            body = format_coefficient(magnitude)
        elif magnitude == 1:
            body = monomial
        else:
            body = f'{format_coefficient(magnitude)}*{monomial}'
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    text = ('-' if first_sign == '-' else '') + first_body
    for sign, body in pieces[1:]:
        text += f' {sign} {body}'
    return text


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    _check_same_ring(p, q)
    return p + q


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    _check_same_ring(p, q)
    return p * q


def partial_derivative(p: Polynomial, i: int) -> Polynomial:
    return p.derivative(i)


@dataclass(frozen=True)
class OneForm:
    """Holomorphic 1-form  omega = sum_j A_j dx_j  with polynomial A_j."""

    ring: Ring
    coefficients: Tuple[Polynomial, ...]

    def __post_init__(self):
        coefficients = tuple(self.coefficients)
        object.__setattr__(self, 'coefficients', coefficients)
        if len(coefficients) != self.ring.n:
            raise InputError(
                f'A 1-form on {self.ring} needs {self.ring.n} coefficients, '
                f'got {len(coefficients)}.')
        for coeff in coefficients:
            if not isinstance(coeff, Polynomial):
                raise InputError(f'Coefficient {coeff!r} is not a Polynomial.')
            _check_same_ring(coeff, coefficients[0])
        if coefficients and coefficients[0].ring != self.ring:
            raise RingMismatchError('1-form coefficients live in another ring.')

    @classmethod
    def exact(cls, f: Polynomial):
        """The differential df."""
        return cls(f.ring, tuple(f.gradient()))

    @property
    def n(self):
        return self.ring.n

    def is_zero(self):
        return all(c.is_zero() for c in self.coefficients)

    def __add__(self, other):
        if self.ring != other.ring:
            raise RingMismatchError(
                f'Ring mismatch: {self.ring} and {other.ring}.')
        return OneForm(self.ring, tuple(
            a + b for a, b in zip(self.coefficients, other.coefficients)))

    def scale(self, u: Polynomial):
        """The form u * omega."""
        return OneForm(self.ring, tuple(u * a for a in self.coefficients))

    def evaluate(self, field: Sequence[Polynomial]) -> Polynomial:
        """omega(xi) = sum_j A_j xi_j for a vector field xi."""
        if len(field) != self.n:
            raise InputError(
                f'Vector field has {len(field)} components, expected {self.n}.')
        result = self.ring.zero()
        for a, xi in zip(self.coefficients, field):
            result = result + a * xi
        return result

    def __str__(self):
        parts = [f'({a})*d{x}'
                 for a, x in zip(self.coefficients, self.ring.variables)]
        return ' + '.join(parts)


def build_one_form_df_plus_f_eta(f: Polynomial, eta: OneForm) -> OneForm:
    """omega = df + f * eta, computed componentwise."""
    if f.ring != eta.ring:
        raise RingMismatchError(f'Ring mismatch: {f.ring} and {eta.ring}.')
    return OneForm(f.ring, tuple(
        df_j + f * eta_j
        for df_j, eta_j in zip(f.gradient(), eta.coefficients)))


@dataclass(frozen=True)
class PolyMatrix:
    """Row-major matrix of polynomials."""

    rows: int
    cols: int
    entries: Tuple[Polynomial, ...]

    def __post_init__(self):
        entries = tuple(self.entries)
        object.__setattr__(self, 'entries', entries)
        if self.rows < 1 or self.cols < 1:
            raise ArgumentRangeError('A matrix needs positive dimensions.')
        if len(entries) != self.rows * self.cols:
            raise InputError(
                f'{self.rows}x{self.cols} matrix needs '
                f'{self.rows * self.cols} entries, got {len(entries)}.')

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Polynomial]]):
        rows = [list(r) for r in rows]
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise InputError('Matrix rows must be nonempty and of equal length.')
        return cls(len(rows), len(rows[0]),
                   tuple(itertools.chain.from_iterable(rows)))

    def entry(self, i, j):
        return self.entries[i * self.cols + j]

    def row(self, i):
        return [self.entry(i, j) for j in range(self.cols)]

    def transpose(self):
        return PolyMatrix.from_rows(
            [[self.entry(i, j) for i in range(self.rows)]
             for j in range(self.cols)])

    def submatrix(self, row_indices, col_indices):
        return PolyMatrix.from_rows(
            [[self.entry(i, j) for j in col_indices] for i in row_indices])


def determinant(M: PolyMatrix) -> Polynomial:
    """Determinant by cofactor expansion along the first row."""
    if M.rows != M.cols:
        raise ArgumentRangeError(
            f'Determinant of a non-square {M.rows}x{M.cols} matrix.')
    if M.rows == 1:
        return M.entry(0, 0)
    ring = M.entries[0].ring
    result = ring.zero()
    for j in range(M.cols):
        a = M.entry(0, j)
        if a.is_zero():
            continue
        minor = M.submatrix(range(1, M.rows),
                            [c for c in range(M.cols) if c != j])
        term = a * determinant(minor)
        result = result + term if j % 2 == 0 else result - term
    return result


def minors(M: PolyMatrix, k: int):
    """All k x k minors, ordered lexicographically by (row subset, column subset)."""
    if not isinstance(k, int) or k < 1 or k > min(M.rows, M.cols):
        raise ArgumentRangeError(
            f'Minor size {k} out of range for a {M.rows}x{M.cols} matrix.')
    return [determinant(M.submatrix(rows, cols))
            for rows in itertools.combinations(range(M.rows), k)
            for cols in itertools.combinations(range(M.cols), k)]


def jacobian_matrix(omega: OneForm, equations: Iterable[Polynomial]):
    """The matrix (omega; dphi): first row A_j, then the gradients of phi_i."""
    rows = [list(omega.coefficients)]
    for phi in equations:
        if phi.ring != omega.ring:
            raise RingMismatchError(
                f'Ring mismatch: {phi.ring} and {omega.ring}.')
        rows.append(phi.gradient())
    return PolyMatrix.from_rows(rows)
