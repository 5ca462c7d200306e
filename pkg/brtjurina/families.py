"""Built-in cases and the closed-form fit of the m-family table."""
import os
from fractions import Fraction

from brtjurina.errors import ArgumentRangeError, InputError


EXAMPLE_3_2 = """\
# Quadric V invariant by omega, X = {x^3 + yz = 0} not invariant.
ring x, y, z;
let f = x^2 + y^2 + z^2;
X: x^3 + y*z;
V: f;
omega: dplusfeta(f; z, x, y);
"""


def example_3_2():
    return EXAMPLE_3_2


def pq_family(p=2, q=3, lam=None):
    """omega = y dx + lambda x dy, X = {y^p - x^q = 0}, V = {xy = 0}.

    Without `lam` the case sweeps the default values; lambda in
    {0, 1, -p/q} is excluded.
    """
    p, q = _positive_int('p', p, 2), _positive_int('q', q, 2)
    if p == q:
        raise ArgumentRangeError(f'p and q must differ, got p = q = {p}')
    lines = [
        f'# omega = y dx + lambda x dy, X = {{y^{p} - x^{q} = 0}}, V = {{xy = 0}}',
        'ring x, y;',
        f'X: y^{p} - x^{q};',
        'V: x*y;',
        'omega: coeffs(y, lambda*x);',
    ]
    if lam is not None:
        lines.append(f'option lambda = {_format_rational(Fraction(lam))};')
    lines.append(f'option bad_lambda = 0, 1, -{p}/{q};')
    return '\n'.join(lines) + '\n'


def m_family(m=1):
    """f = x^(2m+1) + x^m y^(m+1) + y^(2m), X = {xy = 0}, omega = df + f (y dx + x dy)."""
    m = _positive_int('m', m, 1)
    return '\n'.join([
        f'# m = {m}',
        'ring x, y;',
        f'let f = x^{2 * m + 1} + x^{m}*y^{m + 1} + y^{2 * m};',
        'X: x*y;',
        'V: f;',
        'omega: dplusfeta(f; y, x);',
    ]) + '\n'


def _positive_int(name, value, minimum):
    try:
        number = int(value)
    except (TypeError, ValueError):
        raise InputError(f"{name} must be an integer, got '{value}'")
    if number < minimum or str(number) != str(value).strip():
        raise ArgumentRangeError(
            f'{name} must be an integer >= {minimum}, got {value}')
    return number


def _format_rational(value):
    if value.denominator == 1:
        return str(value.numerator)
    return f'{value.numerator}/{value.denominator}'


class Generator:
    def __init__(self, build, params):
        self.build = build
        self.params = params


BUILTIN = {
    'example-3-2': Generator(example_3_2, ()),
    'pq-family': Generator(pq_family, ('p', 'q', 'lambda')),
    'm-family': Generator(m_family, ('m',)),
}


def parse_params(items):
    """['p=2', 'q=3'] -> {'p': '2', 'q': '3'}."""
    params = {}
    for item in items or ():
        key, sep, value = item.partition('=')
        if not sep or not key.strip() or not value.strip():
            raise InputError(f"parameter '{item}' is not of the form k=v")
        params[key.strip()] = value.strip()
    return params


def emit_case(name, params=None):
    """Case file text of a built-in family."""
    if name not in BUILTIN:
        raise InputError(f"{name} is not a built-in case. Allowed values "
                         f"are: {', '.join(BUILTIN)}")
    generator = BUILTIN[name]
    params = dict(params or {})
    unknown = sorted(set(params) - set(generator.params))
    if unknown:
        raise InputError(f"{name} has no parameter {', '.join(unknown)}; "
                         f"allowed: {', '.join(generator.params) or 'none'}")
    kwargs = {('lam' if k == 'lambda' else k): v for k, v in params.items()}
    if 'lam' in kwargs:
        try:
            kwargs['lam'] = Fraction(kwargs['lam'])
        except (ValueError, ZeroDivisionError):
            raise InputError(f"lambda must be rational, got '{kwargs['lam']}'")
    return generator.build(**kwargs)


def case_source(source, params=None):
    """(name, text) for a built-in name or a case file path."""
    if source in BUILTIN:
        return source, emit_case(source, params)
    if params:
        raise InputError('--param is only valid for built-in cases')
    try:
        with open(source, 'r', encoding='utf-8') as f:
            text = f.read()
    except OSError as exc:
        raise InputError(f"Cannot read case '{source}': {exc}")
    return os.path.splitext(os.path.basename(source))[0], text


class Quadratic:
    """a m^2 + b m + c with exact coefficients."""

    def __init__(self, a, b, c):
        self.a, self.b, self.c = Fraction(a), Fraction(b), Fraction(c)

    def __eq__(self, other):
        if not isinstance(other, Quadratic):
            return NotImplemented
        return (self.a, self.b, self.c) == (other.a, other.b, other.c)

    def __hash__(self):
        return hash((self.a, self.b, self.c))

    def __repr__(self):
        return f'Quadratic({self})'

    def __call__(self, m):
        return self.a * m * m + self.b * m + self.c

    def __str__(self):
        pieces = []
        for coeff, monomial in ((self.a, 'm^2'), (self.b, 'm'), (self.c, '')):
            if coeff == 0:
                continue
            sign = '-' if coeff < 0 else '+'
            magnitude = _format_rational(abs(coeff))
            if monomial:
                body = monomial if abs(coeff) == 1 else f'{magnitude}*{monomial}'
            else:
                body = magnitude
            pieces.append((sign, body))
        if not pieces:
            return '0'
        text = ('-' if pieces[0][0] == '-' else '') + pieces[0][1]
        for sign, body in pieces[1:]:
            text += f' {sign} {body}'
        return text


MU_BR_CLOSED_FORM = Quadratic(Fraction(4), Fraction(2), Fraction(0))
TAU_BR_CLOSED_FORM = Quadratic(Fraction(3), Fraction(2), Fraction(1))


def fit_closed_form(values):
    """Quadratic through the first three (m, value) points, by Lagrange interpolation."""
    points = sorted(values.items())[:3]
    if len(points) < 3:
        raise ArgumentRangeError(
            f'A quadratic fit needs three points, got {len(points)}.')
    a = b = c = Fraction(0)
    for i, (m_i, v_i) in enumerate(points):
        others = [m for j, (m, _) in enumerate(points) if j != i]
        denominator = Fraction((m_i - others[0]) * (m_i - others[1]))
        weight = Fraction(v_i) / denominator
        # (m - u)(m - w) = m^2 - (u + w) m + u w
        a += weight
        b -= weight * (others[0] + others[1])
        c += weight * others[0] * others[1]
    return Quadratic(a, b, c)
