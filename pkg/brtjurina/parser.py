"""Polynomial expressions and case files.

Expression grammar (exact rational semantics, `^` binds tightest)::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INTEGER)?
    atom   := INTEGER ('/' INTEGER)? | IDENT | '(' expr ')'

Case files are `;`-terminated statements, `#` starts a comment::

    ring x, y, z;
    let f = x^2 + y^2 + z^2;
    X: x^3 + y*z;
    V: f;
    omega: dplusfeta(f; z, x, y);      # or: omega: coeffs(e1, e2, e3);
    option lambda = 2, 5, -7/3;        # also rf_cap, bad_lambda, invariants, order

The identifier `lambda` in an expression denotes the case parameter; its
value comes from the caller or from `option lambda`.
"""
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from brtjurina.errors import InputError, ParseError
from brtjurina.invariants import CaseInput, CaseOptions, INVARIANT_NAMES
from brtjurina.logder import Variety
from brtjurina.orders import OrderKind
from brtjurina.polynomial import (
    OneForm, Polynomial, Ring, build_one_form_df_plus_f_eta
)
from brtjurina.utils import get_logger, validate_value_in_enum


logger = get_logger('parser')

PARAMETER = 'lambda'
KEYWORDS = ('ring', 'let', 'option', 'X', 'V', 'omega')
OPTIONS = ('lambda', 'bad_lambda', 'rf_cap', 'invariants', 'order')

_TOKEN_RE = re.compile(r'''
    (?P<ws>[ \t\r]+)
  | (?P<newline>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<number>[0-9]+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*/^(),;:=])
''', re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str, line=1, column=1) -> List[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise ParseError(f"unexpected character '{text[pos]}'", line,
                             column)
        kind = match.lastgroup
        value = match.group()
        if kind == 'newline':
            line += 1
            column = 1
        else:
            if kind in ('number', 'ident', 'op'):
                tokens.append(Token(kind, value, line, column))
            column += len(value)
        pos = match.end()
    tokens.append(Token('end', '', line, column))
    return tokens


class _Cursor:
    """Token stream with one token of lookahead."""

    def __init__(self, tokens: Sequence[Token]):
        self.tokens = list(tokens)
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def at(self, text):
        return self.current.kind != 'end' and self.current.text == text

    def advance(self) -> Token:
        token = self.current
        if token.kind != 'end':
            self.pos += 1
        return token

    def expect(self, text, what=None):
        token = self.current
        if token.text != text or token.kind == 'end':
            found = 'end of input' if token.kind == 'end' else f"'{token.text}'"
            raise ParseError(f"expected {what or repr(text)}, found {found}",
                             token.line, token.column)
        return self.advance()

    def expect_kind(self, kind, what):
        token = self.current
        if token.kind != kind:
            found = 'end of input' if token.kind == 'end' else f"'{token.text}'"
            raise ParseError(f'expected {what}, found {found}', token.line,
                             token.column)
        return self.advance()

    def error(self, message, token=None):
        token = token or self.current
        return ParseError(message, token.line, token.column)


class _ExpressionParser:

    def __init__(self, cursor: _Cursor, ring: Ring,
                 env: Optional[Dict[str, Polynomial]] = None):
        self.cursor = cursor
        self.ring = ring
        self.env = env or {}

    def expr(self) -> Polynomial:
        result = self.term()
        while self.cursor.at('+') or self.cursor.at('-'):
            op = self.cursor.advance().text
            rhs = self.term()
            result = result + rhs if op == '+' else result - rhs
        return result

    def term(self) -> Polynomial:
        result = self.unary()
        while self.cursor.at('*'):
            self.cursor.advance()
            result = result * self.unary()
        return result

    def unary(self) -> Polynomial:
        if self.cursor.at('-'):
            self.cursor.advance()
            return -self.unary()
        if self.cursor.at('+'):
            self.cursor.advance()
            return self.unary()
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if not self.cursor.at('^'):
            return base
        self.cursor.advance()
        token = self.cursor.current
        if token.text == '-':
            raise self.cursor.error('negative exponent', token)
        if token.kind != 'number':
            raise self.cursor.error(
                'exponent must be an integer literal', token)
        self.cursor.advance()
        return base ** int(token.text)

    def atom(self) -> Polynomial:
        token = self.cursor.current
        if token.kind == 'number':
            self.cursor.advance()
            value = Fraction(int(token.text))
            if self.cursor.at('/'):
                self.cursor.advance()
                denominator = self.cursor.expect_kind('number',
                                                      'an integer denominator')
                if int(denominator.text) == 0:
                    raise self.cursor.error('division by zero', denominator)
                value /= int(denominator.text)
            return self.ring.const(value)
        if token.kind == 'ident':
            self.cursor.advance()
            if token.text in self.ring.variables:
                return self.ring.var(token.text)
            if token.text in self.env:
                return self.env[token.text]
            if token.text == PARAMETER:
                raise self.cursor.error(
                    f"parameter '{PARAMETER}' has no value", token)
            raise self.cursor.error(f"unknown identifier '{token.text}'", token)
        if token.text == '(' and token.kind == 'op':
            self.cursor.advance()
            result = self.expr()
            self.cursor.expect(')')
            return result
        found = 'end of input' if token.kind == 'end' else f"'{token.text}'"
        raise self.cursor.error(f'expected an expression, found {found}', token)


def parse_expression(text: str, ring: Ring,
                     env: Optional[Dict[str, Polynomial]] = None) -> Polynomial:
    """Parse one polynomial expression over `ring`.

    Args:
        text (str): The expression.
        ring (Ring): Ring whose variable names are recognised.
        env (dict, optional): Extra names, e.g. `let` bindings.
    """
    cursor = _Cursor(tokenize(text))
    result = _ExpressionParser(cursor, ring, env).expr()
    if cursor.current.kind != 'end':
        raise cursor.error(f"unexpected '{cursor.current.text}' after the "
                           'expression')
    return result


def _split_statements(tokens: List[Token]) -> List[List[Token]]:
    statements, current = [], []
    for token in tokens:
        if token.kind == 'end':
            if current:
                raise ParseError("missing ';' at end of statement",
                                 current[-1].line, current[-1].column)
            break
        if token.kind == 'op' and token.text == ';' and not _inside_parens(
                current):
            if current:
                statements.append(current)
            current = []
        else:
            current.append(token)
    return statements


def _inside_parens(tokens):
    depth = 0
    for token in tokens:
        if token.kind == 'op' and token.text == '(':
            depth += 1
        elif token.kind == 'op' and token.text == ')':
            depth -= 1
    return depth > 0


def _statement_cursor(statement):
    last = statement[-1]
    end = Token('end', '', last.line, last.column + len(last.text))
    return _Cursor(statement + [end])


def _signed_rational(cursor: _Cursor) -> Fraction:
    sign = 1
    if cursor.at('-'):
        cursor.advance()
        sign = -1
    elif cursor.at('+'):
        cursor.advance()
    numerator = cursor.expect_kind('number', 'a rational value')
    value = Fraction(int(numerator.text))
    if cursor.at('/'):
        cursor.advance()
        denominator = cursor.expect_kind('number', 'an integer denominator')
        if int(denominator.text) == 0:
            raise cursor.error('division by zero', denominator)
        value /= int(denominator.text)
    return sign * value


def _comma_list(cursor: _Cursor, item):
    values = [item(cursor)]
    while cursor.at(','):
        cursor.advance()
        values.append(item(cursor))
    return values


def _end_of_statement(cursor: _Cursor):
    if cursor.current.kind != 'end':
        raise cursor.error(f"unexpected '{cursor.current.text}'")


def _identifier(cursor: _Cursor):
    return cursor.expect_kind('ident', 'a name').text


def _parse_options(statements) -> Dict[str, list]:
    options = {}
    for statement in statements:
        if statement[0].text != 'option':
            continue
        cursor = _statement_cursor(statement)
        cursor.advance()
        name_token = cursor.current
        name = _identifier(cursor)
        if name not in OPTIONS:
            raise cursor.error(
                f"unknown option '{name}'; allowed: {', '.join(OPTIONS)}",
                name_token)
        if name in options:
            raise cursor.error(f"option '{name}' given twice", name_token)
        cursor.expect('=')
        if name in ('lambda', 'bad_lambda'):
            options[name] = _comma_list(cursor, _signed_rational)
        elif name == 'rf_cap':
            value_token = cursor.current
            value = _signed_rational(cursor)
            if value.denominator != 1 or value < 1:
                raise cursor.error('rf_cap must be a positive integer',
                                   value_token)
            options[name] = int(value)
        elif name == 'invariants':
            options[name] = _comma_list(cursor, _identifier)
            for invariant in options[name]:
                if invariant not in INVARIANT_NAMES:
                    raise cursor.error(
                        f"unknown invariant '{invariant}'", name_token)
        else:
            options[name] = _identifier(cursor)
            validate_value_in_enum(options[name], OrderKind)
        _end_of_statement(cursor)
    return options


def uses_parameter(text: str) -> bool:
    """Whether any non-option statement mentions the case parameter."""
    for statement in _split_statements(tokenize(text)):
        if statement and statement[0].text == 'option':
            continue
        if any(t.kind == 'ident' and t.text == PARAMETER for t in statement):
            return True
    return False


def parse_case(text: str, name: str = 'case',
               params: Optional[Dict[str, object]] = None) -> CaseInput:
    """Parse a case file into a validated `CaseInput`.

    Args:
        text (str): Case file contents.
        name (str): Name recorded in the reports.
        params (dict, optional): Parameter values, e.g. {'lambda': 2}. If
            missing, the first value of `option lambda` is used.
    """
    statements = _split_statements(tokenize(text))
    options = _parse_options(statements)
    params = dict(params or {})
    if PARAMETER not in params and options.get('lambda'):
        params[PARAMETER] = options['lambda'][0]

    ring = None
    env: Dict[str, Polynomial] = {}
    parts = {}
    for statement in statements:
        keyword = statement[0]
        if keyword.text == 'option':
            continue
        cursor = _statement_cursor(statement)
        cursor.advance()
        if keyword.text == 'ring':
            if ring is not None:
                raise cursor.error('ring declared twice', keyword)
            variables = _comma_list(cursor, _identifier)
            _end_of_statement(cursor)
            for variable in variables:
                if variable in KEYWORDS or variable == PARAMETER:
                    raise cursor.error(
                        f"'{variable}' is reserved and cannot be a variable",
                        keyword)
            try:
                ring = Ring(tuple(variables))
            except InputError as exc:
                raise cursor.error(str(exc), keyword)
            for key, value in params.items():
                env[key] = ring.const(Fraction(value))
            continue
        if ring is None:
            raise cursor.error("the case must start with 'ring'", keyword)
        expressions = _ExpressionParser(cursor, ring, env)
        if keyword.text == 'let':
            name_token = cursor.current
            binding = _identifier(cursor)
            if binding in ring.variables or binding in env or \
                    binding in KEYWORDS or binding == PARAMETER:
                raise cursor.error(f"'{binding}' is already defined",
                                   name_token)
            cursor.expect('=')
            env[binding] = expressions.expr()
            _end_of_statement(cursor)
        elif keyword.text in ('X', 'V', 'omega'):
            if keyword.text in parts:
                raise cursor.error(f'{keyword.text} given twice', keyword)
            cursor.expect(':')
            if keyword.text == 'X':
                parts['X'] = _comma_list(cursor, lambda c: expressions.expr())
            elif keyword.text == 'V':
                parts['V'] = expressions.expr()
            else:
                parts['omega'] = _parse_omega(cursor, expressions, ring)
            _end_of_statement(cursor)
        else:
            raise cursor.error(f"unknown statement '{keyword.text}'", keyword)

    if ring is None:
        raise InputError(f"case '{name}' has no ring declaration")
    for part in ('X', 'V', 'omega'):
        if part not in parts:
            raise InputError(f"case '{name}' has no {part}")
    case_options = CaseOptions(
        rf_cap=options.get('rf_cap'),
        lambda_values=tuple(options.get('lambda', ())),
        bad_lambda=tuple(options.get('bad_lambda', ())),
        invariants=tuple(options.get('invariants', ())),
        order=options.get('order'),
        parameters=tuple(sorted((k, Fraction(v)) for k, v in params.items())))
    return CaseInput(ring=ring, omega=parts['omega'],
                     X=Variety(ring, tuple(parts['X'])), f=parts['V'],
                     name=name, options=case_options)


def _parse_omega(cursor: _Cursor, expressions: _ExpressionParser,
                 ring: Ring) -> OneForm:
    token = cursor.current
    constructor = _identifier(cursor)
    if constructor not in ('coeffs', 'dplusfeta'):
        raise cursor.error(
            f"unknown 1-form constructor '{constructor}'; use coeffs or "
            'dplusfeta', token)
    cursor.expect('(')
    f = None
    if constructor == 'dplusfeta':
        f = expressions.expr()
        cursor.expect(';')
    coefficients = _comma_list(cursor, lambda c: expressions.expr())
    cursor.expect(')')
    if len(coefficients) != ring.n:
        raise cursor.error(
            f'{constructor} needs {ring.n} coefficients, got '
            f'{len(coefficients)}', token)
    form = OneForm(ring, tuple(coefficients))
    if f is not None:
        form = build_one_form_df_plus_f_eta(f, form)
    return form


def parse_case_sweep(text: str, name: str = 'case',
                     lambda_values: Optional[Sequence] = None,
                     default_lambda_values: Sequence = ()) -> List[CaseInput]:
    """One case per parameter value.

    Values come from `lambda_values`, else from `option lambda`, else from
    `default_lambda_values`; values listed in `option bad_lambda` are
    skipped. Cases without the parameter parse to a single case.
    """
    if not uses_parameter(text):
        return [parse_case(text, name)]
    options = _parse_options(_split_statements(tokenize(text)))
    values = list(lambda_values or options.get('lambda') or
                  default_lambda_values)
    if not values:
        raise InputError(f"case '{name}' uses '{PARAMETER}' but no value was "
                         'given')
    bad = set(options.get('bad_lambda', ()))
    cases = []
    for value in values:
        value = Fraction(value)
        if value in bad:
            logger.warning(f'{name}: skipping excluded value '
                           f'{PARAMETER} = {value}')
            continue
        cases.append(parse_case(text, f'{name} [{PARAMETER}={value}]',
                                {PARAMETER: value}))
    if not cases:
        raise InputError(f"case '{name}': every {PARAMETER} value is excluded")
    return cases
