"""
Infix formula parser for expressions in t

Grammar (whitespace ignored):

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := ('-' | '+') unary | power
    power   := atom ('^' unary)?          # right-associative, binds tighter than unary minus
    atom    := NUMBER | NAME | FUNC '(' expr ')' | '(' expr ')'

Names: t, pi, e, i (imaginary unit). Functions: exp, sin, cos.
`**` is accepted as a synonym for `^`. Exponents must fold to integers,
except that e^x is read as exp(x).
"""
import math
import re
from dataclasses import dataclass
from fractions import Fraction

from core import expr as ex
from core.errors import ParseError, UnknownIdentifierError
from core.numbers import ComplexRational

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>\*\*|[-+*/^()])
""", re.VERBOSE)

FUNCTIONS = {'exp': ex.exp, 'sin': ex.sin, 'cos': ex.cos}

E_CONSTANT = ex.const(math.e)
PI_CONSTANT = ex.const(math.pi)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


def tokenize(source):
    tokens = []
    pos = 0
    while pos < len(source):
        match = _TOKEN.match(source, pos)
        if match is None:
            raise ParseError(f"unexpected character {source[pos]!r}", pos)
        kind = match.lastgroup
        text = match.group()
        if kind != 'ws':
            if text == '**':
                text = '^'
            tokens.append(Token(kind, text, pos))
        pos = match.end()
    tokens.append(Token('end', '', len(source)))
    return tokens


class Parser:
    """Recursive-descent parser over a token list"""
    def __init__(self, source, allow_transcendental=True):
        self.source = source
        self.tokens = tokenize(source)
        self.index = 0
        self.allow_transcendental = allow_transcendental

    @property
    def current(self):
        return self.tokens[self.index]

    def _advance(self):
        token = self.current
        self.index += 1
        return token

    def _accept(self, text):
        if self.current.kind == 'op' and self.current.text == text:
            return self._advance()
        return None

    def _expect(self, text):
        token = self._accept(text)
        if token is None:
            raise ParseError(f"expected '{text}'", self.current.position)
        return token

    def parse(self):
        if self.current.kind == 'end':
            raise ParseError("empty formula", 0)
        result = self._expr()
        if self.current.kind != 'end':
            raise ParseError(f"unexpected '{self.current.text}'", self.current.position)
        return result

    def _expr(self):
        left = self._term()
        while True:
            if self._accept('+'):
                left = ex.add(left, self._term())
            elif self._accept('-'):
                left = ex.sub(left, self._term())
            else:
                return left

    def _term(self):
        left = self._unary()
        while True:
            if self._accept('*'):
                left = ex.mul(left, self._unary())
            elif self._accept('/'):
                left = ex.div(left, self._unary())
            else:
                return left

    def _unary(self):
        if self._accept('-'):
            return ex.neg(self._unary())
        if self._accept('+'):
            return self._unary()
        return self._power()

    def _power(self):
        base = self._atom()
        if not self._accept('^'):
            return base
        position = self.current.position
        exponent = self._unary()
        if base is E_CONSTANT:
            return self._function('exp', exponent, position)
        value = exponent.value if isinstance(exponent, ex.Constant) else None
        if (isinstance(value, ComplexRational) and value.im == 0
                and value.re.denominator == 1):
            return ex.power(base, int(value.re))
        raise ParseError("exponent must be an integer constant", position)

    def _function(self, name, argument, position):
        if not self.allow_transcendental:
            raise ParseError(f"transcendental function '{name}' not enabled", position)
        return FUNCTIONS[name](argument)

    def _atom(self):
        token = self.current
        if token.kind == 'number':
            self._advance()
            return ex.const(Fraction(token.text))
        if token.kind == 'name':
            self._advance()
            return self._name(token)
        if self._accept('('):
            inner = self._expr()
            self._expect(')')
            return inner
        if token.kind == 'end':
            raise ParseError("unexpected end of input", token.position)
        raise ParseError(f"unexpected '{token.text}'", token.position)

    def _name(self, token):
        name = token.text
        if name == 't':
            return ex.T
        if name == 'i':
            return ex.I
        if name == 'pi':
            return PI_CONSTANT
        if name == 'e':
            return E_CONSTANT
        if name in FUNCTIONS:
            self._expect('(')
            argument = self._expr()
            self._expect(')')
            return self._function(name, argument, token.position)
        raise UnknownIdentifierError(name, token.position)


def parse(source, allow_transcendental=True):
    """Parse a formula over t into an Expr"""
    return Parser(source, allow_transcendental).parse()
