import pytest

from core import expr as ex
from core.errors import ParseError, UnknownIdentifierError
from core.parser import parse, tokenize


def test_reciprocal_structure():
    e = parse('1/(2*t+3)')
    assert e == ex.Div(ex.const(1), ex.Add(ex.Mul(ex.const(2), ex.T), ex.const(3)))


def test_variable():
    assert parse('t') is ex.T


@pytest.mark.parametrize('source, offset', [('1/(', 3), ('2*', 2), ('(t+1', 4), ('t $ 2', 2)])
def test_syntax_errors_carry_offsets(source, offset):
    with pytest.raises(ParseError) as info:
        parse(source)
    assert info.value.position == offset


def test_empty_formula():
    with pytest.raises(ParseError):
        parse('   ')


def test_unknown_identifier():
    with pytest.raises(UnknownIdentifierError) as info:
        parse('2*s + 1')
    assert info.value.name == 's'
    assert info.value.position == 2


def test_power_is_right_associative_and_binds_tighter_than_minus():
    assert ex.evaluate(parse('2^3^2'), 0.0) == 512
    assert ex.evaluate(parse('-t^2'), 3.0) == -9
    assert ex.evaluate(parse('t^-1'), 4.0) == 0.25
    assert ex.evaluate(parse('t**2'), 3.0) == 9


def test_exponent_must_be_an_integer():
    with pytest.raises(ParseError):
        parse('t^(1/2)')
    with pytest.raises(ParseError):
        parse('t^t')


def test_decimal_literals_are_exact():
    e = parse('0.1 + 0.2')
    assert isinstance(e, ex.Constant) and e.exact
    assert e == parse('3/10')


def test_names_and_functions():
    assert parse('i') == ex.I
    assert parse('e^t') == ex.exp(ex.T)
    assert isinstance(parse('sin(t)'), ex.Sin)
    with pytest.raises(ParseError):
        parse('cos(t)', allow_transcendental=False)


def test_tokenizer_drops_whitespace():
    kinds = [token.kind for token in tokenize(' 1 +t ')]
    assert kinds == ['number', 'op', 'name', 'end']
