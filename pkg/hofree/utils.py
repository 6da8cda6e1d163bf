from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from hofree.exceptions import ParseError


# ++++++++++ command callbacks ++++++++++++++
def string_keys_to_dict(key_string, callback):
    return dict.fromkeys(key_string.split(), callback)


def dict_merge(*dicts):
    merged = {}
    for d in dicts:
        merged.update(d)
    return merged


# ++++++++++ exact scalars ++++++++++++++
def to_fraction(value) -> Fraction:
    """Parse ints, Fractions and "p/q" strings; floats are rejected."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ParseError(f'not an exact scalar: {value!r}')
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError(f'not an exact scalar: {value!r}') from e
    raise ParseError(f'not an exact scalar: {value!r}')


def fraction_str(value) -> str:
    value = Fraction(value)
    return f'{value.numerator}/{value.denominator}'


def pretty_fraction(value) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f'{value.numerator}/{value.denominator}'


# ++++++++++ counting helpers ++++++++++++++
@lru_cache(maxsize=None)
def catalan(n: int) -> int:
    if n < 0:
        return 0
    return comb(2 * n, n) // (n + 1)


def annular_count(m: int, n: int) -> int:
    """Number of annular non-crossing permutations on circles of sizes m, n."""
    if m < 1 or n < 1:
        return 0
    value = Fraction(2 * m * n, m + n) * comb(2 * m - 1, m) * comb(2 * n - 1, n)
    return int(value)


def multinomial_class_size(diagram) -> int:
    """Size of the conjugacy class of S_n with the given cycle type."""
    n = sum(diagram)
    denominator = 1
    for part in set(diagram):
        multiplicity = diagram.count(part)
        denominator *= part ** multiplicity * factorial(multiplicity)
    return factorial(n) // denominator


def parse_int_list(text: str, name: str = 'profile'):
    try:
        values = tuple(int(x) for x in text.replace(' ', '').split(',') if x)
    except ValueError as e:
        raise ParseError(f'invalid {name}: {text!r}') from e
    if not values:
        raise ParseError(f'empty {name}')
    return values
