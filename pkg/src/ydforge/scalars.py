"""Exact arithmetic in the rational function field Q(params).

A :class:`Scalar` is a pair ``num/den`` of integer-coefficient polynomials
backed by FLINT's ``fmpz_mpoly``.  Every constructor path normalises to a
canonical form, so structural equality is mathematical equality:

* ``gcd(num, den) == 1`` over ``Z[params]`` (integer content included),
* the leading coefficient of ``den`` is positive,
* zero is stored as ``0/1``.

Monomials are ordered graded-lexicographically over the sorted parameter
names.  Scalars built over different parameter sets coerce to the union.
"""

from __future__ import annotations

import ast
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Union

import flint

from .errors import DivisionByZero, EvaluationPole, ScalarParseError

ScalarLike = Union["Scalar", int, Fraction]

__all__ = [
    "Field",
    "Scalar",
    "ScalarLike",
    "parse_scalar",
    "substitute",
    "divisible_by",
    "format_poly",
    "parse_expression_tree",
]


@lru_cache(maxsize=None)
def _context(names: tuple[str, ...]) -> flint.fmpz_mpoly_ctx:
    return flint.fmpz_mpoly_ctx.get(tuple(sorted(set(names))), "deglex")


def _names(ctx: flint.fmpz_mpoly_ctx) -> tuple[str, ...]:
    return tuple(ctx.names())


class Scalar:
    """An element of Q(params) in canonical ``num/den`` form."""

    __slots__ = ("num", "den")

    def __init__(self, num: flint.fmpz_mpoly, den: flint.fmpz_mpoly | None = None) -> None:
        if den is None:
            self.num = num
            self.den = num.context().constant(1)
            return
        if den.is_zero():
            raise DivisionByZero("denominator is zero")
        if num.is_zero():
            self.num = num
            self.den = den.context().constant(1)
            return
        if not den.is_one():
            g = num.gcd(den)
            if not g.is_one():
                num = num / g
                den = den / g
            if den.leading_coefficient() < 0:
                num = -num
                den = -den
        self.num = num
        self.den = den

    @classmethod
    def _raw(cls, num: flint.fmpz_mpoly, den: flint.fmpz_mpoly) -> Scalar:
        out = object.__new__(cls)
        out.num = num
        out.den = den
        return out

    # construction helpers -------------------------------------------------
    @staticmethod
    def from_int(value: int, params: Iterable[str] = ()) -> Scalar:
        ctx = _context(tuple(params))
        return Scalar._raw(ctx.constant(int(value)), ctx.constant(1))

    @staticmethod
    def from_fraction(value: Fraction, params: Iterable[str] = ()) -> Scalar:
        ctx = _context(tuple(params))
        return Scalar(ctx.constant(value.numerator), ctx.constant(value.denominator))

    @staticmethod
    def coerce(value: ScalarLike, params: Iterable[str] = ()) -> Scalar:
        if isinstance(value, Scalar):
            return value
        if isinstance(value, bool):
            raise TypeError("bool is not a scalar")
        if isinstance(value, int):
            return Scalar.from_int(value, params)
        if isinstance(value, Fraction):
            return Scalar.from_fraction(value, params)
        if isinstance(value, str):
            return parse_scalar(value, params)
        raise TypeError(f"cannot convert {type(value).__name__} to Scalar")

    # context handling -----------------------------------------------------
    @property
    def params(self) -> tuple[str, ...]:
        return _names(self.num.context())

    def lift(self, params: Iterable[str]) -> Scalar:
        """Return the same value expressed over ``params`` (a superset)."""
        ctx = _context(tuple(set(params) | set(self.params)))
        if ctx is self.num.context():
            return self
        return Scalar._raw(self.num.project_to_context(ctx), self.den.project_to_context(ctx))

    def _pair(self, other: ScalarLike) -> tuple[Scalar, Scalar]:
        if not isinstance(other, Scalar):
            other = Scalar.coerce(other, self.params)
        if other.num.context() is self.num.context():
            return self, other
        union = set(self.params) | set(other.params)
        return self.lift(union), other.lift(union)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other: ScalarLike) -> Scalar:
        a, b = self._pair(other)
        if a.den.is_one() and b.den.is_one():
            return Scalar._raw(a.num + b.num, a.den)
        if a.den == b.den:
            return Scalar(a.num + b.num, a.den)
        return Scalar(a.num * b.den + b.num * a.den, a.den * b.den)

    __radd__ = __add__

    def __neg__(self) -> Scalar:
        return Scalar._raw(-self.num, self.den)

    def __sub__(self, other: ScalarLike) -> Scalar:
        a, b = self._pair(other)
        return a + (-b)

    def __rsub__(self, other: ScalarLike) -> Scalar:
        a, b = self._pair(other)
        return b + (-a)

    def __mul__(self, other: ScalarLike) -> Scalar:
        a, b = self._pair(other)
        if a.den.is_one() and b.den.is_one():
            return Scalar._raw(a.num * b.num, a.den)
        if a.num.is_zero() or b.num.is_zero():
            return Scalar._raw(a.num.context().constant(0), a.num.context().constant(1))
        return Scalar(a.num * b.num, a.den * b.den)

    __rmul__ = __mul__

    def inv(self) -> Scalar:
        if self.num.is_zero():
            raise DivisionByZero("inverse of zero")
        return Scalar(self.den, self.num)

    def __truediv__(self, other: ScalarLike) -> Scalar:
        a, b = self._pair(other)
        return a * b.inv()

    def __rtruediv__(self, other: ScalarLike) -> Scalar:
        a, b = self._pair(other)
        return b * a.inv()

    def __pow__(self, exponent: int) -> Scalar:
        if not isinstance(exponent, int):
            raise TypeError("only integer exponents are supported")
        if exponent < 0:
            return self.inv() ** (-exponent)
        return Scalar._raw(self.num**exponent, self.den**exponent)

    # predicates -----------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return Fraction(int(self.num.leading_coefficient()) if not self.num.is_zero() else 0,
                        int(self.den.leading_coefficient()))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = Scalar.coerce(other, self.params)
        if not isinstance(other, Scalar):
            return NotImplemented
        a, b = self._pair(other)
        return a.num == b.num and a.den == b.den

    def __hash__(self) -> int:
        return hash(str(self))

    # text -----------------------------------------------------------------
    def __str__(self) -> str:
        num = format_poly(self.num)
        if self.den.is_one():
            return num
        if len(self.num) > 1:
            num = f"({num})"
        den = format_poly(self.den)
        if not self.den.is_constant():
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self) -> str:
        return f"Scalar('{self}')"


def format_poly(poly: flint.fmpz_mpoly) -> str:
    """Render a polynomial without spaces, terms in descending deglex order."""
    if poly.is_zero():
        return "0"
    names = poly.context().names()
    terms = sorted(poly.to_dict().items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)
    out: list[str] = []
    for index, (exps, coeff) in enumerate(terms):
        coeff = int(coeff)
        factors = [name if e == 1 else f"{name}^{e}" for name, e in zip(names, exps) if e]
        mono = "*".join(factors)
        sign = "-" if coeff < 0 else ("+" if index else "")
        mag = abs(coeff)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        out.append(sign + body)
    return "".join(out)


class Field:
    """The field Q(params); a light factory for scalars over fixed names."""

    def __init__(self, params: Iterable[str] = ()) -> None:
        self.params = tuple(sorted(set(params)))
        self.ctx = _context(self.params)
        self.zero = Scalar._raw(self.ctx.constant(0), self.ctx.constant(1))
        self.one = Scalar._raw(self.ctx.constant(1), self.ctx.constant(1))

    def __call__(self, value: ScalarLike | str) -> Scalar:
        if isinstance(value, Scalar):
            return value.lift(self.params)
        if isinstance(value, str):
            return parse_scalar(value, self.params)
        return Scalar.coerce(value, self.params)

    def gen(self, name: str) -> Scalar:
        if name not in self.params:
            raise KeyError(name)
        poly = self.ctx.gens()[self.params.index(name)]
        return Scalar._raw(poly, self.ctx.constant(1))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and other.params == self.params

    def __hash__(self) -> int:
        return hash(self.params)

    def __repr__(self) -> str:
        return f"Field({list(self.params)!r})"


# parsing ------------------------------------------------------------------

def parse_expression_tree(text: str) -> ast.expr:
    """Parse ``text`` (``^`` or ``**`` for powers) into a Python AST node."""
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ScalarParseError(f"cannot parse {text!r}: {exc.msg}") from None
    return tree.body


def evaluate_tree(
    node: ast.expr,
    symbol: Callable[[str], object],
    constant: Callable[[int], object],
    divide: Callable[[object, object], object],
    power: Callable[[object, int], object],
) -> object:
    """Evaluate an arithmetic AST with caller-supplied leaf and operator semantics."""

    def walk(n: ast.expr) -> object:
        if isinstance(n, ast.Constant) and isinstance(n.value, int) and not isinstance(n.value, bool):
            return constant(n.value)
        if isinstance(n, ast.Name):
            return symbol(n.id)
        if isinstance(n, ast.UnaryOp) and isinstance(n.op, (ast.USub, ast.UAdd)):
            value = walk(n.operand)
            return -value if isinstance(n.op, ast.USub) else value  # type: ignore[operator]
        if isinstance(n, ast.BinOp):
            if isinstance(n.op, ast.Pow):
                exponent = n.right
                sign = 1
                if isinstance(exponent, ast.UnaryOp) and isinstance(exponent.op, ast.USub):
                    sign, exponent = -1, exponent.operand
                if not (isinstance(exponent, ast.Constant) and isinstance(exponent.value, int)):
                    raise ScalarParseError("exponents must be integer literals")
                return power(walk(n.left), sign * exponent.value)
            left, right = walk(n.left), walk(n.right)
            if isinstance(n.op, ast.Add):
                return left + right  # type: ignore[operator]
            if isinstance(n.op, ast.Sub):
                return left - right  # type: ignore[operator]
            if isinstance(n.op, ast.Mult):
                return left * right  # type: ignore[operator]
            if isinstance(n.op, ast.Div):
                return divide(left, right)
        raise ScalarParseError(f"unsupported syntax: {ast.dump(n)}")

    return walk(node)


def parse_scalar(text: str, params: Iterable[str] | None = None) -> Scalar:
    """Parse a rational expression such as ``(s^4-1)/(s^2)``.

    When ``params`` is given, identifiers outside it are rejected; otherwise
    the field is inferred from the identifiers that occur.
    """
    tree = parse_expression_tree(text.strip())
    found = {n.id for n in ast.walk(tree) if isinstance(n, ast.Name)}
    if params is None:
        field = Field(found)
    else:
        unknown = found - set(params)
        if unknown:
            raise ScalarParseError(f"unknown parameter(s) {sorted(unknown)} in {text!r}")
        field = Field(params)

    def power(base: object, exponent: int) -> Scalar:
        return base**exponent  # type: ignore[operator,no-any-return]

    def divide(a: object, b: object) -> Scalar:
        return a / b  # type: ignore[operator,no-any-return]

    result = evaluate_tree(tree, field.gen, field.__call__, divide, power)
    assert isinstance(result, Scalar)
    return result.lift(field.params)


# substitution and divisibility ------------------------------------------

def _eval_poly(poly: flint.fmpz_mpoly, values: Mapping[str, Scalar], target: Field) -> Scalar:
    names = poly.context().names()
    gens = {name: (values[name] if name in values else target.gen(name)) for name in names}
    total = target.zero
    powers: dict[tuple[str, int], Scalar] = {}
    for exps, coeff in poly.to_dict().items():
        term = target(int(coeff))
        for name, e in zip(names, exps):
            if e:
                key = (name, e)
                if key not in powers:
                    powers[key] = gens[name] ** int(e)
                term = term * powers[key]
        total = total + term
    return total


def substitute(x: Scalar, values: Mapping[str, ScalarLike | str]) -> Scalar:
    """Substitute parameters by scalars; raise :class:`EvaluationPole` on a pole."""
    converted = {name: Scalar.coerce(v) if not isinstance(v, str) else parse_scalar(v) for name, v in values.items()}
    remaining = set(x.params) - set(converted)
    for v in converted.values():
        remaining |= set(v.params)
    target = Field(remaining)
    converted = {k: v.lift(target.params) for k, v in converted.items()}
    num = _eval_poly(x.num, converted, target)
    den = _eval_poly(x.den, converted, target)
    if den.is_zero():
        raise EvaluationPole(f"substitution {dict(values)} sends the denominator of {x} to zero")
    return num / den


def divisible_by(x: Scalar, p: Scalar) -> bool:
    """True when the polynomial ``p`` divides the numerator of ``x`` over Q."""
    if not p.den.is_constant():
        raise ValueError("divisor must be a polynomial")
    a, b = x._pair(p)
    if b.is_zero():
        return a.is_zero()
    if a.num.is_zero():
        return True
    _, prim = b.num.primitive()
    g = a.num.gcd(prim)
    _, g_prim = g.primitive()
    return g_prim == prim or g_prim == -prim
