"""Algebras given by generators and rewrite rules, turned into structure constants.

Words are tuples of generator indices.  The word order is graded
lexicographic: total weighted degree first, then lexicographic comparison in
the stated generator order (earlier generators are smaller).  Every rule
must rewrite its left-hand side into strictly smaller words, and local
confluence is checked on all overlap and inclusion ambiguities up to the
degree cap before anything else is built.  No completion is attempted.
"""

from __future__ import annotations

import ast
import itertools
import json
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Mapping, Sequence

from .errors import (
    DegreeCapExceeded,
    MissingGeneratorData,
    NonConfluent,
    NonTerminating,
    ScalarParseError,
)
from .hopf_core import HopfData, LinMap, TVec, Vec, add_into, add_term
from .scalars import Field, Scalar, evaluate_tree, parse_expression_tree, parse_scalar

Word = tuple[int, ...]
Combination = dict[Word, Scalar]

__all__ = [
    "Rule",
    "Presentation",
    "NormalFormAlgebra",
    "normal_form",
    "enumerate_basis",
    "structure_constants",
    "check_confluence",
    "extend_bilinear_form",
    "presentation_from_dict",
]


@dataclass(frozen=True)
class Rule:
    lhs: Word
    rhs: Mapping[Word, Scalar]


@dataclass(eq=False)
class Presentation:
    """Generators (smallest first), their degrees, rewrite rules and a degree cap."""

    generators: tuple[str, ...]
    degrees: tuple[int, ...]
    rules: tuple[Rule, ...]
    field: Field
    degree_cap: int | None = None
    aliases: Mapping[str, str] = field(default_factory=dict)
    _nf_cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if len(self.generators) != len(self.degrees) or len(set(self.generators)) != len(self.generators):
            raise ValueError("generators must be distinct and carry one degree each")
        if any(d < 1 for d in self.degrees):
            raise ValueError("generator degrees must be positive")
        self._by_lhs: dict[Word, Rule] = {}
        for rule in self.rules:
            if rule.lhs in self._by_lhs:
                raise ValueError(f"two rules share the left-hand side {self.word_label(rule.lhs)}")
            for word in rule.rhs:
                if self.word_key(word) >= self.word_key(rule.lhs):
                    raise ValueError(
                        f"rule {self.word_label(rule.lhs)} -> ... does not decrease the word order at {self.word_label(word)}"
                    )
            self._by_lhs[rule.lhs] = rule
        self._lengths = sorted({len(r.lhs) for r in self.rules})

    # words ------------------------------------------------------------------
    def degree(self, word: Word) -> int:
        return sum(self.degrees[i] for i in word)

    def word_key(self, word: Word) -> tuple[int, Word]:
        return (self.degree(word), word)

    def word_label(self, word: Word) -> str:
        if not word:
            return "1"
        parts = []
        for gen, run in itertools.groupby(word):
            count = len(list(run))
            name = self.generators[gen]
            parts.append(name if count == 1 else f"{name}^{count}")
        return "".join(parts)

    def parse_word(self, text: str) -> Word:
        """Parse ``a*b*b`` (or ``1`` for the empty word) into a word."""
        text = text.strip()
        if text in ("", "1"):
            return ()
        out = []
        for name in text.split("*"):
            name = name.strip()
            if name not in self.generators:
                raise ScalarParseError(f"unknown generator {name!r}")
            out.append(self.generators.index(name))
        return tuple(out)

    def reducible_at(self, word: Word) -> tuple[int, Rule] | None:
        for pos in range(len(word)):
            for length in self._lengths:
                rule = self._by_lhs.get(word[pos : pos + length])
                if rule is not None and pos + length <= len(word):
                    return pos, rule
        return None

    def is_irreducible(self, word: Word) -> bool:
        return self.reducible_at(word) is None

    def _check_cap(self, word: Word) -> None:
        if self.degree_cap is not None and self.degree(word) > self.degree_cap:
            raise DegreeCapExceeded(f"word {self.word_label(word)} exceeds degree cap {self.degree_cap}")

    def normal_form_word(self, word: Word) -> Combination:
        cached = self._nf_cache.get(word)
        if cached is not None:
            return cached
        self._check_cap(word)
        hit = self.reducible_at(word)
        if hit is None:
            result: Combination = {word: self.field.one}
        else:
            pos, rule = hit
            prefix, suffix = word[:pos], word[pos + len(rule.lhs) :]
            result = {}
            for rhs_word, coeff in rule.rhs.items():
                add_into(result, self.normal_form_word(prefix + rhs_word + suffix), coeff)
        self._nf_cache[word] = result
        return result

    def normal_form(self, combo: Mapping[Word, Scalar]) -> Combination:
        out: Combination = {}
        for word, coeff in combo.items():
            add_into(out, self.normal_form_word(word), coeff)
        return out


def normal_form(P: Presentation, w: Word | Mapping[Word, Scalar]) -> Combination:
    """Fully reduce a word or a linear combination of words."""
    if isinstance(w, tuple):
        return P.normal_form_word(w)
    return P.normal_form(w)


def _one_step(P: Presentation, word: Word, pos: int, rule: Rule) -> Combination:
    prefix, suffix = word[:pos], word[pos + len(rule.lhs) :]
    return {prefix + w + suffix: c for w, c in rule.rhs.items()}


def check_confluence(P: Presentation) -> list[tuple[Word, Combination]]:
    """Return the unresolved ambiguities as ``(word, difference)`` pairs.

    Overlap ambiguities ``u·v·w`` (``uv`` and ``vw`` both left-hand sides)
    and inclusion ambiguities are each reduced along the two competing first
    steps and then fully; ambiguities above the degree cap are skipped.
    """
    failures: list[tuple[Word, Combination]] = []
    rules = sorted(P.rules, key=lambda r: P.word_key(r.lhs))
    for r1, r2 in itertools.product(rules, repeat=2):
        candidates: list[tuple[Word, int, int]] = []
        l1, l2 = r1.lhs, r2.lhs
        for overlap in range(1, min(len(l1), len(l2))):
            if l1[-overlap:] == l2[:overlap]:
                candidates.append((l1 + l2[overlap:], 0, len(l1) - overlap))
        if r1 is not r2 and len(l2) < len(l1):
            for pos in range(len(l1) - len(l2) + 1):
                if l1[pos : pos + len(l2)] == l2:
                    candidates.append((l1, 0, pos))
        for word, pos1, pos2 in candidates:
            if P.degree_cap is not None and P.degree(word) > P.degree_cap:
                continue
            first = P.normal_form(_one_step(P, word, pos1, r1))
            second = P.normal_form(_one_step(P, word, pos2, r2))
            diff = dict(first)
            for w, c in second.items():
                add_term(diff, w, -c)
            if diff:
                failures.append((word, diff))
    return failures


def enumerate_basis(P: Presentation, bound: int = 4096) -> list[Word]:
    """All irreducible words of degree at most the cap, in word order."""
    level: list[Word] = [()]
    found: list[Word] = [()]
    while level:
        nxt: list[Word] = []
        for word in level:
            for gen in range(len(P.generators)):
                candidate = word + (gen,)
                if P.degree_cap is not None and P.degree(candidate) > P.degree_cap:
                    continue
                if any(candidate[-length:] in P._by_lhs for length in P._lengths if length <= len(candidate)):
                    continue
                nxt.append(candidate)
        found.extend(nxt)
        if len(found) > bound:
            raise NonTerminating(f"basis enumeration exceeded {bound} words")
        level = nxt
    return sorted(found, key=P.word_key)


# noncommutative polynomials used while parsing element expressions ---------

class _NC:
    __slots__ = ("terms", "field")

    def __init__(self, terms: Combination, field_: Field) -> None:
        self.terms = terms
        self.field = field_

    def _wrap(self, other: Any) -> _NC:
        if isinstance(other, _NC):
            return other
        return _NC({(): self.field(other)}, self.field)

    def __add__(self, other: Any) -> _NC:
        out = dict(self.terms)
        add_into(out, self._wrap(other).terms)
        return _NC(out, self.field)

    __radd__ = __add__

    def __neg__(self) -> _NC:
        return _NC({w: -c for w, c in self.terms.items()}, self.field)

    def __sub__(self, other: Any) -> _NC:
        return self + (-self._wrap(other))

    def __rsub__(self, other: Any) -> _NC:
        return self._wrap(other) + (-self)

    def __mul__(self, other: Any) -> _NC:
        other = self._wrap(other)
        out: Combination = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                add_term(out, w1 + w2, c1 * c2)
        return _NC(out, self.field)

    def __rmul__(self, other: Any) -> _NC:
        return self._wrap(other) * self

    def scalar(self) -> Scalar:
        if any(w for w in self.terms):
            raise ScalarParseError("division by an element that is not a scalar")
        return self.terms.get((), self.field.zero)


@dataclass(eq=False)
class NormalFormAlgebra:
    """A confluent presentation with its basis and Hopf data on generators.

    ``comul``, ``counit`` and ``antipode`` map generator names to element
    expressions: ``comul[g]`` is a list of ``(left, right)`` expression pairs
    whose tensors are summed, ``counit[g]`` a scalar expression and
    ``antipode[g]`` an element expression.  ``basis_key`` optionally
    reorders the enumerated basis (it receives words).
    """

    presentation: Presentation
    comul: Mapping[str, Sequence[tuple[str, str]]] = field(default_factory=dict)
    counit: Mapping[str, str] = field(default_factory=dict)
    antipode: Mapping[str, str] | None = None
    basis_key: Callable[[Word], Any] | None = None
    bound: int = 4096

    def __post_init__(self) -> None:
        failures = check_confluence(self.presentation)
        if failures:
            word, diff = failures[0]
            P = self.presentation
            detail = ", ".join(f"({c})*{P.word_label(w)}" for w, c in sorted(diff.items()))
            raise NonConfluent(f"ambiguity {P.word_label(word)} does not resolve: difference {detail}")
        words = enumerate_basis(self.presentation, self.bound)
        if self.basis_key is not None:
            words = sorted(words, key=self.basis_key)
        self.basis_words: list[Word] = words
        self.index: dict[Word, int] = {w: i for i, w in enumerate(words)}

    @property
    def field(self) -> Field:
        return self.presentation.field

    @property
    def labels(self) -> list[str]:
        return [self.presentation.word_label(w) for w in self.basis_words]

    def to_vector(self, combo: Mapping[Word, Scalar]) -> Vec:
        out: Vec = {}
        for word, coeff in self.presentation.normal_form(combo).items():
            add_term(out, self.index[word], coeff)
        return out

    def parse_element(self, text: str) -> Vec:
        """Parse an element expression such as ``k*1 - k*g`` or ``q^-1*a*c``."""
        P = self.presentation
        field_ = self.field

        def symbol(name: str) -> _NC:
            if name in P.generators:
                return _NC({(P.generators.index(name),): field_.one}, field_)
            if name in P.aliases:
                return _NC({(): parse_scalar(P.aliases[name], field_.params)}, field_)
            if name in field_.params:
                return _NC({(): field_.gen(name)}, field_)
            raise ScalarParseError(f"unknown symbol {name!r}")

        def constant(value: int) -> _NC:
            return _NC({(): field_(value)}, field_)

        def divide(a: object, b: object) -> _NC:
            assert isinstance(a, _NC) and isinstance(b, _NC)
            return a * _NC({(): b.scalar().inv()}, field_)

        def power(base: object, exponent: int) -> _NC:
            assert isinstance(base, _NC)
            if exponent < 0:
                return _NC({(): base.scalar() ** exponent}, field_)
            out = _NC({(): field_.one}, field_)
            for _ in range(exponent):
                out = out * base
            return out

        value = evaluate_tree(parse_expression_tree(text), symbol, constant, divide, power)
        assert isinstance(value, _NC)
        return self.to_vector(value.terms)

    def parse_scalar(self, text: str) -> Scalar:
        value = self.parse_element(text)
        if any(self.basis_words[i] for i in value):
            raise ScalarParseError(f"{text!r} is not a scalar")
        return value.get(self.index[()], self.field.zero)


def _word_products(A: NormalFormAlgebra) -> list[list[Vec | None]]:
    P = A.presentation
    n = len(A.basis_words)
    table: list[list[Vec | None]] = [[None] * n for _ in range(n)]
    for i, wi in enumerate(A.basis_words):
        for j, wj in enumerate(A.basis_words):
            word = wi + wj
            if P.degree_cap is not None and P.degree(word) > P.degree_cap:
                continue
            table[i][j] = A.to_vector({word: A.field.one})
    return table


def structure_constants(A: NormalFormAlgebra) -> HopfData:
    """Multiplication by normal forms; Δ, ε extended multiplicatively, the antipode anti-multiplicatively."""
    P = A.presentation
    n = len(A.basis_words)
    one = A.field.one
    mul = _word_products(A)
    unit = {A.index[()]: one}
    for name in P.generators:
        if name not in A.comul or name not in A.counit:
            raise MissingGeneratorData(f"coproduct or counit missing for generator {name!r}")
        if A.antipode is not None and name not in A.antipode:
            raise MissingGeneratorData(f"antipode missing for generator {name!r}")

    def mul_vec(u: Mapping[int, Scalar], v: Mapping[int, Scalar]) -> Vec:
        out: Vec = {}
        for i, a in u.items():
            for j, b in v.items():
                prod = mul[i][j]
                if prod is None:
                    raise DegreeCapExceeded(f"product {A.labels[i]}*{A.labels[j]} exceeds the cap")
                add_into(out, prod, a * b)
        return out

    gen_comul: list[TVec] = []
    gen_counit: list[Scalar] = []
    for name in P.generators:
        delta: TVec = {}
        for left, right in A.comul[name]:
            lv, rv = A.parse_element(left), A.parse_element(right)
            for i, a in lv.items():
                for j, b in rv.items():
                    add_term(delta, (i, j), a * b)
        gen_comul.append(delta)
        gen_counit.append(A.parse_scalar(A.counit[name]))

    comul: list[TVec] = []
    counit: list[Scalar] = []
    for word in A.basis_words:
        delta = {(A.index[()], A.index[()]): one}
        eps = one
        for gen in word:
            nxt: TVec = {}
            for (i1, j1), c1 in delta.items():
                for (i2, j2), c2 in gen_comul[gen].items():
                    left = mul_vec({i1: one}, {i2: one})
                    right = mul_vec({j1: one}, {j2: one})
                    for a, ca in left.items():
                        for b, cb in right.items():
                            add_term(nxt, (a, b), c1 * c2 * ca * cb)
            delta = nxt
            eps = eps * gen_counit[gen]
        comul.append(delta)
        counit.append(eps)

    antipode: list[Vec] | None = None
    if A.antipode is not None:
        gen_S = [A.parse_element(A.antipode[name]) for name in P.generators]
        antipode = []
        for word in A.basis_words:
            image: Vec = dict(unit)
            for gen in word:
                image = mul_vec(gen_S[gen], image)
            antipode.append(image)

    degrees = [P.degree(w) for w in A.basis_words] if P.degree_cap is not None else None
    return HopfData(
        basis=A.labels,
        field=A.field,
        mul=mul,
        unit=unit,
        comul=comul,
        counit=counit,
        antipode=antipode,
        degrees=degrees,
        degree_cap=P.degree_cap,
    )


def extend_bilinear_form(
    A: NormalFormAlgebra,
    H: HopfData,
    generator_values: Mapping[tuple[str, str], Scalar],
) -> LinMap:
    """Extend a form given on generator pairs to all basis pairs.

    Uses ``R(1⊗v) = ε(v)``, ``R(u⊗1) = ε(u)``, the product rule in the first
    slot ``R(xw⊗v) = R(x⊗v₁)R(w⊗v₂)`` and, for a generator ``x``, the rule
    in the second slot ``R(x⊗yw) = R(x₁⊗w)R(x₂⊗y)``.  Missing generator
    pairs count as zero.  Whether the result is coquasitriangular is a
    separate question answered by :func:`ydforge.coqt.check_coqt`.
    """
    P = A.presentation
    zero = A.field.zero
    values = {
        (P.generators.index(a), P.generators.index(b)): A.field(v) for (a, b), v in generator_values.items()
    }
    unknown = {k for pair in generator_values for k in pair} - set(P.generators)
    if unknown:
        raise MissingGeneratorData(f"unknown generators {sorted(unknown)}")
    memo: dict[tuple[int, int], Scalar] = {}
    words = A.basis_words

    def R(i: int, j: int) -> Scalar:
        key = (i, j)
        if key in memo:
            return memo[key]
        wi, wj = words[i], words[j]
        if not wi:
            value = H.counit[j]
        elif not wj:
            value = H.counit[i]
        elif len(wi) > 1:
            head, tail = A.index[wi[:1]], A.index[wi[1:]]
            value = zero
            for (a, b), c in H.comul[j].items():
                value = value + c * R(head, a) * R(tail, b)
        elif len(wj) == 1:
            value = values.get((wi[0], wj[0]), zero)
        else:
            head, tail = A.index[wj[:1]], A.index[wj[1:]]
            value = zero
            for (a, b), c in H.comul[i].items():
                value = value + c * R(a, tail) * R(b, head)
        memo[key] = value
        return value

    images: dict[tuple[int, ...], TVec] = {}
    for i in range(H.dim):
        for j in range(H.dim):
            value = R(i, j)
            if not value.is_zero():
                images[(i, j)] = {(): value}
    return LinMap(H.dim, 2, 0, images)


# JSON presentation files -----------------------------------------------------

def presentation_from_dict(data: Mapping[str, Any]) -> NormalFormAlgebra:
    """Build a :class:`NormalFormAlgebra` from the JSON presentation format.

    ``{"params": [...], "aliases": {"q": "s^2"}, "generators": [["a", 1], ...],
    "degree_cap": 4 | "none", "rules": [{"lhs": "b*a", "rhs": [["a*b", "q"]]}],
    "comul": {"a": [["a", "a"], ["b", "c"]]}, "counit": {"a": "1"},
    "antipode": {"a": "d"}}``; generators are listed smallest first.
    """
    params = list(data.get("params", []))
    field_ = Field(params)
    aliases = dict(data.get("aliases", {}))
    generators = tuple(str(g[0]) for g in data["generators"])
    degrees = tuple(int(g[1]) for g in data["generators"])
    cap = data.get("degree_cap", "none")
    cap_value = None if cap in (None, "none") else int(cap)
    skeleton = Presentation(generators, degrees, (), field_, cap_value, aliases)

    def coefficient(text: str) -> Scalar:
        expanded = str(text)
        for alias, value in aliases.items():
            expanded = _substitute_name(expanded, alias, value)
        return parse_scalar(expanded, field_.params)

    rules = []
    for entry in data["rules"]:
        lhs = skeleton.parse_word(entry["lhs"])
        rhs: Combination = {}
        for word_text, coeff in entry.get("rhs", []):
            add_term(rhs, skeleton.parse_word(word_text), coefficient(coeff))
        rules.append(Rule(lhs, rhs))
    presentation = Presentation(generators, degrees, tuple(rules), field_, cap_value, aliases)
    comul = {g: [tuple(pair) for pair in pairs] for g, pairs in data.get("comul", {}).items()}
    return NormalFormAlgebra(
        presentation,
        comul=comul,  # type: ignore[arg-type]
        counit=dict(data.get("counit", {})),
        antipode=dict(data["antipode"]) if data.get("antipode") is not None else None,
    )


def _substitute_name(text: str, name: str, value: str) -> str:
    tree = parse_expression_tree(text)

    class Swap(ast.NodeTransformer):
        def visit_Name(self, node: ast.Name) -> ast.AST:
            if node.id == name:
                return parse_expression_tree(value)
            return node

    return ast.unparse(Swap().visit(tree)).replace("**", "^")


def presentation_from_json(text: str) -> NormalFormAlgebra:
    return presentation_from_dict(json.loads(text))
