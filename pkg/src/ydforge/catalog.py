"""Ready-made coquasitriangular Hopf algebras and their reference tables.

Each builder returns a :class:`CatalogEntry` bundling the Hopf data, the
form ``R`` and, for presented algebras, the :class:`NormalFormAlgebra` used to
parse element expressions.  Reference tables for the transmuted structures
live in ``data/golden.json`` with one citation per entry.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Any, Mapping

from .errors import BadDimension
from .hopf_core import HopfData, LinMap, TVec, Vec, add_term, form_from_function
from .presentations import (
    NormalFormAlgebra,
    Presentation,
    Rule,
    Word,
    _substitute_name,
    extend_bilinear_form,
    structure_constants,
)
from .scalars import Field, Scalar, parse_scalar

__all__ = [
    "CatalogEntry",
    "build_sweedler",
    "build_en",
    "build_slq2",
    "build_suzuki",
    "build_group_algebra",
    "build_dual_group_algebra",
    "load_golden",
    "GoldenCell",
    "golden_key",
    "golden_cells",
    "golden_S_bar",
    "CATALOG_NAMES",
]

CATALOG_NAMES = ("sweedler", "en", "slq2", "suzuki", "group_C2", "group_S3", "dual_group_S3")


@dataclass(eq=False)
class CatalogEntry:
    name: str
    hopf: HopfData
    R: LinMap
    algebra: NormalFormAlgebra | None = None
    cotriangular_expected: bool | None = None
    notes: dict[str, Any] = field(default_factory=dict)

    def element(self, text: str) -> Vec:
        """Parse an element expression in the generators of this entry."""
        if self.algebra is None:
            raise ValueError(f"{self.name} has no presentation; address basis elements by index")
        return self.algebra.parse_element(text)


def _rule(P_gens: tuple[str, ...], lhs: str, rhs: Mapping[str, Scalar]) -> Rule:
    def word(text: str) -> Word:
        if text == "1":
            return ()
        return tuple(P_gens.index(t) for t in text.split("*"))

    out: dict[Word, Scalar] = {}
    for w, c in rhs.items():
        add_term(out, word(w), c)
    return Rule(word(lhs), out)


def _x_basis_key(word: Word, g_index: int) -> tuple:
    xs = tuple(i for i in word if i != g_index)
    return (len(xs), xs, len(word) - len(xs))


# Sweedler and E(n) ------------------------------------------------------------

def _en_algebra(n: int, field_: Field) -> NormalFormAlgebra:
    xs = tuple(f"x{i}" for i in range(1, n + 1)) if n > 1 else ("x",)
    gens = xs + ("g",)
    one = field_.one
    rules = [_rule(gens, "g*g", {"1": one})]
    for i, xi in enumerate(xs):
        rules.append(_rule(gens, f"{xi}*{xi}", {}))
        rules.append(_rule(gens, f"g*{xi}", {f"{xi}*g": -one}))
        for xj in xs[i + 1 :]:
            rules.append(_rule(gens, f"{xj}*{xi}", {f"{xi}*{xj}": -one}))
    P = Presentation(gens, (1,) * len(gens), tuple(rules), field_)
    comul = {x: [(x, "1"), ("g", x)] for x in xs}
    comul["g"] = [("g", "g")]
    counit = {x: "0" for x in xs} | {"g": "1"}
    antipode = {x: f"{x}*g" for x in xs} | {"g": "g"}
    g_index = len(xs)
    return NormalFormAlgebra(P, comul, counit, antipode, basis_key=lambda w: _x_basis_key(w, g_index))


def build_en(n: int, A: Any = None, symbolic_symmetric: bool = True) -> CatalogEntry:
    """E(n) with the form ``R_A``; ``A`` is an ``n x n`` matrix of scalars or ``None``.

    With ``A=None`` the entries are parameters ``A_i_j``; ``symbolic_symmetric``
    identifies ``A_i_j`` with ``A_j_i``.
    """
    if not isinstance(n, int) or not 1 <= n <= 4:
        raise BadDimension(f"E(n) is supported for 1 <= n <= 4, got {n!r}")
    if A is None:
        names = [[f"A_{min(i, j)}_{max(i, j)}" if symbolic_symmetric else f"A_{i}_{j}" for j in range(1, n + 1)] for i in range(1, n + 1)]
        field_ = Field({name for row in names for name in row})
        matrix = [[field_.gen(name) for name in row] for row in names]
    else:
        params: set[str] = set()
        raw = [[parse_scalar(v) if isinstance(v, str) else Scalar.coerce(v) for v in row] for row in A]
        if len(raw) != n or any(len(r) != n for r in raw):
            raise BadDimension(f"A must be {n} x {n}")
        for row in raw:
            for v in row:
                params |= set(v.params)
        field_ = Field(params)
        matrix = [[field_(v) for v in row] for row in raw]
    algebra = _en_algebra(n, field_)
    H = structure_constants(algebra)
    gens = algebra.presentation.generators
    values: dict[tuple[str, str], Scalar] = {("g", "g"): -field_.one}
    for i, xi in enumerate(gens[:-1]):
        for j, xj in enumerate(gens[:-1]):
            values[(xi, xj)] = matrix[i][j]
    R = extend_bilinear_form(algebra, H, values)
    symmetric = all(matrix[i][j] == matrix[j][i] for i in range(n) for j in range(n))
    return CatalogEntry(f"E({n})", H, R, algebra, cotriangular_expected=symmetric, notes={"A": [[str(v) for v in r] for r in matrix]})


def build_sweedler(k: Any = "k") -> CatalogEntry:
    """Sweedler's four-dimensional Hopf algebra with the form ``R_k``."""
    value = parse_scalar(k) if isinstance(k, str) else Scalar.coerce(k)
    entry = build_en(1, [[value]])
    entry.name = "sweedler"
    entry.notes = {"k": str(value)}
    return entry


# SL_q(2) ----------------------------------------------------------------------

def build_slq2(degree_cap: int = 4) -> CatalogEntry:
    """Degree-truncated SL_q(2) over Q(s) with ``q = s^2``.

    Normal words are ``a^i b^j d^l`` and ``a^i c^k d^l`` (generator order
    ``a < b < c < d``); ``bc``, ``cb`` and ``da`` are rewritten into ``ad``.
    """
    if not isinstance(degree_cap, int) or degree_cap < 3:
        raise BadDimension("SL_q(2) needs a degree cap of at least 3")
    field_ = Field(["s"])
    s = field_.gen("s")
    q = s * s
    one = field_.one
    gens = ("a", "b", "c", "d")
    rules = (
        _rule(gens, "b*a", {"a*b": q}),
        _rule(gens, "c*a", {"a*c": q}),
        _rule(gens, "d*b", {"b*d": q}),
        _rule(gens, "d*c", {"c*d": q}),
        _rule(gens, "b*c", {"a*d": q, "1": -q}),
        _rule(gens, "c*b", {"a*d": q, "1": -q}),
        _rule(gens, "d*a", {"a*d": q * q, "1": one - q * q}),
    )
    P = Presentation(gens, (1, 1, 1, 1), rules, field_, degree_cap, aliases={"q": "s^2"})
    algebra = NormalFormAlgebra(
        P,
        comul={"a": [("a", "a"), ("b", "c")], "b": [("a", "b"), ("b", "d")], "c": [("c", "a"), ("d", "c")], "d": [("c", "b"), ("d", "d")]},
        counit={"a": "1", "b": "0", "c": "0", "d": "1"},
        antipode={"a": "d", "b": "-q*b", "c": "-c/q", "d": "a"},
    )
    H = structure_constants(algebra)
    R = extend_bilinear_form(
        algebra,
        H,
        {
            ("a", "a"): s,
            ("d", "d"): s,
            ("a", "d"): s.inv(),
            ("d", "a"): s.inv(),
            ("b", "c"): s - s ** -3,
        },
    )
    return CatalogEntry("slq2", H, R, algebra, cotriangular_expected=False, notes={"degree_cap": degree_cap, "q": "s^2"})


# Suzuki -----------------------------------------------------------------------

def build_suzuki(nu: Any = 1, lam: Any = 1, alpha: Any = "alpha", beta: Any = "beta") -> CatalogEntry:
    """The Suzuki algebra ``A^{nu,lam}_{1,2}`` with the form ``R_{alpha, beta}``.

    ``nu`` and ``lam`` must be 1 or -1: otherwise the coproduct is not
    multiplicative (``nu^2 = 1``) or the rewriting system is not confluent
    (``lam^3 = lam``).  ``alpha`` and ``beta`` may be symbolic.
    """
    values = [parse_scalar(v) if isinstance(v, str) else Scalar.coerce(v) for v in (nu, lam, alpha, beta)]
    for value in values[:2]:
        if not value.is_constant() or value not in (1, -1):
            raise BadDimension("nu and lam must be 1 or -1")
    field_ = Field(set().union(*(v.params for v in values)))
    nu_val, lam_val, a_val, b_val = (field_(v) for v in values)
    one = field_.one
    gens = ("b", "c", "a", "d")
    rules = [
        _rule(gens, "a*a", {"1": one, "b*b": -nu_val}),
        _rule(gens, "d*d", {"1": one, "b*b": -nu_val}),
        _rule(gens, "c*c", {"b*b": one}),
        _rule(gens, "c*b", {"b*c": lam_val}),
        _rule(gens, "d*a", {"a*d": one}),
        # b(a^2 + nu b^2) = b and ab = 0 give nu b^3 = b
        _rule(gens, "b*b*b", {"b": nu_val.inv()}),
        _rule(gens, "b*b*c", {"c": nu_val.inv()}),
    ]
    for pair in ("a*b", "b*a", "a*c", "c*a", "b*d", "d*b", "c*d", "d*c"):
        rules.append(_rule(gens, pair, {}))
    P = Presentation(gens, (1, 1, 1, 1), tuple(rules), field_)
    order = {"": 0, "a": 1, "b": 2, "c": 3, "d": 4}

    def key(word: Word) -> tuple:
        return (len(word), tuple(order[gens[i]] for i in word))

    algebra = NormalFormAlgebra(
        P,
        comul={"a": [("a", "a"), ("b", "c")], "b": [("a", "b"), ("b", "d")], "c": [("c", "a"), ("d", "c")], "d": [("c", "b"), ("d", "d")]},
        counit={"a": "1", "b": "0", "c": "0", "d": "1"},
        antipode={"a": "a^3", "b": "c^3", "c": "b^3", "d": "d^3"},
        basis_key=key,
    )
    H = structure_constants(algebra)
    R = extend_bilinear_form(algebra, H, {("b", "b"): a_val, ("b", "c"): b_val, ("c", "b"): b_val, ("c", "c"): a_val})
    expected = nu_val == 1 and lam_val == 1 and a_val == b_val and (a_val == 1 or a_val == -1)
    return CatalogEntry(
        "suzuki", H, R, algebra, cotriangular_expected=expected,
        notes={"nu": str(nu_val), "lambda": str(lam_val), "alpha": str(a_val), "beta": str(b_val)},
    )


# groups -----------------------------------------------------------------------

def _group(name: str) -> tuple[list[str], list[list[int]]]:
    if name == "C2":
        return ["e", "t"], [[0, 1], [1, 0]]
    if name == "S3":
        perms = [(0, 1, 2), (1, 0, 2), (0, 2, 1), (2, 1, 0), (1, 2, 0), (2, 0, 1)]
        labels = ["e", "(12)", "(23)", "(13)", "(123)", "(132)"]
        # (p*q)(i) = p(q(i))
        table = [[perms.index(tuple(p[q[i]] for i in range(3))) for q in perms] for p in perms]
        return labels, table
    raise BadDimension(f"unknown group {name!r}; expected 'C2' or 'S3'")


def build_group_algebra(name: str) -> CatalogEntry:
    """The group algebra of C2 or S3 with the trivial form ``R = ε⊗ε``."""
    labels, table = _group(name)
    field_ = Field()
    one = field_.one
    n = len(labels)
    inverse = [next(j for j in range(n) if table[i][j] == 0) for i in range(n)]
    H = HopfData(
        basis=labels,
        field=field_,
        mul=[[{table[i][j]: one} for j in range(n)] for i in range(n)],
        unit={0: one},
        comul=[{(i, i): one} for i in range(n)],
        counit=[one] * n,
        antipode=[{inverse[i]: one} for i in range(n)],
    )
    R = form_from_function(H, lambda i, j: one)
    # R = ε⊗ε is coquasitriangular only when the group is abelian
    abelian = all(table[i][j] == table[j][i] for i in range(n) for j in range(n))
    notes = {} if abelian else {"coqt": "no coquasitriangular structure: the group is not abelian"}
    return CatalogEntry(f"group_{name}", H, R, cotriangular_expected=abelian, notes=notes)


def build_dual_group_algebra(name: str) -> CatalogEntry:
    """Functions on S3 (or C2): pointwise product, coproduct dual to the group law, ``R = ε⊗ε``."""
    labels, table = _group(name)
    field_ = Field()
    one = field_.one
    n = len(labels)
    inverse = [next(j for j in range(n) if table[i][j] == 0) for i in range(n)]
    comul: list[TVec] = [{} for _ in range(n)]
    for g in range(n):
        for h in range(n):
            comul[table[g][h]][(g, h)] = one
    H = HopfData(
        basis=[f"δ{label}" for label in labels],
        field=field_,
        mul=[[({i: one} if i == j else {}) for j in range(n)] for i in range(n)],
        unit={i: one for i in range(n)},
        comul=comul,
        counit=[one if i == 0 else field_.zero for i in range(n)],
        antipode=[{inverse[i]: one} for i in range(n)],
    )
    R = form_from_function(H, lambda i, j: H.counit[i] * H.counit[j])
    return CatalogEntry(f"dual_group_{name}", H, R, cotriangular_expected=True)


# reference data ----------------------------------------------------------------

def load_golden() -> dict[str, Any]:
    """Reference tables with their citations, from the packaged asset file."""
    text = resources.files("ydforge").joinpath("data/golden.json").read_text(encoding="utf-8")
    return json.loads(text)


@dataclass(frozen=True)
class GoldenCell:
    """One expected value: ``row op col = expected`` (``col`` is empty for unary maps)."""

    table: str
    row: str
    col: str
    expected: Vec
    source: str


def golden_key(entry: CatalogEntry) -> str:
    """Section of the golden file holding the reference values for ``entry``."""
    if entry.name.startswith("E("):
        return "en"
    if entry.name in ("sweedler", "slq2", "suzuki"):
        return entry.name
    raise KeyError(f"no reference tables for catalog entry {entry.name!r}")


def _index_pairs(entry: CatalogEntry) -> list[dict[str, str]]:
    if not entry.name.startswith("E("):
        return [{}]
    A = entry.notes["A"]
    n = len(A)
    xs = [f"x{i}" for i in range(1, n + 1)] if n > 1 else ["x"]
    return [{"xi": xs[i], "xj": xs[j], "A": f"({A[i][j]})"} for i in range(n) for j in range(n)]


def _expand(entry: CatalogEntry, text: str, bindings: Mapping[str, str]) -> str:
    text = text.format(**bindings) if bindings else text
    for name, note in (("lam", "lambda"), ("nu", "nu")):
        if note in entry.notes and name in text:
            text = _substitute_name(text, name, entry.notes[note])
    return text


def golden_cells(entry: CatalogEntry, table: str, golden: Mapping[str, Any] | None = None) -> list[GoldenCell]:
    """Reference cells of ``table`` ("dot", "left_action", "right_action" or "R"), parsed in ``entry``."""
    section = (golden or load_golden())[golden_key(entry)]
    layout = section["R"] if table == "R" else section["tables"][table]
    cells: dict[tuple[str, str], GoldenCell] = {}
    for bindings in _index_pairs(entry):
        for r, row in enumerate(layout["rows"]):
            for c, col in enumerate(layout["cols"]):
                key = (_expand(entry, row, bindings), _expand(entry, col, bindings))
                if key in cells:
                    continue
                text = _expand(entry, layout["cells"][r][c], bindings)
                value = {0: entry.hopf.field(text)} if table == "R" else entry.element(text)
                cells[key] = GoldenCell(table, key[0], key[1], value, layout["source"])
    return list(cells.values())


def golden_S_bar(entry: CatalogEntry, golden: Mapping[str, Any] | None = None) -> list[GoldenCell]:
    """Reference values of the transmuted antipode, parsed in ``entry``."""
    layout = (golden or load_golden())[golden_key(entry)]["S_bar"]
    cells: dict[str, GoldenCell] = {}
    for bindings in _index_pairs(entry):
        for arg, value in layout["values"].items():
            key = _expand(entry, arg, bindings)
            if key not in cells:
                cells[key] = GoldenCell("S_bar", key, "", entry.element(_expand(entry, value, bindings)), layout["source"])
    return list(cells.values())
