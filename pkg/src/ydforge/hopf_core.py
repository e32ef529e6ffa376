"""Finite-dimensional Hopf algebras stored as structure constants.

Elements of ``H`` are sparse dictionaries ``{basis index: Scalar}``; elements
of ``H^{⊗m}`` are sparse dictionaries keyed by index tuples.  Zero entries
are never stored.  :class:`LinMap` represents ``H^{⊗d} → H^{⊗c}`` by the
images of basis tuples, and bilinear forms are the case ``c = 0`` whose
only codomain key is the empty tuple.

Truncated algebras (finite-dimensional slices of an infinite-dimensional
filtered Hopf algebra) carry a degree per basis element and a degree cap;
products that would leave the slice raise :class:`DegreeCapExceeded`, and
axiom sweeps only visit cap-safe tuples.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Iterator, Mapping, Sequence

from ._linalg import InconsistentSystem, UnderdeterminedSystem, solve_sparse
from ._sweep import first_failure
from .errors import DegreeCapExceeded, MissingAntipode, NotConvolutionInvertible, ShapeError
from .scalars import Field, Scalar, parse_scalar

Vec = dict[int, Scalar]
TVec = dict[tuple[int, ...], Scalar]
Key = tuple[int, ...]

__all__ = [
    "HopfData",
    "LinMap",
    "CheckResult",
    "VerificationReport",
    "multiply",
    "comultiply",
    "iterated_comul",
    "convolution",
    "convolution_inverse",
    "check_bialgebra",
    "check_hopf",
    "identity_map",
    "unit_counit_map",
    "antipode_map",
    "hopf_to_json",
    "hopf_from_json",
]


# sparse vector helpers ------------------------------------------------------

def add_into(acc: dict, vec: Mapping, coeff: Scalar | None = None) -> dict:
    """``acc += coeff * vec`` in place, dropping entries that cancel."""
    for key, value in vec.items():
        term = value if coeff is None else value * coeff
        if key in acc:
            total = acc[key] + term
            if total.is_zero():
                del acc[key]
            else:
                acc[key] = total
        elif not term.is_zero():
            acc[key] = term
    return acc


def add_term(acc: dict, key: Hashable, value: Scalar) -> None:
    if key in acc:
        total = acc[key] + value
        if total.is_zero():
            del acc[key]
        else:
            acc[key] = total
    elif not value.is_zero():
        acc[key] = value


def scale(vec: Mapping, coeff: Scalar) -> dict:
    if coeff.is_zero():
        return {}
    return {k: v * coeff for k, v in vec.items()}


def difference(lhs: Mapping, rhs: Mapping) -> dict:
    out = dict(lhs)
    for key, value in rhs.items():
        add_term(out, key, -value)
    return out


def tensor(*vecs: Mapping) -> TVec:
    """Tensor product of vectors; int keys count as 1-tuples."""
    parts: TVec | None = None
    for vec in vecs:
        norm = {(k if isinstance(k, tuple) else (k,)): v for k, v in vec.items()}
        if parts is None:
            parts = norm
            continue
        nxt: TVec = {}
        for k1, c1 in parts.items():
            for k2, c2 in norm.items():
                add_term(nxt, k1 + k2, c1 * c2)
        parts = nxt
    return parts or {}


# the data type --------------------------------------------------------------

@dataclass(eq=False)
class HopfData:
    """Structure constants of a finite-dimensional bialgebra (antipode optional)."""

    basis: list[str]
    field: Field
    mul: list[list[Vec | None]]
    unit: Vec
    comul: list[TVec]
    counit: list[Scalar]
    antipode: list[Vec] | None = None
    degrees: list[int] | None = None
    degree_cap: int | None = None
    flags: dict[str, bool] = field(default_factory=dict)
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        n = len(self.basis)
        if n == 0:
            raise ShapeError("dimension must be positive")
        if len(set(self.basis)) != n:
            raise ShapeError("basis labels must be unique")
        if len(self.mul) != n or any(len(row) != n for row in self.mul):
            raise ShapeError("mul must be an n x n table")
        if len(self.comul) != n or len(self.counit) != n:
            raise ShapeError("comul and counit must have n entries")
        if self.antipode is not None and len(self.antipode) != n:
            raise ShapeError("antipode must have n columns")
        if self.degrees is not None and len(self.degrees) != n:
            raise ShapeError("degrees must have n entries")
        for vec in itertools.chain([self.unit], (v for row in self.mul for v in row if v is not None)):
            if any(not (0 <= k < n) for k in vec):
                raise ShapeError("index out of range in structure tensor")
        for vec in self.comul:
            if any(len(k) != 2 or not all(0 <= i < n for i in k) for k in vec):
                raise ShapeError("index out of range in comul")
        if not self.unit:
            raise ShapeError("unit vector must be nonzero")
        if not (sum((self.counit[k] * c for k, c in self.unit.items()), self.field.zero)).is_one():
            raise ShapeError("counit(unit) must be 1")

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def params(self) -> tuple[str, ...]:
        return self.field.params

    @property
    def truncated(self) -> bool:
        return self.degree_cap is not None

    def degree(self, i: int) -> int:
        return 0 if self.degrees is None else self.degrees[i]

    def index(self, label: str) -> int:
        try:
            return self.basis.index(label)
        except ValueError:
            raise KeyError(f"no basis element {label!r}") from None

    def basis_vector(self, label: str | int) -> Vec:
        i = self.index(label) if isinstance(label, str) else label
        return {i: self.field.one}

    # products ---------------------------------------------------------------
    def product(self, i: int, j: int) -> Vec:
        vec = self.mul[i][j]
        if vec is None:
            raise DegreeCapExceeded(
                f"product {self.basis[i]}*{self.basis[j]} exceeds degree cap {self.degree_cap}"
            )
        return vec

    def mul_vec(self, u: Mapping[int, Scalar], v: Mapping[int, Scalar]) -> Vec:
        out: Vec = {}
        for i, a in u.items():
            for j, b in v.items():
                add_into(out, self.product(i, j), a * b)
        return out

    def mul_many(self, *vecs: Mapping[int, Scalar]) -> Vec:
        out: Vec = dict(self.unit)
        for vec in vecs:
            out = self.mul_vec(out, vec)
        return out

    def eps(self, v: Mapping[int, Scalar]) -> Scalar:
        total = self.field.zero
        for i, c in v.items():
            total = total + self.counit[i] * c
        return total

    def T(self, i: int) -> Vec:
        if self.antipode is None:
            raise MissingAntipode("this operation needs an antipode")
        return self.antipode[i]

    def T_vec(self, v: Mapping[int, Scalar]) -> Vec:
        out: Vec = {}
        for i, c in v.items():
            add_into(out, self.T(i), c)
        return out

    def delta(self, i: int, m: int = 2) -> list[tuple[Key, Scalar]]:
        """Iterated coproduct of a basis element as a list of ``(tuple, coeff)``."""
        key = ("delta", i, m)
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        if m < 1:
            raise ShapeError("iterated coproduct needs m >= 1")
        if m == 1:
            result = [((i,), self.field.one)]
        elif m == 2:
            result = sorted(self.comul[i].items())
        else:
            acc: TVec = {}
            for (j, k), c in self.comul[i].items():
                for rest, d in self.delta(k, m - 1):
                    add_term(acc, (j,) + rest, c * d)
            result = sorted(acc.items())
        self._cache[key] = result
        return result

    def delta_vec(self, v: Mapping[int, Scalar], m: int = 2) -> TVec:
        out: TVec = {}
        for i, c in v.items():
            for key, d in self.delta(i, m):
                add_term(out, key, c * d)
        return out

    # tensor powers ------------------------------------------------------------
    def tensor_mul(self, u: Mapping[Key, Scalar], v: Mapping[Key, Scalar]) -> TVec:
        """Componentwise product in the tensor power algebra ``H^{⊗c}``."""
        out: TVec = {}
        for k1, a in u.items():
            for k2, b in v.items():
                if len(k1) != len(k2):
                    raise ShapeError("tensor powers differ")
                coeff = a * b
                parts: TVec = {(): coeff}
                for i, j in zip(k1, k2):
                    nxt: TVec = {}
                    for prefix, c in parts.items():
                        for r, d in self.product(i, j).items():
                            add_term(nxt, prefix + (r,), c * d)
                    parts = nxt
                add_into(out, parts)
        return out

    def tensor_unit(self, c: int) -> TVec:
        return tensor(*([self.unit] * c)) if c else {(): self.field.one}

    def tensor_delta(self, key: Key) -> list[tuple[Key, Key, Scalar]]:
        """Coproduct in the tensor coalgebra ``H^{⊗d}``: ``(left, right, coeff)`` triples."""
        cache_key = ("tdelta", key)
        cached = self._cache.get(cache_key)
        if cached is not None:
            return cached
        parts: list[tuple[Key, Key, Scalar]] = [((), (), self.field.one)]
        for i in key:
            parts = [
                (l + (j,), r + (k,), c * d)
                for (l, r, c) in parts
                for (j, k), d in self.delta(i)
            ]
        acc: dict[tuple[Key, Key], Scalar] = {}
        for l, r, c in parts:
            add_term(acc, (l, r), c)
        result = sorted((l, r, c) for (l, r), c in acc.items())
        self._cache[cache_key] = result
        return result

    def tensor_eps(self, key: Key) -> Scalar:
        total = self.field.one
        for i in key:
            total = total * self.counit[i]
        return total

    def tuples(self, arity: int, weight: int = 1) -> list[Key]:
        """All basis tuples of length ``arity``, restricted to cap-safe ones when truncated.

        A tuple is cap-safe when ``weight`` times its total degree is within
        the cap; ``weight`` accounts for formulas that multiply several
        Sweedler legs of the same argument together.
        """
        all_tuples = itertools.product(range(self.dim), repeat=arity)
        if self.degree_cap is None:
            return list(all_tuples)
        return [t for t in all_tuples if weight * sum(self.degree(i) for i in t) <= self.degree_cap]

    def label(self, key: Hashable) -> str:
        if isinstance(key, int):
            return self.basis[key]
        if key == ():
            return "1_k"
        return "⊗".join(self.basis[i] for i in key)  # type: ignore[union-attr]

    def format_vec(self, vec: Mapping) -> str:
        if not vec:
            return "0"
        text = ""
        for key in sorted(vec, key=lambda k: k if isinstance(k, tuple) else (k,)):
            coeff, label = str(vec[key]), self.label(key)
            negative = coeff.startswith("-") and not any(ch in coeff[1:] for ch in "+-/")
            if negative:
                coeff = coeff[1:]
            if label in ("1", "1_k"):
                term = f"({coeff})" if text and any(ch in coeff[1:] for ch in "+-") else coeff
            elif coeff == "1":
                term = label
            elif any(ch in coeff for ch in "+-/"):
                term = f"({coeff})*{label}"
            else:
                term = f"{coeff}*{label}"
            text += (" - " if negative else " + ") + term if text else ("-" if negative else "") + term
        return text

    def with_antipode(self, antipode: list[Vec] | None) -> HopfData:
        return HopfData(
            list(self.basis), self.field, self.mul, self.unit, self.comul, self.counit,
            antipode, self.degrees, self.degree_cap,
        )


# linear maps --------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class LinMap:
    """A linear map ``H^{⊗d} → H^{⊗c}`` given by sparse images of basis tuples."""

    dim: int
    domain_power: int
    codomain_power: int
    images: Mapping[Key, TVec]
    max_degree: int | None = None

    def image(self, key: Key) -> TVec:
        return self.images.get(key, {})

    def apply(self, vec: Mapping) -> TVec:
        out: TVec = {}
        for key, c in vec.items():
            key = key if isinstance(key, tuple) else (key,)
            if len(key) != self.domain_power:
                raise ShapeError("argument has the wrong tensor power")
            add_into(out, self.image(key), c)
        return out

    def value(self, *key: int) -> Scalar | None:
        """Scalar value of a form (``codomain_power == 0``), ``None`` for zero."""
        return self.images.get(key, {}).get(())

    def compose(self, other: LinMap) -> LinMap:
        """``self ∘ other``."""
        if other.codomain_power != self.domain_power:
            raise ShapeError("composition powers do not match")
        images = {key: self.apply(img) for key, img in other.images.items()}
        return LinMap(self.dim, other.domain_power, self.codomain_power, {k: v for k, v in images.items() if v})

    def equals(self, other: LinMap) -> bool:
        if (self.domain_power, self.codomain_power) != (other.domain_power, other.codomain_power):
            return False
        keys = set(self.images) | set(other.images)
        return all(not difference(self.image(k), other.image(k)) for k in keys)

    def to_matrix(self, field: Field) -> list[list[Scalar]]:
        """Dense matrix, row-major over codomain tuples, column-major over domain tuples."""
        rows = list(itertools.product(range(self.dim), repeat=self.codomain_power))
        cols = list(itertools.product(range(self.dim), repeat=self.domain_power))
        return [[self.image(c).get(r, field.zero) for c in cols] for r in rows]

    @staticmethod
    def from_matrix(dim: int, domain_power: int, codomain_power: int, matrix: Sequence[Sequence[Scalar]]) -> LinMap:
        rows = list(itertools.product(range(dim), repeat=codomain_power))
        cols = list(itertools.product(range(dim), repeat=domain_power))
        if len(matrix) != len(rows) or any(len(r) != len(cols) for r in matrix):
            raise ShapeError(f"expected a {len(rows)} x {len(cols)} matrix")
        images: dict[Key, TVec] = {}
        for ci, col in enumerate(cols):
            img = {rows[ri]: matrix[ri][ci] for ri in range(len(rows)) if not matrix[ri][ci].is_zero()}
            if img:
                images[col] = img
        return LinMap(dim, domain_power, codomain_power, images)

    @staticmethod
    def from_function(H: HopfData, d: int, c: int, fn: Callable[[Key], Mapping], keys: Iterable[Key] | None = None) -> LinMap:
        images: dict[Key, TVec] = {}
        for key in keys if keys is not None else itertools.product(range(H.dim), repeat=d):
            img = fn(key)
            img = {(k if isinstance(k, tuple) else (k,)): v for k, v in img.items() if not v.is_zero()}
            if img:
                images[key] = img
        return LinMap(H.dim, d, c, images)

    def restricted_to_vectors(self) -> list[Vec]:
        """For an ``H → H`` map, the list of images as plain vectors."""
        if (self.domain_power, self.codomain_power) != (1, 1):
            raise ShapeError("expected a map H -> H")
        return [{k[0]: v for k, v in self.image((i,)).items()} for i in range(self.dim)]


def identity_map(H: HopfData, power: int = 1) -> LinMap:
    return LinMap.from_function(H, power, power, lambda key: {key: H.field.one})


def unit_counit_map(H: HopfData, domain_power: int = 1, codomain_power: int = 1) -> LinMap:
    unit = H.tensor_unit(codomain_power)
    return LinMap.from_function(H, domain_power, codomain_power, lambda key: scale(unit, H.tensor_eps(key)))


def antipode_map(H: HopfData) -> LinMap:
    return LinMap.from_function(H, 1, 1, lambda key: H.T(key[0]))


def form_from_function(H: HopfData, fn: Callable[[int, int], Scalar], keys: Iterable[Key] | None = None) -> LinMap:
    return LinMap.from_function(H, 2, 0, lambda key: {(): fn(*key)}, keys)


# public element-level operations ----------------------------------------------

def _check_vec(H: HopfData, v: Mapping[int, Scalar]) -> None:
    if any(not isinstance(k, int) or not 0 <= k < H.dim for k in v):
        raise ShapeError(f"vector does not live in a space of dimension {H.dim}")


def multiply(H: HopfData, v: Mapping[int, Scalar], w: Mapping[int, Scalar]) -> Vec:
    _check_vec(H, v)
    _check_vec(H, w)
    return H.mul_vec(v, w)


def comultiply(H: HopfData, v: Mapping[int, Scalar]) -> TVec:
    _check_vec(H, v)
    return H.delta_vec(v, 2)


def iterated_comul(H: HopfData, v: Mapping[int, Scalar], m: int) -> TVec:
    _check_vec(H, v)
    return H.delta_vec(v, m)


def convolution(H: HopfData, f: LinMap, g: LinMap) -> LinMap:
    """``f * g = m ∘ (f ⊗ g) ∘ Δ`` for maps ``H^{⊗d} → H^{⊗c}``.

    The domain carries the tensor coalgebra and the codomain the tensor
    algebra, so ``d = c = 1`` is the usual convolution of endomorphisms and
    ``c = 0`` is the convolution of multilinear forms.
    """
    if (f.domain_power, f.codomain_power) != (g.domain_power, g.codomain_power) or f.dim != H.dim or g.dim != H.dim:
        raise ShapeError("convolution needs maps of the same shape on the same algebra")

    def image(key: Key) -> TVec:
        out: TVec = {}
        for left, right, c in H.tensor_delta(key):
            fl, gr = f.image(left), g.image(right)
            if fl and gr:
                add_into(out, H.tensor_mul(fl, gr), c)
        return out

    return LinMap.from_function(H, f.domain_power, f.codomain_power, image)


def _domain_keys(H: HopfData, d: int, max_degree: int | None) -> list[Key]:
    keys = list(itertools.product(range(H.dim), repeat=d))
    if max_degree is None:
        if H.truncated:
            max_degree = H.degree_cap
        else:
            return keys
    return [k for k in keys if all(H.degree(i) <= max_degree for i in k)]


def convolution_inverse(H: HopfData, f: LinMap, max_degree: int | None = None) -> LinMap:
    """Solve ``f * g = u∘ε`` exactly and verify ``g * f = u∘ε`` as well.

    For truncated algebras the system is solved on the subcoalgebra spanned by
    tuples whose factors have degree at most ``max_degree`` (default: the
    cap); the degree filtration makes that system closed.
    """
    if f.domain_power != f.codomain_power and f.codomain_power != 0:
        raise ShapeError("convolution inverse needs a map H^d -> H^d or a form")
    d, c = f.domain_power, f.codomain_power
    domain = _domain_keys(H, d, max_degree)
    codomain = list(itertools.product(range(H.dim), repeat=c))
    unit = H.tensor_unit(c)

    def build_rows(left_factor: bool) -> Iterator[tuple[dict, Scalar]]:
        for key in domain:
            target = scale(unit, H.tensor_eps(key))
            rows: dict[Key, dict] = {out: {} for out in codomain}
            for left, right, coeff in H.tensor_delta(key):
                known, unknown_key = (left, right) if left_factor else (right, left)
                fk = f.image(known)
                for g_out in codomain:
                    basis_img = {g_out: H.field.one}
                    prod = H.tensor_mul(fk, basis_img) if left_factor else H.tensor_mul(basis_img, fk)
                    for out, value in prod.items():
                        add_term(rows[out], (unknown_key, g_out), value * coeff)
            for out in codomain:
                yield rows[out], target.get(out, H.field.zero)

    unknowns = [(k, o) for k in domain for o in codomain]
    try:
        solution = solve_sparse(build_rows(True), unknowns, H.field)
    except (InconsistentSystem, UnderdeterminedSystem) as exc:
        raise NotConvolutionInvertible(f"no convolution inverse: {exc}") from None
    images: dict[Key, TVec] = {}
    for (key, out), value in solution.items():
        if not value.is_zero():
            images.setdefault(key, {})[out] = value
    bound = max_degree if max_degree is not None else H.degree_cap
    g = LinMap(H.dim, d, c, images, bound)
    for left_factor in (True, False):
        for row, rhs in build_rows(left_factor):
            total = H.field.zero
            for var, coeff in row.items():
                value = g.image(var[0]).get(var[1])
                if value is not None:
                    total = total + coeff * value
            if total != rhs:
                raise NotConvolutionInvertible("solution is not a two-sided convolution inverse")
    return g


# reports ------------------------------------------------------------------

@dataclass
class CheckResult:
    name: str
    passed: bool
    witness: Key | None = None
    difference: dict | None = None
    tuples_checked: int = 0

    def witness_labels(self, H: HopfData) -> list[str] | None:
        if self.witness is None:
            return None
        return [H.basis[i] for i in self.witness]


@dataclass
class VerificationReport:
    """Named checks, each with a witness when it fails, plus optional flags."""

    checks: list[CheckResult] = field(default_factory=list)
    qualifier: str | None = None
    flags: dict[str, bool] = field(default_factory=dict)
    labels: list[str] | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> CheckResult:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(c.name == name for c in self.checks)

    def add(self, result: CheckResult) -> None:
        self.checks.append(result)

    def extend(self, other: VerificationReport, prefix: str = "") -> None:
        for check in other.checks:
            self.checks.append(CheckResult(prefix + check.name, check.passed, check.witness, check.difference, check.tuples_checked))
        self.flags.update(other.flags)
        self.qualifier = self.qualifier or other.qualifier
        self.labels = self.labels or other.labels

    def failed(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def sorted_checks(self) -> list[CheckResult]:
        return sorted(self.checks, key=lambda c: (c.name, c.witness or ()))

    def _key_label(self, key: Hashable) -> str:
        if self.labels is None:
            return str(key)
        if isinstance(key, int):
            return self.labels[key]
        if key == ():
            return "1"
        return "⊗".join(self.labels[i] for i in key)  # type: ignore[union-attr]

    def to_dict(self) -> dict[str, Any]:
        checks = []
        for c in self.sorted_checks():
            entry: dict[str, Any] = {"name": c.name, "passed": c.passed, "tuples_checked": c.tuples_checked}
            if c.witness is not None:
                entry["witness"] = [self._key_label(i) for i in c.witness]
                entry["difference"] = [
                    [self._key_label(k), str(v)]
                    for k, v in sorted((c.difference or {}).items(), key=lambda kv: kv[0] if isinstance(kv[0], tuple) else (kv[0],))
                ]
            checks.append(entry)
        out: dict[str, Any] = {"passed": self.passed, "checks": checks}
        if self.qualifier:
            out["qualifier"] = self.qualifier
        if self.flags:
            out["flags"] = dict(sorted(self.flags.items()))
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    def to_markdown(self) -> str:
        data = self.to_dict()
        lines = [f"**{'PASS' if data['passed'] else 'FAIL'}**", ""]
        if self.qualifier:
            lines += [f"_{self.qualifier}_", ""]
        lines += ["| check | result | witness | difference |", "|---|---|---|---|"]
        for entry in data["checks"]:
            witness = " ⊗ ".join(entry.get("witness", [])) if "witness" in entry else ""
            diff = " + ".join(f"({v})·{k}" for k, v in entry.get("difference", []))
            lines.append(f"| {entry['name']} | {'pass' if entry['passed'] else 'FAIL'} | {witness} | {diff} |")
        if self.flags:
            lines += ["", "| flag | value |", "|---|---|"]
            lines += [f"| {k} | {v} |" for k, v in sorted(self.flags.items())]
        return "\n".join(lines) + "\n"


def run_check(name: str, fn: Callable[[Key], dict], tuples: Sequence[Key], jobs: int | None = None) -> CheckResult:
    """Sweep ``tuples`` in order and record the first nonzero difference."""
    hit = first_failure(fn, tuples, jobs)
    if hit is None:
        return CheckResult(name, True, tuples_checked=len(tuples))
    witness, diff = hit
    return CheckResult(name, False, witness, diff, tuples_checked=len(tuples))


def new_report(H: HopfData) -> VerificationReport:
    qualifier = f"verified up to degree {H.degree_cap}" if H.truncated else None
    return VerificationReport(qualifier=qualifier, labels=list(H.basis))


def scalar_diff(a: Scalar, b: Scalar) -> dict:
    d = a - b
    return {} if d.is_zero() else {(): d}


# axiom checks ---------------------------------------------------------------

def check_bialgebra(H: HopfData, jobs: int | None = None) -> VerificationReport:
    """Associativity, unit, coassociativity, counit and the bialgebra compatibilities."""
    report = new_report(H)
    one = H.field.one
    e = lambda i: {i: one}  # noqa: E731

    def assoc(t: Key) -> dict:
        i, j, k = t
        return difference(H.mul_vec(H.product(i, j), e(k)), H.mul_vec(e(i), H.product(j, k)))

    def unit_left(t: Key) -> dict:
        (i,) = t
        return difference(H.mul_vec(H.unit, e(i)), e(i))

    def unit_right(t: Key) -> dict:
        (i,) = t
        return difference(H.mul_vec(e(i), H.unit), e(i))

    def coassoc(t: Key) -> dict:
        (i,) = t
        lhs: TVec = {}
        rhs: TVec = {}
        for (j, k), c in H.comul[i].items():
            for (a, b), d in H.comul[j].items():
                add_term(lhs, (a, b, k), c * d)
            for (a, b), d in H.comul[k].items():
                add_term(rhs, (j, a, b), c * d)
        return difference(lhs, rhs)

    def counit_side(left: bool) -> Callable[[Key], dict]:
        def fn(t: Key) -> dict:
            (i,) = t
            out: Vec = {}
            for (j, k), c in H.comul[i].items():
                if left:
                    add_term(out, k, H.counit[j] * c)
                else:
                    add_term(out, j, H.counit[k] * c)
            return difference(out, e(i))

        return fn

    def comul_mult(t: Key) -> dict:
        i, j = t
        lhs = H.delta_vec(H.product(i, j))
        rhs = H.tensor_mul(dict(H.comul[i]), dict(H.comul[j]))
        return difference(lhs, rhs)

    def counit_mult(t: Key) -> dict:
        i, j = t
        return scalar_diff(H.eps(H.product(i, j)), H.counit[i] * H.counit[j])

    def comul_unit(t: Key) -> dict:
        return difference(H.delta_vec(H.unit), tensor(H.unit, H.unit))

    def counit_unit(t: Key) -> dict:
        return scalar_diff(H.eps(H.unit), one)

    report.add(run_check("associativity", assoc, H.tuples(3), jobs))
    report.add(run_check("unit_left", unit_left, H.tuples(1), jobs))
    report.add(run_check("unit_right", unit_right, H.tuples(1), jobs))
    report.add(run_check("coassociativity", coassoc, H.tuples(1), jobs))
    report.add(run_check("counit_left", counit_side(True), H.tuples(1), jobs))
    report.add(run_check("counit_right", counit_side(False), H.tuples(1), jobs))
    report.add(run_check("comul_multiplicative", comul_mult, H.tuples(2), jobs))
    report.add(run_check("comul_unital", comul_unit, [()], jobs))
    report.add(run_check("counit_multiplicative", counit_mult, H.tuples(2), jobs))
    report.add(run_check("counit_unital", counit_unit, [()], jobs))
    return report


def check_hopf(H: HopfData, jobs: int | None = None) -> VerificationReport:
    """:func:`check_bialgebra` plus ``T * Id = Id * T = u∘ε``."""
    if H.antipode is None:
        raise MissingAntipode("check_hopf needs an antipode; use convolution_inverse(Id) to compute one")
    report = check_bialgebra(H, jobs)

    def antipode_side(left: bool) -> Callable[[Key], dict]:
        def fn(t: Key) -> dict:
            (i,) = t
            out: Vec = {}
            for (j, k), c in H.comul[i].items():
                a, b = (H.T(j), {k: H.field.one}) if left else ({j: H.field.one}, H.T(k))
                add_into(out, H.mul_vec(a, b), c)
            return difference(out, scale(H.unit, H.counit[i]))

        return fn

    report.add(run_check("antipode_left", antipode_side(True), H.tuples(1, 2), jobs))
    report.add(run_check("antipode_right", antipode_side(False), H.tuples(1, 2), jobs))
    return report


# JSON ---------------------------------------------------------------------

def _vec_json(v: Mapping[int, Scalar]) -> list:
    return [[k, str(v[k])] for k in sorted(v)]


def hopf_to_dict(H: HopfData) -> dict[str, Any]:
    out: dict[str, Any] = {
        "dim": H.dim,
        "basis": list(H.basis),
        "params": list(H.params),
        "mul": [[i, j, _vec_json(H.mul[i][j])] for i in range(H.dim) for j in range(H.dim) if H.mul[i][j]],
        "unit": _vec_json(H.unit),
        "comul": [[i, [[j, k, str(c)] for (j, k), c in sorted(H.comul[i].items())]] for i in range(H.dim)],
        "counit": [str(c) for c in H.counit],
    }
    if H.antipode is not None:
        out["antipode"] = [[str(H.antipode[c].get(r, H.field.zero)) for c in range(H.dim)] for r in range(H.dim)]
    if H.truncated:
        out["degrees"] = list(H.degrees or [])
        out["degree_cap"] = H.degree_cap
    return out


def hopf_to_json(H: HopfData) -> str:
    return json.dumps(hopf_to_dict(H), indent=1, ensure_ascii=False) + "\n"


def hopf_from_dict(data: Mapping[str, Any]) -> HopfData:
    try:
        n = int(data["dim"])
        params = list(data.get("params", []))
        field_ = Field(params)
        S = lambda text: parse_scalar(str(text), field_.params)  # noqa: E731
        degrees = data.get("degrees")
        cap = data.get("degree_cap")

        def vec(entries: Iterable) -> Vec:
            out: Vec = {}
            for k, c in entries:
                add_term(out, int(k), S(c))
            return out

        mul: list[list[Vec | None]] = [[{} for _ in range(n)] for _ in range(n)]
        if cap is not None:
            for i in range(n):
                for j in range(n):
                    if degrees[i] + degrees[j] > cap:
                        mul[i][j] = None
        for i, j, entries in data["mul"]:
            mul[int(i)][int(j)] = vec(entries)
        comul: list[TVec] = [{} for _ in range(n)]
        for i, entries in data["comul"]:
            for j, k, c in entries:
                add_term(comul[int(i)], (int(j), int(k)), S(c))
        antipode = None
        if data.get("antipode") is not None:
            matrix = data["antipode"]
            if len(matrix) != n or any(len(r) != n for r in matrix):
                raise ShapeError("antipode must be an n x n matrix")
            antipode = [{r: S(matrix[r][c]) for r in range(n) if not S(matrix[r][c]).is_zero()} for c in range(n)]
        return HopfData(
            basis=list(data["basis"]),
            field=field_,
            mul=mul,
            unit=vec(data["unit"]),
            comul=comul,
            counit=[S(c) for c in data["counit"]],
            antipode=antipode,
            degrees=list(degrees) if degrees is not None else None,
            degree_cap=cap,
        )
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ShapeError(f"malformed hopf data: {exc!r}") from None


def hopf_from_json(text: str) -> HopfData:
    return hopf_from_dict(json.loads(text))
