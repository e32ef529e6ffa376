"""Actions of ``H`` on itself, matched pairs, and the double cross product.

A left action ``a ⇀ b`` and a right action ``a ↼ b`` are stored as
:class:`ActionTensor` tables ``(i, j) ↦ e_i ⇀ e_j`` (resp. ``e_i ↼ e_j``).
Every check sweeps basis tuples lexicographically and reports the first
failing tuple, like the checks in :mod:`ydforge.hopf_core`.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, replace
from typing import Any, Callable, Iterable, Mapping

from .coqt import Form, _as_form, _inverse_for_checks, braiding_comodule, check_br_axioms
from .errors import (
    BrAxiomsFail,
    DegreeCapExceeded,
    MatchedPairAxiomsFail,
    PreconditionFail,
    ShapeError,
)
from .hopf_core import (
    HopfData,
    Key,
    LinMap,
    TVec,
    Vec,
    VerificationReport,
    add_into,
    add_term,
    difference,
    new_report,
    run_check,
    scalar_diff,
    tensor,
)
from .scalars import Scalar, parse_scalar

__all__ = [
    "ActionTensor",
    "trivial_actions",
    "check_module_coalgebra",
    "check_matched_pair",
    "actions_from_braiding",
    "extract_actions",
    "actions_from_R",
    "actions_from_comodule_braiding",
    "check_mp3_counterexample",
    "braiding_from_actions",
    "double_cross_product",
    "check_colinearity_equivalences",
    "action_to_dict",
    "action_from_dict",
]

LEFT, RIGHT = "left", "right"


@dataclass(frozen=True, eq=False)
class ActionTensor:
    """``values[(i, j)] = e_i ⇀ e_j`` for a left action, ``e_i ↼ e_j`` for a right one.

    ``bound`` limits the degree of each factor on truncated algebras, where
    the table is only known on low-degree pairs.
    """

    H: HopfData
    side: str
    values: Mapping[Key, Vec]
    bound: int | None = None

    def __post_init__(self) -> None:
        if self.side not in (LEFT, RIGHT):
            raise ShapeError(f"action side must be 'left' or 'right', got {self.side!r}")

    def act(self, i: int, j: int) -> Vec:
        if self.bound is not None and (self.H.degree(i) > self.bound or self.H.degree(j) > self.bound):
            raise DegreeCapExceeded(f"action only known on factors of degree <= {self.bound}")
        return self.values.get((i, j), {})

    def act_vec(self, u: Mapping[int, Scalar], v: Mapping[int, Scalar]) -> Vec:
        out: Vec = {}
        for i, a in u.items():
            for j, b in v.items():
                add_into(out, self.act(i, j), a * b)
        return out

    def keys(self) -> list[Key]:
        """Basis pairs on which the table is known."""
        pairs = itertools.product(range(self.H.dim), repeat=2)
        if self.bound is None:
            return list(pairs)
        return [(i, j) for i, j in pairs if self.H.degree(i) <= self.bound and self.H.degree(j) <= self.bound]

    def equals(self, other: ActionTensor) -> bool:
        if self.side != other.side:
            return False
        keys = set(self.values) | set(other.values)
        return all(not difference(self.values.get(k, {}), other.values.get(k, {})) for k in keys)

    def first_difference(self, other: ActionTensor) -> tuple[Key, dict] | None:
        for key in sorted(set(self.values) | set(other.values)):
            diff = difference(self.values.get(key, {}), other.values.get(key, {}))
            if diff:
                return key, diff
        return None


def _action(H: HopfData, side: str, fn: Callable[[int, int], Vec], keys: Iterable[Key] | None = None, bound: int | None = None) -> ActionTensor:
    values: dict[Key, Vec] = {}
    for i, j in keys if keys is not None else itertools.product(range(H.dim), repeat=2):
        vec = {k: v for k, v in fn(i, j).items() if not v.is_zero()}
        if vec:
            values[(i, j)] = vec
    return ActionTensor(H, side, values, bound)


def trivial_actions(H: HopfData) -> tuple[ActionTensor, ActionTensor]:
    """``a ⇀ b = ε(a) b`` and ``a ↼ b = a ε(b)``."""
    left = _action(H, LEFT, lambda i, j: {j: H.counit[i]})
    right = _action(H, RIGHT, lambda i, j: {i: H.counit[j]})
    return left, right


def _e(H: HopfData, i: int) -> Vec:
    return {i: H.field.one}


def _pairs(H: HopfData, *actions: ActionTensor) -> list[Key]:
    return _bounded(H, H.tuples(2), *actions)


def _bounded(H: HopfData, tuples: list[Key], *actions: ActionTensor) -> list[Key]:
    bounds = [a.bound for a in actions if a.bound is not None]
    if not bounds:
        return tuples
    bound = min(bounds)
    return [t for t in tuples if sum(H.degree(i) for i in t) <= bound]


# module-coalgebra axioms ----------------------------------------------------

def check_module_coalgebra(H: HopfData, act: ActionTensor, jobs: int | None = None) -> VerificationReport:
    """Action axioms plus ``Δ(a▷b) = (a1▷b1)⊗(a2▷b2)`` and ``ε(a▷b) = ε(a)ε(b)``."""
    report = new_report(H)
    left = act.side == LEFT

    def unit_acts(t: Key) -> dict:
        (a,) = t
        out = act.act_vec(H.unit, _e(H, a)) if left else act.act_vec(_e(H, a), H.unit)
        return difference(out, _e(H, a))

    def associative(t: Key) -> dict:
        a, b, c = t
        if left:
            # (ab)⇀c = a⇀(b⇀c)
            lhs = act.act_vec(H.product(a, b), _e(H, c))
            rhs = act.act_vec(_e(H, a), act.act(b, c))
        else:
            # a↼(bc) = (a↼b)↼c
            lhs = act.act_vec(_e(H, a), H.product(b, c))
            rhs = act.act_vec(act.act(a, b), _e(H, c))
        return difference(lhs, rhs)

    def comul_linear(t: Key) -> dict:
        a, b = t
        lhs = H.delta_vec(act.act(a, b))
        rhs: TVec = {}
        for (a1, a2), ca in H.comul[a].items():
            for (b1, b2), cb in H.comul[b].items():
                add_into(rhs, tensor(act.act(a1, b1), act.act(a2, b2)), ca * cb)
        return difference(lhs, rhs)

    def counit_linear(t: Key) -> dict:
        a, b = t
        return scalar_diff(H.eps(act.act(a, b)), H.counit[a] * H.counit[b])

    pairs = _pairs(H, act)
    report.add(run_check("unit_acts", unit_acts, _bounded(H, H.tuples(1), act), jobs))
    report.add(run_check("action_associative", associative, _bounded(H, H.tuples(3), act), jobs))
    report.add(run_check("comul_linear", comul_linear, pairs, jobs))
    report.add(run_check("counit_linear", counit_linear, pairs, jobs))
    return report


# matched-pair axioms --------------------------------------------------------

def _mp_checks(H: HopfData, left: ActionTensor, right: ActionTensor) -> dict[str, tuple[Callable[[Key], dict], int]]:
    """Difference functions and arities for mp.1 .. mp.5 and the star condition."""

    def mp1(t: Key) -> dict:
        (a,) = t
        return difference(left.act_vec(_e(H, a), H.unit), {k: v * H.counit[a] for k, v in H.unit.items()})

    def mp2(t: Key) -> dict:
        (a,) = t
        return difference(right.act_vec(H.unit, _e(H, a)), {k: v * H.counit[a] for k, v in H.unit.items()})

    def mp3(t: Key) -> dict:
        a, b, c = t
        # a⇀(bc) = (a1⇀b1)((a2↼b2)⇀c)
        lhs = left.act_vec(_e(H, a), H.product(b, c))
        rhs: Vec = {}
        for (a1, a2), ca in H.comul[a].items():
            for (b1, b2), cb in H.comul[b].items():
                x = left.act(a1, b1)
                if not x:
                    continue
                y = left.act_vec(right.act(a2, b2), _e(H, c))
                if y:
                    add_into(rhs, H.mul_vec(x, y), ca * cb)
        return difference(lhs, rhs)

    def mp4(t: Key) -> dict:
        a, b, c = t
        # (ab)↼c = (a↼(b1⇀c1))(b2↼c2)
        lhs = right.act_vec(H.product(a, b), _e(H, c))
        rhs: Vec = {}
        for (b1, b2), cb in H.comul[b].items():
            for (c1, c2), cc in H.comul[c].items():
                y = right.act(b2, c2)
                if not y:
                    continue
                x = right.act_vec(_e(H, a), left.act(b1, c1))
                if x:
                    add_into(rhs, H.mul_vec(x, y), cb * cc)
        return difference(lhs, rhs)

    def star(t: Key) -> dict:
        a, b = t
        # ab = (a1⇀b1)(a2↼b2)
        rhs: Vec = {}
        for (a1, a2), ca in H.comul[a].items():
            for (b1, b2), cb in H.comul[b].items():
                x = left.act(a1, b1)
                if x:
                    add_into(rhs, H.mul_vec(x, right.act(a2, b2)), ca * cb)
        return difference(H.product(a, b), rhs)

    def mp5(t: Key) -> dict:
        a, b = t
        # (a1⇀b1)⊗(a2↼b2) = (a2⇀b2)⊗(a1↼b1)
        lhs: TVec = {}
        rhs: TVec = {}
        for (a1, a2), ca in H.comul[a].items():
            for (b1, b2), cb in H.comul[b].items():
                add_into(lhs, tensor(left.act(a1, b1), right.act(a2, b2)), ca * cb)
                add_into(rhs, tensor(left.act(a2, b2), right.act(a1, b1)), ca * cb)
        return difference(lhs, rhs)

    return {"mp.1": (mp1, 1), "mp.2": (mp2, 1), "mp.3": (mp3, 3), "mp.4": (mp4, 3), "star": (star, 2), "mp.5": (mp5, 2)}


def check_matched_pair(
    H: HopfData,
    left: ActionTensor,
    right: ActionTensor,
    require_star: bool = False,
    require_mp5: bool = False,
    jobs: int | None = None,
) -> VerificationReport:
    """Module-coalgebra checks for both actions, then mp.1-mp.4 and optionally star and mp.5."""
    if left.side != LEFT or right.side != RIGHT:
        raise ShapeError("check_matched_pair expects a left action and a right action")
    report = new_report(H)
    report.extend(check_module_coalgebra(H, left, jobs), "left.")
    report.extend(check_module_coalgebra(H, right, jobs), "right.")
    wanted = ["mp.1", "mp.2", "mp.3", "mp.4"] + (["star"] if require_star else []) + (["mp.5"] if require_mp5 else [])
    checks = _mp_checks(H, left, right)
    for name in wanted:
        fn, arity = checks[name]
        report.add(run_check(name, fn, _bounded(H, H.tuples(arity), left, right), jobs))
    return report


# braidings and actions --------------------------------------------------------

def extract_actions(H: HopfData, sigma: LinMap) -> tuple[ActionTensor, ActionTensor]:
    """``⇀ = (Id⊗ε)σ`` and ``↼ = (ε⊗Id)σ``, without checking any axiom."""
    if (sigma.domain_power, sigma.codomain_power) != (2, 2):
        raise ShapeError("a braiding maps H⊗H to H⊗H")
    bound = sigma.max_degree if H.truncated else None

    def leg(keep_first: bool) -> Callable[[int, int], Vec]:
        def fn(i: int, j: int) -> Vec:
            out: Vec = {}
            for (x, y), c in sigma.image((i, j)).items():
                kept, dropped = (x, y) if keep_first else (y, x)
                add_term(out, kept, c * H.counit[dropped])
            return out

        return fn

    keys = None if bound is None else [(i, j) for i, j in itertools.product(range(H.dim), repeat=2) if H.degree(i) <= bound and H.degree(j) <= bound]
    return _action(H, LEFT, leg(True), keys, bound), _action(H, RIGHT, leg(False), keys, bound)


def actions_from_braiding(H: HopfData, sigma: LinMap, jobs: int | None = None) -> tuple[ActionTensor, ActionTensor]:
    """Actions extracted from a braiding that satisfies (br.1)-(br.4)."""
    report = check_br_axioms(H, sigma, jobs)
    failed = [name for name in report.failed() if name != "braid_relation"]
    if failed:
        raise BrAxiomsFail(f"braiding fails {', '.join(failed)}", report)
    return extract_actions(H, sigma)


def actions_from_R(H: HopfData, R: LinMap, Rinv: LinMap | None = None) -> tuple[ActionTensor, ActionTensor]:
    """``a⇀b = R^{-1}(a1⊗b1) b2 R(a2⊗b3)`` and ``a↼b = R^{-1}(a1⊗b1) a2 R(a3⊗b2)``."""
    inv_map = _inverse_for_checks(H, R, Rinv)
    f, g = _as_form(H, R), _as_form(H, inv_map)
    bound = inv_map.max_degree if H.truncated else None

    def harpoon_left(a: int, b: int) -> Vec:
        out: Vec = {}
        for (a1, a2), ca in H.comul[a].items():
            for (b1, b2, b3), cb in H.delta(b, 3):
                r = g(a1, b1)
                if r:
                    r = r * f(a2, b3)
                    if r:
                        add_term(out, b2, ca * cb * r)
        return out

    def harpoon_right(a: int, b: int) -> Vec:
        out: Vec = {}
        for (a1, a2, a3), ca in H.delta(a, 3):
            for (b1, b2), cb in H.comul[b].items():
                r = g(a1, b1)
                if r:
                    r = r * f(a3, b2)
                    if r:
                        add_term(out, a2, ca * cb * r)
        return out

    keys = None if bound is None else [(i, j) for i, j in itertools.product(range(H.dim), repeat=2) if H.degree(i) <= bound and H.degree(j) <= bound]
    return _action(H, LEFT, harpoon_left, keys, bound), _action(H, RIGHT, harpoon_right, keys, bound)


def actions_from_comodule_braiding(H: HopfData, R: LinMap | Form) -> tuple[ActionTensor, ActionTensor]:
    """``a⇀b = R(a⊗b2) b1`` and ``a↼b = a1 R(a2⊗b)``, read off ``b1⊗a1 R(a2⊗b2)``."""
    f = _as_form(H, R)

    def harpoon_left(a: int, b: int) -> Vec:
        out: Vec = {}
        for (b1, b2), c in H.comul[b].items():
            r = f(a, b2)
            if r:
                add_term(out, b1, c * r)
        return out

    def harpoon_right(a: int, b: int) -> Vec:
        out: Vec = {}
        for (a1, a2), c in H.comul[a].items():
            r = f(a2, b)
            if r:
                add_term(out, a1, c * r)
        return out

    return _action(H, LEFT, harpoon_left), _action(H, RIGHT, harpoon_right)


def check_mp3_counterexample(H: HopfData, R: LinMap, jobs: int | None = None) -> VerificationReport:
    """mp.3 and braiding reconstruction for the actions read off the comodule braiding.

    The flag ``mp3_differs`` is true when ``a⇀(bc)`` and
    ``(a1⇀b1)((a2↼b2)⇀c)`` disagree somewhere; ``reconstruction_differs``
    is true when ``(a1⇀b1)⊗(a2↼b2)`` is not the comodule braiding.
    """
    report = new_report(H)
    left, right = actions_from_comodule_braiding(H, R)
    fn, _ = _mp_checks(H, left, right)["mp.3"]
    report.add(run_check("mp.3", fn, H.tuples(3), jobs))
    sigma = braiding_comodule(H, R)
    rebuilt = braiding_from_actions(H, left, right)
    report.add(run_check("reconstruction", lambda t: difference(rebuilt.image(t), sigma.image(t)), H.tuples(2), jobs))
    report.flags["mp3_differs"] = not report["mp.3"].passed
    report.flags["reconstruction_differs"] = not report["reconstruction"].passed
    return report


def braiding_from_actions(H: HopfData, left: ActionTensor, right: ActionTensor) -> LinMap:
    """``σ(a⊗b) = (a1⇀b1)⊗(a2↼b2)``."""

    def image(key: Key) -> TVec:
        a, b = key
        out: TVec = {}
        for (a1, a2), ca in H.comul[a].items():
            for (b1, b2), cb in H.comul[b].items():
                x = left.act(a1, b1)
                if x:
                    add_into(out, tensor(x, right.act(a2, b2)), ca * cb)
        return out

    bound = min([a.bound for a in (left, right) if a.bound is not None], default=None)
    keys = None if bound is None else [(i, j) for i, j in itertools.product(range(H.dim), repeat=2) if H.degree(i) <= bound and H.degree(j) <= bound]
    sigma = LinMap.from_function(H, 2, 2, image, keys)
    return LinMap(sigma.dim, 2, 2, sigma.images, bound)


# double cross product ---------------------------------------------------------

def double_cross_product(H: HopfData, left: ActionTensor, right: ActionTensor, jobs: int | None = None) -> HopfData:
    """``H⋈H`` on basis ``e_i⊗e_j`` (index ``i*n + j``).

    Product ``(a⊗h)(b⊗g) = a(h1⇀b1) ⊗ (h2↼b2)g``, tensor-product coalgebra.
    mp.1-mp.4 are required; if mp.5 fails the result carries
    ``flags["bialgebra"] = False`` and no antipode.
    """
    if H.truncated:
        raise ShapeError("double_cross_product needs an untruncated algebra")
    report = check_matched_pair(H, left, right, require_mp5=True, jobs=jobs)
    hard = [name for name in report.failed() if name != "mp.5"]
    if hard:
        raise MatchedPairAxiomsFail(f"not a matched pair: {', '.join(hard)} fail", report)
    is_bialgebra = report["mp.5"].passed
    n = H.dim

    def pack(vec: Mapping[Key, Scalar]) -> Vec:
        return {i * n + j: c for (i, j), c in vec.items()}

    def product(p: int, q: int) -> Vec:
        a, h = divmod(p, n)
        b, g = divmod(q, n)
        out: TVec = {}
        for (h1, h2), ch in H.comul[h].items():
            for (b1, b2), cb in H.comul[b].items():
                x = left.act(h1, b1)
                if not x:
                    continue
                y = right.act(h2, b2)
                if y:
                    add_into(out, tensor(H.mul_vec(_e(H, a), x), H.mul_vec(y, _e(H, g))), ch * cb)
        return pack(out)

    mul = [[product(p, q) for q in range(n * n)] for p in range(n * n)]
    comul: list[TVec] = []
    for p in range(n * n):
        a, h = divmod(p, n)
        out: TVec = {}
        for (a1, a2), ca in H.comul[a].items():
            for (h1, h2), ch in H.comul[h].items():
                add_term(out, (a1 * n + h1, a2 * n + h2), ca * ch)
        comul.append(out)
    unit = pack(tensor(H.unit, H.unit))
    counit = [H.counit[p // n] * H.counit[p % n] for p in range(n * n)]
    antipode = None
    if is_bialgebra and H.antipode is not None:
        # S(a⊗h) = (1⊗Th)(Ta⊗1) = (Th)1⇀(Ta)1 ⊗ (Th)2↼(Ta)2
        antipode = []
        for p in range(n * n):
            a, h = divmod(p, n)
            th, ta = H.delta_vec(H.T(h)), H.delta_vec(H.T(a))
            out = {}
            for (h1, h2), ch in th.items():
                for (a1, a2), ca in ta.items():
                    x = left.act(h1, a1)
                    if x:
                        add_into(out, tensor(x, right.act(h2, a2)), ch * ca)
            antipode.append(pack(out))
    basis = [f"{H.basis[a]}⊗{H.basis[h]}" for a in range(n) for h in range(n)]
    D = HopfData(basis, H.field, mul, unit, comul, counit, antipode)
    D.flags["bialgebra"] = is_bialgebra
    return D


# the five equivalent colinearity conditions -------------------------------------

def check_colinearity_equivalences(H: HopfData, left: ActionTensor, right: ActionTensor, jobs: int | None = None) -> VerificationReport:
    """Five conditions that share one truth value when ⇀ is a coalgebra map, ε(a↼b) = ε(a)ε(b) and star holds.

    Checks: ``right_action_coalgebra_map`` (Δ(a↼b) = (a1↼b1)⊗(a2↼b2)),
    ``four_leg_compatibility``, ``right_leg_compatibility``,
    ``left_leg_compatibility`` and ``mp.5``.  The flag
    ``equivalent`` records whether all five agree.
    """
    pre = new_report(H)
    pre.extend(check_module_coalgebra(H, left, jobs), "left.")
    right_report = check_module_coalgebra(H, right, jobs)
    pre.add(right_report["counit_linear"])
    mp = _mp_checks(H, left, right)
    star_fn, _ = mp["star"]
    pre.add(run_check("star", star_fn, H.tuples(2), jobs))
    needed = [name for name in ("left.comul_linear", "left.counit_linear", "counit_linear", "star") if not pre[name].passed]
    if needed:
        raise PreconditionFail(f"preconditions fail: {', '.join(needed)}", pre)

    def harp(a: int, b: int) -> Vec:
        return left.act(a, b)

    def rharp(a: int, b: int) -> Vec:
        return right.act(a, b)

    def legs(a: int, b: int, m: int) -> list[tuple[Key, Key, Scalar]]:
        return [(ka, kb, ca * cb) for ka, ca in H.delta(a, m) for kb, cb in H.delta(b, m)]

    def four_leg(t: Key) -> dict:
        a, b = t
        # ((a1⇀b1)(a3↼b3)) ⊗ ((a2⇀b2)(a4↼b4)) = ((a1⇀b1)(a3↼b3)_1) ⊗ ((a2⇀b2)(a3↼b3)_2)
        lhs: TVec = {}
        for (a1, a2, a3, a4), (b1, b2, b3, b4), c in legs(a, b, 4):
            x = H.mul_vec(harp(a1, b1), rharp(a3, b3))
            if x:
                add_into(lhs, tensor(x, H.mul_vec(harp(a2, b2), rharp(a4, b4))), c)
        rhs: TVec = {}
        for (a1, a2, a3), (b1, b2, b3), c in legs(a, b, 3):
            p, q = harp(a1, b1), harp(a2, b2)
            if not p or not q:
                continue
            for (r1, r2), d in H.delta_vec(rharp(a3, b3)).items():
                add_into(rhs, tensor(H.mul_vec(p, _e(H, r1)), H.mul_vec(q, _e(H, r2))), c * d)
        return difference(lhs, rhs)

    def right_leg(t: Key) -> dict:
        a, b = t
        # (a2↼b2) ⊗ ((a1⇀b1)(a3↼b3)) = (a1↼b1) ⊗ (a2 b2)
        lhs: TVec = {}
        for (a1, a2, a3), (b1, b2, b3), c in legs(a, b, 3):
            x = H.mul_vec(harp(a1, b1), rharp(a3, b3))
            if x:
                add_into(lhs, tensor(rharp(a2, b2), x), c)
        rhs: TVec = {}
        for (a1, a2), (b1, b2), c in legs(a, b, 2):
            add_into(rhs, tensor(rharp(a1, b1), H.product(a2, b2)), c)
        return difference(lhs, rhs)

    def left_leg(t: Key) -> dict:
        a, b = t
        # ((a1⇀b1)(a3↼b3)) ⊗ (a2⇀b2) = (a1 b1) ⊗ (a2⇀b2)
        lhs: TVec = {}
        for (a1, a2, a3), (b1, b2, b3), c in legs(a, b, 3):
            x = H.mul_vec(harp(a1, b1), rharp(a3, b3))
            if x:
                add_into(lhs, tensor(x, harp(a2, b2)), c)
        rhs: TVec = {}
        for (a1, a2), (b1, b2), c in legs(a, b, 2):
            add_into(rhs, tensor(H.product(a1, b1), harp(a2, b2)), c)
        return difference(lhs, rhs)

    mp5_fn, _ = mp["mp.5"]
    pairs = H.tuples(2)
    report = new_report(H)
    report.add(replace(right_report["comul_linear"], name="right_action_coalgebra_map"))
    report.add(run_check("four_leg_compatibility", four_leg, pairs, jobs))
    report.add(run_check("right_leg_compatibility", right_leg, pairs, jobs))
    report.add(run_check("left_leg_compatibility", left_leg, pairs, jobs))
    report.add(run_check("mp.5", mp5_fn, pairs, jobs))
    report.flags["equivalent"] = len({c.passed for c in report.checks}) == 1
    return report


# JSON -----------------------------------------------------------------------

def action_to_dict(act: ActionTensor) -> dict[str, Any]:
    return {
        "side": act.side,
        "values": [[i, j, [[k, str(v[k])] for k in sorted(v)]] for (i, j), v in sorted(act.values.items())],
    }


def action_to_json(act: ActionTensor) -> str:
    return json.dumps(action_to_dict(act), indent=1, ensure_ascii=False) + "\n"


def action_from_dict(H: HopfData, data: Mapping[str, Any]) -> ActionTensor:
    try:
        side = data["side"]
        values: dict[Key, Vec] = {}
        for i, j, entries in data["values"]:
            i, j = int(i), int(j)
            if not (0 <= i < H.dim and 0 <= j < H.dim):
                raise ShapeError(f"action entry ({i}, {j}) is outside dimension {H.dim}")
            vec: Vec = {}
            for k, c in entries:
                k = int(k)
                if not 0 <= k < H.dim:
                    raise ShapeError(f"action value index {k} is outside dimension {H.dim}")
                add_term(vec, k, parse_scalar(str(c), H.params))
            if vec:
                values[(i, j)] = vec
    except (KeyError, TypeError, ValueError) as exc:
        raise ShapeError(f"malformed action data: {exc!r}") from None
    return ActionTensor(H, side, values)
