"""Independent reference computations, written against sympy and sharing no code with ydforge.

``EnModel`` realises E(n) (so H4 for n = 1) on basis elements ``x_S g^e``
with explicit sign rules, extends ``R_A`` from generators by the coqt rules,
and evaluates the R-actions and the transmuted product and antipode straight
from their defining formulas.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from functools import lru_cache

import sympy

Elem = tuple[tuple[int, ...], int]  # (sorted indices of the x's, power of g)


def _add(acc: dict, key, value) -> None:
    value = sympy.expand(value)
    if value == 0:
        return
    total = sympy.expand(acc.get(key, 0) + value)
    if total == 0:
        acc.pop(key, None)
    else:
        acc[key] = total


def _clean(vec: dict) -> dict:
    return {k: v for k, v in vec.items() if sympy.simplify(v) != 0}


class EnModel:
    """E(n) with ``R_A``; ``A`` is an ``n x n`` nested list of sympy expressions."""

    def __init__(self, n: int, A: list[list[sympy.Expr]]):
        self.n = n
        self.A = A
        subsets = [tuple(c) for k in range(n + 1) for c in itertools.combinations(range(n), k)]
        self.basis: list[Elem] = [(s, e) for s in subsets for e in (0, 1)]

    # labels compatible with the catalog's basis names
    def label(self, elem: Elem) -> str:
        xs, e = elem
        names = ["x" if self.n == 1 else f"x{i + 1}" for i in xs]
        text = "".join(names) + ("g" if e else "")
        return text or "1"

    # algebra -------------------------------------------------------------------
    def mul_basis(self, u: Elem, v: Elem) -> dict:
        (s, e), (t, f) = u, v
        if set(s) & set(t):
            return {}
        sign = (-1) ** (e * len(t))  # move g^e past the x's of v
        merged = list(s) + list(t)
        inversions = sum(1 for i in range(len(merged)) for j in range(i + 1, len(merged)) if merged[i] > merged[j])
        sign *= (-1) ** inversions
        return {(tuple(sorted(merged)), (e + f) % 2): sympy.Integer(sign)}

    def mul(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for a, ca in u.items():
            for b, cb in v.items():
                for c, cc in self.mul_basis(a, b).items():
                    _add(out, c, ca * cb * cc)
        return out

    def e(self, elem: Elem) -> dict:
        return {elem: sympy.Integer(1)}

    # coalgebra on generators, extended multiplicatively --------------------------
    def _gen_comul(self, gen: Elem) -> dict:
        if gen == ((), 1):
            return {(gen, gen): sympy.Integer(1)}
        return {(gen, ((), 0)): sympy.Integer(1), (((), 1), gen): sympy.Integer(1)}

    def word(self, elem: Elem) -> list[Elem]:
        xs, e = elem
        return [((i,), 0) for i in xs] + ([((), 1)] if e else [])

    @lru_cache(maxsize=None)
    def comul(self, elem: Elem) -> tuple:
        out: dict = {(((), 0), ((), 0)): sympy.Integer(1)}
        for gen in self.word(elem):
            nxt: dict = {}
            for (a1, a2), c in out.items():
                for (g1, g2), d in self._gen_comul(gen).items():
                    for p1, c1 in self.mul_basis(a1, g1).items():
                        for p2, c2 in self.mul_basis(a2, g2).items():
                            _add(nxt, (p1, p2), c * d * c1 * c2)
            out = nxt
        return tuple(out.items())

    def delta(self, elem: Elem, m: int) -> dict:
        """Iterated coproduct into ``m`` legs."""
        out: dict = {(elem,): sympy.Integer(1)}
        for _ in range(m - 1):
            nxt: dict = {}
            for legs, c in out.items():
                for (l1, l2), d in self.comul(legs[-1]):
                    _add(nxt, legs[:-1] + (l1, l2), c * d)
            out = nxt
        return out

    def counit(self, elem: Elem) -> int:
        return 1 if not elem[0] else 0

    def T(self, elem: Elem) -> dict:
        """Antipode: anti-multiplicative with T(g) = g, T(x_i) = x_i g."""
        out = self.e(((), 0))
        for gen in self.word(elem):
            image = self.e(gen) if gen == ((), 1) else self.mul(self.e(gen), self.e(((), 1)))
            out = self.mul(image, out)
        return out

    # the form R_A ------------------------------------------------------------------
    def _R_gen(self, a: Elem, b: Elem) -> sympy.Expr:
        g = ((), 1)
        if a == g and b == g:
            return sympy.Integer(-1)
        if a != g and b != g:
            return self.A[a[0][0]][b[0][0]]
        return sympy.Integer(0)

    @lru_cache(maxsize=None)
    def R(self, u: Elem, v: Elem) -> sympy.Expr:
        """coqt.3 peels the left factor, coqt.2 the right one, down to generators."""
        wu, wv = self.word(u), self.word(v)
        if not wu:
            return sympy.Integer(self.counit(v))
        if not wv:
            return sympy.Integer(self.counit(u))
        if len(wu) > 1:
            first, rest = wu[0], self._from_word(wu[1:])
            return sympy.expand(sum(c * self.R(first, v1) * self.R(rest, v2) for (v1, v2), c in self.comul(v)))
        if len(wv) > 1:
            head, last = self._from_word(wv[:-1]), wv[-1]
            return sympy.expand(sum(c * self.R(a1, last) * self.R(a2, head) for (a1, a2), c in self.comul(u)))
        return self._R_gen(wu[0], wv[0])

    def _from_word(self, word: list[Elem]) -> Elem:
        out = self.e(((), 0))
        for gen in word:
            out = self.mul(out, self.e(gen))
        ((elem, coeff),) = out.items()
        assert coeff == 1, "generator words in canonical order multiply to a basis element"
        return elem

    def R_vec(self, u: dict, v: dict) -> sympy.Expr:
        return sympy.expand(sum(cu * cv * self.R(a, b) for a, cu in u.items() for b, cv in v.items()))

    def Rinv(self, u: Elem, v: Elem) -> sympy.Expr:
        """R^{-1}(a⊗b) = R(T(a)⊗b)."""
        return self.R_vec(self.T(u), self.e(v))

    def Rinv_vec(self, u: dict, v: dict) -> sympy.Expr:
        return sympy.expand(sum(cu * cv * self.Rinv(a, b) for a, cu in u.items() for b, cv in v.items()))

    # derived structures ------------------------------------------------------------------
    def left(self, a: Elem, b: Elem) -> dict:
        """a⇀b = R^{-1}(a1⊗b1) b2 R(a2⊗b3)."""
        out: dict = {}
        for (a1, a2), ca in self.comul(a):
            for (b1, b2, b3), cb in self.delta(b, 3).items():
                _add(out, b2, ca * cb * self.Rinv(a1, b1) * self.R(a2, b3))
        return out

    def right(self, a: Elem, b: Elem) -> dict:
        """a↼b = R^{-1}(a1⊗b1) a2 R(a3⊗b2)."""
        out: dict = {}
        for (a1, a2, a3), ca in self.delta(a, 3).items():
            for (b1, b2), cb in self.comul(b):
                _add(out, a2, ca * cb * self.Rinv(a1, b1) * self.R(a3, b2))
        return out

    def left_vec(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for a, cu in u.items():
            for b, cv in v.items():
                for k, c in self.left(a, b).items():
                    _add(out, k, cu * cv * c)
        return out

    def dot(self, a: Elem, b: Elem) -> dict:
        """a·b = a1•(T(a2)⇀b)."""
        out: dict = {}
        for (a1, a2), c in self.comul(a):
            for k, v in self.mul(self.e(a1), self.left_vec(self.T(a2), self.e(b))).items():
                _add(out, k, c * v)
        return out

    def S_bar(self, a: Elem) -> dict:
        """S(a) = a1⇀T(a2)."""
        out: dict = {}
        for (a1, a2), c in self.comul(a):
            for k, v in self.left_vec(self.e(a1), self.T(a2)).items():
                _add(out, k, c * v)
        return out

    def convolution_check(self) -> bool:
        """R * R^{-1} = ε⊗ε on every basis pair."""
        for u, v in itertools.product(self.basis, repeat=2):
            total = 0
            for (u1, u2), cu in self.comul(u):
                for (v1, v2), cv in self.comul(v):
                    total += cu * cv * self.R(u1, v1) * self.Rinv(u2, v2)
            if sympy.expand(total - self.counit(u) * self.counit(v)) != 0:
                return False
        return True


def to_labels(model: EnModel, vec: dict) -> dict[str, sympy.Expr]:
    """Key a model vector by catalog basis labels."""
    out: dict[str, sympy.Expr] = defaultdict(lambda: sympy.Integer(0))
    for k, v in vec.items():
        out[model.label(k)] += v
    return _clean(dict(out))


def engine_to_labels(H, vec) -> dict[str, sympy.Expr]:
    """Key an engine vector by basis label with sympy coefficients."""
    return _clean({H.basis[k]: sympy.sympify(str(v).replace("^", "**")) for k, v in vec.items()})


# rewriting oracle for the Suzuki basis -----------------------------------------------------

SUZUKI_ZERO_PAIRS = ("ab", "ba", "ac", "ca", "bd", "db", "cd", "dc")


def suzuki_irreducible_words(max_length: int = 6) -> list[str]:
    """Words in a, b, c, d containing no leading term of the Suzuki relations.

    Leading terms under deglex with b < c < a < d: aa, dd, cc, cb, da, bbb,
    bbc and the eight products that vanish.  The count stabilises once no
    irreducible word of the top length survives.
    """
    forbidden = {"aa", "dd", "cc", "cb", "da", "bbb", "bbc", *SUZUKI_ZERO_PAIRS}
    words = [""]
    frontier = [""]
    for _ in range(max_length):
        frontier = [w + x for w in frontier for x in "abcd" if not any(f in w + x for f in forbidden)]
        words += frontier
    return words
