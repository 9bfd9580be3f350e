"""Quotient Hopf algebras of the mod-3 dual Steenrod algebra.

Everything is written in the conjugate basis: polynomial generators
``zeta_n`` of degree 2(3^n - 1) and exterior generators ``taubar_n`` of
degree 2*3^n - 1.  The coproducts are the conjugate-basis formulas

    psi(zeta_n)   = sum_{i=0..n} zeta_i (x) zeta_{n-i}^(3^i)
    psi(taubar_n) = taubar_n (x) 1 + sum_{i<n} taubar_i (x) zeta_{n-i}^(3^i)
                    + 1 (x) taubar_n

reduced modulo the quotient's ideal.  Monomials are exponent tuples
aligned with the algebra's generator order (zetas ascending, then
taubars ascending); elements are dicts monomial -> nonzero residue.

Algebra descriptions are immutable after construction and all operations
are pure, so concurrent use is safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

Mono = tuple  # exponent tuple, one slot per generator
Elem = dict  # Mono -> coeff in {1, 2}
TensorElem = dict  # (Mono, Mono) -> coeff

DEFAULT_CAP = 180


def zeta_degree(n: int) -> int:
    return 2 * (3**n - 1)


def taubar_degree(n: int) -> int:
    return 2 * 3**n - 1


@dataclass(frozen=True)
class GeneratorSpec:
    name: str
    family: str  # "zeta" | "taubar"
    index: int
    degree: int
    height: int | None  # truncation height for polynomial gens, None = free
    may_weight: int | None = None

    @property
    def is_exterior(self) -> bool:
        return self.family == "taubar"


def _zeta(n: int, height: int | None, weight: int | None = None) -> GeneratorSpec:
    return GeneratorSpec(f"zeta{n}", "zeta", n, zeta_degree(n), height, weight)


def _taubar(n: int, weight: int | None = None) -> GeneratorSpec:
    return GeneratorSpec(f"taubar{n}", "taubar", n, taubar_degree(n), None, weight)


def add_term(elem: Elem, mono: Mono, coeff: int) -> None:
    c = (elem.get(mono, 0) + coeff) % 3
    if c:
        elem[mono] = c
    else:
        elem.pop(mono, None)


def add_elem(dst: Elem, src: Elem, coeff: int = 1) -> None:
    for m, c in src.items():
        add_term(dst, m, c * coeff)


class HopfAlgebra:
    """A finite (or degree-truncated) quotient Hopf algebra of A_*."""

    def __init__(self, name: str, generators: tuple[GeneratorSpec, ...], degree_cap: int,
                 primitive: bool = False, provenance: str = ""):
        self.name = name
        self.generators = generators
        self.degree_cap = degree_cap
        self.primitive = primitive  # associated-graded variant: all gens primitive
        self.provenance = provenance or name
        self._pos = {(g.family, g.index): i for i, g in enumerate(generators)}
        self._unit = tuple(0 for _ in generators)
        self._coproduct_cache: dict[Mono, TensorElem] = {}
        self._antipode_cache: dict[Mono, Elem] = {}
        self._basis_cache: dict[int, list[Mono]] = {}
        self._conv_cache: dict[int, dict] = {}

    # -- basic monomial bookkeeping ------------------------------------

    @property
    def unit_mono(self) -> Mono:
        return self._unit

    def gen_position(self, family: str, index: int) -> int | None:
        return self._pos.get((family, index))

    def gen_mono(self, family: str, index: int, exponent: int = 1) -> Mono | None:
        """Monomial gen^exponent, or None when it is zero in the quotient."""
        if exponent == 0:
            return self._unit
        pos = self._pos.get((family, index))
        if pos is None:
            return None
        g = self.generators[pos]
        if g.is_exterior and exponent > 1:
            return None
        if g.height is not None and exponent >= g.height:
            return None
        powers = list(self._unit)
        powers[pos] = exponent
        return tuple(powers)

    def degree(self, mono: Mono) -> int:
        return sum(e * g.degree for e, g in zip(mono, self.generators))

    def odd_positions(self, mono: Mono) -> list[int]:
        return [i for i, e in enumerate(mono) if e and self.generators[i].degree % 2]

    def monomial_name(self, mono: Mono) -> str:
        parts = []
        for e, g in zip(mono, self.generators):
            if e == 1:
                parts.append(g.name)
            elif e > 1:
                parts.append(f"{g.name}^{e}")
        return "*".join(parts) if parts else "1"

    def sort_key(self, mono: Mono):
        """zeta exponent vector lexicographic, then taubar subset as bitmask."""
        zetas = tuple(e for e, g in zip(mono, self.generators) if g.family == "zeta")
        mask = 0
        bit = 0
        for e, g in zip(mono, self.generators):
            if g.family == "taubar":
                if e:
                    mask |= 1 << bit
                bit += 1
        return (zetas, mask)

    def basis(self, degree: int) -> list[Mono]:
        """All monomials of the given degree, deterministically ordered."""
        if degree > self.degree_cap:
            raise ValueError(f"degree {degree} exceeds cap {self.degree_cap} of {self.name}")
        if degree < 0:
            return []
        if degree not in self._basis_cache:
            out: list[Mono] = []
            self._enumerate(0, degree, list(self._unit), out)
            out.sort(key=self.sort_key)
            self._basis_cache[degree] = out
        return list(self._basis_cache[degree])

    def _enumerate(self, pos: int, remaining: int, powers: list[int], out: list[Mono]) -> None:
        if pos == len(self.generators):
            if remaining == 0:
                out.append(tuple(powers))
            return
        g = self.generators[pos]
        max_e = remaining // g.degree
        if g.is_exterior:
            max_e = min(max_e, 1)
        elif g.height is not None:
            max_e = min(max_e, g.height - 1)
        for e in range(max_e + 1):
            powers[pos] = e
            self._enumerate(pos + 1, remaining - e * g.degree, powers, out)
        powers[pos] = 0

    def total_dimension(self) -> int:
        """Total dimension when the algebra is finite (all heights bounded)."""
        total = 1
        for g in self.generators:
            if g.is_exterior:
                total *= 2
            elif g.height is None:
                raise ValueError(f"{self.name} is not finite")
            else:
                total *= g.height
        return total

    # -- products -------------------------------------------------------

    def mono_mul(self, a: Mono, b: Mono) -> tuple[int, Mono] | None:
        """Product of monomials: (coeff, monomial) or None when zero."""
        sign = 1
        odd_a = self.odd_positions(a)
        if odd_a:
            inversions = 0
            for j in self.odd_positions(b):
                inversions += sum(1 for i in odd_a if i > j)
            if inversions % 2:
                sign = 2
        powers = []
        for ea, eb, g in zip(a, b, self.generators):
            e = ea + eb
            if e:
                if g.is_exterior and e > 1:
                    return None
                if g.height is not None and e >= g.height:
                    return None
            powers.append(e)
        return sign, tuple(powers)

    def multiply(self, x: Elem, y: Elem) -> Elem:
        out: Elem = {}
        for ma, ca in x.items():
            for mb, cb in y.items():
                r = self.mono_mul(ma, mb)
                if r is not None:
                    add_term(out, r[1], r[0] * ca * cb)
        return out

    def tensor_mul(self, s: TensorElem, t: TensorElem) -> TensorElem:
        """(a (x) b)(c (x) d) = (-1)^(|b||c|) ac (x) bd."""
        out: TensorElem = {}
        for (a, b), cab in s.items():
            deg_b = self.degree(b)
            for (c, d), ccd in t.items():
                rl = self.mono_mul(a, c)
                if rl is None:
                    continue
                rr = self.mono_mul(b, d)
                if rr is None:
                    continue
                coeff = rl[0] * rr[0] * cab * ccd
                if (deg_b * self.degree(c)) % 2:
                    coeff = -coeff
                key = (rl[1], rr[1])
                c0 = (out.get(key, 0) + coeff) % 3
                if c0:
                    out[key] = c0
                else:
                    out.pop(key, None)
        return out

    # -- coproduct, counit, antipode -------------------------------------

    def _coproduct_gen(self, pos: int) -> TensorElem:
        g = self.generators[pos]
        unit = self._unit
        gm = self.gen_mono(g.family, g.index)
        assert gm is not None
        out: TensorElem = {(gm, unit): 1, (unit, gm): 1}
        if self.primitive:
            return out
        if g.family == "zeta":
            for i in range(1, g.index):
                left = self.gen_mono("zeta", i)
                right = self.gen_mono("zeta", g.index - i, 3**i)
                if left is not None and right is not None:
                    out[(left, right)] = 1
        else:
            for i in range(g.index):
                left = self.gen_mono("taubar", i)
                right = self.gen_mono("zeta", g.index - i, 3**i)
                if left is not None and right is not None:
                    out[(left, right)] = 1
        return out

    def coproduct(self, mono: Mono) -> TensorElem:
        cached = self._coproduct_cache.get(mono)
        if cached is not None:
            return dict(cached)
        result: TensorElem = {(self._unit, self._unit): 1}
        for pos, e in enumerate(mono):
            if not e:
                continue
            base = self._coproduct_gen(pos)
            for _ in range(e):
                result = self.tensor_mul(result, base)
        self._coproduct_cache[mono] = result
        return dict(result)

    def reduced_coproduct(self, mono: Mono) -> TensorElem:
        out = self.coproduct(mono)
        out.pop((mono, self._unit), None)
        out.pop((self._unit, mono), None)
        return out

    def counit(self, elem: Elem) -> int:
        return elem.get(self._unit, 0)

    def antipode_mono(self, mono: Mono) -> Elem:
        cached = self._antipode_cache.get(mono)
        if cached is not None:
            return dict(cached)
        if mono == self._unit:
            return {self._unit: 1}
        out: Elem = {}
        for (m1, m2), c in self.coproduct(mono).items():
            if m2 == self._unit:
                continue  # the chi(m)*1 term we are solving for
            chi_m1 = self.antipode_mono(m1)
            for m, cm in chi_m1.items():
                r = self.mono_mul(m, m2)
                if r is not None:
                    add_term(out, r[1], -c * cm * r[0])
        self._antipode_cache[mono] = out
        return dict(out)

    def antipode(self, elem: Elem) -> Elem:
        out: Elem = {}
        for m, c in elem.items():
            add_elem(out, self.antipode_mono(m), c)
        return out

    def convolution_table(self, degree: int) -> dict:
        """Structure constants of the (plain) dual algebra in one degree.

        Maps (m1, m2) with |m1| + |m2| = degree to the terms [(m, coeff)]
        such that m1* . m2* = sum coeff m* in the convolution dual.  The
        coefficient is the one of m1 (x) m2 in psi(m).
        """
        table = self._conv_cache.get(degree)
        if table is None:
            table = {}
            for m in self.basis(degree):
                for (a, b), c in self.coproduct(m).items():
                    table.setdefault((a, b), []).append((m, c))
            self._conv_cache[degree] = table
        return table

    def dual_product(self, m1: Mono, m2: Mono) -> list:
        """m1* . m2* in the convolution dual, as [(mono, coeff)]."""
        return self.convolution_table(self.degree(m1) + self.degree(m2)).get((m1, m2), [])

    # -- May weights ------------------------------------------------------

    def may_weight(self, mono: Mono) -> int:
        total = 0
        for e, g in zip(mono, self.generators):
            if e:
                if g.may_weight is None:
                    raise ValueError(f"generator {g.name} of {self.name} carries no May weight")
                total += e * g.may_weight
        return total


def quotient_map(src: HopfAlgebra, dst: HopfAlgebra, mono: Mono) -> Mono | None:
    """Image of a src monomial under the generator-wise projection, None if zero."""
    powers = list(dst.unit_mono)
    for e, g in zip(mono, src.generators):
        if not e:
            continue
        pos = dst.gen_position(g.family, g.index)
        if pos is None:
            return None
        h = dst.generators[pos]
        if h.is_exterior and e > 1:
            return None
        if h.height is not None and e >= h.height:
            return None
        powers[pos] = e
    return tuple(powers)


@lru_cache(maxsize=None)
def algebra(name: str, degree_cap: int = DEFAULT_CAP) -> HopfAlgebra:
    """Named algebra registry: gamma, a1, e_tau2, dual_steenrod_truncated, e0_a1."""
    if name == "gamma":
        gens = (_zeta(1, 3), _taubar(0), _taubar(1), _taubar(2))
        return HopfAlgebra("gamma", gens, degree_cap, provenance="A*/(zeta1^3, zeta_n, taubar_m | n>=2, m>=3)")
    if name == "a1":
        gens = (_zeta(1, 3, weight=1), _taubar(0, weight=1), _taubar(1, weight=3))
        return HopfAlgebra("a1", gens, degree_cap, provenance="dual of A(1)")
    if name == "e0_a1":
        gens = (_zeta(1, 3, weight=1), _taubar(0, weight=1), _taubar(1, weight=3))
        return HopfAlgebra("e0_a1", gens, degree_cap, primitive=True,
                           provenance="associated graded of A(1)* under the May filtration")
    if name == "e_tau2":
        return HopfAlgebra("e_tau2", (_taubar(2),), degree_cap, provenance="E(taubar2)")
    if name == "dual_steenrod_truncated":
        zetas = []
        n = 1
        while zeta_degree(n) <= degree_cap:
            zetas.append(_zeta(n, None))
            n += 1
        taubars = []
        n = 0
        while taubar_degree(n) <= degree_cap:
            taubars.append(_taubar(n))
            n += 1
        return HopfAlgebra("dual_steenrod_truncated", tuple(zetas + taubars), degree_cap,
                           provenance=f"A* truncated above degree {degree_cap}")
    raise ValueError(f"unknown algebra {name!r}")


ALGEBRA_NAMES = ("gamma", "a1", "e_tau2", "dual_steenrod_truncated")


def random_monomial_pairs(alg: HopfAlgebra, count: int, max_degree: int, seed: int = 0):
    """Deterministic pseudo-random monomial pairs for compatibility spot checks."""
    import random

    rng = random.Random(seed)
    pool: list[Mono] = []
    for d in range(0, max_degree + 1):
        pool.extend(alg.basis(d))
    pairs = []
    for _ in range(count):
        a = pool[rng.randrange(len(pool))]
        b = pool[rng.randrange(len(pool))]
        pairs.append((a, b))
    return pairs
