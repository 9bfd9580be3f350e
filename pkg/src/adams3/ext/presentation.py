"""Monomial calculus for the cohomology of A(1)* and of Gamma.

The ring is  F3[v0, c6, beta] (x) E(alpha1, alpha2) / (v0 alpha1, v0 alpha2,
alpha1 alpha2 - v0 beta),  tensored with F3[v2] for Gamma.  Normal-form
basis monomials v0^a c6^k beta^l alpha1^e1 alpha2^e2 v2^j satisfy

    e1*e2 == 0,   a >= 1 -> e1 == e2 == 0,   a >= 2 -> l == 0,

because alpha1*alpha2 rewrites to v0*beta and v0^2*beta lies in the
relation ideal.  Products carry Koszul signs by stem parity; the unit in
alpha1*alpha2 = v0*beta is normalized to +1 (all chart statements are up
to units, which honest chain computations pin down separately).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

GENERATOR_BIDEGREES = {
    "v0": (1, 1),
    "alpha1": (1, 4),
    "alpha2": (2, 9),
    "beta": (2, 12),
    "c6": (3, 15),
    "v2": (1, 17),
}


@dataclass(frozen=True, order=True)
class ExtMono:
    """v0^a c6^k beta^l alpha1^e1 alpha2^e2 v2^j in normal form."""

    a: int = 0
    k: int = 0
    l: int = 0
    e1: int = 0
    e2: int = 0
    j: int = 0

    @property
    def s(self) -> int:
        return self.a + 3 * self.k + 2 * self.l + self.e1 + 2 * self.e2 + self.j

    @property
    def t(self) -> int:
        return self.a + 15 * self.k + 12 * self.l + 4 * self.e1 + 9 * self.e2 + 17 * self.j

    @property
    def stem(self) -> int:
        return self.t - self.s

    @property
    def name(self) -> str:
        parts = []
        for sym, e in (("v0", self.a), ("c6", self.k), ("beta", self.l),
                       ("alpha1", self.e1), ("alpha2", self.e2), ("v2", self.j)):
            if e == 1:
                parts.append(sym)
            elif e > 1:
                parts.append(f"{sym}^{e}")
        return "*".join(parts) if parts else "1"

    def is_basis(self) -> bool:
        if self.e1 and self.e2:
            return False
        if self.a >= 1 and (self.e1 or self.e2):
            return False
        if self.a >= 2 and self.l >= 1:
            return False
        return True


UNIT = ExtMono()


def from_exponents(a=0, k=0, l=0, e1=0, e2=0, j=0) -> ExtMono:
    return ExtMono(a, k, l, e1, e2, j)


@lru_cache(maxsize=None)
def parse_name(name: str) -> ExtMono:
    if name == "1":
        return UNIT
    exps = {"v0": 0, "c6": 0, "beta": 0, "alpha1": 0, "alpha2": 0, "v2": 0}
    for part in name.split("*"):
        if "^" in part:
            sym, e = part.split("^")
            exps[sym] += int(e)
        else:
            exps[part] += 1
    return ExtMono(exps["v0"], exps["c6"], exps["beta"], exps["alpha1"], exps["alpha2"], exps["v2"])


def multiply(m1: ExtMono, m2: ExtMono) -> tuple[int, ExtMono] | None:
    """Normal-form product: (coeff in {1,2}, monomial) or None when zero."""
    e1 = m1.e1 + m2.e1
    e2 = m1.e2 + m2.e2
    if e1 > 1 or e2 > 1:
        return None
    # Koszul sign: interleave odd factors (alpha1 rank 0, alpha2 rank 1)
    sign = 1
    inversions = sum(1 for x in ((1,) if m1.e2 else ()) for _y in ((0,) if m2.e1 else ()))
    if inversions % 2:
        sign = 2
    a = m1.a + m2.a
    k = m1.k + m2.k
    l = m1.l + m2.l
    j = m1.j + m2.j
    if e1 and e2:
        # alpha1*alpha2 = v0*beta (unit normalized to +1)
        e1 = e2 = 0
        a += 1
        l += 1
    if a >= 1 and (e1 or e2):
        return None
    if a >= 2 and l >= 1:
        return None
    return sign, ExtMono(a, k, l, e1, e2, j)


def multiply_names(n1: str, n2: str) -> tuple[int, str] | None:
    r = multiply(parse_name(n1), parse_name(n2))
    if r is None:
        return None
    return r[0], r[1].name


@lru_cache(maxsize=None)
def basis_bidegree(s: int, t: int, with_v2: bool = False) -> tuple[ExtMono, ...]:
    """All normal-form basis monomials in bidegree (s, t)."""
    out = []
    j_max = t // 17 if with_v2 else 0
    for j in range(j_max + 1):
        for k in range(t // 15 + 1):
            for l in range(t // 12 + 1):
                for e1 in (0, 1):
                    for e2 in (0, 1):
                        a = s - 3 * k - 2 * l - e1 - 2 * e2 - j
                        if a < 0:
                            continue
                        m = ExtMono(a, k, l, e1, e2, j)
                        if m.t == t and m.is_basis():
                            out.append(m)
    out.sort(key=lambda m: m.name)
    return tuple(out)


def dim(s: int, t: int, with_v2: bool = False) -> int:
    return len(basis_bidegree(s, t, with_v2))


def dims_in_window(s_max: int, t_max: int, with_v2: bool = False,
                   stem_max: int | None = None) -> dict:
    out = {}
    for s in range(s_max + 1):
        for t in range(t_max + 1):
            if stem_max is not None and t - s > stem_max:
                continue
            d = dim(s, t, with_v2)
            if d:
                out[(s, t)] = d
    return out


def gamma_dim_by_tensor(s: int, t: int) -> int:
    """dim Ext_Gamma^(s,t) via the v2-tensor decomposition (change of rings)."""
    return sum(dim(s - j, t - 17 * j, with_v2=False) for j in range(min(s, t // 17) + 1))
