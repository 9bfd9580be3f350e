"""The Adams E2-term of tmf as tagged pattern modules over Ext_{A(1)*}.

An E2 class is v2^j b4^eps times a normal-form monomial of the
presentation, constrained by which pattern copy it lives in:

    pattern 1   j = 0 mod 3, eps 0:  full module on v2^(3k)
    pattern 1   j = 2 mod 3, eps 1:  full module on v2^(3k+2) b4
    pattern 2   j = 0,1 mod 3, eps 1:  Ext/(alpha2) on v2^j b4
    pattern 3   j != 0 mod 3, eps 0:  Ext/(alpha1,alpha2,beta) on v0 v2^j
                                      + Ext/(alpha2,v0) on v2^j alpha2

The module structure folds in the hidden v0-extensions of the algebraic
spectral sequence: v0 * (v2^i alpha2 c6^k beta^l) = v2^(i-1) b4 c6^(k+1)
beta^l alpha1 for i != 0 mod 3.  Multiplication by v0, alpha1, alpha2,
beta, c6, v2^3 and v2^9 is what the differential propagation needs.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..ext import presentation as pres
from ..ext.presentation import ExtMono

PATTERN_COLORS = {
    "p1:1": "black",
    "p2:b4": "blue",
    "p3:v2": "limegreen",
    "p2:v2*b4": "darkmagenta",
    "p3:v2^2": "lavenderrose",
    "p1:v2^2*b4": "teal",
    "p1:v2^3": "seagreen",
    "p2:v2^3*b4": "maroon",
    "p3:v2^4": "darkviolet",
    "p2:v2^4*b4": "bluegray",
}


def class_name(m: ExtMono, eps: int) -> str:
    if eps == 0:
        return m.name
    return "b4" if m.name == "1" else m.name + "*b4"


def parse_class(name: str) -> tuple[ExtMono, int]:
    if name == "b4":
        return pres.UNIT, 1
    if name.endswith("*b4"):
        return pres.parse_name(name[: -len("*b4")]), 1
    return pres.parse_name(name), 0


def bidegree(m: ExtMono, eps: int) -> tuple[int, int]:
    return (m.s, m.t + 8 * eps)


def pattern_generator(j: int, eps: int, m: ExtMono) -> str | None:
    """Which pattern copy (by its generating monomial) a class belongs to."""
    if eps == 1:
        gen = f"v2^{j}*b4" if j else "b4"
        if j % 3 == 2:
            return gen  # pattern 1 copy on v2^(3k+2) b4
        # pattern 2 copy: Ext/(alpha2): no alpha2 factor, no v0*beta multiples
        if m.e2 == 0 and not (m.a >= 1 and m.l >= 1):
            return gen
        return None
    if j % 3 == 0:
        return f"v2^{j}" if j else "1"  # pattern 1, full
    # pattern 3 halves
    if m.e1 == 0 and m.e2 == 0 and m.l == 0 and m.a >= 1:
        return f"v2^{j}"  # Ext/(alpha1,alpha2,beta) . {v0 v2^j}
    if (m.e2 == 1 and m.a == 0) or (m.a == 1 and m.l >= 1 and m.e1 == 0 and m.e2 == 0):
        return f"v2^{j}"  # Ext/(alpha2,v0) . {v2^j alpha2} (alpha1-multiples rewrite)
    return None


def pattern_tag(j: int, eps: int, m: ExtMono) -> str | None:
    gen = pattern_generator(j, eps, m)
    if gen is None:
        return None
    if eps == 1:
        kind = "p1" if j % 3 == 2 else "p2"
    else:
        kind = "p1" if j % 3 == 0 else "p3"
    return f"{kind}:{gen}"


@dataclass(frozen=True)
class AdamsClass:
    m: ExtMono  # includes the v2 exponent j
    eps: int

    @property
    def j(self) -> int:
        return self.m.j

    @property
    def name(self) -> str:
        return class_name(self.m, self.eps)

    @property
    def s(self) -> int:
        return self.m.s

    @property
    def t(self) -> int:
        return self.m.t + 8 * self.eps

    @property
    def stem(self) -> int:
        return self.t - self.s

    @property
    def tag(self) -> str:
        base = ExtMono(self.m.a, self.m.k, self.m.l, self.m.e1, self.m.e2, 0)
        return pattern_tag(self.j, self.eps, base)


def is_e2_class(m: ExtMono, eps: int) -> bool:
    base = ExtMono(m.a, m.k, m.l, m.e1, m.e2, 0)
    return pattern_generator(m.j, eps, base) is not None


def e2_classes(stem_max: int, s_max: int) -> list[AdamsClass]:
    """All Adams E2 classes with stem <= stem_max and s <= s_max."""
    out = []
    for j in range(stem_max // 16 + 2):
        for eps in (0, 1):
            base_stem = 16 * j + 8 * eps
            if base_stem > stem_max:
                continue
            for s_ring in range(s_max + 1):
                for t in range(s_ring, s_ring + stem_max - base_stem + 1):
                    for base in pres.basis_bidegree(s_ring, t):
                        m = ExtMono(base.a, base.k, base.l, base.e1, base.e2, j)
                        if m.s > s_max:
                            continue
                        c = AdamsClass(m, eps)
                        if c.stem <= stem_max and is_e2_class(m, eps):
                            out.append(c)
    seen = set()
    unique = []
    for c in sorted(out, key=lambda c: (c.s, c.t, c.name)):
        if c.name not in seen:
            seen.add(c.name)
            unique.append(c)
    return unique


MULTIPLIERS = ("v0", "alpha1", "alpha2", "beta", "c6", "v2^3", "v2^9")


def multiply_class(mult: str, c: AdamsClass) -> tuple[int, AdamsClass] | None:
    """mult * c in the E2 module structure, hidden v0-extensions included.

    Returns (coefficient, class), or None when the product is zero (left
    the pattern or vanished in the presentation).
    """
    mm = pres.parse_name(mult)
    r = pres.multiply(mm, c.m)
    if r is not None:
        coeff, prod = r
        cand = AdamsClass(prod, c.eps)
        base = ExtMono(prod.a, prod.k, prod.l, prod.e1, prod.e2, 0)
        if pattern_generator(prod.j, c.eps, base) is not None:
            return coeff, cand
        return None
    if mult == "v0" and c.eps == 0 and c.j % 3 != 0 and c.m.e2 == 1 and c.m.a == 0:
        # hidden extension: v0 . (v2^j alpha2 c6^k beta^l) = v2^(j-1) b4 c6^(k+1) beta^l alpha1
        tgt = ExtMono(0, c.m.k + 1, c.m.l, 1, 0, c.j - 1)
        base = ExtMono(0, tgt.k, tgt.l, 1, 0, 0)
        if pattern_generator(tgt.j, 1, base) is not None:
            return 1, AdamsClass(tgt, 1)
        return None
    return None


def act_by_name(mult: str, name: str) -> tuple[int, str] | None:
    m, eps = parse_class(name)
    r = multiply_class(mult, AdamsClass(m, eps))
    if r is None:
        return None
    return r[0], r[1].name


def stem_parity(mult: str) -> int:
    return pres.parse_name(mult).stem % 2


def is_tower_class(c: AdamsClass) -> bool:
    """True when v0^k . c is nonzero for all k (a Z3-tower at E-infinity)."""
    cur = c
    for _ in range(3):
        r = multiply_class("v0", cur)
        if r is None:
            return False
        # a hidden extension jumps patterns; towers are the straight v0-lines
        if r[1].eps != cur.eps:
            return False
        cur = r[1]
    return True
