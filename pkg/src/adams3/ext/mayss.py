"""The May spectral sequence for A(1)*: an independent route to its Ext.

E1 is the cohomology of the associated graded (all generators primitive),
E(alpha1) (x) P(v0, v1, beta) with tri-degrees (May weight, s, t)

    alpha1 (1,1,4)   v0 (1,1,1)   v1 (3,1,5)   beta (3,2,12).

The d1 seed d1(v1) = v0 alpha1 and the d2 seed d2(alpha1 v1^2) = v0^2 beta
are both computed honestly at the cochain level in the cobar complex of
A(1)* (the d2 family is forced: the relation ideal kills v0^2 beta).  The
remaining differentials are the Leibniz/derivation closures of the seeds,
the pages are turned by exact linear algebra, and collapse at E3 is
certified by a degree scan.  E-infinity totals are compared against the
minimal-resolution route by the caller.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .. import gf3, hopf
from ..sseq import MAY_PROFILE, LinearitySet, Sseq
from .cobar import CobarComplex

GENS = {
    # name: (may, s, t)
    "v0": (1, 1, 1),
    "alpha1": (1, 1, 4),
    "v1": (3, 1, 5),
    "beta": (3, 2, 12),
}


@dataclass(frozen=True)
class MayMono:
    a: int = 0  # v0
    e: int = 0  # alpha1
    b: int = 0  # v1
    c: int = 0  # beta

    @property
    def tri(self) -> tuple:
        return (
            self.a + self.e + 3 * self.b + 3 * self.c,
            self.a + self.e + self.b + 2 * self.c,
            self.a + 4 * self.e + 5 * self.b + 12 * self.c,
        )

    @property
    def name(self) -> str:
        parts = []
        for sym, exp in (("v0", self.a), ("alpha1", self.e), ("v1", self.b), ("beta", self.c)):
            if exp == 1:
                parts.append(sym)
            elif exp > 1:
                parts.append(f"{sym}^{exp}")
        return "*".join(parts) if parts else "1"

    @property
    def stem_parity(self) -> int:
        return self.e  # alpha1 is the only odd-stem generator

    def times(self, other: "MayMono") -> "MayMono | None":
        if self.e + other.e > 1:
            return None
        return MayMono(self.a + other.a, self.e + other.e, self.b + other.b, self.c + other.c)


def monomials(s_max: int, t_max: int) -> list[MayMono]:
    out = []
    for b in range(t_max // 5 + 1):
        for c in range(t_max // 12 + 1):
            for e in (0, 1):
                for a in range(t_max + 1):
                    m = MayMono(a, e, b, c)
                    _w, s, t = m.tri
                    if s <= s_max and t <= t_max:
                        out.append(m)
    out.sort(key=lambda m: m.name)
    return out


def e1_dim_total(s: int, t: int) -> int:
    """Total E1 monomial count over all May weights in one (s, t)."""
    count = 0
    for e in (0, 1):
        for b in range((t - 4 * e) // 5 + 1):
            for c in range((t - 4 * e - 5 * b) // 12 + 1):
                a = s - e - b - 2 * c
                if a >= 0 and MayMono(a, e, b, c).tri[1:] == (s, t):
                    count += 1
    return count


def e1_dim(tri: tuple) -> int:
    """Monomial count of E(alpha1) (x) P(v0, v1, beta) in one tri-degree."""
    w, s, t = tri
    count = 0
    for e in (0, 1):
        for b in range((t - 4 * e) // 5 + 1):
            for c in range((t - 4 * e - 5 * b) // 12 + 1):
                a = s - e - b - 2 * c
                if a < 0:
                    continue
                m = MayMono(a, e, b, c)
                if m.tri == tri:
                    count += 1
    return count


# -- honest cochain seeds ------------------------------------------------------


def verify_d1_seed(cap: int = 30) -> int:
    """d[taubar1] = [taubar0 | zeta1] in the cobar complex of A(1)*.

    Returns the unit c with d(v1-cochain) = c * (v0 alpha1)-cochain.
    """
    alg = hopf.algebra("a1", cap)
    C = CobarComplex(alg)
    t1 = alg.gen_mono("taubar", 1)
    t0 = alg.gen_mono("taubar", 0)
    z1 = alg.gen_mono("zeta", 1)
    d = C.d_word(((t1,), "1"))
    expected_word = ((t0, z1), "1")
    if set(d) != {expected_word}:
        raise AssertionError(f"unexpected d[taubar1] support: {sorted(d)}")
    return d[expected_word]


def _weight(alg, word) -> int:
    return sum(alg.may_weight(a) for a in word[0])


def verify_d2_seed(cap: int = 30) -> int:
    """Leading-term computation of d2(alpha1 v1^2) = c * v0^2 beta, c != 0.

    Finds a cochain w in filtration 7 of C^(3,14) whose weight-7 part
    represents alpha1 v1^2 and with d(w) of weight <= 5, then identifies
    the weight-5 part of d(w) against the v0^2 beta representative inside
    E2^(5,4,14).  Returns the unit c.
    """
    alg = hopf.algebra("a1", cap)
    C = CobarComplex(alg)
    z1 = alg.gen_mono("zeta", 1)
    z2 = alg.gen_mono("zeta", 1, 2)
    t0 = alg.gen_mono("taubar", 0)
    t1 = alg.gen_mono("taubar", 1)

    dom = C.basis(3, 14)
    cod = C.basis(4, 14)
    dom_w = [_weight(alg, w) for w in dom]
    cod_w = [_weight(alg, w) for w in cod]
    # leading representative of alpha1 v1^2 (a d0-cocycle at weight 7):
    # the symmetrized concatenation of [zeta1], [taubar1], [taubar1]
    lead = {}
    for perm in set(itertools.permutations((z1, t1, t1))):
        lead[(perm, "1")] = 1
    assert all(_weight(alg, w) == 7 for w in lead)
    # solve d(lead + x) in F_5 with x of weight <= 6
    x_cols = [i for i, w in enumerate(dom) if dom_w[i] <= 6]
    rows = [i for i, w in enumerate(cod) if cod_w[i] >= 6]
    d_lead = C.d_elem(lead)
    cod_index = {w: i for i, w in enumerate(cod)}
    rhs = [0] * len(rows)
    row_pos = {r: k for k, r in enumerate(rows)}
    for w, c in d_lead.items():
        i = cod_index[w]
        if cod_w[i] >= 6:
            rhs[row_pos[i]] = (-c) % 3
    entries = {}
    for jj, j in enumerate(x_cols):
        for w, c in C.d_word(dom[j]).items():
            i = cod_index[w]
            if cod_w[i] >= 6:
                entries[(row_pos[i], jj)] = c
    mat = gf3.F3Matrix(len(rows), len(x_cols), entries)
    x = gf3.solve(mat, rhs)
    if x is None:
        raise AssertionError("no filtration-compatible representative for alpha1 v1^2")
    w_elem = dict(lead)
    for jj, j in enumerate(x_cols):
        if x[jj]:
            w_elem[dom[j]] = (w_elem.get(dom[j], 0) + x[jj]) % 3
    dw = C.d_elem(w_elem)
    assert all(_weight(alg, w) <= 5 for w in dw), "d(w) not in filtration 5"
    # v0^2 beta leading representative: concatenation [t0].[t0].beta
    target = {((t0, t0, z2, z1), "1"): 1, ((t0, t0, z1, z2), "1"): 1}
    w5_rows = [i for i, _w in enumerate(cod) if cod_w[i] == 5]
    pos5 = {r: k for k, r in enumerate(w5_rows)}

    def project5(elem):
        vec = [0] * len(w5_rows)
        for w, c in elem.items():
            i = cod_index[w]
            if cod_w[i] == 5:
                vec[pos5[i]] = c
        return vec

    tvec = project5(target)
    if not any(tvec):
        raise AssertionError("v0^2 beta representative projects to zero")
    # legitimate E2 denominators at weight 5: d0-boundaries from weight<=5
    # cochains, and d1-boundaries from weight-6 d0-cocycles
    col_vecs = [tvec]
    for j, w in enumerate(dom):
        if dom_w[j] <= 5:
            dv = project5(C.d_word(w))
            if any(dv):
                col_vecs.append(dv)
    w6_cols = [j for j, _w in enumerate(dom) if dom_w[j] == 6]
    rows6 = [i for i, _w in enumerate(cod) if cod_w[i] == 6]
    pos6 = {r: k for k, r in enumerate(rows6)}
    entries6 = {}
    for jj, j in enumerate(w6_cols):
        for w2, c in C.d_word(dom[j]).items():
            i = cod_index[w2]
            if i in pos6:
                entries6[(pos6[i], jj)] = c
    for kv in gf3.kernel_basis(gf3.F3Matrix(len(rows6), len(w6_cols), entries6)).basis:
        elem = {}
        for jj, j in enumerate(w6_cols):
            if kv[jj]:
                elem[dom[j]] = kv[jj]
        dv = project5(C.d_elem(elem))
        if any(dv):
            col_vecs.append(dv)
    entries = {}
    for j, col in enumerate(col_vecs):
        for i, v in enumerate(col):
            if v:
                entries[(i, j)] = v
    mat = gf3.F3Matrix(len(w5_rows), len(col_vecs), entries)
    sol = gf3.solve(mat, project5(dw))
    if sol is None or sol[0] == 0:
        raise AssertionError("d2 leading term is not a unit multiple of v0^2 beta")
    return sol[0]


# -- the ledger run --------------------------------------------------------------


@dataclass
class MayRun:
    ledger: Sseq
    d1_unit: int
    d2_unit: int
    e1_checked_cells: int

    def einf_dims_by_st(self) -> dict:
        out: dict = {}
        for c in self.ledger.alive_classes():
            _m, s, t = c.degrees
            out[(s, t)] = out.get((s, t), 0) + 1
        return out


def run_may(s_max: int, t_max: int, e1_oracle_dims: dict | None = None) -> MayRun:
    """Full May route: honest seeds + derivation closure + page turns + scan.

    e1_oracle_dims, when given, is the bigraded dimension table of an
    independently computed Ext over the associated graded (resolution
    route); the tri-graded monomial basis is checked against it.
    """
    monos = monomials(s_max + 1, t_max)
    checked = 0
    if e1_oracle_dims is not None:
        by_st: dict = {}
        for m in monos:
            _w, s, t = m.tri
            by_st[(s, t)] = by_st.get((s, t), 0) + 1
        for s in range(s_max + 1):
            for t in range(t_max + 1):
                want = e1_oracle_dims.get((s, t), 0)
                got = by_st.get((s, t), 0)
                if want != got:
                    raise AssertionError(f"May E1 mismatch at {(s, t)}: {got} vs resolution {want}")
                checked += 1
    d1_unit = verify_d1_seed()
    d2_unit = verify_d2_seed()

    ledger = Sseq(MAY_PROFILE, [(m.name, m.tri) for m in monos], start_page=1)
    by_name = {m.name: m for m in monos}

    # d1 closure: the derivation rule on monomials,
    #   d1(v0^a alpha1^e v1^b beta^c) = +-b v0^(a+1) alpha1^(e+1) v1^(b-1) beta^c
    for m in monos:
        if m.b == 0 or m.e == 1 or m.b % 3 == 0:
            continue
        target = MayMono(m.a + 1, 1, m.b - 1, m.c)
        if target.name not in by_name:
            continue
        coeff = (m.b * d1_unit) % 3
        ledger.assert_differential(1, m.name, target.name, coeff,
                                   provenance="derivation from d1(v1)=v0*alpha1 (cobar-verified)")
    ledger.turn_page()

    # d2 family from the cochain-verified seed, linear over v0, beta, v1^3
    def act(mult: str, x: str):
        mm = {"v0": MayMono(a=1), "beta": MayMono(c=1), "v1^3": MayMono(b=3)}[mult]
        prod = by_name.get(x) and by_name[x].times(mm)
        if prod is None or prod.name not in by_name:
            return None
        return (1, prod.name)

    linearity = LinearitySet(
        multipliers=("v0", "beta", "v1^3"),
        act=act,
        parity=lambda name: 0,
    )
    seed_src = MayMono(0, 1, 2, 0)
    seed_tgt = MayMono(2, 0, 0, 1)
    if ledger.alive(seed_src.name) and ledger.alive(seed_tgt.name):
        ledger.assert_differential(2, seed_src.name, seed_tgt.name, d2_unit,
                                   provenance="cochain leading-term computation",
                                   linearity=linearity)
    ledger.turn_page()
    ledger.e_infinity(r_max=3 * (t_max // 5) + 4)
    return MayRun(ledger, d1_unit, d2_unit, checked)


# -- raw filtered-complex pages (low-degree validation) ---------------------------


def raw_page_dims(s: int, t: int, r: int, cap: int = 30) -> dict:
    """dim E_r^(m,s,t) computed from the filtered cobar complex itself.

    Standard subspace formulas: Z_r^m = {x in F_m : dx in F_(m-r)},
    E_r^m = Z_r^m / (Z_(r-1)^(m-1) + d Z_(r-1)^(m+r-1)).
    """
    alg = hopf.algebra("a1", cap)
    C = CobarComplex(alg)

    def words(ss, tt):
        return C.basis(ss, tt)

    def weight_of(w):
        return _weight(alg, w)

    def z_space(ss, tt, m, rr) -> gf3.Subspace:
        dom = words(ss, tt)
        if not dom:
            return gf3.Subspace(0)
        cod = words(ss + 1, tt)
        cod_index = {w: i for i, w in enumerate(cod)}
        rows = [i for i, w in enumerate(cod) if weight_of(w) > m - rr]
        pos = {ri: k for k, ri in enumerate(rows)}
        cols = [j for j, w in enumerate(dom) if weight_of(w) <= m]
        entries = {}
        for jj, j in enumerate(cols):
            for w2, c in C.d_word(dom[j]).items():
                i = cod_index[w2]
                if i in pos:
                    entries[(pos[i], jj)] = c
        mat = gf3.F3Matrix(len(rows), len(cols), entries)
        ker = gf3.kernel_basis(mat)
        vecs = []
        for kv in ker.basis:
            full = [0] * len(dom)
            for jj, j in enumerate(cols):
                full[j] = kv[jj]
            vecs.append(tuple(full))
        return gf3.Subspace.from_vectors(len(dom), vecs)

    def d_image(ss, tt, space: gf3.Subspace) -> list:
        dom = words(ss, tt)
        cod = words(ss + 1, tt)
        cod_index = {w: i for i, w in enumerate(cod)}
        out = []
        for vec in space.basis:
            elem = {dom[i]: v for i, v in enumerate(vec) if v}
            img = C.d_elem(elem)
            full = [0] * len(cod)
            for w, c in img.items():
                full[cod_index[w]] = c
            out.append(tuple(full))
        return out

    dims = {}
    n = len(words(s, t))
    weights = sorted({weight_of(w) for w in words(s, t)})
    for m in weights:
        z = z_space(s, t, m, r)
        lower = z_space(s, t, m - 1, r - 1)
        bvecs = d_image(s - 1, t, z_space(s - 1, t, m + r - 1, r - 1)) if s > 0 else []
        denom = gf3.Subspace.from_vectors(n, list(lower.basis) + bvecs)
        for b in denom.basis:
            if not z.contains(b):
                raise AssertionError(f"page denominator leaves Z_r at weight {m}")
        d = z.dim - denom.dim
        if d:
            dims[m] = d
    return dims
