"""Minimal free resolutions over the (plain) dual of a finite Hopf algebra.

A resolution of a DualModule M is built degreewise: at each level s the
new generators are chosen in internal-degree-ascending order to minimally
generate the kernel of the previous differential.  Generator counts per
bidegree are therefore the Ext dimensions Ext^{s,t}(M, F3).

Construction is sequential in s within each internal degree; once chosen,
levels are frozen (read-only, safe for concurrent queries).
"""

from __future__ import annotations

from dataclasses import dataclass

from .. import gf3
from ..comodule import DualModule
from ..hopf import Mono


@dataclass(frozen=True)
class ResolutionGenerator:
    s: int
    index: int  # position within the level
    t: int
    name: str
    # differential image: for s >= 1 terms (h_mono, lower_gen_index, coeff);
    # for s == 0 terms (None, module_basis_name, coeff) with h implicitly 1.
    image: tuple


class CapExceeded(RuntimeError):
    def __init__(self, s: int, t: int, msg: str):
        super().__init__(f"resolution cap exceeded at bidegree (s={s}, t={t}): {msg}")
        self.bidegree = (s, t)


class MinimalResolution:
    """Levels of free-module generators with differentials, up to (s_max, t_max)."""

    def __init__(self, module: DualModule, s_max: int, t_max: int):
        if module.degree_cap < t_max:
            raise CapExceeded(0, t_max, f"module materialized only to degree {module.degree_cap}")
        if module.algebra.degree_cap < t_max:
            raise CapExceeded(0, t_max, f"algebra cap is {module.algebra.degree_cap}")
        self.module = module
        self.algebra = module.algebra
        self.s_max = s_max
        self.t_max = t_max
        self.levels: list[list[ResolutionGenerator]] = [[] for _ in range(s_max + 1)]
        self._module_index: dict[int, dict[str, int]] = {}
        self._compute()

    # -- bases ---------------------------------------------------------------

    def module_basis(self, t: int) -> list[str]:
        return self.module.basis_in_degree(t)

    def free_basis(self, s: int, t: int) -> list[tuple[Mono, int]]:
        """Ordered basis of (F_s)_t: pairs (algebra monomial, generator index)."""
        out = []
        for g in self.levels[s]:
            if g.t <= t:
                for h in self.algebra.basis(t - g.t):
                    out.append((h, g.index))
        out.sort(key=lambda p: (p[1], self.algebra.sort_key(p[0])))
        return out

    def dims(self) -> dict:
        table: dict = {}
        for s, level in enumerate(self.levels):
            for g in level:
                table[(s, g.t)] = table.get((s, g.t), 0) + 1
        return table

    def dim(self, s: int, t: int) -> int:
        if s < 0 or s > self.s_max:
            return 0
        return sum(1 for g in self.levels[s] if g.t == t)

    def generators(self, s: int) -> list[ResolutionGenerator]:
        return list(self.levels[s])

    # -- differentials ---------------------------------------------------------

    def _act_on_module(self, h: Mono, vec: dict) -> dict:
        out: dict = {}
        if h == self.algebra.unit_mono:
            return dict(vec)
        for name, c in vec.items():
            for name2, c2 in self.module.act(h, name):
                v = (out.get(name2, 0) + c * c2) % 3
                if v:
                    out[name2] = v
                else:
                    out.pop(name2, None)
        return out

    def _act_on_free(self, h: Mono, image: tuple) -> dict:
        """h . d(g) inside F_{s-1}, as {(h2, gen_idx): coeff}."""
        alg = self.algebra
        out: dict = {}
        if h == alg.unit_mono:
            for h1, gi, c in image:
                k = (h1, gi)
                out[k] = (out.get(k, 0) + c) % 3
            return {k: v for k, v in out.items() if v}
        for h1, gi, c in image:
            for h2, c2 in alg.dual_product(h, h1):
                k = (h2, gi)
                v = (out.get(k, 0) + c * c2) % 3
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        return out

    def diff_matrix(self, s: int, t: int) -> tuple[gf3.F3Matrix, list, list]:
        """Matrix of d_s at internal degree t, with its (row, col) bases.

        d_0 maps into the module; d_s for s >= 1 into (F_{s-1})_t.
        """
        alg = self.algebra
        cols = self.free_basis(s, t)
        if s == 0:
            rows = self.module_basis(t)
            row_index = {n: i for i, n in enumerate(rows)}
            entries = {}
            for j, (h, gi) in enumerate(cols):
                g = self.levels[0][gi]
                vec = self._act_on_module(h, {name: c for _h, name, c in g.image})
                for name, c in vec.items():
                    entries[(row_index[name], j)] = c
            return gf3.F3Matrix(len(rows), len(cols), entries), rows, cols
        rows = self.free_basis(s - 1, t)
        row_index = {p: i for i, p in enumerate(rows)}
        entries = {}
        for j, (h, gi) in enumerate(cols):
            g = self.levels[s][gi]
            vec = self._act_on_free(h, g.image)
            for key, c in vec.items():
                entries[(row_index[key], j)] = c
        return gf3.F3Matrix(len(rows), len(cols), entries), rows, cols

    # -- construction ------------------------------------------------------------

    def _compute(self) -> None:
        alg = self.algebra
        unit = alg.unit_mono
        for t in range(self.t_max + 1):
            # level 0: minimal generators of the module itself
            mod_names = self.module_basis(t)
            if mod_names:
                ambient = gf3.Subspace.from_vectors(
                    len(mod_names), [tuple(1 if i == j else 0 for i in range(len(mod_names))) for j in range(len(mod_names))]
                )
                span_vecs = []
                name_index = {n: i for i, n in enumerate(mod_names)}
                for d in range(1, t + 1):
                    for h in alg.basis(d):
                        for name in self.module_basis(t - d):
                            acted = self.module.act(h, name)
                            if acted:
                                vec = [0] * len(mod_names)
                                for n2, c in acted:
                                    vec[name_index[n2]] = c
                                span_vecs.append(tuple(vec))
                span = gf3.Subspace.from_vectors(len(mod_names), span_vecs)
                for rep in gf3.quotient_basis(ambient, span):
                    idx = len(self.levels[0])
                    image = tuple((None, mod_names[i], c) for i, c in enumerate(rep) if c)
                    self.levels[0].append(
                        ResolutionGenerator(0, idx, t, f"g[0,{idx}]", image)
                    )
            for s in range(1, self.s_max + 1):
                lower, _lrows, rows = self.diff_matrix(s - 1, t)
                kernel = gf3.kernel_basis(lower)
                if kernel.dim == 0:
                    continue
                partial, prows, _pc = self.diff_matrix(s, t)
                assert prows == rows
                col_vecs = [[0] * partial.n_rows for _ in range(partial.n_cols)]
                for (r, c0), v in partial.entries.items():
                    col_vecs[c0][r] = v
                span = gf3.Subspace.from_vectors(len(rows), [tuple(v) for v in col_vecs])
                for vec in span.basis:
                    if not kernel.contains(vec):
                        raise AssertionError(f"d o d != 0 at (s={s}, t={t})")
                for rep in gf3.quotient_basis(kernel, span):
                    idx = len(self.levels[s])
                    image = tuple((rows[i][0], rows[i][1], c) for i, c in enumerate(rep) if c)
                    if any(h == unit for h, _gi, _c in image):
                        raise AssertionError(f"minimality violated at (s={s}, t={t}): unit entry")
                    self.levels[s].append(
                        ResolutionGenerator(s, idx, t, f"g[{s},{idx}]", tuple(image))
                    )


def minimal_resolution(module: DualModule, s_max: int, t_max: int) -> MinimalResolution:
    return MinimalResolution(module, s_max, t_max)
