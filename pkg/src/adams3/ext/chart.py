"""Ext charts over a minimal resolution: named classes and Yoneda products.

Classes are named by matching resolution generators against the
presentation's normal-form monomials bidegree by bidegree (the dimension
agreement is enforced first, so the pairing is well defined).  Products
are computed honestly by lifting cocycles through the resolution; results
land in the chart's class basis and are memoized.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .. import gf3
from . import presentation
from .resolution import MinimalResolution


@dataclass(frozen=True)
class ExtClass:
    s: int
    t: int
    index: int  # index within the bidegree, in resolution order
    name: str

    @property
    def stem(self) -> int:
        return self.t - self.s


class ExtChart:
    """Named Ext classes per bidegree with a lazily computed product table."""

    def __init__(self, res: MinimalResolution, algebra_tag: str, with_v2: bool = False):
        self.res = res
        self.algebra_tag = algebra_tag
        self.with_v2 = with_v2
        self.classes: dict = {}  # (s,t) -> list[ExtClass]
        self._gen_offset: dict = {}  # (s,t) -> first generator index at that bidegree
        self._lifts: dict = {}  # (y_key, k) -> {gen_index: vector dict}
        self._products: dict = {}
        for s, level in enumerate(res.levels):
            seen: dict = {}
            for g in level:
                seen.setdefault(g.t, []).append(g.index)
            for t, idxs in seen.items():
                names = [m.name for m in presentation.basis_bidegree(s, t, with_v2)]
                if len(names) != len(idxs):
                    names = [f"x[{s},{t},{i}]" for i in range(len(idxs))]
                self.classes[(s, t)] = [ExtClass(s, t, i, names[i]) for i in range(len(idxs))]
                self._gen_offset[(s, t)] = idxs[0]

    def dim(self, s: int, t: int) -> int:
        return len(self.classes.get((s, t), ()))

    def class_named(self, name: str) -> ExtClass:
        m = presentation.parse_name(name)
        for c in self.classes.get((m.s, m.t), ()):
            if c.name == name:
                return c
        raise KeyError(f"no chart class named {name}")

    def gen_index(self, cls: ExtClass) -> int:
        return self._gen_offset[(cls.s, cls.t)] + cls.index

    # -- Yoneda products ------------------------------------------------------

    def _act_vector(self, h, vec: dict) -> dict:
        alg = self.res.algebra
        if h == alg.unit_mono:
            return dict(vec)
        out: dict = {}
        for (h1, gi), c in vec.items():
            for h2, c2 in alg.dual_product(h, h1):
                k = (h2, gi)
                v = (out.get(k, 0) + c * c2) % 3
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        return out

    def _lift(self, y: ExtClass, k: int) -> dict:
        """L_k of the chain map lifting y-hat: level s_y+k generators -> F_k vectors."""
        key = (y.s, y.t, y.index, k)
        if key in self._lifts:
            return self._lifts[key]
        alg = self.res.algebra
        if k == 0:
            y_gen = self.gen_index(y)
            out = {}
            for g in self.res.levels[y.s]:
                if g.index == y_gen:
                    out[g.index] = {(alg.unit_mono, 0): 1}
            self._lifts[key] = out
            return out
        prev = self._lift(y, k - 1)
        out = {}
        for g in self.res.levels[y.s + k]:
            if g.t > self.res.t_max:
                continue
            rhs_vec: dict = {}
            for h, gi, c in g.image:
                base = prev.get(gi)
                if not base:
                    continue
                for kk, vv in self._act_vector(h, base).items():
                    v = (rhs_vec.get(kk, 0) + c * vv) % 3
                    if v:
                        rhs_vec[kk] = v
                    else:
                        rhs_vec.pop(kk, None)
            if not rhs_vec:
                out[g.index] = {}
                continue
            mat, rows, cols = self.res.diff_matrix(k, g.t - y.t)
            row_index = {p: i for i, p in enumerate(rows)}
            b = [0] * len(rows)
            for kk, vv in rhs_vec.items():
                b[row_index[kk]] = vv
            x = gf3.solve(mat, b)
            if x is None:
                raise AssertionError(f"lift failed at level {k} on {g.name} (complex not exact?)")
            out[g.index] = {cols[i]: x[i] for i in range(len(cols)) if x[i]}
        self._lifts[key] = out
        return out

    def yoneda_product(self, x, y) -> dict:
        """Product x.y as {class_name: coeff}; accepts names or ExtClass."""
        if isinstance(x, str):
            x = self.class_named(x)
        if isinstance(y, str):
            y = self.class_named(y)
        pkey = (x.s, x.t, x.index, y.s, y.t, y.index)
        if pkey in self._products:
            return dict(self._products[pkey])
        s, t = x.s + y.s, x.t + y.t
        result: dict = {}
        if s <= self.res.s_max and t <= self.res.t_max:
            lift = self._lift(y, x.s)
            x_gen = self.gen_index(x)
            alg = self.res.algebra
            for cls in self.classes.get((s, t), ()):
                g_idx = self.gen_index(cls)
                vec = lift.get(g_idx, {})
                c = vec.get((alg.unit_mono, x_gen), 0)
                if c:
                    result[cls.name] = c
        self._products[pkey] = result
        return dict(result)

    def product_is_zero(self, x, y) -> bool:
        return not self.yoneda_product(x, y)

    # -- export ----------------------------------------------------------------

    def dump(self, products: list | None = None) -> dict:
        classes = []
        for (s, t) in sorted(self.classes):
            for c in self.classes[(s, t)]:
                classes.append({"name": c.name, "s": s, "t": t})
        prods = []
        for x, y in products or []:
            expr = self.yoneda_product(x, y)
            prods.append({
                "x": x if isinstance(x, str) else x.name,
                "y": y if isinstance(y, str) else y.name,
                "result": [{"name": n, "coeff": c} for n, c in sorted(expr.items())],
            })
        return {"algebra": self.algebra_tag, "classes": classes, "products": prods}

    def dump_json(self, products: list | None = None) -> str:
        return json.dumps(self.dump(products), sort_keys=True, separators=(",", ":"))


def ext_chart(res: MinimalResolution, algebra_tag: str, with_v2: bool = False) -> ExtChart:
    return ExtChart(res, algebra_tag, with_v2)
