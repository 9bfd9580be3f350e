"""Chain-level connecting homomorphism of a short exact sequence of comodules.

The snake construction on cobar cochains: lift a cocycle of the quotient
through a section of the projection, apply the total differential, pull
the result back along the inclusion, and identify the class.  This is the
honest verification route for the algebraic spectral sequence's d1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .. import gf3
from ..comodule import ComoduleSES
from .cobar import CobarComplex


@dataclass
class ConnectingValue:
    s: int
    t: int
    coords: tuple  # coordinates in H^(s+1,t)(sub) against its canonical reps
    target_reps: list

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)


class ConnectingHom:
    def __init__(self, ses: ComoduleSES):
        self.ses = ses
        alg = ses.total.algebra
        self.cq = CobarComplex(alg, ses.quotient)
        self.ct = CobarComplex(alg, ses.total)
        self.cs = CobarComplex(alg, ses.sub)
        self._sections: dict = {}

    def _section(self, degree: int) -> dict:
        """quotient basis name -> total element {name: coeff} with proj o sec = id."""
        if degree in self._sections:
            return self._sections[degree]
        quo = self.ses.quotient.basis_in_degree(degree)
        tot = self.ses.total.basis_in_degree(degree)
        qi = {n: i for i, n in enumerate(quo)}
        entries = {}
        for j, tname in enumerate(tot):
            for q, c in self.ses.projection[tname]:
                entries[(qi[q], j)] = c
        mat = gf3.F3Matrix(len(quo), len(tot), entries)
        out = {}
        for i, q in enumerate(quo):
            e = [0] * len(quo)
            e[i] = 1
            x = gf3.solve(mat, e)
            if x is None:
                raise AssertionError(f"projection not surjective in degree {degree}")
            out[q] = {tot[j]: x[j] for j in range(len(tot)) if x[j]}
        self._sections[degree] = out
        return out

    def _pull_back(self, elem: dict, t_total: int) -> dict:
        """Inverse of the inclusion on a cobar element of the total comodule."""
        out: dict = {}
        by_letters: dict = {}
        for (letters, name), c in elem.items():
            by_letters.setdefault(letters, {})[name] = c
        for letters, vec in by_letters.items():
            ldeg = sum(self.ct.algebra.degree(a) for a in letters)
            deg = t_total - ldeg
            sub_names = self.ses.sub.basis_in_degree(deg)
            tot_names = self.ses.total.basis_in_degree(deg)
            ti = {n: i for i, n in enumerate(tot_names)}
            entries = {}
            for j, sname in enumerate(sub_names):
                for tname, c in self.ses.inclusion[sname]:
                    entries[(ti[tname], j)] = c
            mat = gf3.F3Matrix(len(tot_names), len(sub_names), entries)
            b = [0] * len(tot_names)
            for name, c in vec.items():
                b[ti[name]] = c
            x = gf3.solve(mat, b)
            if x is None:
                raise AssertionError("connecting value does not lie in the subcomodule")
            for j, v in enumerate(x):
                if v:
                    out[(letters, sub_names[j])] = v
        return out

    def apply(self, s: int, t: int, quotient_cocycle: dict) -> ConnectingValue:
        """delta of the class of a cobar cocycle of the quotient comodule."""
        if self.cq.d_elem(quotient_cocycle):
            raise ValueError("input is not a cocycle")
        lifted: dict = {}
        for (letters, qname), c in quotient_cocycle.items():
            ldeg = sum(self.ct.algebra.degree(a) for a in letters)
            for tname, c2 in self._section(t - ldeg)[qname].items():
                key = (letters, tname)
                v = (lifted.get(key, 0) + c * c2) % 3
                if v:
                    lifted[key] = v
                else:
                    lifted.pop(key, None)
        boundary = self.ct.d_elem(lifted)
        pulled = self._pull_back(boundary, t)
        if self.cs.d_elem(pulled):
            raise AssertionError("pulled-back connecting value is not a cocycle")
        reps = self.cs.cohomology_reps(s + 1, t)
        coords = self.cs.class_coords(s + 1, t, pulled)
        return ConnectingValue(s, t, coords, reps)

    def apply_to_class(self, s: int, t: int, index: int = 0) -> ConnectingValue:
        reps = self.cq.cohomology_reps(s, t)
        return self.apply(s, t, reps[index])
