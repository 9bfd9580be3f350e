"""Reduced cobar complex of a comodule over a Hopf algebra.

Words are [a1|...|as]m with letters in the augmentation coideal and m a
comodule basis element.  The differential is the alternating sum of the
cosimplicial cofaces,

    d([a1|..|as]m) = sum_i (-1)^i [a1|..|psibar(a_i)|..|as]m
                     + (-1)^(s+1) [a1|..|as|h]m'

with the reduced coaction in the last term.  With this convention the
cube-power relation classes come out symmetric: the degree-(2,12) cocycle
over F3[zeta1]/zeta1^3 is [zeta1^2|zeta1] + [zeta1|zeta1^2].  d o d = 0 is
exercised exhaustively in tests.

The concatenation product (trivial comodule) satisfies the Leibniz rule
with sign (-1)^(cohomological degree).
"""

from __future__ import annotations

from .. import gf3
from ..comodule import Comodule, trivial_comodule
from ..hopf import HopfAlgebra, Mono

Word = tuple  # (letters: tuple[Mono, ...], module_name: str)
Elem = dict  # Word -> coeff


class CobarComplex:
    def __init__(self, algebra: HopfAlgebra, comodule: Comodule | None = None):
        self.algebra = algebra
        self.comodule = comodule if comodule is not None else trivial_comodule(algebra)
        self._letters_cache: dict = {}
        self._basis_cache: dict = {}
        self._image_cache: dict = {}

    # -- bases ------------------------------------------------------------

    def letters(self, degree: int) -> list[Mono]:
        if degree < 1:
            return []
        if degree not in self._letters_cache:
            self._letters_cache[degree] = list(self.algebra.basis(degree))
        return self._letters_cache[degree]

    def basis(self, s: int, t: int) -> list[Word]:
        """All words of cohomological degree s and internal degree t."""
        key = (s, t)
        if key in self._basis_cache:
            return self._basis_cache[key]
        out: list[Word] = []
        module_elems = [(n, d) for n, d in self.comodule.basis if d <= t]

        def rec(remaining_letters: int, remaining_deg: int, acc: tuple):
            if remaining_letters == 0:
                for name, d in module_elems:
                    if d == remaining_deg:
                        out.append((acc, name))
                return
            min_tail = remaining_letters - 1  # letters have degree >= 1
            for d in range(1, remaining_deg - min_tail + 1):
                for mono in self.letters(d):
                    rec(remaining_letters - 1, remaining_deg - d, acc + (mono,))

        rec(s, t, ())
        out.sort(key=self._word_key)
        self._basis_cache[key] = out
        return out

    def _word_key(self, w: Word):
        letters, name = w
        return (tuple(self.algebra.sort_key(a) for a in letters), name)

    def word_degree(self, w: Word) -> tuple[int, int]:
        letters, name = w
        t = sum(self.algebra.degree(a) for a in letters) + self.comodule.degrees[name]
        return len(letters), t

    # -- differential -------------------------------------------------------

    def d_word(self, w: Word) -> Elem:
        alg = self.algebra
        letters, name = w
        s = len(letters)
        out: Elem = {}

        def add(word: Word, c: int):
            v = (out.get(word, 0) + c) % 3
            if v:
                out[word] = v
            else:
                out.pop(word, None)

        for i, a in enumerate(letters):
            sign = -1 if (i + 1) % 2 else 1
            for (a1, a2), c in alg.reduced_coproduct(a).items():
                add((letters[:i] + (a1, a2) + letters[i + 1:], name), sign * c)
        sign = -1 if (s + 1) % 2 else 1
        for h, name2, c in self.comodule.coaction[name]:
            if h == alg.unit_mono:
                continue
            add((letters + (h,), name2), sign * c)
        return out

    def d_elem(self, elem: Elem) -> Elem:
        out: Elem = {}
        for w, c in elem.items():
            for w2, c2 in self.d_word(w).items():
                v = (out.get(w2, 0) + c * c2) % 3
                if v:
                    out[w2] = v
                else:
                    out.pop(w2, None)
        return out

    def d_matrix(self, s: int, t: int) -> gf3.F3Matrix:
        """Matrix of d: C^(s,t) -> C^(s+1,t) in the canonical bases."""
        dom = self.basis(s, t)
        cod = self.basis(s + 1, t)
        index = {w: i for i, w in enumerate(cod)}
        entries = {}
        for j, w in enumerate(dom):
            for w2, c in self.d_word(w).items():
                entries[(index[w2], j)] = c
        return gf3.F3Matrix(len(cod), len(dom), entries)

    # -- cohomology -----------------------------------------------------------

    def cocycles(self, s: int, t: int) -> gf3.Subspace:
        return gf3.kernel_basis(self.d_matrix(s, t))

    def boundaries(self, s: int, t: int) -> gf3.Subspace:
        if s == 0:
            return gf3.Subspace(len(self.basis(0, t)))
        key = (s, t)
        if key not in self._image_cache:
            mat = self.d_matrix(s - 1, t)
            cols = []
            for j in range(mat.n_cols):
                vec = [0] * mat.n_rows
                for (r, c0), v in mat.entries.items():
                    if c0 == j:
                        vec[r] = v
                cols.append(tuple(vec))
            self._image_cache[key] = gf3.Subspace.from_vectors(mat.n_rows, cols)
        return self._image_cache[key]

    def cohomology_dim(self, s: int, t: int) -> int:
        return self.cocycles(s, t).dim - self.boundaries(s, t).dim

    def elem_vector(self, s: int, t: int, elem: Elem) -> tuple:
        basis = self.basis(s, t)
        index = {w: i for i, w in enumerate(basis)}
        vec = [0] * len(basis)
        for w, c in elem.items():
            vec[index[w]] = c % 3
        return tuple(vec)

    def vector_elem(self, s: int, t: int, vec) -> Elem:
        basis = self.basis(s, t)
        return {basis[i]: v for i, v in enumerate(vec) if v}

    def is_boundary(self, s: int, t: int, elem: Elem) -> bool:
        if not elem:
            return True
        return self.boundaries(s, t).contains(self.elem_vector(s, t, elem))

    def solve_boundary(self, s: int, t: int, elem: Elem) -> Elem | None:
        """u in C^(s-1,t) with d(u) = elem, or None."""
        if not elem:
            return {}
        mat = self.d_matrix(s - 1, t)
        b = self.elem_vector(s, t, elem)
        x = gf3.solve(mat, list(b))
        if x is None:
            return None
        return self.vector_elem(s - 1, t, x)

    def cohomology_reps(self, s: int, t: int) -> list[Elem]:
        """Canonical representatives of a basis of H^(s,t)."""
        reps = gf3.quotient_basis(self.cocycles(s, t), self.boundaries(s, t))
        return [self.vector_elem(s, t, r) for r in reps]

    def class_coords(self, s: int, t: int, elem: Elem) -> tuple:
        """Coordinates of [elem] against cohomology_reps (exact linear solve)."""
        reps = self.cohomology_reps(s, t)
        if not elem:
            return tuple(0 for _ in reps)
        vec = self.elem_vector(s, t, elem)
        bnd = self.boundaries(s, t)
        n = len(vec)
        cols = [self.elem_vector(s, t, r) for r in reps] + [tuple(b) for b in bnd.basis]
        entries = {}
        for j, col in enumerate(cols):
            for i, v in enumerate(col):
                if v:
                    entries[(i, j)] = v
        mat = gf3.F3Matrix(n, len(cols), entries)
        x = gf3.solve(mat, list(vec))
        if x is None:
            raise AssertionError("element is not a cocycle modulo boundaries")
        return tuple(x[: len(reps)])


def concat(x: Elem, y: Elem) -> Elem:
    """Concatenation product for cochains over the trivial comodule."""
    out: Elem = {}
    for (lx, nx), cx in x.items():
        for (ly, _ny), cy in y.items():
            key = (lx + ly, nx)
            v = (out.get(key, 0) + cx * cy) % 3
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out
