"""Triple Massey products at the cochain level (cobar over the trivial comodule).

Given classes x, y, z with xy = 0 = yz, pick U, V with d(U) = X.Y and
d(V) = Y.Z; then W = U.Z - (-1)^(s_x) X.V is a cocycle representing
<x, y, z>.  Indeterminacy is x.Ext + Ext.z in the target bidegree,
computed honestly from cocycle spans.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .. import gf3
from .cobar import CobarComplex, concat


class MasseyUndefined(ValueError):
    pass


@dataclass
class MasseyResult:
    s: int
    t: int
    representative: dict  # cobar element
    coords: tuple  # class coordinates against cohomology_reps(s, t)
    indeterminacy_dim: int
    indeterminacy: gf3.Subspace  # inside coordinate space of H^(s,t)
    defining_system: tuple  # (U, V)

    def in_coset(self, coords) -> bool:
        diff = tuple((a - b) % 3 for a, b in zip(self.coords, coords))
        if not any(diff):
            return True
        return self.indeterminacy.contains(diff)


def _bidegree_of(complexe: CobarComplex, elem: dict) -> tuple[int, int]:
    w = next(iter(elem))
    return complexe.word_degree(w)


def massey_triple(C: CobarComplex, x: dict, y: dict, z: dict,
                  seed: int | None = None) -> MasseyResult:
    """<x, y, z> for cocycles over the trivial comodule."""
    sx, tx = _bidegree_of(C, x)
    sy, ty = _bidegree_of(C, y)
    sz, tz = _bidegree_of(C, z)
    xy = concat(x, y)
    if xy and not C.is_boundary(sx + sy, tx + ty, xy):
        raise MasseyUndefined("product x*y is nonzero in Ext")
    yz = concat(y, z)
    if yz and not C.is_boundary(sy + sz, ty + tz, yz):
        raise MasseyUndefined("product y*z is nonzero in Ext")
    u = C.solve_boundary(sx + sy, tx + ty, xy)
    v = C.solve_boundary(sy + sz, ty + tz, yz)
    assert u is not None and v is not None
    if seed is not None:
        # randomize the defining system by a cocycle shift (coset stability checks)
        rng = random.Random(seed)
        ucyc = C.cocycles(sx + sy - 1, tx + ty)
        if ucyc.dim:
            shift = ucyc.basis[rng.randrange(ucyc.dim)]
            coef = rng.choice([0, 1, 2])
            uvec = list(C.elem_vector(sx + sy - 1, tx + ty, u))
            uvec = [(a + coef * b) % 3 for a, b in zip(uvec, shift)]
            u = C.vector_elem(sx + sy - 1, tx + ty, uvec)
        vcyc = C.cocycles(sy + sz - 1, ty + tz)
        if vcyc.dim:
            shift = vcyc.basis[rng.randrange(vcyc.dim)]
            coef = rng.choice([0, 1, 2])
            vvec = list(C.elem_vector(sy + sz - 1, ty + tz, v))
            vvec = [(a + coef * b) % 3 for a, b in zip(vvec, shift)]
            v = C.vector_elem(sy + sz - 1, ty + tz, vvec)
    w = concat(u, z)
    sign = -1 if sx % 2 else 1
    for word, c in concat(x, v).items():
        val = (w.get(word, 0) - sign * c) % 3
        if val:
            w[word] = val
        else:
            w.pop(word, None)
    s_out, t_out = sx + sy + sz - 1, tx + ty + tz
    if C.d_elem(w):
        raise AssertionError("Massey representative is not a cocycle")
    coords = C.class_coords(s_out, t_out, w)
    indet = _indeterminacy(C, x, (sx, tx), z, (sz, tz), s_out, t_out)
    return MasseyResult(s_out, t_out, w, coords, indet.dim, indet, (u, v))


def _indeterminacy(C: CobarComplex, x, xdeg, z, zdeg, s_out, t_out) -> gf3.Subspace:
    reps = C.cohomology_reps(s_out, t_out)
    n = len(reps)
    vectors = []
    sx, tx = xdeg
    for rep in C.cohomology_reps(s_out - sx, t_out - tx):
        prod = concat(x, rep)
        if prod:
            vectors.append(C.class_coords(s_out, t_out, prod))
    sz, tz = zdeg
    for rep in C.cohomology_reps(s_out - sz, t_out - tz):
        prod = concat(rep, z)
        if prod:
            vectors.append(C.class_coords(s_out, t_out, prod))
    return gf3.Subspace.from_vectors(n, vectors)


def canonical_cocycle(C: CobarComplex, s: int, t: int) -> dict:
    """The canonical representative when H^(s,t) is one-dimensional."""
    reps = C.cohomology_reps(s, t)
    if len(reps) != 1:
        raise ValueError(f"H^({s},{t}) is {len(reps)}-dimensional, expected 1")
    return reps[0]
