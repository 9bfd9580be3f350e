"""Stage 6: the homotopy groups of tmf from the E-infinity page.

Free summands are the v0-towers (understood 3-complete); torsion classes
are the bounded classes, each contributing one Z/3 (the absence of hidden
v0-extensions on E-infinity torsion is checked, so no Z/9 occurs).
Detection names, the hidden multiplicative extensions of the final page,
and the rational / modular-forms cross-checks are assembled here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from ..ext.presentation import ExtMono
from . import patterns as pat
from .modular import ModularFormsRing
from .stages import Stage5Result, StageError


@dataclass
class HomotopyGroup:
    stem: int
    free_rank: int
    torsion: list  # [(order, generator name)]
    detected_by: list  # E-infinity class names of the tower roots
    hidden: list = field(default_factory=list)


@dataclass
class HomotopyTable:
    groups: dict  # stem -> HomotopyGroup
    stem_max: int
    metadata: dict

    def group(self, n: int) -> HomotopyGroup:
        return self.groups.get(n) or HomotopyGroup(n, 0, [], [])

    def to_json(self) -> str:
        doc = {
            "metadata": self.metadata,
            "groups": [
                {
                    "stem": g.stem,
                    "free_rank": g.free_rank,
                    "torsion": [{"order": o, "generator": n} for o, n in g.torsion],
                    "detected_by": g.detected_by,
                    "hidden_extensions": g.hidden,
                }
                for _, g in sorted(self.groups.items())
            ],
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))

    def to_text(self) -> str:
        lines = ["stem  group (3-complete)          detected by"]
        for n in range(self.stem_max + 1):
            g = self.group(n)
            if g.free_rank == 0 and not g.torsion:
                continue
            parts = []
            if g.free_rank:
                parts.append("Z3" if g.free_rank == 1 else f"Z3^{g.free_rank}")
            parts.extend(f"Z/{o}" for o, _ in g.torsion)
            names = [name for _, name in g.torsion] + g.detected_by
            lines.append(f"{n:>4}  {' + '.join(parts):<28} {', '.join(names)}")
        return "\n".join(lines)


@dataclass(frozen=True)
class DetectionMap:
    associations: tuple  # ((homotopy element, E-infinity class name), ...)

    def as_dict(self) -> dict:
        return dict(self.associations)


@dataclass
class Stage6Result:
    table: HomotopyTable
    detection: DetectionMap
    modular: ModularFormsRing
    rational_checked_stems: int
    v0_inverted_checked_stems: int
    periodicity_checked_cells: int


def _half_power_name(j: int) -> str:
    """(v2^(3/2))^j as a display alias: v2^(3l) or b4 v2^(3l+1)."""
    if j % 2 == 0:
        m = ExtMono(j=3 * (j // 2))
        return pat.class_name(m, 0)
    return pat.class_name(ExtMono(j=3 * (j // 2) + 1), 1)


def v0_root(name: str, alive: set) -> bool:
    """True when the tower class has no alive v0-predecessor."""
    m, eps = pat.parse_class(name)
    if m.a == 0:
        return True
    pred = pat.class_name(ExtMono(m.a - 1, m.k, m.l, m.e1, m.e2, m.j), eps)
    return pred not in alive


def stage6_homotopy(stage5: Stage5Result, stem_max: int = 144,
                    rational_stems: int = 80) -> Stage6Result:
    ledger = stage5.ledger
    alive = {c.name for c in ledger.alive_classes()}
    by_stem: dict = {}
    for c in ledger.alive_classes():
        s, t = c.degrees
        if t - s <= stem_max:
            by_stem.setdefault(t - s, []).append(c)

    mf = ModularFormsRing()
    groups: dict = {}
    for n in range(stem_max + 1):
        classes = sorted(by_stem.get(n, []), key=lambda c: (c.degrees[0], c.name))
        towers = []
        torsion = []
        for c in classes:
            m, eps = pat.parse_class(c.name)
            if pat.is_tower_class(pat.AdamsClass(m, eps)):
                if v0_root(c.name, alive):
                    towers.append(c.name)
            else:
                # elementary torsion: v0 times the class must vanish at E-infinity,
                # with no hidden v0-extension on an alive source
                r = pat.multiply_class("v0", pat.AdamsClass(m, eps))
                if r is not None and r[1].name in alive:
                    raise StageError(f"torsion class {c.name} supports a v0-tower")
                torsion.append((3, c.name))
        for rec in ledger.hidden_extensions:
            if rec.multiplier == "v0" and rec.source in alive:
                raise StageError(f"hidden v0-extension on E-infinity class {rec.source}")
        groups[n] = HomotopyGroup(n, len(towers), torsion, towers)

    # detection map
    assoc = [("alpha1", "alpha1"), ("beta", "beta"),
             ("c4", pat.class_name(ExtMono(a=1), 1)),
             ("c4^2", pat.class_name(ExtMono(a=2, j=1), 0)),
             ("c6", "c6"),
             ("b", "alpha1*v2*b4"), ("b'", "alpha1*v2^6")]
    for j in range(1, 2 * (stem_max // 48) + 2):
        if 24 * j > stem_max:
            break
        half = _half_power_name(j)
        if j % 3 == 0:
            assoc.append((f"Delta^{j}", half))
        else:
            m, eps = pat.parse_class(half)
            assoc.append((f"3Delta^{j}" if j > 1 else "3Delta",
                          pat.class_name(ExtMono(1, m.k, m.l, m.e1, m.e2, m.j), eps)))
    seen_targets = set()
    for name, cls in assoc:
        if cls in seen_targets:
            raise StageError(f"detection map not injective at {name} -> {cls}")
        seen_targets.add(cls)
    detection = DetectionMap(tuple(assoc))

    # hidden multiplicative extensions on the final page
    def record(mult, mdeg, src, tgt, prov, visible=None):
        if src in ledger.classes and tgt in ledger.classes:
            ledger.record_hidden_extension(mult, mdeg, src, tgt, prov, visible)
            s_src = ledger.classes[src].degrees
            stem = s_src[1] - s_src[0] + (mdeg[1] - mdeg[0])
            if stem in groups:
                groups[stem].hidden.append(f"{mult} * {src} = {tgt}" +
                                           (f" + {visible}" if visible else ""))

    record("alpha1", (1, 4), "alpha1*v2*b4", "beta^3", "b alpha1 = beta^3 (Toda bracket juggle)")
    record("alpha1", (1, 4), "alpha1*v2^6", "beta^3*v2^4*b4",
           "b' alpha1 = beta^3 v2^4 b4 (Toda bracket juggle)")
    record("v0*b4", (1, 9), "v0*b4", "v0^2*v2", "c4 . c4 = c4^2: the single 16-stem tower")
    record("v0*b4", (1, 9), "v0^2*v2", "c6^2",
           "c4 . c4^2 = c4^3 = c6^2 + 1728 Delta", visible="v0^3*v2*b4")
    for ell in range(0, stem_max // 48 + 1):
        src = pat.class_name(ExtMono(a=1, j=3 * ell + 1), 1)
        tgt = pat.class_name(ExtMono(a=2, j=3 * ell + 3), 0)
        record("v0*v2*b4", (2, 26), src, tgt,
               "(3 Delta) . (3 Delta^(2l+1)) detects 9 Delta^(2l+2)")
    record("v2^4*b4", (4, 76), "v2^4*b4", "v2^9", "Delta^3 . Delta^3 = Delta^6")

    # modular-forms consistency of the c4 . c4^2 extension: everything in
    # topological degree 24 with the hidden part jumping filtration
    c4_s, c4_t = 1, 9
    src_s, src_t = 3, 19
    vis_s, vis_t = 4, 28
    hid_s, hid_t = 6, 30
    if not (c4_t - c4_s + src_t - src_s == vis_t - vis_s == hid_t - hid_s == mf.relation_degree):
        raise StageError("hidden extension degrees inconsistent with c4^3 - c6^2 = 1728 Delta")
    if not hid_s > c4_s + src_s >= vis_s - 1:
        raise StageError("hidden extension filtrations inconsistent")

    # rational checks
    rational_checked = 0
    for n in range(min(rational_stems, stem_max) + 1):
        if groups[n].free_rank != mf.rational_poincare(n):
            raise StageError(
                f"free rank at stem {n} is {groups[n].free_rank}, "
                f"Q[c4,c6] gives {mf.rational_poincare(n)}"
            )
        rational_checked += 1

    # v0-inverted Ext = P(v0^(+-1), v1^3, v2) (x) E(b4): tower count per stem
    v0_checked = 0
    for n in range(min(rational_stems, stem_max) + 1):
        want = 0
        for k in range(n // 12 + 1):
            for j in range(n // 16 + 1):
                for eps in (0, 1):
                    if 12 * k + 16 * j + 8 * eps == n:
                        want += 1
        if groups[n].free_rank != want:
            raise StageError(f"v0-inverted count fails at stem {n}: {groups[n].free_rank} != {want}")
        v0_checked += 1

    # E-infinity 144-periodicity: v2^9 multiplication is a bijection in range
    cells: dict = {}
    for c in ledger.alive_classes():
        cells[c.degrees] = cells.get(c.degrees, 0) + 1
    s_window = max((c.degrees[0] for c in ledger.alive_classes()), default=0)
    periodicity_cells = 0
    for (s, t), d in sorted(cells.items()):
        if t - s + 144 <= stem_max and s + 9 <= s_window - 2:
            hi = cells.get((s + 9, t + 153), 0)
            if hi < d:
                raise StageError(f"144-periodicity fails at {(s, t)}: {d} -> {hi}")
            periodicity_cells += 1

    # torsion shape: eight stems mod 72, elementary in the first period
    torsion_stems = {3, 10, 13, 20, 27, 30, 37, 40}
    for n in range(stem_max + 1):
        has = bool(groups[n].torsion)
        expected = n % 72 in torsion_stems
        if has != expected:
            raise StageError(f"torsion at stem {n}: got {has}, expected {expected}")
    for n in range(min(71, stem_max) + 1):
        if groups[n].torsion and [o for o, _ in groups[n].torsion] != [3]:
            raise StageError(f"stem {n} torsion is not elementary of rank 1")
    for n in range(stem_max - 72 + 1):
        lo = sorted(o for o, _ in groups[n].torsion)
        hi = sorted(o for o, _ in groups[n + 72].torsion)
        if lo != hi:
            raise StageError(f"torsion 72-periodicity fails at stem {n}")

    table = HomotopyTable(
        groups,
        stem_max,
        {
            "convention": "all groups 3-complete; free rank r means Z3^r",
            "periodicity": "torsion(pi_n) = torsion(pi_(n+72)) via the Delta^3 detector v2^4 b4",
            "collapse_page": stage5.collapse_page,
        },
    )
    if table.group(0).free_rank != 1 or table.group(0).torsion:
        raise StageError("pi_0 must be a single tower")
    return Stage6Result(table, detection, mf, rational_checked, v0_checked, periodicity_cells)
