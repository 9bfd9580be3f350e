"""Multigraded spectral-sequence ledger.

Pages hold named classes; differentials are asserted with unit
coefficients and provenance, validated against the page profile, and
propagated over a declared set of permanent cycles (Leibniz closure).
Page turning computes E_{r+1} = ker/im exactly through gf3; hidden
multiplicative extensions are recorded separately for the homotopy
assembly.  The ledger is single-writer: mutations are serialized, and
snapshots taken for export are plain immutable data.

Contradictions are fail-stop: an assertion that conflicts with the log
(wrong degree, dead class, clashing target, d o d != 0) raises
LedgerError with a witness.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import gf3


class LedgerError(ValueError):
    pass


@dataclass(frozen=True)
class PageProfile:
    """Degree bookkeeping of one spectral sequence."""

    name: str
    arity: int
    # shift of d_r as a function of r, encoded by per-axis (constant, r-coefficient):
    # shift_axis_i(r) = const_i + coef_i * r
    shift_const: tuple
    shift_rcoef: tuple
    multiplicative: bool = True
    first_page: int = 1
    max_page: int | None = None  # structural bound (e.g. a two-term filtration)
    filtration_axis: int = 0
    stem_axes: tuple | None = None  # (t_axis, s_axis) for stem = t - s displays

    def shift(self, r: int) -> tuple:
        return tuple(c + k * r for c, k in zip(self.shift_const, self.shift_rcoef))


ADAMS_PROFILE = PageProfile(
    name="adams", arity=2, shift_const=(0, -1), shift_rcoef=(1, 1),
    first_page=2, stem_axes=(1, 0),
)
# algebraic spectral sequence of the two-step filtration of H*tmf: only d_1,
# degrees (s, t, f) with d_1 raising s and f by one
ALGEBRAIC_PROFILE = PageProfile(
    name="algebraic", arity=3, shift_const=(1, 0, 1), shift_rcoef=(0, 0, 0),
    first_page=1, max_page=1, filtration_axis=2, stem_axes=(1, 0),
)
# Cartan-Eilenberg: degrees (f, s, t), d_r: (f, s, t) -> (f + r, s - r + 1, t)
CESS_PROFILE = PageProfile(
    name="cartan-eilenberg", arity=3, shift_const=(0, 1, 0), shift_rcoef=(1, -1, 0),
    first_page=2,
)
# May: degrees (m, s, t), d_r: (m, s, t) -> (m - r, s + 1, t)
MAY_PROFILE = PageProfile(
    name="may", arity=3, shift_const=(0, 1, 0), shift_rcoef=(-1, 0, 0),
    first_page=1, filtration_axis=0, stem_axes=(2, 1),
)


@dataclass
class SseqClass:
    id: int
    name: str
    degrees: tuple
    page_born: int
    page_died: int | None = None  # present on page_died, absent from page_died + 1
    pattern_tag: str | None = None

    def alive_on(self, page: int) -> bool:
        return self.page_born <= page and (self.page_died is None or page <= self.page_died)


@dataclass(frozen=True)
class DifferentialAssertion:
    id: int
    page: int
    source: str
    target: str
    coefficient: int
    provenance: str
    exact: bool = False  # False: the unit is a "=dot" convention, not computed


@dataclass(frozen=True)
class HiddenExtensionRecord:
    multiplier: str
    multiplier_degrees: tuple
    source: str
    target: str
    filtration_jump: int
    provenance: str
    visible_part: str | None = None  # non-hidden summand, when the product mixes filtrations


@dataclass
class PropagationReport:
    asserted: list = field(default_factory=list)  # (source, target, coeff, rule)
    merged: list = field(default_factory=list)
    skipped_dead_products: int = 0


@dataclass(frozen=True)
class LinearitySet:
    """Named permanent cycles with an action oracle for Leibniz closure.

    ``act(m, x)`` returns (coeff, name) for m*x in the page's module
    structure, None when the product is zero; ``parity(name)`` gives the
    Koszul parity (stem mod 2) of a multiplier.
    """

    multipliers: tuple
    act: object
    parity: object


class Sseq:
    def __init__(self, profile: PageProfile, start_classes, start_page: int | None = None):
        """start_classes: iterable of (name, degrees) or (name, degrees, pattern_tag)."""
        self.profile = profile
        self.page = profile.first_page if start_page is None else start_page
        self.classes: dict[str, SseqClass] = {}
        self.by_degree: dict[tuple, list[str]] = {}
        self.assertions: list[DifferentialAssertion] = []
        self.hidden_extensions: list[HiddenExtensionRecord] = []
        self.audit: list[dict] = []
        self._by_source: dict[tuple, DifferentialAssertion] = {}
        self._by_target: dict[tuple, list[DifferentialAssertion]] = {}
        for item in start_classes:
            name, degrees = item[0], tuple(item[1])
            tag = item[2] if len(item) > 2 else None
            if name in self.classes:
                raise LedgerError(f"duplicate class name {name}")
            c = SseqClass(len(self.classes), name, degrees, self.page, None, tag)
            self.classes[name] = c
            self.by_degree.setdefault(degrees, []).append(name)
        self.audit.append({"event": "start", "page": self.page, "classes": len(self.classes)})

    # -- queries -------------------------------------------------------------

    def alive(self, name: str, page: int | None = None) -> bool:
        c = self.classes.get(name)
        return bool(c) and c.alive_on(self.page if page is None else page)

    def alive_in_degree(self, degrees: tuple, page: int | None = None) -> list[str]:
        page = self.page if page is None else page
        return [n for n in self.by_degree.get(tuple(degrees), ()) if self.classes[n].alive_on(page)]

    def alive_classes(self, page: int | None = None) -> list[SseqClass]:
        page = self.page if page is None else page
        return [c for c in self.classes.values() if c.alive_on(page)]

    def differentials_on_page(self, page: int) -> list[DifferentialAssertion]:
        return [a for a in self.assertions if a.page == page]

    # -- assertions ------------------------------------------------------------

    def assert_differential(self, page: int, source: str, target: str,
                            coefficient: int = 1, provenance: str = "",
                            linearity: LinearitySet | None = None,
                            exact: bool = False) -> PropagationReport:
        report = PropagationReport()
        self._assert_one(page, source, target, coefficient, provenance, report,
                         rule="asserted", exact=exact)
        if linearity is not None:
            self._leibniz_closure(report, linearity, seeds=[(source, target, coefficient)],
                                  page=page, exact=exact)
        self.audit.append({
            "event": "assert", "page": page, "source": source, "target": target,
            "coefficient": coefficient % 3, "provenance": provenance,
            "propagated": [list(x) for x in report.asserted[1:]],
        })
        return report

    def _assert_one(self, page: int, source: str, target: str, coefficient: int,
                    provenance: str, report: PropagationReport, rule: str,
                    exact: bool = False) -> None:
        coefficient %= 3
        if coefficient == 0:
            return
        if page != self.page:
            raise LedgerError(f"page {page} is not the current page {self.page}")
        if self.profile.max_page is not None and page > self.profile.max_page:
            raise LedgerError(f"profile {self.profile.name} admits no d_{page}")
        src = self.classes.get(source)
        tgt = self.classes.get(target)
        if src is None or not src.alive_on(page):
            raise LedgerError(f"source {source} is not alive on page {page}")
        if tgt is None or not tgt.alive_on(page):
            raise LedgerError(f"target {target} is not alive on page {page}")
        shift = self.profile.shift(page)
        expected = tuple(d + s for d, s in zip(src.degrees, shift))
        if tgt.degrees != expected:
            raise LedgerError(
                f"degree mismatch: d_{page}({source}) must land in {expected}, "
                f"but {target} has {tgt.degrees}"
            )
        key = (page, source)
        existing = self._by_source.get(key)
        if existing is not None:
            if existing.target != target:
                raise LedgerError(
                    f"contradiction: d_{page}({source}) already asserted as "
                    f"{existing.coefficient}*{existing.target} [{existing.provenance}], "
                    f"now {coefficient}*{target} [{provenance}]"
                )
            if existing.coefficient != coefficient:
                if existing.exact and exact:
                    raise LedgerError(
                        f"contradiction: exact units disagree on d_{page}({source}): "
                        f"{existing.coefficient} [{existing.provenance}] vs "
                        f"{coefficient} [{provenance}]"
                    )
                # units of "=dot" assertions are conventions; record the clash
                self.audit.append({
                    "event": "unit_note", "page": page, "source": source, "target": target,
                    "kept": existing.coefficient, "other": coefficient,
                    "provenances": [existing.provenance, provenance],
                })
            report.merged.append((source, target, existing.coefficient, rule))
            return
        if (page, target) in self._by_source:
            raise LedgerError(f"d o d != 0: target {target} already supports a d_{page}")
        if self._by_target.get((page, source)):
            raise LedgerError(f"d o d != 0: source {source} is already a d_{page} target")
        a = DifferentialAssertion(len(self.assertions), page, source, target, coefficient,
                                  provenance, exact)
        self.assertions.append(a)
        self._by_source[key] = a
        self._by_target.setdefault((page, target), []).append(a)
        report.asserted.append((source, target, coefficient, rule))

    def propagate_leibniz(self, linearity: LinearitySet) -> PropagationReport:
        """Close the current page's assertions under the linearity set."""
        report = PropagationReport()
        seeds = [(a.source, a.target, a.coefficient) for a in self.differentials_on_page(self.page)]
        self._leibniz_closure(report, linearity, seeds, self.page)
        self.audit.append({
            "event": "propagate", "page": self.page,
            "asserted": [list(x) for x in report.asserted],
        })
        return report

    def _leibniz_closure(self, report: PropagationReport, linearity: LinearitySet,
                         seeds: list, page: int, exact: bool = False) -> None:
        queue = list(seeds)
        while queue:
            source, target, coeff = queue.pop(0)
            for m in linearity.multipliers:
                mx = linearity.act(m, source)
                if mx is None:
                    continue
                cx, mx_name = mx
                if not self.alive(mx_name, page):
                    report.skipped_dead_products += 1
                    continue
                my = linearity.act(m, target)
                if my is None:
                    continue  # m*y = 0: no assertion, m*x is a d_r-cycle so far
                cy, my_name = my
                if not self.alive(my_name, page):
                    report.skipped_dead_products += 1
                    continue
                sign = 2 if linearity.parity(m) % 2 else 1
                # d(m x) = +/- m d(x): coefficient transported through the products
                new_coeff = (sign * coeff * cy * pow(cx, -1, 3)) % 3
                before = len(report.asserted)
                self._assert_one(page, mx_name, my_name, new_coeff,
                                 f"propagated(leibniz {m}, from d({source}))", report,
                                 rule=f"leibniz[{m}]", exact=exact)
                if len(report.asserted) > before:
                    queue.append((mx_name, my_name, new_coeff))

    # -- page turning -------------------------------------------------------------

    def turn_page(self) -> dict:
        """Compute E_{page+1} from the asserted differentials and advance."""
        page = self.page
        diffs = self.differentials_on_page(page)
        cells: dict[tuple, list[DifferentialAssertion]] = {}
        for a in diffs:
            cells.setdefault(self.classes[a.source].degrees, []).append(a)
        killed: list[str] = []
        for deg in sorted(cells):
            batch = cells[deg]
            shift = self.profile.shift(page)
            tdeg = tuple(d + s for d, s in zip(deg, shift))
            sources = self.alive_in_degree(deg, page)
            targets = self.alive_in_degree(tdeg, page)
            src_index = {n: i for i, n in enumerate(sources)}
            tgt_index = {n: i for i, n in enumerate(targets)}
            entries = {}
            for a in batch:
                entries[(tgt_index[a.target], src_index[a.source])] = a.coefficient
            simple = all(
                sum(1 for (_ti, sj) in entries if sj == j) <= 1 for j in range(len(sources))
            ) and all(
                sum(1 for (ti, _sj) in entries if ti == i) <= 1 for i in range(len(targets))
            )
            if simple:
                # a partial matching: each differential kills its endpoints
                for a in batch:
                    self.classes[a.source].page_died = page
                    self.classes[a.target].page_died = page
                    killed.extend([a.source, a.target])
                continue
            # general coset bookkeeping: kernel/image computed exactly; the
            # surviving source cosets are named by the kernel's pivot classes
            # (sources ordered by name, so the pivot is the least name in the
            # representative's support)
            mat = gf3.F3Matrix(len(targets), len(sources), entries)
            kernel = gf3.kernel_basis(mat)
            surviving_sources = {sources[p] for p in kernel.pivot_cols()}
            for name in sources:
                if name not in surviving_sources:
                    self.classes[name].page_died = page
                    killed.append(name)
            image_vecs = []
            for j in range(len(sources)):
                vec = [0] * len(targets)
                for (ti, sj), v in entries.items():
                    if sj == j:
                        vec[ti] = v
                image_vecs.append(tuple(vec))
            image = gf3.Subspace.from_vectors(len(targets), image_vecs)
            for p in image.pivot_cols():
                self.classes[targets[p]].page_died = page
                killed.append(targets[p])
        self.page += 1
        summary = {"event": "turn_page", "from": page, "to": self.page,
                   "killed": sorted(killed)}
        self.audit.append(summary)
        return summary

    # -- E-infinity -----------------------------------------------------------------

    def e_infinity(self, r_max: int = 30, generators: list[str] | None = None,
                   virtual_cell=None) -> dict:
        """Certify that no further differentials can exist.

        Scans candidate (source, target) pairs for every page r from the
        current one through r_max.  ``generators`` restricts sources to a
        module-generator list (differentials being linear over declared
        permanent cycles); ``virtual_cell(degrees) -> bool`` reports
        content beyond the materialized window (e.g. infinite towers).
        """
        page = self.page
        candidates = []
        sources = generators if generators is not None else [c.name for c in self.alive_classes()]
        for name in sources:
            c = self.classes[name]
            if not c.alive_on(page):
                continue
            for r in range(page, r_max + 1):
                if self.profile.max_page is not None and r > self.profile.max_page:
                    break
                shift = self.profile.shift(r)
                tdeg = tuple(d + s for d, s in zip(c.degrees, shift))
                hit = self.alive_in_degree(tdeg, page)
                if hit:
                    candidates.append((r, name, hit[0]))
                elif virtual_cell is not None and virtual_cell(tdeg):
                    candidates.append((r, name, f"<virtual {tdeg}>"))
        report = {
            "event": "e_infinity",
            "certified_page": page if not candidates else None,
            "r_max": r_max,
            "checked_sources": len(sources),
            "candidates": candidates,
        }
        self.audit.append(report)
        if candidates:
            raise LedgerError(f"possible differentials remain: {candidates[:5]}")
        return report

    # -- hidden extensions --------------------------------------------------------

    def record_hidden_extension(self, multiplier: str, multiplier_degrees: tuple,
                                source: str, target: str, provenance: str,
                                visible_part: str | None = None) -> HiddenExtensionRecord:
        src = self.classes.get(source)
        tgt = self.classes.get(target)
        if src is None or tgt is None:
            raise LedgerError(f"unknown class in hidden extension {source} -> {target}")
        fa = self.profile.filtration_axis
        jump = tgt.degrees[fa] - src.degrees[fa] - multiplier_degrees[fa]
        if jump <= 0:
            raise LedgerError(
                f"not a hidden extension: filtration jump {jump} on {multiplier}*{source}"
            )
        if self.profile.stem_axes is not None:
            t_ax, s_ax = self.profile.stem_axes
            stem = lambda d: d[t_ax] - d[s_ax]
            if stem(tgt.degrees) != stem(src.degrees) + stem(multiplier_degrees):
                raise LedgerError(f"stem mismatch in hidden extension {multiplier}*{source}")
        rec = HiddenExtensionRecord(multiplier, tuple(multiplier_degrees), source, target,
                                    jump, provenance, visible_part)
        self.hidden_extensions.append(rec)
        self.audit.append({
            "event": "hidden_extension", "multiplier": multiplier, "source": source,
            "target": target, "jump": jump, "provenance": provenance,
        })
        return rec

    # -- export ----------------------------------------------------------------------

    def audit_log_json(self) -> str:
        return "\n".join(json.dumps(e, sort_keys=True, separators=(",", ":")) for e in self.audit)


def new_sseq(profile: PageProfile, start_classes, start_page: int | None = None) -> Sseq:
    return Sseq(profile, start_classes, start_page)


def script_document(assertions, linear_over=()) -> dict:
    """A differential script as plain data: assertions plus the policy block."""
    return {
        "differentials": [
            {"page": page, "source": source, "target": target,
             "coefficient": coefficient % 3, "provenance": provenance}
            for page, source, target, coefficient, provenance in assertions
        ],
        "policy": {"linear_over": list(linear_over)},
    }


def apply_script(ledger: Sseq, script: dict, act=None, parity=None) -> PropagationReport:
    """Run a JSON differential script against a ledger.

    The policy block's linear_over list becomes a LinearitySet when an
    action oracle is supplied; assertions must all sit on the ledger's
    current page (turn pages between scripts).
    """
    policy = script.get("policy", {})
    linear_over = tuple(policy.get("linear_over", ()))
    linearity = None
    if linear_over and act is not None:
        linearity = LinearitySet(multipliers=linear_over, act=act,
                                 parity=parity or (lambda name: 0))
    total = PropagationReport()
    for entry in script.get("differentials", ()):
        rep = ledger.assert_differential(
            int(entry["page"]), entry["source"], entry["target"],
            int(entry.get("coefficient", 1)), provenance=entry.get("provenance", "script"),
            linearity=linearity,
        )
        total.asserted.extend(rep.asserted)
        total.merged.extend(rep.merged)
        total.skipped_dead_products += rep.skipped_dead_products
    return total


class PatternModule:
    """A cyclic quotient of the cohomology of A(1)* on a named generator.

    The ideal is spanned by the listed ring elements (generator names of
    the presentation, or composite monomials like "c6*beta").  Bidegree
    dimensions are computed honestly: the ideal's graded piece is the span
    of products ideal_gen * basis_monomial under the presentation's
    multiplication, and the quotient basis is read off from the
    complement (this cross-validates the closed-form membership tests
    used by the pipeline's fast paths).
    """

    def __init__(self, ideal: tuple, generator_name: str, generator_bidegree: tuple,
                 tag: str = ""):
        from .ext import presentation as _pres

        self._pres = _pres
        self.ideal = tuple(ideal)
        self.generator_name = generator_name
        self.generator_bidegree = tuple(generator_bidegree)
        self.tag = tag or f"{'/'.join(ideal) or 'free'}:{generator_name}"
        self._basis_cache: dict = {}

    def quotient_basis(self, s: int, t: int) -> list:
        """Names of surviving A(1)*-monomials in ring bidegree (s, t)."""
        key = (s, t)
        if key in self._basis_cache:
            return self._basis_cache[key]
        pres = self._pres
        monos = [m for m in pres.basis_bidegree(s, t)]
        if not monos or not self.ideal:
            out = [m.name for m in monos]
            self._basis_cache[key] = out
            return out
        index = {m.name: i for i, m in enumerate(monos)}
        span_vecs = []
        for gname in self.ideal:
            g = pres.parse_name(gname)
            for m2 in pres.basis_bidegree(s - g.s, t - g.t):
                r = pres.multiply(g, m2)
                if r is not None:
                    vec = [0] * len(monos)
                    vec[index[r[1].name]] = r[0]
                    span_vecs.append(tuple(vec))
        span = gf3.Subspace.from_vectors(len(monos), span_vecs)
        pivots = set(span.pivot_cols())
        out = [m.name for i, m in enumerate(monos) if i not in pivots]
        self._basis_cache[key] = out
        return out

    def dim(self, s: int, t: int) -> int:
        return len(self.quotient_basis(s, t))

    def module_bidegree(self, s: int, t: int) -> list:
        """Quotient basis placed on the generator: ring bidegree shifted."""
        gs, gt = self.generator_bidegree
        return self.quotient_basis(s - gs, t - gt)
