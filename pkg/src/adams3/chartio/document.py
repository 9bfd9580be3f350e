"""The chart interchange format: a self-contained snapshot of one page.

Charts use Adams indexing (x, y) = (t - s, s); extra filtrations ride
along as class metadata.  Documents round-trip losslessly through JSON
and are versioned with an explicit format_version field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from ..sseq import Sseq

FORMAT_VERSION = 1


@dataclass(frozen=True)
class ChartClass:
    id: int
    name: str
    x: int
    y: int
    pattern_tag: str | None
    alive: bool
    extra: tuple = ()  # extra filtration components, if any


@dataclass(frozen=True)
class ChartDifferential:
    page: int
    source: int
    target: int
    coefficient: int


@dataclass(frozen=True)
class ChartExtension:
    multiplier: str
    source: int
    target: int


@dataclass
class ChartDocument:
    metadata: dict
    classes: list
    differentials: list
    extensions: list
    audit: list

    def class_by_name(self, name: str) -> ChartClass | None:
        for c in self.classes:
            if c.name == name:
                return c
        return None

    def to_dict(self) -> dict:
        return {
            "format_version": FORMAT_VERSION,
            "metadata": self.metadata,
            "classes": [
                {
                    "id": c.id, "name": c.name, "x": c.x, "y": c.y,
                    "pattern_tag": c.pattern_tag, "alive": c.alive,
                    "extra": list(c.extra),
                }
                for c in self.classes
            ],
            "differentials": [
                {"page": d.page, "source": d.source, "target": d.target,
                 "coefficient": d.coefficient}
                for d in self.differentials
            ],
            "extensions": [
                {"multiplier": e.multiplier, "source": e.source, "target": e.target}
                for e in self.extensions
            ],
            "audit": self.audit,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_dict(cls, doc: dict) -> "ChartDocument":
        if doc.get("format_version") != FORMAT_VERSION:
            raise ValueError(f"unsupported chart format_version {doc.get('format_version')}")
        classes = [
            ChartClass(c["id"], c["name"], c["x"], c["y"], c.get("pattern_tag"),
                       c.get("alive", True), tuple(c.get("extra", ())))
            for c in doc["classes"]
        ]
        diffs = [
            ChartDifferential(d["page"], d["source"], d["target"], d.get("coefficient", 1))
            for d in doc["differentials"]
        ]
        exts = [
            ChartExtension(e["multiplier"], e["source"], e["target"])
            for e in doc["extensions"]
        ]
        out = cls(doc.get("metadata", {}), classes, diffs, exts, list(doc.get("audit", ())))
        ids = {c.id for c in out.classes}
        for d in out.differentials:
            if d.source not in ids or d.target not in ids:
                raise ValueError(f"differential endpoint {d.source}->{d.target} unresolved")
        for c in out.classes:
            if c.x < 0 or c.y < 0:
                raise ValueError(f"class {c.name} has negative chart coordinates")
        return out

    @classmethod
    def from_json(cls, text: str) -> "ChartDocument":
        return cls.from_dict(json.loads(text))


def export_chart(ledger: Sseq, page: int, metadata: dict | None = None) -> ChartDocument:
    """Snapshot one page of a ledger as a self-contained document."""
    profile = ledger.profile
    if profile.stem_axes is not None:
        t_ax, s_ax = profile.stem_axes
    else:
        t_ax, s_ax = 1, 0
    meta = {"page": page, "grading": "(t-s, s)", "profile": profile.name}
    meta.update(metadata or {})
    classes = []
    name_to_id = {}
    for c in sorted(ledger.classes.values(), key=lambda c: (c.degrees, c.name)):
        if c.page_born > page:
            continue
        degrees = c.degrees
        x = degrees[t_ax] - degrees[s_ax]
        y = degrees[s_ax]
        extra = tuple(d for i, d in enumerate(degrees) if i not in (t_ax, s_ax))
        cid = len(classes)
        name_to_id[c.name] = cid
        classes.append(ChartClass(cid, c.name, x, y, c.pattern_tag, c.alive_on(page), extra))
    diffs = []
    for a in ledger.assertions:
        if a.page >= page and a.source in name_to_id and a.target in name_to_id:
            diffs.append(ChartDifferential(a.page, name_to_id[a.source],
                                           name_to_id[a.target], a.coefficient))
    exts = []
    for rec in ledger.hidden_extensions:
        if rec.source in name_to_id and rec.target in name_to_id:
            exts.append(ChartExtension(rec.multiplier, name_to_id[rec.source],
                                       name_to_id[rec.target]))
    audit = [f"{a.provenance}" for a in ledger.assertions if a.page == page]
    return ChartDocument(meta, classes, diffs, exts, audit)
