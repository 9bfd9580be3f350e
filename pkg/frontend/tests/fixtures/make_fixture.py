"""Produce the journey-test fixtures: an E2 chart document and the batch
kill-set of d2(b4) = alpha2 with full Leibniz closure, restricted to
sources in stems <= 40 (the same code path the batch pipeline uses)."""

import json
import sys

from adams3.chartio.document import export_chart
from adams3.sseq import ADAMS_PROFILE, Sseq
from adams3.tmf import stages


def main(outdir):
    s3 = stages.stage3_algebraic_ss(stem_max=50, s_max=24)
    classes = [(c.name, (c.s, c.t), c.tag) for c in s3.adams_e2]

    ledger = Sseq(ADAMS_PROFILE, classes, start_page=2)
    doc = export_chart(ledger, 2, metadata={"config_hash": "journey-fixture"})
    with open(f"{outdir}/chart.json", "w") as fh:
        fh.write(doc.to_json())

    batch = Sseq(ADAMS_PROFILE, classes, start_page=2)
    stems = {name: t - s for name, (s, t), _tag in classes}
    report = batch.assert_differential(
        2, "b4", "alpha2", 1, provenance="batch",
        linearity=stages._linearity(stages.D2_MULTIPLIERS),
    )
    killset = sorted(
        [src, tgt] for src, tgt, _c, _rule in report.asserted if stems[src] <= 40
    )
    with open(f"{outdir}/killset.json", "w") as fh:
        json.dump(killset, fh, sort_keys=True)
    print("fixtures written")


if __name__ == "__main__":
    main(sys.argv[1])
