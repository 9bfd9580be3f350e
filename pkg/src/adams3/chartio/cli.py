"""Command line interface.

Subcommands: ext, pipeline, render, serve, verify.  Exit codes: 0 on
success, 1 on a failed check, 2 on usage errors (unknown flags, missing
files, malformed input).
"""

from __future__ import annotations

import argparse
import os
import sys

from .. import comodule, hopf

USAGE_ERROR = 2
CHECK_FAILURE = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        sys.exit(USAGE_ERROR)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="adams3", description="Ext and Adams spectral sequence workbench at p = 3")
    sub = p.add_subparsers(dest="command", required=True)

    ext = sub.add_parser("ext", help="compute an Ext chart by minimal resolution")
    ext.add_argument("--algebra", required=True,
                     choices=["a1", "gamma", "e_tau2", "dual_steenrod_truncated"])
    ext.add_argument("--t-max", type=int, required=True)
    ext.add_argument("--s-max", type=int, default=None)
    ext.add_argument("-o", "--output", default=None, help="write the chart JSON here")

    pipe = sub.add_parser("pipeline", help="run the tmf pipeline")
    pipe.add_argument("--t-max", type=int, default=180)
    pipe.add_argument("--s-max", type=int, default=48)
    pipe.add_argument("--with-over-a-oracle", action="store_true")
    pipe.add_argument("--out", default="artifacts", help="artifact directory")

    rend = sub.add_parser("render", help="render a chart document to SVG")
    rend.add_argument("input")
    rend.add_argument("-o", "--output", required=True)
    rend.add_argument("--stems", default=None, help="stem window A..B")

    srv = sub.add_parser("serve", help="serve a chart document over HTTP")
    srv.add_argument("chart")
    srv.add_argument("--port", type=int, default=8400)
    srv.add_argument("--homotopy", default=None, help="homotopy table JSON to attach")

    ver = sub.add_parser("verify", help="run a verification suite")
    ver.add_argument("--suite", required=True, choices=["acceptance"])
    ver.add_argument("--skip", default="", help="comma-separated criteria to skip (e.g. AC-8)")
    return p


def cmd_ext(args) -> int:
    s_max = args.s_max if args.s_max is not None else min(args.t_max, 40)
    alg = hopf.algebra(args.algebra, max(args.t_max, 34))
    module = comodule.dualize(comodule.trivial_comodule(alg))
    from ..ext.chart import ext_chart
    from ..ext.resolution import minimal_resolution

    res = minimal_resolution(module, s_max, args.t_max)
    named = args.algebra in ("a1", "gamma")
    chart = ext_chart(res, args.algebra, with_v2=args.algebra == "gamma") if named else ext_chart(res, args.algebra)
    text = chart.dump_json()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {args.output}")
    else:
        print(text)
    return 0


def cmd_pipeline(args) -> int:
    from ..tmf.pipeline import PipelineConfig, run_pipeline
    from .document import export_chart

    cfg = PipelineConfig(t_max=args.t_max, s_max=args.s_max,
                         enable_over_a_oracle=args.with_over_a_oracle,
                         output_dir=args.out)
    result = run_pipeline(cfg)
    # persist the E2 chart for the serve mode
    if result.stage4 is not None:
        doc = export_chart(result.stage4.ledger, 2,
                           metadata={"config_hash": cfg.config_hash()})
        path = os.path.join(args.out, "adams_e2.json")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(doc.to_json())
        result.artifacts["adams_e2.json"] = path
    if result.stage5 is not None:
        doc = export_chart(result.stage5.ledger, result.stage5.ledger.page,
                           metadata={"config_hash": cfg.config_hash()})
        path = os.path.join(args.out, "adams_einf.json")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(doc.to_json())
        result.artifacts["adams_einf.json"] = path
    for name in sorted(result.artifacts):
        print(f"wrote {result.artifacts[name]}")
    if result.stage6 is not None:
        table = result.stage6.table
        stems = [n for n in range(table.stem_max + 1)
                 if table.group(n).free_rank or table.group(n).torsion]
        print(f"homotopy table through stem {table.stem_max}: {len(stems)} nonzero stems")
    return 0


def cmd_render(args) -> int:
    from .document import ChartDocument
    from .svg import RenderStyle, render_svg

    if not os.path.exists(args.input):
        sys.stderr.write(f"error: no such chart file {args.input}\n")
        return USAGE_ERROR
    try:
        with open(args.input, encoding="utf-8") as fh:
            doc = ChartDocument.from_json(fh.read())
    except (ValueError, KeyError) as exc:
        sys.stderr.write(f"error: malformed chart document: {exc}\n")
        return USAGE_ERROR
    stem_range = None
    if args.stems:
        try:
            lo, hi = args.stems.split("..")
            stem_range = (int(lo), int(hi))
        except ValueError:
            sys.stderr.write("error: --stems expects A..B\n")
            return USAGE_ERROR
    svg = render_svg(doc, RenderStyle(), stem_range=stem_range)
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(svg)
    print(f"wrote {args.output}")
    return 0


def cmd_serve(args) -> int:
    from .document import ChartDocument
    from .server import LedgerSession, serve

    if not os.path.exists(args.chart):
        sys.stderr.write(f"error: no such chart file {args.chart}\n")
        return USAGE_ERROR
    with open(args.chart, encoding="utf-8") as fh:
        doc = ChartDocument.from_json(fh.read())
    homotopy_json = None
    if args.homotopy:
        if not os.path.exists(args.homotopy):
            sys.stderr.write(f"error: no such homotopy file {args.homotopy}\n")
            return USAGE_ERROR
        with open(args.homotopy, encoding="utf-8") as fh:
            homotopy_json = fh.read()
    session = LedgerSession.from_document(doc, homotopy_json)
    serve(session, args.port)
    return 0


def cmd_verify(args) -> int:
    from ..acceptance import run_suite

    skip = tuple(x.strip() for x in args.skip.split(",") if x.strip())
    results = run_suite(skip=skip)
    return 0 if all(r.ok for r in results) else CHECK_FAILURE


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "ext": cmd_ext,
        "pipeline": cmd_pipeline,
        "render": cmd_render,
        "serve": cmd_serve,
        "verify": cmd_verify,
    }
    try:
        return handlers[args.command](args)
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
