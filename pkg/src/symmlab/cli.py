"""Command-line front end.

Subcommands:
  build ENTRY        realize a catalog entry and run its verification pipeline
  classify FILE      compute the symmetry profile of a graph
  verify-paper       run the acceptance-criteria suite

Exit codes: 0 success, 2 discrepancy, 3 input error, 4 cap exceeded.
Reports are deterministic: timings go to stderr, never into report payloads.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from . import acceptance, catalog, classify, graphs
from .coset import EnumerationOverflow

SCHEMA = "symmlab-report/1"

EXIT_OK = 0
EXIT_DISCREPANCY = 2
EXIT_INPUT = 3
EXIT_CAP = 4

log = logging.getLogger("symmlab")


class CapExceeded(Exception):
    pass


def _parser():
    p = argparse.ArgumentParser(prog="symmlab",
                                description="graph-symmetry laboratory")
    p.add_argument("--seed", type=int, default=0,
                   help="reserved; affects nothing observable")
    p.add_argument("--threads", type=int, default=1,
                   help="worker-parallelism cap (single-process today)")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build and verify a catalog entry")
    b.add_argument("entry")
    b.add_argument("--tier", choices=["fast", "structural", "full"],
                   default="fast")
    b.add_argument("--n", type=int, default=2,
                   help="parameter for parametric entries")
    b.add_argument("--max-cosets", type=int, default=4_000_000)
    b.add_argument("--aut-cap", type=int, default=5000)
    b.add_argument("--json", dest="json_path")
    b.add_argument("--dot", dest="dot_path")

    c = sub.add_parser("classify", help="symmetry profile of a graph file")
    c.add_argument("graph", help="graph file (JSON {n, edges} or edge list)")
    c.add_argument("--aut-cap", type=int, default=5000)
    c.add_argument("--json", dest="json_path")
    c.add_argument("--dot", dest="dot_path")

    v = sub.add_parser("verify-paper", help="run the acceptance suite")
    v.add_argument("--tier", choices=["fast", "full"], default="fast")
    v.add_argument("--json", dest="json_path")
    return p


def _emit(report, json_path):
    text = json.dumps(report, indent=2, sort_keys=True, default=str)
    if json_path:
        Path(json_path).write_text(text + "\n")
        log.info("report written to %s", json_path)
    else:
        print(text)


def cmd_build(args):
    if args.entry not in catalog.ENTRY_NAMES:
        log.error("unknown entry %r; known: %s", args.entry,
                  ", ".join(catalog.ENTRY_NAMES))
        return EXIT_INPUT
    t0 = time.time()
    try:
        entry = catalog.catalog(args.entry, n=args.n)
        rep = catalog.lemma_5_6_pipeline(entry, tier=args.tier,
                                         max_cosets=args.max_cosets,
                                         aut_cap=args.aut_cap)
    except EnumerationOverflow as exc:
        log.error("coset cap exceeded: %s", exc)
        return EXIT_CAP
    except catalog.CatalogError as exc:
        log.error("build failed: %s", exc)
        return EXIT_INPUT
    log.info("pipeline finished in %.1fs", time.time() - t0)
    report = {"schema": SCHEMA, "command": ["build", args.entry],
              "tier": args.tier, "report": rep, "timing": None}
    if args.dot_path:
        real, note = catalog.realize_entry(entry, max_cosets=args.max_cosets)
        if real is not None:
            _, _, S = catalog.connection_set(entry, real)
            gamma = graphs.cayley_graph(real, S)
            Path(args.dot_path).write_text(graphs.to_dot(gamma))
    _emit(report, args.json_path)
    return EXIT_OK if rep["ok"] else EXIT_DISCREPANCY


def _load_graph(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ValueError(str(exc))
    text_stripped = text.lstrip()
    if text_stripped.startswith("{"):
        return graphs.from_json(text)
    return graphs.from_edge_text(text)


def cmd_classify(args):
    try:
        g = _load_graph(args.graph)
    except (ValueError, graphs.GraphError) as exc:
        log.error("cannot read graph: %s", exc)
        return EXIT_INPUT
    if g.n > args.aut_cap:
        log.error("graph has %d vertices, over the automorphism cap %d",
                  g.n, args.aut_cap)
        return EXIT_CAP
    t0 = time.time()
    try:
        profile = classify.symmetry_profile(g, cap=args.aut_cap)
    except graphs.GraphError as exc:
        log.error("cap exceeded: %s", exc)
        return EXIT_CAP
    log.info("profile computed in %.1fs", time.time() - t0)
    report = {"schema": SCHEMA, "command": ["classify", args.graph],
              "profile": json.loads(profile.to_json()), "timing": None}
    if args.dot_path:
        Path(args.dot_path).write_text(graphs.to_dot(g))
    _emit(report, args.json_path)
    return EXIT_OK


def cmd_verify_paper(args):
    results = acceptance.run(tier=args.tier)
    for r in results:
        print(r.line())
        log.info("criterion %d finished in %.1fs", r.number, r.elapsed)
    report = {"schema": SCHEMA, "command": ["verify-paper"],
              "tier": args.tier,
              "criteria": [{"number": r.number, "name": r.name,
                            "status": r.status, "measured": r.measured}
                           for r in results],
              "timing": None}
    if args.json_path:
        _emit(report, args.json_path)
    return (EXIT_OK if all(r.ok for r in results) else EXIT_DISCREPANCY)


def main(argv=None):
    logging.basicConfig(stream=sys.stderr, level=logging.INFO,
                        format="%(levelname)s %(message)s")
    args = _parser().parse_args(argv)
    try:
        if args.command == "build":
            return cmd_build(args)
        if args.command == "classify":
            return cmd_classify(args)
        return cmd_verify_paper(args)
    except KeyboardInterrupt:
        return 130


if __name__ == "__main__":
    sys.exit(main())
