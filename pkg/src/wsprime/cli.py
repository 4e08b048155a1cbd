"""Command-line entry point: ``wsprime --workspace FILE`` or ``wsprime --suite``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from wsprime.report import dumps
from wsprime.workspace import RunConfig, WorkspaceError, execute, load_workspace, suite_document

log = logging.getLogger("wsprime")

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="wsprime", description="Classify submodules and check the theorem ledger "
                                            "over finite rings and modules.")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--workspace", type=Path, help="workspace file to execute")
    src.add_argument("--suite", action="store_true", help="run every theorem check on the default corpus")
    p.add_argument("--out", type=Path, help="write the JSON report here instead of stdout")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for theorem checks")
    p.add_argument("--max-ring", type=int, help="override the corpus ring-order bound")
    p.add_argument("--max-module", type=int, help="override the corpus module-order bound")
    p.add_argument("--timings", action="store_true", help="record elapsed_ms per query")
    p.add_argument("--verbose", "-v", action="store_true")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    if args.jobs < 1:
        print("wsprime: error: --jobs must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    for flag, val in (("--max-ring", args.max_ring), ("--max-module", args.max_module)):
        if val is not None and val < 2:
            print(f"wsprime: error: {flag} must be at least 2", file=sys.stderr)
            return EXIT_USAGE

    if args.suite:
        doc = suite_document()
    else:
        try:
            doc = load_workspace(args.workspace)
        except OSError as exc:
            print(f"wsprime: error: cannot read {args.workspace}: {exc.strerror}", file=sys.stderr)
            return EXIT_USAGE
        except WorkspaceError as exc:
            print(f"{args.workspace}:{exc.line}:{exc.col}: error: {exc.message}", file=sys.stderr)
            return EXIT_USAGE
    for w in doc.warnings:
        print(f"{args.workspace}:{w['line']}:{w['column']}: warning: {w['message']}", file=sys.stderr)

    cfg = RunConfig(jobs=args.jobs, max_ring=args.max_ring, max_module=args.max_module,
                    timings=args.timings)
    log.info("running %d queries", len(doc.queries))
    report, code = execute(doc, cfg)
    text = dumps(report)
    targets = list(doc.emits)
    if args.out:
        targets.append(args.out)
    for path in targets:
        Path(path).write_text(text, encoding="utf-8")
        log.info("wrote %s", path)
    if not args.out:
        sys.stdout.write(text)
    for q in report["queries"]:
        if q["error"]:
            print(f"wsprime: query {q['id']} (line {q['line']}) failed: {q['error']['type']}: "
                  f"{q['error']['message']}", file=sys.stderr)
        elif q["kind"] == "theorems" and q["result"]["failing"]:
            print(f"wsprime: query {q['id']}: counterexamples for {', '.join(q['result']['failing'])}",
                  file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
