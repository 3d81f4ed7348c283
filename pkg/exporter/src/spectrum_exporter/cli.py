"""Command line for spectrum export jobs."""

from __future__ import annotations

import argparse
import sys

from .backend import BackendError, make_backend
from .jobs import ExportError, ExportJob, export_spectrum


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="spectrum-export", description=__doc__)
    p.add_argument("--word", required=True)
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--cutoff", type=float, required=True, dest="cutoff")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--name", default="", help="dataset name (default '<word>_R<cutoff>')")
    p.add_argument("--attempts", type=int, default=8, help="retriangulation attempts")
    p.add_argument("--precision", type=int, default=15, help="digits requested from the tool")
    p.add_argument("--backend", choices=("snappy", "scripted"), default="snappy")
    p.add_argument("--backend-config", default=None, help="JSON description for the scripted backend")
    p.add_argument("--screen-cmd", default="gapcert", help="primary CLI used for screening/validation")
    p.add_argument("--no-screen", action="store_true", help="skip the primary screen and validation")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    job = ExportJob(
        word=args.word,
        genus=args.genus,
        cutoff_R=args.cutoff,
        out_dir=args.out,
        name=args.name,
        retriangulation_attempts=args.attempts,
        precision_digits=args.precision,
        screen_cmd=None if args.no_screen else args.screen_cmd,
    )
    try:
        backend = make_backend(args.backend, args.backend_config)
        dataset, manifest = export_spectrum(job, backend)
    except (BackendError, ExportError) as e:
        print(f"export failed: {e}", file=sys.stderr)
        return 1
    print(dataset)
    print(manifest)
    return 0


if __name__ == "__main__":
    sys.exit(main())
