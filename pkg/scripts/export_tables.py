#!/usr/bin/env python3
"""Dump structure-constant tables for the standard objects to a directory.

Each object lands in <out-dir>/<name>_p<p>.json in the canonical export
format (sorted entries, exact rational coefficient vectors).
"""

import argparse
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from hopfbench.cli import export_bytes  # noqa: E402

DEFAULT_OBJECTS = ["taft", "taft-dual", "uqsl2", "hqsl2", "cqzd", "chain(2)"]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, nargs="+", default=[2],
                    help="values of p to export (default: 2)")
    ap.add_argument("--objects", nargs="+", default=DEFAULT_OBJECTS,
                    help="object names; the full doubles (ddouble, hdouble) "
                         "are large and only exported when asked for")
    ap.add_argument("--out-dir", default="tables")
    args = ap.parse_args()

    out_dir = pathlib.Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for p in args.p:
        for name in args.objects:
            payload = export_bytes(name, p)
            fname = name.replace("(", "").replace(")", "")
            path = out_dir / f"{fname}_p{p}.json"
            path.write_bytes(payload)
            print(f"wrote {path} ({len(payload)} bytes)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
