#!/usr/bin/env python3
"""Run the three bundled scenarios and print their reports."""
import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from conecert.report import dumps_canonical, render_text
from conecert.scenarios import BUILTIN_SCENARIOS, run_scenario


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--json-dir", type=Path, default=None,
                        help="also write canonical reports into this directory")
    args = parser.parse_args()
    for name in ("ex1", "ex2", "ex-xu"):
        report = run_scenario(BUILTIN_SCENARIOS[name])
        print(f"=== {name} ===")
        print(render_text(report))
        if args.json_dir:
            args.json_dir.mkdir(parents=True, exist_ok=True)
            out = args.json_dir / f"{name}.json"
            out.write_text(dumps_canonical(report), encoding="utf-8")
            print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
