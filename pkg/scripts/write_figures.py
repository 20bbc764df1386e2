"""Write the three figure data sets as CSV files into a directory."""

import argparse
from pathlib import Path

from renyibounds.cli import main as cli_main


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("outdir", nargs="?", default="figures")
    args = ap.parse_args()
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    for k in ("1", "2", "3"):
        code = cli_main(["fig", k, "-o", str(out / f"fig{k}.csv")])
        if code:
            raise SystemExit(code)
        print(out / f"fig{k}.csv")


if __name__ == "__main__":
    main()
