"""Regenerate every published target and write the artifacts to one directory.

Usage: python scripts/reproduce_all.py [OUTPUT_DIR]
"""

import sys
from pathlib import Path

from psikit import reproduce


def main(out: Path) -> int:
    failed = []
    for target in reproduce.TARGETS:
        report = reproduce.run(target, output_dir=out if target == "figure1" else None)
        if target != "figure1":
            out.mkdir(parents=True, exist_ok=True)
            (out / f"{target}.csv").write_text(report.to_csv())
        print(report.summary())
        print()
        if not report.passed:
            failed.append(target)
    print("all targets PASS" if not failed else f"FAILED: {', '.join(failed)}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main(Path(sys.argv[1] if len(sys.argv) > 1 else "artifacts")))
