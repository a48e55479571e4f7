#!/usr/bin/env python3
"""Run the three evaluation tasks and write CSV/SVG results.

Usage: python scripts/run_all_tasks.py [--out results] [--seed 0]
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from wugnet.tasks import run_task, write_task_outputs


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="results")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    all_ok = True
    for task_id in (1, 2, 3):
        result = run_task(task_id, seed=args.seed)
        paths = write_task_outputs(result, args.out)
        for name, ok in result.checks:
            all_ok &= ok
            print(f"task {task_id} check: {'PASS' if ok else 'FAIL'} - {name}")
        print(f"task {task_id}: wrote {', '.join(str(p) for p in paths)}")
    return 0 if all_ok else 1


if __name__ == "__main__":
    sys.exit(main())
