#!/usr/bin/env python3
"""Train on objects+actions and export the concept matrix and cluster order.

The leaf order shows the spontaneously formed groups (liquids, people,
sitters, rollables) without any generic statements in the curriculum.

Usage: python scripts/export_clustering.py [--out results] [--seed 0]
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from wugnet.curriculum import builtin_curriculum
from wugnet.graph import ConceptNetwork, save_network
from wugnet.learner import learn_curriculum
from wugnet.matrix import agglomerative_order, build_matrix, clusters_to_text, matrix_to_csv


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="results")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    net = ConceptNetwork()
    learn_curriculum(net, builtin_curriculum("objects-and-actions", seed=args.seed))
    matrix = build_matrix(net)
    leaves, tree = agglomerative_order(matrix)

    save_network(net, out / "objects-and-actions.net")
    (out / "matrix.csv").write_text(matrix_to_csv(matrix), encoding="utf-8")
    (out / "clusters.txt").write_text(clusters_to_text(leaves, tree), encoding="utf-8")

    print("leaf order:", " ".join(c.name for c in leaves))
    print(f"wrote {out}/objects-and-actions.net, {out}/matrix.csv, {out}/clusters.txt")
    return 0


if __name__ == "__main__":
    sys.exit(main())
