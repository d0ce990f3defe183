"""Decision tree vs OneR on seeded synthetic data, plus a training-time probe.

    python scripts/synthetic_benchmark.py --seeds 20 --rows 10000 --classes 50
"""
import argparse
import time

import numpy as np

from healthadvisor.risk_classifier import evaluate, train_oner, train_tree
from healthadvisor.synthetic import generate_synthetic_dataset


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seeds", type=int, default=20)
    parser.add_argument("--rows", type=int, default=10_000)
    parser.add_argument("--classes", type=int, default=50)
    parser.add_argument("--scale-rows", type=int, default=135_000)
    args = parser.parse_args()

    tree_rmse, oner_rmse, tree_acc, oner_acc = [], [], [], []
    for seed in range(args.seeds):
        train = generate_synthetic_dataset(seed, args.rows, args.classes)
        test = generate_synthetic_dataset(100_000 + seed, args.rows, args.classes)
        t = evaluate(train_tree(train), test)
        o = evaluate(train_oner(train), test)
        tree_rmse.append(t.rmse)
        oner_rmse.append(o.rmse)
        tree_acc.append(t.accuracy)
        oner_acc.append(o.accuracy)
    wins = sum(a <= b for a, b in zip(tree_rmse, oner_rmse))
    print(f"{args.seeds} seeds, {args.rows} rows, {args.classes} classes (held-out evaluation)")
    print(f"tree  accuracy {np.mean(tree_acc):.4f}  rmse {np.mean(tree_rmse):.4f}")
    print(f"oner  accuracy {np.mean(oner_acc):.4f}  rmse {np.mean(oner_rmse):.4f}")
    print(f"tree rmse <= oner rmse in {wins}/{args.seeds} seeds")

    start = time.perf_counter()
    big = generate_synthetic_dataset(7, args.scale_rows, args.classes)
    generated = time.perf_counter()
    tree = train_tree(big)
    trained = time.perf_counter()
    print(f"scale: generate {generated - start:.2f}s, train {trained - generated:.2f}s "
          f"(depth {tree.depth}, {tree.n_leaves} leaves)")


if __name__ == "__main__":
    main()
