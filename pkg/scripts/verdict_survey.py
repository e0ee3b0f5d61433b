"""Tally classifier verdicts over random operator families.

Classifies a batch of random inputs (dense, normal, self-adjoint, shear,
triangular, and coupled-family matrices) and prints a verdict/rule table,
plus the worst witness-verification residuals seen.  Usage:

    python3 scripts/verdict_survey.py --trials 1000 --seed 3 --max-dim 4
"""
import argparse
import collections
import math

import numpy as np

from nuext.classify import classify
from nuext.closedforms import WtFamily
from nuext.linalg import random_complex_matrix, random_unitary


def draw(rng, max_dim):
    pick = rng.uniform()
    n = int(rng.integers(1, max_dim + 1))
    if pick < 0.4:
        return "dense", random_complex_matrix(n, rng)
    if pick < 0.55:
        d = rng.uniform(0.2, 1.0, n) * np.exp(1j * rng.uniform(0, 2 * math.pi, n))
        q = random_unitary(n, rng)
        return "normal", q @ np.diag(d) @ np.conj(q.T)
    if pick < 0.7:
        m = random_complex_matrix(n, rng)
        return "self-adjoint", 0.5 * (m + np.conj(m.T))
    if pick < 0.8:
        b = complex(rng.standard_normal(), rng.standard_normal()) or 1.0
        z = complex(rng.standard_normal(), rng.standard_normal())
        return "shear", np.array([[b, z], [0, b]], dtype=complex)
    if pick < 0.9:
        a = rng.uniform(-0.95, 0.95)
        q = rng.uniform(1e-3, 2.0 * (1.0 - a))
        alpha = 0.5 * math.sqrt(q) * np.exp(1j * rng.uniform(0, 2 * math.pi))
        return "family", WtFamily(a, alpha).matrix()
    return "triangular", np.triu(random_complex_matrix(n, rng))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=3)
    ap.add_argument("--max-dim", type=int, default=4)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)

    table = collections.Counter()
    worst_mid = 0.0
    worst_slack = 0.0
    for _ in range(args.trials):
        family, t = draw(rng, args.max_dim)
        v = classify(t)
        table[(family, v.kind, v.theorem)] += 1
        if v.verification is not None:
            worst_mid = max(worst_mid, v.verification.midpoint_residual)
            worst_slack = min(
                worst_slack, v.verification.radius_slack_A, v.verification.radius_slack_B
            )

    print(f"{args.trials} classifications (seed {args.seed}, n <= {args.max_dim})")
    for (family, kind, theorem), count in sorted(table.items()):
        print(f"  {family:<13} {kind:<11} {theorem:<19} {count}")
    print(f"worst witness midpoint residual: {worst_mid:.3e}")
    print(f"worst witness radius slack:      {worst_slack:.3e}")


if __name__ == "__main__":
    main()
