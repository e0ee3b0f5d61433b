"""Survey closed-form radii against the sweep engine.

Draws random instances inside each formula's domain and reports the worst
absolute deviation per formula.  Usage:

    python3 scripts/compare_closed_forms.py --trials 2000 --seed 1
"""
import argparse
import math

import numpy as np

from nuext.closedforms import (
    WtFamily,
    radius_block,
    radius_collinear,
    radius_johnson,
    radius_wt_family,
)
from nuext.radius import radius_value


def tri(l1, l2, z):
    return np.array([[l1, z], [0.0, l2]], dtype=complex)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)

    worst = {"block": 0.0, "equal-modulus": 0.0, "collinear": 0.0, "family": 0.0}
    for _ in range(args.trials):
        l1 = complex(rng.standard_normal(), rng.standard_normal())
        l2 = complex(rng.standard_normal(), rng.standard_normal())
        an = abs(rng.standard_normal())
        z = an * np.exp(1j * rng.uniform(0, 2 * math.pi))
        got, _ = radius_block(l1, l2, an)
        worst["block"] = max(worst["block"], abs(got - radius_value(tri(l1, l2, z))))

        r = rng.uniform(0.1, 2.0)
        p1, p2 = rng.uniform(0, 2 * math.pi, 2)
        m1, m2 = r * np.exp(1j * p1), r * np.exp(1j * p2)
        if abs(m1 - m2) > 1e-6:
            got = radius_johnson(m1, m2, z)
            worst["equal-modulus"] = max(
                worst["equal-modulus"], abs(got - radius_value(tri(m1, m2, z)))
            )

        ph = np.exp(1j * rng.uniform(0, 2 * math.pi))
        c1, c2 = rng.standard_normal() * ph, rng.standard_normal() * ph
        got = radius_collinear(c1, c2, z)
        worst["collinear"] = max(worst["collinear"], abs(got - radius_value(tri(c1, c2, z))))

        a = rng.uniform(-0.95, 0.95)
        q = rng.uniform(1e-4, 2.0 * (1.0 - a) * 0.999)
        fam = WtFamily(a, 0.5 * math.sqrt(q) * np.exp(1j * rng.uniform(0, 2 * math.pi)))
        cf = radius_wt_family(fam)
        if cf is not None:
            worst["family"] = max(worst["family"], abs(cf - radius_value(fam.matrix())))

    print(f"{args.trials} trials per formula (seed {args.seed})")
    for name, dev in worst.items():
        print(f"  {name:<14} worst |closed - sweep| = {dev:.3e}")


if __name__ == "__main__":
    main()
