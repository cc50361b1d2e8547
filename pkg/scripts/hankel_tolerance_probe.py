#!/usr/bin/env python3
"""How much pivot tolerance does the Hankel PSD test need on float input?

For each family, report the distribution of the smallest tolerance at which
the test accepts.  Real-rooted families should accept at tiny tolerances,
planted non-real pairs should not accept until much larger ones, and
float-rounded multiple roots show where the two overlap.

    python3 scripts/hankel_tolerance_probe.py --samples 500
"""

import argparse
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from capcount.stability import _psd, hankel_matrix, power_sums

TOLS = [0.0] + [10.0 ** -k for k in range(20, 0, -1)]


@dataclass
class ProbeConfig:
    samples: int = 500
    seed: int = 0
    imag: float = 0.05


def accepting_tol(coeffs):
    a = [Fraction(float(c)) for c in coeffs]
    H = hankel_matrix(power_sums(a), len(a) - 1)
    return next((t for t in TOLS if _psd(H, t)), math.inf)


def families(cfg):
    rng = np.random.default_rng(cfg.seed)
    real, planted, clustered = [], [], []
    for _ in range(cfg.samples):
        real.append(np.poly(rng.uniform(-3, 3, rng.integers(2, 9)))[::-1])
        others = list(rng.uniform(-3, 3, rng.integers(0, 7)))
        a = rng.uniform(-3, 3)
        planted.append(np.real(np.poly(others + [a + 1j * cfg.imag, a - 1j * cfg.imag]))[::-1])
        k = int(rng.integers(2, 9))
        clustered.append(np.poly([a] * k)[::-1])
    return {"distinct real roots": real, f"planted pair, imag={cfg.imag}": planted, "k-fold real root": clustered}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=ProbeConfig.samples)
    ap.add_argument("--seed", type=int, default=ProbeConfig.seed)
    ap.add_argument("--imag", type=float, default=ProbeConfig.imag)
    cfg = ProbeConfig(**vars(ap.parse_args(argv)))
    for name, polys in families(cfg).items():
        hist = Counter(accepting_tol(p) for p in polys)
        print(name)
        for t in sorted(hist):
            print(f"  accepts at tol {t:<8.0e} {hist[t]:5d}")


if __name__ == "__main__":
    main()
