#!/usr/bin/env python3
"""Deterministic synthetic stand-in for the UCI Pima diabetes file.

Same schema and shape as the public dataset (768 rows, 268 cases, a few
zero-glucose rows, ages 21..81), with age-conditional glucose distributions
whose density-crossing threshold increases with age while the class
separation shrinks. Only glucose, age and outcome drive the toolkit; the
remaining columns are filled with plausible values.

Regenerate with: python3 scripts/make_synthetic_pima.py > data/pima_synth.csv
"""

import math
import random

N_ROWS = 768
N_CASES = 268
SEED = 20240817

GLUCOSE_ZERO_ROWS = {41, 197, 320, 511, 702}  # incomplete OGTT measurements


def draw_age(rng: random.Random) -> int:
    # right-skewed 21..81, median near 29
    u = rng.random()
    return min(81, 21 + int(60.0 * (1.0 - (1.0 - u) ** (1.0 / 3.0))))


def draw_glucose(rng: random.Random, age: int, diseased: bool) -> int:
    if diseased:
        mu, sd = 142.0 + 0.08 * age, 30.0
    else:
        mu, sd = 82.0 + 0.95 * age, 21.0
    g = rng.gauss(mu, sd)
    return max(44, min(199, int(round(g))))


def main() -> None:
    rng = random.Random(SEED)
    outcomes = [1] * N_CASES + [0] * (N_ROWS - N_CASES)
    rng.shuffle(outcomes)

    print("pregnancies,glucose,blood_pressure,skinfold,insulin,bmi,pedigree,age,outcome")
    for i in range(N_ROWS):
        outcome = outcomes[i]
        age = draw_age(rng)
        glucose = 0 if i in GLUCOSE_ZERO_ROWS else draw_glucose(rng, age, outcome == 1)
        pregnancies = min(17, int(-2.8 * math.log(max(rng.random(), 1e-12)) * rng.random()))
        blood_pressure = max(40, min(110, int(round(rng.gauss(72, 12)))))
        skinfold = 0 if rng.random() < 0.28 else max(7, min(63, int(round(rng.gauss(29, 10)))))
        insulin = 0 if rng.random() < 0.46 else max(15, min(600, int(round(math.exp(rng.gauss(4.6, 0.7))))))
        bmi = max(18.0, min(60.0, rng.gauss(32.0, 7.0)))
        pedigree = max(0.078, min(2.42, math.exp(rng.gauss(-0.95, 0.55))))
        print(f"{pregnancies},{glucose},{blood_pressure},{skinfold},{insulin},{bmi:.1f},{pedigree:.3f},{age},{outcome}")


if __name__ == "__main__":
    main()
