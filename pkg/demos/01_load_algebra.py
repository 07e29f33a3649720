# 01_load_algebra.py
#
# Load curves as vectors: build a few profiles on [0, 1], combine them,
# and measure how far apart they are. The punchline is three curves that
# cost the same under a flat tariff yet sit far apart in the space.
#
# Run with:
#   python3 demos/01_load_algebra.py

import math

from loadspace import (
    AnalyticCurve,
    Harmonic,
    Interval,
    add,
    average_power,
    classic_payment,
    distance,
    energy,
    evaluate,
    inner_product,
    norm,
    scale,
)

day = Interval(0.0, 1.0)

# a flat base load plus two swinging components
base = AnalyticCurve(day, 50.0)
slow_swing = AnalyticCurve(day, 0.0, (Harmonic(5, 0.0, 20.0),))
fast_swing = AnalyticCurve(day, 0.0, (Harmonic(20, 10.0, 0.0),))

combined = add(add(base, slow_swing), fast_swing)
print("combined load at t = 0.00:", evaluate(combined, 0.0))
print("combined load at t = 0.05:", round(evaluate(combined, 0.05), 4))
print("energy over the interval: ", energy(combined))
print("average power:            ", average_power(combined))
print("norm (RMS * sqrt(T0)):    ", round(norm(combined), 4))
print()

# scaling is just amplitude scaling
half = scale(0.5, combined)
print("half-sized load energy:", energy(half))
print()

# inner products expose alignment: orthogonal harmonics do not interact
print("<base, slow_swing> =", inner_product(base, slow_swing))
print("<slow, fast>       =", inner_product(slow_swing, fast_swing))
print("<combined, base>   =", inner_product(combined, base))
print()

# three customers with identical energy but very different shapes
flat = AnalyticCurve(day, 50.0)
swinger = AnalyticCurve(day, 50.0, (Harmonic(1, 0.0, 20.0),))
spiker = AnalyticCurve(day, 50.0, (Harmonic(2, 30.0, 0.0),))

print("flat tariff at 20 per unit of energy:")
for name, c in (("flat", flat), ("swinger", swinger), ("spiker", spiker)):
    print(f"  {name:<8} pays {classic_payment(20.0, c):8.2f}")

print()
print("yet the curves are nowhere near each other:")
print("  d(flat, swinger)    =", round(distance(flat, swinger), 4), "(= 20/sqrt(2))")
print("  d(flat, spiker)     =", round(distance(flat, spiker), 4))
print("  d(swinger, spiker)  =", round(distance(swinger, spiker), 4))
print()
print("sanity: 20/sqrt(2) =", round(20.0 / math.sqrt(2.0), 4))
