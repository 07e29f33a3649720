# 03_billing.py
#
# Bill the two bundled loads under the two bundled dynamism plans and
# reproduce the reference table, then contrast with spot billing and show
# what a supply profile does to coefficient polarity.

import numpy as np

from loadspace import (
    Harmonic,
    Interval,
    Spectrum,
    SpotPlan,
    analyze,
    builtin_loads,
    builtin_plans,
    classic_payment,
    dynamism_payment,
    spot_payment,
)

l1, l2 = builtin_loads()
plan1, plan2 = builtin_plans()

print("reference bills (non-dynamic + dynamic = total)")
for plan_name, plan in (("plan 1", plan1), ("plan 2", plan2)):
    for load_name, load in (("load 1", l1), ("load 2", l2)):
        bill = dynamism_payment(plan, analyze(load, 100))
        print(
            f"  {load_name} under {plan_name}:"
            f"  {bill.non_dynamic:8.3f} + {bill.dynamic:9.3f} = {bill.total:9.3f}"
        )
print()

# line items of one bill, the price of each unit of swing
bill = dynamism_payment(plan1, analyze(l1, 100))
print("line items for load 1 under plan 1")
for it in bill.line_items:
    print(
        f"  {it.label:<7} f={it.frequency:>5.1f}  coefficient {it.coefficient:>5.1f}"
        f"  price {it.unit_price:>8.4f}  amount {it.amount:>9.3f}"
    )
print()

# spot pricing reacts to *when* energy is used, not how fast it swings
cheap_then_dear = SpotPlan(Interval(0.0, 1.0), (10.0, 30.0))
print("spot (10 then 30) for load 1:", round(spot_payment(cheap_then_dear, l1), 4))
print("flat 20 for load 1:          ", classic_payment(20.0, l1))
print()

# polarity: with a declared supply spectrum, swing *against* the supply is
# rewarded rather than charged
supply = Spectrum(
    l1.interval,
    1.0,
    (Harmonic(5, 0.0, 1.0), Harmonic(20, -1.0, 0.0), Harmonic(100, 0.0, 1.0)),
    100,
)
with_supply = dynamism_payment(plan1, analyze(l1, 100), supply)
print("total without supply reference:", round(bill.total, 4))
print("total when the grid swings the other way at order 20:", round(with_supply.total, 4))
credit = next(it for it in with_supply.line_items if it.amount < 0)
print("the credited line item:", credit.label, "f =", credit.frequency, "amount =", round(credit.amount, 4))
print()
print("largest single price in either bill:", np.max([it.unit_price for it in bill.line_items]))
