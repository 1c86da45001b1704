"""Sign-pattern weights of sums of sawtooth modes.

Each mode contributes a_i (x) n_i times the slope of a tent function, so the
gradient takes one of 2^N values.  The fraction of the torus where each sign
pattern occurs is computed exactly by clipping polygons.
"""
# %%
from fractions import Fraction

from laminates import PeriodicDeformation, correlation_integral, exact_weights, mc_weights

d = PeriodicDeformation.from_frequencies([(1, 0), (0, 1), (1, 1)], phases=[0, 0, Fraction(1, 4)])
w = exact_weights(d)
for pattern, weight in w.as_strings().items():
    print(pattern, weight)

# %% the even patterns get 1/16, the odd ones 3/16
print("sum:", w.total())

# %% Monte Carlo agrees to a few decimals
mc = mc_weights(d, samples=500_000, seed=1)
print({k: round(v, 4) for k, v in mc.as_strings().items()})

# %% moving the third phase trades weight between the classes
for k, l in [(1, 1), (3, 5), (2, 3)]:
    row = []
    for j in range(8):
        c = Fraction(j, 8)
        wk = exact_weights(PeriodicDeformation.from_frequencies([(1, 0), (0, 1), (k, l)], [0, 0, c]))
        row.append(wk["+++"] - wk["++-"])
    print((k, l), [str(v) for v in row])
    print("   closed form", [str(correlation_integral(k, l, 2 * Fraction(j, 8)) / 4) for j in range(8)])
