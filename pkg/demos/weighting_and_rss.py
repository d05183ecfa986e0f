"""Weighted extropy of two mirror-image laws, then RSS versus SRS.

Run with ``python demos/weighting_and_rss.py``.
"""
# %%
import numpy as np

from xtropy import (Exponential, LinearFalling, LinearRising, Power, UNIT, closed_form_for,
                    general_weighted_extropy, power, rss_extropy, rss_srs_ratio_bound,
                    srs_extropy)

# %% [markdown]
# Densities 2x and 2(1-x) on (0, 1) carry the same extropy.  Weighting by x
# separates them: mass near 1 counts more.

# %%
X, Y = LinearRising(), LinearFalling()
for w in (UNIT, power(1), power(2)):
    jx = general_weighted_extropy(X, w).value
    jy = general_weighted_extropy(Y, w).value
    print(f"{w.spec:>8}:  J(X) = {jx:+.6f}   J(Y) = {jy:+.6f}")

# %% [markdown]
# A ranked set sample of size n against a simple random sample of the same
# size.  The quotient stays below a bound that depends on n only.

# %%
dist, w = Exponential(1.0), power(1)
print(f"\n{'n':>2} {'J_RSS':>14} {'J_SRS':>14} {'quotient':>10} {'bound':>12}")
for n in range(1, 6):
    rss = rss_extropy(dist, w, n).value
    srs = srs_extropy(dist, w, n).value
    bound = rss_srs_ratio_bound(n) if n > 1 else np.nan
    print(f"{n:>2} {rss:>14.8f} {srs:>14.8f} {rss / srs:>10.5f} {bound:>12.6g}")

# %% [markdown]
# Closed forms and quadrature side by side for the power law x**theta.

# %%
print(f"\n{'theta':>6} {'n':>2} {'closed':>16} {'quadrature':>16}")
for theta in (1.5, 2.0, 3.0):
    for n in (1, 2, 3):
        d = Power(theta)
        print(f"{theta:>6} {n:>2} {closed_form_for(d, power(1), n).value:>16.12f} "
              f"{rss_extropy(d, power(1), n).value:>16.12f}")
