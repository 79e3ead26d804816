"""Walk through the observable estimated-loss construction.

The denoisers in this package never see the clean sequence, yet they score
candidate rules with an unbiased estimate of the true loss.  The trick is
the channel's right inverse H: for the binary symmetric channel with
crossover 0.1 it is a 2x2 matrix with entries +-1.125 / -0.125, and the
estimated loss of a rule at a noisy symbol is h(z) . rho(rule).
"""

import numpy as np

from sdude import bsc_channel, build_tables, hamming_loss

channel = bsc_channel(0.1)
loss = hamming_loss(2)

print("channel matrix:")
print(channel.pi)
print("right inverse H (pi @ H = I):")
print(channel.h_matrix)
print("check:", np.abs(channel.pi @ channel.h_matrix - np.eye(2)).max())

tables = build_tables(channel, loss)
names = ["always-0", "flip", "say-what-you-see", "always-1"]
print("\nexpected true loss rho[x, rule]:")
for x in range(2):
    print(f"  clean={x}:", dict(zip(names, map(float, tables.rho[x]))))
print("\nobservable estimated loss ell[z, rule] (negative values are real):")
for z in range(2):
    print(f"  noisy={z}:", dict(zip(names, map(float, tables.ell[z]))))

# Unbiasedness: averaging ell over the channel recovers rho exactly.
print("\nmax |pi @ ell - rho| =", np.abs(channel.pi @ tables.ell - tables.rho).max())

# The same identity holds for any full-row-rank channel, e.g. a 2x3 one.
from sdude import build_channel, build_loss

wide = build_channel([[0.7, 0.2, 0.1], [0.05, 0.15, 0.8]])
wide_loss = build_loss([[0.0, 1.0], [1.0, 0.0]])
wide_tables = build_tables(wide, wide_loss)
print(
    "2x3 channel, rules =", wide_tables.num_rules,
    " max |pi @ ell - rho| =", np.abs(wide.pi @ wide_tables.ell - wide_tables.rho).max(),
)
