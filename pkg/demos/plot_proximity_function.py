"""
The proximity function
======================

Two query-term occurrences score ``1 / (1 + s * ln(1 + gap))``, where ``gap``
counts the tokens strictly between them. Neighbours score exactly 1 and the
score decays slowly (logarithmically) with distance. ``s`` sets how fast.
"""

import numpy as np

from pqr import cp
from pqr.proximity import cp_matrix

# neighbours and coincident occurrences both score 1, whatever s is
print(cp(10, 11, s=1.0), cp(5, 5, s=7.5))

# a few distances for three values of s
gaps = np.array([0, 1, 2, 5, 10, 50, 100, 1000])
for s in (0.25, 1.0, 4.0):
    row = cp_matrix([0], gaps + 1, s)[0]
    print(f"s={s:<5}", " ".join(f"{v:.3f}" for v in row))

# the decay is slow: terms a million tokens apart still score about 0.07
print(cp(0, 10**6))

###############################################################################
# Plot the curves if matplotlib is around.
try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    d = np.arange(0, 200)
    for s in (0.25, 1.0, 4.0):
        plt.plot(d, cp_matrix([0], d + 1, s)[0], label=f"s = {s}")
    plt.xlabel("tokens between the two terms")
    plt.ylabel("proximity")
    plt.legend()
    plt.savefig("proximity_curves.png", dpi=100)
