"""Counting series for quartic and general Eulerian orientations.

Walks from the hypergeometric series Omega to its inverse R and then to the
counting series Q and G, and checks the first terms against brute force.
"""

from eulerian_orientations.closedform import gf_main, omega, series_R
from eulerian_orientations.fps import reversion
from eulerian_orientations.maps import aggregate_eo_count

# Omega has binomial coefficients; R is its compositional inverse
W = omega("quartic", 8)
print("Omega:", W.integers())
R = reversion(W)
print("R:    ", R.integers())
assert R == series_R("quartic", 8)

# Q is read off R directly
Q = gf_main("quartic", 12)
print("q_n:", Q.integers()[1:])

G = gf_main("general", 12)
print("g_n:", G.integers()[1:])

# small cases by exhaustive enumeration of rooted maps
print("brute force q:", [aggregate_eo_count("quartic", n) for n in (1, 2, 3)])
print("brute force g:", [aggregate_eo_count("general", n) for n in (1, 2, 3)])
