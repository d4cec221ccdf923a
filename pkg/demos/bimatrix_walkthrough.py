"""Walk through the two-player one-shot setting on a small 3x2 game.

The row player ("victim") only knows its own payoff matrix A and plays a
security strategy.  The column player ("exploiter") knows both matrices and
best-responds to the worst case over the victim's whole optimal set.

Run with:  python3 demos/bimatrix_walkthrough.py
"""

import numpy as np

from viser import (MixedStrategy, exploiter_security, in_victim_set,
                   solve_exploiter, solve_victim)
from viser.bench import BLOCK_A, BLOCK_B
from viser.oracle import enumerate_x_star_vertices

# The victim's matrix has two safe rows worth 10 against either column and a
# trap row that loses money.  The exploiter's matrix disagrees about which
# column is attractive.
print("A (victim payoffs):")
print(BLOCK_A)
print("B (exploiter payoffs):")
print(BLOCK_B)

# -------------------------------------------------------------------
# Victim side: a maximin LP over the probability simplex.
victim = solve_victim(BLOCK_A)
print(f"\nvictim guarantee p_v = {victim.p_v:.6f}")
print(f"one maximin strategy: {np.round(victim.x_star.probs, 6)}")

# The optimal set is a polytope, not a point.  Here it is the full edge
# between the two safe rows; every mix of them is equally secure.
vertices = enumerate_x_star_vertices(BLOCK_A, victim.p_v)
print(f"vertices of the maximin set:\n{np.round(vertices, 6)}")
for frac in (0.0, 0.5, 1.0):
    x = np.array([frac, 1.0 - frac, 0.0])
    ok = in_victim_set(BLOCK_A, victim.p_v, MixedStrategy(x), 1e-6)
    print(f"  mix {x} secure? {ok}")

# -------------------------------------------------------------------
# Exploiter side: best response that is robust to every secure victim mix.
exploiter = solve_exploiter(BLOCK_A, BLOCK_B)
print(f"\nexploiter guarantee p_e = {exploiter.p_e:.6f}")
print(f"robust best response:  {np.round(exploiter.y_star.probs, 6)}")

# Compare with what the exploiter could guarantee while ignoring A entirely:
# its own security value is far lower, which is the whole point of exploiting
# the victim's predictable secure play.
security = exploiter_security(BLOCK_B)
print(f"exploiter's own security value: {security.p_v:.6f} "
      f"(vs {exploiter.p_e:.6f} when informed)")
