"""Finite-horizon Markov version of the solver, on the block-diagonal family.

Both players act in every state for H steps; values propagate backwards
through per-(step, state) stage games.  The victim's pass never touches the
exploiter's rewards, so it runs unchanged when those are unknown.

Run with:  python3 demos/markov_walkthrough.py
"""

import numpy as np

from viser import (EXPLOITER, VICTIM, evaluate_policies, expected_payoff,
                   solve_exploiter_markov, solve_victim_markov, stage_matrix)
from viser.bench import gen_block_markov

r, S, H = 2, 4, 5
G = gen_block_markov(r, S=S, H=H)
print(f"block Markov game: r={r}, S={S}, H={H}, "
      f"actions {G.n}x{G.m}, baseline 10H/r = {10.0 * H / r}")

# The victim side works on a copy with the exploiter rewards stripped.
res_v = solve_victim_markov(G.without_exploiter_payoffs())
print(f"\nvictim guarantee:    {res_v.guaranteed_payoff:.6f}")

res_e = solve_exploiter_markov(G)
print(f"exploiter guarantee: {res_e.guaranteed_payoff:.6f}")

# Stage games are the per-step matrices after adding expected continuation
# values; at the last step they are just the raw rewards.
q_last = stage_matrix(G, H, 0, VICTIM, None)
q_first = stage_matrix(G, 1, 0, VICTIM, res_v.values)
print(f"\nstage matrix at h=H equals the reward block: "
      f"{np.array_equal(q_last, G.R_v[H - 1, 0])}")
print(f"stage matrix at h=1 (continuation folded in):\n{np.round(q_first, 4)}")

# Play the two computed policies against each other.  Each side's realized
# payoff must sit at or above its own guarantee.
pay_v = expected_payoff(G, evaluate_policies(G, res_v.policy, res_e.policy, VICTIM))
pay_e = expected_payoff(G, evaluate_policies(G, res_v.policy, res_e.policy, EXPLOITER))
print(f"\nrealized victim payoff:    {pay_v:.6f}  (guarantee {res_v.guaranteed_payoff:.6f})")
print(f"realized exploiter payoff: {pay_e:.6f}  (guarantee {res_e.guaranteed_payoff:.6f})")

# The exploiter run recomputes the victim's values internally; they agree
# with the victim-only pass to solver precision.
worst = max(abs(v - res_e.victim_values.values[k])
            for k, v in res_v.values.values.items())
print(f"max victim-value gap between the two passes: {worst:.2e}")
