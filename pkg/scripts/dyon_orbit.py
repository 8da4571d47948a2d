#!/usr/bin/env python3
"""Push a dyon through crossed static fields and dump its worldline as CSV.

The particle carries both charge species, so it feels the electric force on
its charge and the mirror force on its monopole; the printed energy-balance
column should stay near machine noise for small proper-time steps.
"""

import pathlib
import sys

import numpy as np

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from cliffem import aps, em_fields as em

if __name__ == "__main__":
    field = aps.biparavector([0.4, 0.0, 0.0], [0.0, 0.0, 0.8])
    state = em.DyonState(pos=np.zeros(4), u=aps.four_velocity([0.0, 0.3, 0.0]),
                         q_e=1.0, q_m=0.25)
    dtau, steps = 0.01, 600
    print("tau,t,x,y,z,gamma,energy_balance")
    work = 0.0
    gamma0 = aps.parts(state.u).rs
    for n in range(steps):
        fu = em.field_velocity_parts(field, state.u)
        rate0 = state.q_e * fu.rs + state.q_m * fu.is_
        state = em.dyon_push(state, lambda pos: field, dtau)
        fu = em.field_velocity_parts(field, state.u)
        rate1 = state.q_e * fu.rs + state.q_m * fu.is_
        work += 0.5 * (rate0 + rate1) * dtau
        gamma = aps.parts(state.u).rs
        balance = gamma - gamma0 - work
        if n % 20 == 0:
            t, x, y, z = state.pos
            print(f"{(n + 1) * dtau:.3f},{t:.5f},{x:.5f},{y:.5f},{z:.5f},"
                  f"{gamma:.7f},{balance:.2e}")
