"""Feasibility numbers for a laser-driven plasma-slab cavity.

A thin semiconductor slab at the antinode of a 0.1 m cavity is hit by a
periodic laser pulse train; each pulse turns the slab into a plasma mirror
for a moment.  This script asks: how strong is the effective drive, how many
pulses does it take to grow ten photons out of the vacuum, and how good does
the cavity have to be?

Run:  python3 demos/feasibility.py
"""

import numpy as np

from dcesim.experiments import estimate
from dcesim.profiles import SinusoidalProfile
from dcesim.scenario import PlasmaScenario

L = 0.1                      # cavity length
omega0 = np.pi / L           # fundamental frequency (c = 1 units)
delta = 1e-5                 # slab thickness: 1e-4 of the cavity
peak_mp2 = 100.0 * omega0**2  # peak plasma mass^2 reached by each pulse

print(f"cavity L = {L}, fundamental omega0 = {omega0:.4f}")
print(f"slab d/L = {delta / L:g} at the antinode, peak mp^2 = 1e2 omega0^2")
print()

scenario = PlasmaScenario(L=L, slab_left=L / 2.0, slab_thickness=delta,
                          mp2_profile=SinusoidalProfile(peak_mp2,
                                                        2.01 * omega0))
est = estimate(scenario, target_n=10.0)

print(f"effective-displacement enhancement  {est.enhancement:10.1f}")
print(f"peak pair-creation rate chi/omega0  {est.chi_over_omega0:10.4f}")
print(f"drive at the shifted resonance      {est.Omega_res / omega0:10.4f} omega0")
print(f"pulses until <N> >= 10              {est.n_pulse_required:10d}")
print(f"minimum cavity quality factor       {est.q_min:10.1f}")
print()

# the coupling is linear in the peak plasma mass: double the pulse energy,
# double the rate
print("pulse energy scaling:")
for factor in (1.0, 2.0, 4.0):
    sc = PlasmaScenario(L=L, slab_left=L / 2.0, slab_thickness=delta,
                        mp2_profile=SinusoidalProfile(factor * peak_mp2,
                                                      2.01 * omega0))
    e = estimate(sc, target_n=10.0)
    print(f"  mp2 x{factor:<4g} ->  chi/omega0 = {e.chi_over_omega0:.4f}"
          f"   pulses for N >= 10: {e.n_pulse_required}")
