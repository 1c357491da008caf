"""Where is the parametric resonance, really?

Naively a cavity mode at omega0 is pumped hardest at Omega = 2 omega0.  But
the drive also shifts the mode frequency while it is on, so the true
resonance sits at Omega = 2 (omega0 + <delta omega>).  This script scans the
drive frequency, prints the photon-number profile, and marks both candidate
frequencies.

Run:  python3 demos/resonance_scan.py
"""

import numpy as np

from dcesim.experiments import SweepSpec, detuning_scan

omega0 = 1.0
mean_dw = 0.01          # time-averaged frequency shift while driven
n_pulse = 60

spec = SweepSpec(variable="Omega", observable="NGammaFinal",
                 lo=2.0 * omega0 - 3.0 * mean_dw,
                 hi=2.0 * omega0 + 3.0 * mean_dw,
                 n_points=41, omega0=omega0, mean_delta_omega=mean_dw,
                 n_pulse=n_pulse)
points = detuning_scan(spec, jobs=4)

ns = np.array([p.n_gamma_final for p in points])
peak = points[int(np.argmax(ns))]
width = 46

print(f"drive-frequency scan, {spec.n_points} points, {n_pulse} pulses each")
print(f"naive resonance    2 omega0              = {2 * omega0:.4f}")
print(f"shifted resonance  2 (omega0 + <dw>)     = {points[0].peak_Omega:.4f}")
print()
for p, n in zip(points, ns):
    bar = "#" * max(1, int(round(width * n / ns.max())))
    mark = ""
    if abs(p.Omega - 2.0 * omega0) < 1e-9:
        mark = "  <- naive 2 omega0"
    if p.Omega == peak.Omega:
        mark = "  <- measured peak"
    print(f"  Omega = {p.Omega:.4f}  N = {n:8.3f}  {bar}{mark}")
print()
print(f"measured peak at Omega = {peak.Omega:.4f} "
      f"(offset {peak.Omega / 2.0 - omega0:+.4f} from omega0 on Omega/2)")
print(f"photon number there: {peak.n_gamma_final:.2f}; "
      f"at the naive point: {ns[int(np.argmin(np.abs([q.Omega - 2.0 for q in points])))]:.3f}")
