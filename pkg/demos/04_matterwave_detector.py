# %% [markdown]
# The emitted matterwave and a resonant detector
#
# Drain particles leave with energy hbar omega_d but the wave they form
# oscillates at the gate frequency omega0.  A mass-spring mirror placed in
# the drain absorbs energy only when tuned to omega0.

# %%
import numpy as np
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from atomtronic.matterwave import (
    DrainWaveSpec,
    detector_linewidth,
    detector_response,
    drain_frequency,
    standing_wave,
    wave_params,
)

omega_d = drain_frequency(36, drop=20.0)
p = wave_params(DrainWaveSpec(omega0=1.0, omega_d=omega_d, mass=1.0, I_d=14.7))
print(f"index n = {p.n:.4f}, impedance Z = {p.Z:.5f}, k_m v_m = {p.k_m * p.v_m:.12f}")
print(f"lambda_m = {p.lambda_m:.3f}, de Broglie = {p.lambda_dB:.4f}, P_Tot / P_d = {p.P_Tot / p.P_d:.2f}")

# %%
# standing wave in front of a hard barrier
z = np.linspace(-3 * p.lambda_m, 0.0, 600)
profile = standing_wave(p, z, barrier_at=0.0)

# %%
damping, duration = 0.02, 500.0
omegas = np.linspace(0.5, 1.5, 201)
W = np.array([detector_response(p, w * w, 1.0, damping, duration) for w in omegas])
lorentz = damping / ((omegas ** 2 - 1) ** 2 + damping ** 2)
print("absorption peaks at omega_s =", omegas[np.argmax(W)], " linewidth =", detector_linewidth(damping, duration))

fig, axes = plt.subplots(1, 2, figsize=(10, 3.2))
axes[0].plot(z / p.lambda_m, profile)
axes[0].set_xlabel("z / lambda_m")
axes[0].set_ylabel("<I^2>")
axes[1].plot(omegas, W / W.max(), label="finite run")
axes[1].plot(omegas, lorentz / lorentz.max(), "--", label="steady state")
axes[1].set_xlabel("omega_s / omega0")
axes[1].legend()
fig.tight_layout()
fig.savefig("detector.png", dpi=120)
