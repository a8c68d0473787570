# %% [markdown]
# DC operating point of the oscillator circuit
#
# The battery feeds the source through R_I; the gate potential sits one
# rho hbar omega0 above the source, and the drain current is set by the
# transconductance.  Closed form and a damped fixed-point iteration should
# agree.

# %%
import numpy as np
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from atomtronic.config import load_config
from atomtronic.circuit import solve_steady_state

config = load_config(None)  # bundled example values
state = solve_steady_state(config.battery, config.gate_spec(), config.oscillator)
for name in ("rho", "g_m", "I_dss", "I_dss_fixed_point", "iterations", "mu_s", "mu_g", "r_gs", "beta"):
    print(f"{name:18s} {getattr(state, name)}")

# %%
# more source resistance, less current; the gain stays put
R = np.linspace(0, 1, 41)
I = [solve_steady_state(config.with_parameter("R_I", r).battery, config.gate_spec(), config.oscillator).I_dss for r in R]
T = np.linspace(0.2, 3, 41)
rho = [solve_steady_state(config.with_parameter("T_B", t).battery, config.gate_spec(), config.oscillator).rho for t in T]

fig, axes = plt.subplots(1, 2, figsize=(9, 3.2))
axes[0].plot(R, I)
axes[0].set_xlabel("R_I")
axes[0].set_ylabel("I_dss")
axes[1].plot(T, rho)
axes[1].set_xlabel("k_B T_B / hbar omega0")
axes[1].set_ylabel("rho")
fig.tight_layout()
fig.savefig("operating_point.png", dpi=120)
