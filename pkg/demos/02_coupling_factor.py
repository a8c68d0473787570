# %% [markdown]
# Gate-transistor coupling factor
#
# The gate condensate couples to the transistor through overlaps of four
# Hermite-Gaussians.  Each overlap is a polynomial times a Gaussian, so a
# Gauss-Hermite rule with enough nodes is exact; the trapezoid rule is the
# independent check.

# %%
import math
import time

import numpy as np
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from atomtronic.coupling import CouplingTable, TransistorSpec, coupling_factor, coupling_peak, overlap_table
from atomtronic.oscillator import OscillatorConfig

spec = TransistorSpec(cfg=OscillatorConfig(N=36))
gh = overlap_table(spec)
tr = overlap_table(spec, method="trapezoid")
print("max |GH - trapezoid| =", np.max(np.abs(gh - tr)))
print("first and last overlaps:", gh[0], gh[-1])

# %%
t0 = time.perf_counter()
plain = CouplingTable.build(spec)
with_cn = CouplingTable.build(spec, normalized=True)
a = np.linspace(0, 2 * math.sqrt(36), 401)
curves = {name: a * coupling_factor(a, table) for name, table in (("C_N = 1", plain), ("with C_N", with_cn))}
print(f"two curves in {time.perf_counter() - t0:.3f} s")

for name, table in (("C_N = 1", plain), ("with C_N", with_cn)):
    peak = coupling_peak(table)
    print(f"{name:9s} peak at |alpha| = {peak.alpha:.3f}, value / (chi0 sqrt N) = {peak.ratio:.3f}")

# %%
fig, ax = plt.subplots(figsize=(6, 3.5))
for name, y in curves.items():
    ax.plot(a, y / y.max(), label=name)
ax.axvline(6.0, color="gray", lw=0.8, ls=":")
ax.set_xlabel("|alpha|")
ax.set_ylabel("|alpha| chi / max")
ax.legend()
fig.tight_layout()
fig.savefig("coupling_factor.png", dpi=120)

# %% [markdown]
# Without the truncation factor the curve rises linearly, peaks a little
# below sqrt(N) and dies off.  Keeping C_N makes the tail decay only like
# 1/|alpha| and drags the maximum past sqrt(N).
