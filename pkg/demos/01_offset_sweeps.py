"""Infidelity versus offset for the whole canonical family.

Sweeps every sequence '2'..'256' over fractional offsets 0..1.5 for the
simple and 3-pulse base pulses, prints the 0.99-fidelity band edge of
each, and saves the log-infidelity curves.  The band edge grows with
sequence length up to the 64-pulse word, after which coefficient growth
eats the gains from higher cancellation order.
"""

import numpy as np

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from spinrefocus import (
    CANONICAL_LABELS,
    SweepSpec,
    epsilon_max,
    levitt3,
    offset_sweep,
    simple_pi,
)

fig, axes = plt.subplots(1, 2, figsize=(11, 4.2), sharey=True)

for ax, pulse in zip(axes, (simple_pi(), levitt3())):
    print(f"\nbase pulse: {pulse.name}")
    for label in CANONICAL_LABELS:
        spec = SweepSpec(label, pulse, eps_min=0.0, eps_max=1.5, eps_step=0.005)
        result = offset_sweep(spec)
        edge = epsilon_max(label, pulse, 0.99)
        print(f"  '{label:>3}': 0.99-band edge at eps = {edge:.3f}")
        infidelity = np.clip(1.0 - result.fidelity, 1e-16, None)
        ax.semilogy(result.epsilon, infidelity, lw=1.0, label=f"'{label}'")
    ax.axhline(1e-2, color="k", ls=":", lw=0.8)
    ax.axhline(1e-4, color="k", ls=":", lw=0.8)
    ax.set_xlabel("fractional offset")
    ax.set_title(f"base: {pulse.name}")
    ax.set_xlim(0, 1.5)
    ax.set_ylim(1e-16, 1)

axes[0].set_ylabel("infidelity with identity")
axes[1].legend(ncol=2, fontsize=8)
fig.tight_layout()
fig.savefig("offset_sweeps.png", dpi=150)
print("\nwrote offset_sweeps.png")
