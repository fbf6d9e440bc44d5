"""Doublet linewidth and decay rate against drive strength from one or more `sweep` outputs."""
import argparse

import matplotlib.pyplot as plt
import pandas as pd

parser = argparse.ArgumentParser()
parser.add_argument("sweep_csv", nargs="+")
parser.add_argument("--output", default="linewidths.png")
args = parser.parse_args()

fig, (ax_w, ax_g) = plt.subplots(1, 2, figsize=(9, 3.5))
for path in args.sweep_csv:
    df = pd.read_csv(path)
    ok = df[~df.status.str.startswith("error")]
    ax_w.plot(ok.omega_uev, 0.5 * (ok.fwhm_lower_uev + ok.fwhm_upper_uev), "o-", label=path)
    ax_g.plot(df.omega_uev, df.gamma_pe_per_ps, "o-", label=path)
ax_w.set_xlabel("Omega (ueV)")
ax_w.set_ylabel("FWHM (ueV)")
ax_g.set_xlabel("Omega (ueV)")
ax_g.set_ylabel("Gamma_pe (1/ps)")
ax_w.legend(fontsize=7)
fig.tight_layout()
fig.savefig(args.output, dpi=150)
