"""Density of localization operators versus ambiguity zeros.

A window pair whose ambiguity never vanishes reproduces every operator
exactly; each zero removes one spreading direction for good.

Run: python3 demos/density_sweep.py
"""

from tfloc.quantize import density_sweep

pairs = [("delta", "gauss:1.0"), ("gauss:1.0", "gauss:0.5"),
         ("gauss:1.0", "gauss:1.0"), ("zeromaker", "zeromaker")]
rows = density_sweep(pairs, [4, 8, 16], seed=0, n_targets=3)

print(f"{'N':>3} {'pair':<22} {'zeros':>5} {'rank':>5} {'max residual':>13} {'witness':>8}")
for r in rows:
    print(f"{r.n:>3} {r.window1 + '/' + r.window2:<22} {r.zero_count:>5} {r.rank:>5} "
          f"{r.max_residual:>13.2e} {r.witness_residual:>8.3f}")

# Zero-free rows reach machine precision; the others keep a residual equal
# to the spreading mass of the target on the zero set, and a witness built
# only from that mass cannot be approximated at all (relative residual 1).
