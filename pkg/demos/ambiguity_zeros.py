"""Where does the ambiguity function vanish, and what does that cost?

Run: python3 demos/ambiguity_zeros.py
"""

import numpy as np

from tfloc.berezin import berezin_transform, injectivity_report
from tfloc.oper import schatten_norm
from tfloc.tfcore import cross_ambiguity, tf_shift_matrix, window_gallery, zero_set

N = 8

# %% A real, even-length window: its self-ambiguity has structural zeros.
phi = window_gallery("gauss:1.0", N)
zeros = zero_set(cross_ambiguity(phi, phi))
print(f"gauss:1.0 at N={N}: {len(zeros)} zeros of V_phi phi")
print("   ", [tuple(z) for z in zeros])

# %% Each zero hides a unit-norm operator from the Berezin transform.
w0 = zeros[0]
T = tf_shift_matrix(w0, N)
B = berezin_transform(T, phi, phi)
print(f"pi{tuple(w0)}: operator norm {schatten_norm(T, np.inf):.3f}, "
      f"max |Berezin| {np.abs(B).max():.1e}")

# %% The rank of quantization drops by exactly the number of zeros.
rep = injectivity_report(phi, phi, "gauss:1.0", "gauss:1.0")
print(f"rank {rep.rank} = {N * N} - {len(rep.zero_set)}: {rep.rank_law_holds}")

# %% Mixing in a window without the reflection symmetry removes every zero.
rep = injectivity_report(window_gallery("delta", N), phi, "delta", "gauss:1.0")
print(f"delta/gauss:1.0: injective={rep.injective}, rank {rep.rank}, "
      f"min |V| = {rep.min_abs:.2e}")
