"""
Truncation bounds in one channel
================================

Keep the leading ``n`` bits of every 8-bit sample, then see how those bits
pin any guess at the original value to a 16-wide interval (for ``n = 4``).
"""

import numpy as np

from boundcodec import TruncationSpec, bounds_of, clamp_decode, truncate

spec = TruncationSpec(source_depth=8, critical_depth=4)
print("largest possible truncation error:", spec.max_trunc_error)

# an original sample and its stored leading bits
x = 200
r = truncate(x, spec)
b = bounds_of(r, spec)
print(f"x={x} -> stored {r} -> interval [{b.lower}, {b.upper}]")

# three lossy guesses, one per decode case
for guess in (195, 100, 250):
    print(f"lossy guess {guess:3d} decodes to {clamp_decode(guess, r, spec)}")

# %%
# The bound shrinks by half for each extra stored bit.
rng = np.random.default_rng(0)
originals = rng.integers(0, 256, 10_000)
guesses = rng.integers(0, 256, 10_000)
for n in range(9):
    s = TruncationSpec(8, n)
    lower = (originals >> s.shift) << s.shift
    decoded = np.clip(guesses, lower, lower + s.max_trunc_error)
    worst = np.abs(decoded - originals).max()
    print(f"n={n}: bound {s.max_trunc_error:3d}, worst observed {worst:3d}")
