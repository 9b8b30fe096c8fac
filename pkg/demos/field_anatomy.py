"""
One scalar field under the microscope
======================================

Build a small field of Gaussian blobs, walk through everything the
topology core can say about it, and finish with the binary arc image
the rest of the pipeline trains on. Runs in a couple of seconds.
"""

import numpy as np

from morsemap import morse
from morsemap.field import SynthParams, add_uniform_noise, generate
from morsemap.raster import rasterize

# A five-blob field on a 48x48 grid. Fixing the seed fixes the blob
# centers and widths, so the numbers below are reproducible.
params = SynthParams("blobs", seed=6, blob_count=5)
field = generate(params, 48, 48)
values = np.asarray(field.values, dtype=np.float64).reshape(48, 48)
print(f"field: {field.width}x{field.height}, "
      f"range [{values.min():.3f}, {values.max():.3f}]")

# The field becomes a triangulated grid (each square split along one
# diagonal), and the discrete gradient pairs almost every cell with a
# neighbor. Whatever stays unpaired is critical: minima are vertices,
# saddles are edges, maxima are triangles.
grid = morse.build_complex(field)
gradient = morse.compute_gradient(grid)
m0, m1, m2 = gradient.morse_counts()
print(f"critical cells: {m0} minima, {m1} saddles, {m2} maxima "
      f"(euler {m0 - m1 + m2})")

# Persistence pairs each saddle with the extremum it merges away.
# Small persistence = shallow feature.
pairs = morse.compute_persistence_pairs(gradient, grid)
finite = sorted((p for p in pairs if np.isfinite(p.persistence)),
                key=lambda p: -p.persistence)
print(f"{len(finite)} finite pairs; strongest five:")
for p in finite[:5]:
    print(f"  {p.kind:>3} persistence {p.persistence:.4f}")

# Noise creates a carpet of tiny extrema. Simplification cancels every
# pair below the threshold by reversing the gradient path between its
# two cells, which is exactly how the dataset generator cleans up.
noisy = add_uniform_noise(field, 0.05, seed=123)
g_noisy = morse.compute_gradient(grid := morse.build_complex(noisy))
print(f"with noise:      {g_noisy.morse_counts()}")
g_clean = morse.simplify(g_noisy, grid, 0.04)
print(f"simplified 0.04: {g_clean.morse_counts()}")

# Separatrices run from each saddle down to its two minima. Collected
# as polylines they sketch the field's skeleton.
arcs = morse.extract_arcs(g_clean, grid)
print(f"{len(arcs)} separatrix arcs")

# Rasterize the skeleton to a 32x32 binary image, the unit every later
# stage (training, latents, embeddings) consumes.
image = rasterize(arcs, (noisy.width, noisy.height), 32)
print(f"arc image {image.n}x{image.n}, {int(image.bits.sum())} set bits:")
for row in image.bits:
    print("".join("#" if b else "." for b in row))
