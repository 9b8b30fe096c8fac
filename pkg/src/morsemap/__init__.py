"""Morse-complex descriptors for 2D scalar fields.

Pipeline: scalar fields -> Morse-complex separatrices -> binary arc images ->
autoencoder latent vectors -> 2D embedding (PCA / t-SNE) -> plots and an
interactive exploration service.
"""

__version__ = "0.1.0"
