"""Max-times linear algebra: cycle means, max-eigenvectors and SR-matrix ranking."""

__version__ = "0.1.0"
