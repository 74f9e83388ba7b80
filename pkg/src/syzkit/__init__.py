"""Linear strands of graded Betti numbers for linear codes, and the syzygy distinguisher."""

__version__ = "0.1.0"
