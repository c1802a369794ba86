"""Phase estimation with output photon subtraction in an OPA/beam-splitter hybrid interferometer."""

__version__ = "0.1.0"
