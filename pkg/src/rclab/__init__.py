"""Decision procedures, selection kernels and a permutation-model workbench for Ramsey Choice."""

__version__ = "0.1.0"
