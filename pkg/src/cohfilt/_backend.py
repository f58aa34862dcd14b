"""Kernel selection: compiled extension when importable, numpy otherwise."""
try:
    from cohfilt import _kernels as kernels
    BACKEND = "cython"
except ImportError:  # extension not built
    from cohfilt import _pykernels as kernels
    BACKEND = "python"

jacobi_eigh = kernels.jacobi_eigh
diag_kraus_fidelities = kernels.diag_kraus_fidelities
