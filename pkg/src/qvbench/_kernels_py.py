"""Pure-NumPy gate kernels, used when the compiled extension is unavailable.

Same call signatures as the compiled module; the ``threads`` argument is
accepted and ignored (NumPy decides its own parallelism).
"""

import numpy as np

NAME = "numpy"


def _tensor(amps):
    n = amps.size.bit_length() - 1
    return amps.reshape((2,) * n), n


def apply_1q(amps, mat, target, threads):
    psi, n = _tensor(amps)
    axis = n - 1 - target
    moved = np.moveaxis(psi, axis, 0)
    shape = moved.shape
    out = (mat @ moved.reshape(2, -1)).reshape(shape)
    amps[:] = np.moveaxis(out, 0, axis).ravel()


def apply_2q(amps, mat, t0, t1, threads):
    psi, n = _tensor(amps)
    # front axes ordered so that flattening yields j = bit(t0) + 2*bit(t1)
    axes = (n - 1 - t1, n - 1 - t0)
    moved = np.moveaxis(psi, axes, (0, 1))
    shape = moved.shape
    out = (mat @ moved.reshape(4, -1)).reshape(shape)
    amps[:] = np.moveaxis(out, (0, 1), axes).ravel()


def apply_swap(amps, t0, t1, threads):
    psi, n = _tensor(amps)
    amps[:] = np.swapaxes(psi, n - 1 - t0, n - 1 - t1).ravel()
