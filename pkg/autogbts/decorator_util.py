import numba

from autogbts.conf import setting

"""
The loop hafnian kernels are compiled with the options of the `[numba]` config section. A workstation keeps compiled
kernels on disk (`cache=True`), while a cluster with a read-only installation sets `cache=False`.
"""

nopython = setting("numba", "nopython", True)
cache = setting("numba", "cache", True)
parallel = setting("numba", "parallel", False)


def jit(nopython=nopython, cache=cache, parallel=parallel):
    def wrapper(func):
        return numba.jit(func, nopython=nopython, cache=cache, parallel=parallel)

    return wrapper
