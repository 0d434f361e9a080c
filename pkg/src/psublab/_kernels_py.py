"""Pure numpy fallback for the closure kernels in ``_kernels.pyx``."""

import numpy as np


def closure_mask(table, mask, gens, limit):
    gens = np.asarray(gens, dtype=np.int64)
    frontier = np.flatnonzero(mask)
    size = frontier.size
    while frontier.size:
        cand = np.unique(table[np.ix_(frontier, gens)].ravel())
        new = cand[mask[cand] == 0]
        if new.size == 0:
            break
        mask[new] = 1
        size += new.size
        if size > limit:
            return -1
        frontier = new
    return size


def join_many(table, base, gens, extra, limit):
    n = base.shape[0]
    out = np.empty((len(extra), n), dtype=np.uint8)
    sizes = np.empty(len(extra), dtype=np.int64)
    gens = list(gens)
    for k, e in enumerate(extra):
        out[k] = base
        sizes[k] = closure_mask(table, out[k], gens + [int(e)], limit)
    return out, sizes
