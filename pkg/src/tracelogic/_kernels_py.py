"""Pure-Python versions of the positional kernels.

Every kernel works on a *bundle*: several traces laid out back to back in one
flat array of positions.  Segment ``j`` starts at ``start[j]`` and covers
``prefix[j] + cycle[j]`` positions.  A finite trace has ``cycle[j] == 0``; for
a lasso the successor of the last position is the first cycle position.

Truth vectors are ``uint8`` numpy arrays indexed by global position.  The
compiled module ``_kernels`` implements the same three functions.
"""

import numpy as np


def next_step(p, start, prefix, cycle, strong):
    pv = p.tolist()
    out = [0] * len(pv)
    missing = 0 if strong else 1
    for s, pl, cl in zip(start.tolist(), prefix.tolist(), cycle.tolist()):
        n = pl + cl
        for i in range(s, s + n - 1):
            out[i] = pv[i + 1]
        out[s + n - 1] = pv[s + pl] if cl else missing
    return np.array(out, dtype=np.uint8)


def _sweep(pv, qv, out, s, pl, cl, is_until):
    # backward recurrence; for the cycle the sweep runs over two copies and
    # keeps the values of the first, which by periodicity are exact
    if is_until:
        carry = 0
    else:
        carry = 1
    if cl:
        base = s + pl
        for v in range(2 * cl - 1, -1, -1):
            i = base + v % cl
            if is_until:
                carry = qv[i] | (pv[i] & carry)
            else:
                carry = qv[i] & (pv[i] | carry)
            if v < cl:
                out[i] = carry
        carry = out[base]
    for i in range(s + pl - 1, s - 1, -1):
        if is_until:
            carry = qv[i] | (pv[i] & carry)
        else:
            carry = qv[i] & (pv[i] | carry)
        out[i] = carry


def until(p, q, start, prefix, cycle):
    pv, qv = p.tolist(), q.tolist()
    out = [0] * len(pv)
    for s, pl, cl in zip(start.tolist(), prefix.tolist(), cycle.tolist()):
        _sweep(pv, qv, out, s, pl, cl, True)
    return np.array(out, dtype=np.uint8)


def release(p, q, start, prefix, cycle):
    pv, qv = p.tolist(), q.tolist()
    out = [0] * len(pv)
    for s, pl, cl in zip(start.tolist(), prefix.tolist(), cycle.tolist()):
        _sweep(pv, qv, out, s, pl, cl, False)
    return np.array(out, dtype=np.uint8)
