"""Golden-section search for a maximum of a unimodal scalar function."""

import math

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0  # 1/phi
INV_PHI2 = (3.0 - math.sqrt(5.0)) / 2.0  # 1/phi^2


def golden_section_max(f, lo, hi, tol=1e-8):
    """Return ``(x, f(x))`` maximising ``f`` on ``[lo, hi]``.

    The bracket is shrunk until it is narrower than ``tol``; the returned
    point is the best of the final interior points and the two ends, so a
    maximum sitting on a boundary is found too.
    """
    if not hi > lo:
        raise ValueError(f"empty bracket [{lo}, {hi}]")
    a, b = float(lo), float(hi)
    h = b - a
    c = a + INV_PHI2 * h
    d = a + INV_PHI * h
    fc, fd = f(c), f(d)
    while h > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            h = b - a
            c = a + INV_PHI2 * h
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            h = b - a
            d = a + INV_PHI * h
            fd = f(d)
    candidates = [(fc, c), (fd, d), (f(lo), float(lo)), (f(hi), float(hi))]
    best_f, best_x = max(candidates)
    return best_x, best_f
