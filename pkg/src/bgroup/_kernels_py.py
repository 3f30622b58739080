"""Pure-Python word-enumeration kernels (fallback for the compiled module).

Matrices are rows [a, b, c, d] of a complex128 array of shape (k, 4).
"""

import numpy as np

BACKEND = "python"


def extend_words(mats, last, gens, inverse_of, max_out):
    """Append every letter to every word, skipping immediate cancellations.

    Children come out in (parent, letter) order, so feeding a shortlex
    level in yields the next shortlex level. ``last[i]`` is the final
    letter of word i, or -1 for the empty word. At most ``max_out``
    children are produced.
    """
    out_m, out_l = [], []
    g = [tuple(row) for row in np.asarray(gens).tolist()]
    inv = [int(x) for x in inverse_of]
    for (a, b, c, d), prev in zip(np.asarray(mats).tolist(), np.asarray(last).tolist()):
        for j, (e, f, h, k) in enumerate(g):
            if prev >= 0 and inv[prev] == j:
                continue
            if len(out_l) >= max_out:
                break
            out_m.append((a * e + b * h, a * f + b * k, c * e + d * h, c * f + d * k))
            out_l.append(j)
        if len(out_l) >= max_out:
            break
    m = np.array(out_m, dtype=np.complex128).reshape(-1, 4)
    return m, np.array(out_l, dtype=np.int64)


def limit_fixed_points(mats, tol):
    """Finite fixed points of the parabolic and loxodromic rows of ``mats``.

    Elliptic rows (trace squared real in [0, 4)) and identity rows are
    skipped; their fixed points are not limit points.
    """
    out = []
    for a, b, c, d in np.asarray(mats).tolist():
        det = a * d - b * c
        tr2 = (a + d) * (a + d) / det
        scale = max(1.0, abs(a), abs(b), abs(c), abs(d))
        if abs(tr2 - 4) <= tol:
            if abs(b) <= tol * scale and abs(c) <= tol * scale:
                continue
            if abs(c) > 1e-13 * scale:
                out.append((a - d) / (2 * c))
            continue
        if abs(tr2.imag) <= tol and tr2.real < 4:
            continue
        if abs(c) <= 1e-13 * scale:
            out.append(b / (d - a))
            continue
        # stable quadratic roots of c z^2 + (d - a) z - b
        root = ((a - d) ** 2 + 4 * b * c) ** 0.5
        if abs(a - d + root) < abs(a - d - root):
            root = -root
        out.append((a - d + root) / (2 * c))
        out.append(-2 * b / (a - d + root))
    return np.array(out, dtype=np.complex128)
