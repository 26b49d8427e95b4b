"""JSON and CSV encodings.

Matrices: ``{"d": int, "re": [[...]], "im": [[...]]}`` row-major.  Bloch
vectors wrap the same object under the key ``"m"``.  Two-particle matrices
index rows as ``|ij> = |i> x |j>`` with the first factor slow.
"""

import csv
import io
import json

import numpy as np

FLOAT_FMT = "{:.17g}"


def matrix_to_dict(a):
    a = np.asarray(a, dtype=complex)
    return {"d": int(a.shape[0]), "re": a.real.tolist(), "im": a.imag.tolist()}


def matrix_from_dict(obj):
    re = np.asarray(obj["re"], dtype=float)
    im = np.asarray(obj["im"], dtype=float)
    d = int(obj["d"])
    if re.shape != (d, d) or im.shape != (d, d):
        raise ValueError(f"matrix payload does not match d = {d}")
    return re + 1j * im


def bloch_to_dict(m):
    return {"m": matrix_to_dict(m)}


def bloch_from_dict(obj):
    return matrix_from_dict(obj["m"])


def params_to_dict(params):
    return params.to_dict()


def dumps(obj):
    # repr of a Python float round-trips exactly, which covers 17 digits
    return json.dumps(obj, indent=None, sort_keys=False)


def fmt(x):
    return FLOAT_FMT.format(x)


def region_csv(scan):
    """CSV text with header ``x,y,physical,min_eig,margin``."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "y", "physical", "min_eig", "margin"])
    for x, y, phys, eig, margin in scan.rows():
        w.writerow([fmt(x), fmt(y), int(phys), fmt(eig), fmt(margin)])
    return buf.getvalue()
