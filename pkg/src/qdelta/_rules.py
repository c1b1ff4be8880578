"""Gauss-Kronrod 7/15 nodes and weights on [-1, 1], ascending node order."""

import numpy as np

_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
)
_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
# Gauss weights live on the odd Kronrod indices 1, 3, 5, 7.
_WG = (
    0.0,
    0.129484966168869693270611432679082,
    0.0,
    0.279705391489276667901467771423780,
    0.0,
    0.381830050505118944950369775488975,
    0.0,
    0.417959183673469387755102040816327,
)

NODES = np.array([-x for x in _XGK[:-1]] + [0.0] + list(reversed(_XGK[:-1])))
KRONROD_WEIGHTS = np.array(list(_WGK[:-1]) + [_WGK[-1]] + list(reversed(_WGK[:-1])))
GAUSS_WEIGHTS = np.array(list(_WG[:-1]) + [_WG[-1]] + list(reversed(_WG[:-1])))
