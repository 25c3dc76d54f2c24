"""Long-run descent oracle for regularized logistic regression.

Minimizes mean binary cross-entropy + (l2/2)*||w||^2 (bias unregularized)
by 10^6 steps of gradient descent with a decaying step size, carried out in
extended precision, then polishes with Newton steps in mpmath as a cross-check.
The printed minima are frozen into the C++ tests; this script is not part of
the build.
"""
import mpmath as mp
import numpy as np

mp.mp.dps = 40

DATASETS = {
    "eight_point_2d": (
        [(0.5, 1.2), (-1.0, 0.3), (1.5, -0.7), (-0.3, -1.1),
         (0.8, 0.9), (-1.2, -0.4), (0.2, 0.1), (-0.6, 1.4)],
        [1, 0, 1, 0, 1, 0, 0, 1],
    ),
    "separable_1d_x4": ([(-1.0,), (1.0,)] * 4, [0, 1] * 4),
}
L2 = 0.1
STEPS = 10**6


def loss_mp(X, y, w, b):
    n = len(X)
    total = mp.mpf(0)
    for xi, yi in zip(X, y):
        z = b + mp.fsum(mp.mpf(a) * c for a, c in zip(xi, w))
        total += mp.log1p(mp.exp(-abs(z))) + max(z, 0) - z * yi
    return total / n + mp.mpf(L2) / 2 * mp.fsum(c * c for c in w)


def descend(X, y):
    X = np.array(X, dtype=np.longdouble)
    y = np.array(y, dtype=np.longdouble)
    n, d = X.shape
    w = np.zeros(d, dtype=np.longdouble)
    b = np.longdouble(0)
    eta0 = np.longdouble(1.0)
    for t in range(STEPS):
        z = X @ w + b
        p = 1 / (1 + np.exp(-z))
        r = p - y
        gw = X.T @ r / n + np.longdouble(L2) * w
        gb = r.sum() / n
        eta = eta0 / (1 + np.longdouble(t) / 2e5)
        w -= eta * gw
        b -= eta * gb
    return w, b


def newton(X, y, w, b):
    d = len(w)
    theta = mp.matrix([mp.mpf(float(v)) for v in list(w) + [b]])
    n = len(X)
    for _ in range(30):
        g = mp.matrix(d + 1, 1)
        H = mp.matrix(d + 1, d + 1)
        for xi, yi in zip(X, y):
            v = [mp.mpf(a) for a in xi] + [mp.mpf(1)]
            z = mp.fsum(v[k] * theta[k] for k in range(d + 1))
            p = 1 / (1 + mp.exp(-z))
            for k in range(d + 1):
                g[k] += (p - yi) * v[k] / n
                for m in range(d + 1):
                    H[k, m] += p * (1 - p) * v[k] * v[m] / n
        for k in range(d):
            g[k] += L2 * theta[k]
            H[k, k] += L2
        theta -= mp.lu_solve(H, g)
    return [theta[k] for k in range(d)], theta[d]


for name, (X, y) in DATASETS.items():
    w, b = descend(X, y)
    gd_loss = loss_mp(X, y, [mp.mpf(float(v)) for v in w], mp.mpf(float(b)))
    nw, nb = newton(X, y, w, b)
    nt_loss = loss_mp(X, y, nw, nb)
    print(name)
    print("  descent  w=", [float(v) for v in w], "b=", float(b), "loss=", mp.nstr(gd_loss, 20))
    print("  newton   w=", [mp.nstr(v, 17) for v in nw], "b=", mp.nstr(nb, 17), "loss=", mp.nstr(nt_loss, 20))
    print("  |descent-newton| =", mp.nstr(abs(gd_loss - nt_loss), 5))
