"""Hot numeric kernel for the scaling solver.

The damped-Newton iteration below dominates the runtime of every Monte
Carlo experiment, so it is compiled with numba by default.  Setting the
environment variable ``DIAGSCALE_NUMBA=0`` before import selects the
pure-numpy fallback (same code path, no JIT) -- useful for debugging and
for the benchmark in ``benchmarks/bench_solver.py``.
"""

import os

import numpy as np

# Status codes returned by newton_scaling.
CONVERGED = 0
DIVERGED = 1
MAXITER = 2
STALLED = 3


def _newton_scaling_impl(S, w0, tol, max_iter, div_norm):
    """Damped Newton on H(w) = -sum(log w) + w'Sw/2 over the positive orthant.

    Returns (w, residual, iterations, objective, status) where residual is
    max_i |w_i (Sw)_i - 1|.  Divergence of the iterates (norm above
    div_norm, or objective below -div_norm) certifies that H is unbounded
    below, i.e. S is not strictly copositive.
    """
    p = S.shape[0]
    w = w0.copy()
    Sw = S @ w
    obj = -np.sum(np.log(w)) + 0.5 * (w @ Sw)

    res = 0.0
    for i in range(p):
        r = abs(w[i] * Sw[i] - 1.0)
        if r > res:
            res = r
    if res <= tol:
        return w, res, 0, obj, CONVERGED

    status = MAXITER
    it = 0
    for it in range(1, max_iter + 1):
        grad = Sw - 1.0 / w
        H = S.copy()
        hmax = 1.0
        for i in range(p):
            H[i, i] += 1.0 / (w[i] * w[i])
            if abs(H[i, i]) > hmax:
                hmax = abs(H[i, i])
        # tiny ridge: keeps the solve well-posed for exactly singular
        # Hessians (possible only for non-PSD inputs)
        lam = 1e-13 * hmax
        for i in range(p):
            H[i, i] += lam
        d = np.linalg.solve(H, -grad)
        slope = grad @ d
        if slope >= 0.0:
            d = -grad
            slope = -(grad @ grad)

        # backtracking line search: positivity plus Armijo decrease
        step = 1.0
        accepted = False
        for _ in range(60):
            wn = w + step * d
            feasible = True
            for i in range(p):
                if wn[i] <= 0.0:
                    feasible = False
                    break
            if feasible:
                Swn = S @ wn
                objn = -np.sum(np.log(wn)) + 0.5 * (wn @ Swn)
                # the slack term keeps the search from stalling once the
                # per-step decrease drops below float rounding of H
                if objn < obj + 1e-4 * step * slope + 1e-14 * (1.0 + abs(obj)):
                    if step == 1.0:
                        # expansion pass: when H keeps dropping past the
                        # full Newton step the minimizer does not exist in
                        # this direction, so race down the ray instead of
                        # crawling; a true optimum rejects the first double
                        for _ in range(40):
                            we = w + 2.0 * step * d
                            feas = True
                            for i in range(p):
                                if we[i] <= 0.0:
                                    feas = False
                                    break
                            if not feas:
                                break
                            Swe = S @ we
                            obje = -np.sum(np.log(we)) + 0.5 * (we @ Swe)
                            # demand a decrease clearly above float rounding
                            # of H, else rounding noise near the optimum can
                            # fake an improvement and start a limit cycle
                            if obje >= objn - 1e-12 * (1.0 + abs(objn)):
                                break
                            step *= 2.0
                            wn = we
                            Swn = Swe
                            objn = obje
                    w = wn
                    Sw = Swn
                    obj = objn
                    accepted = True
                    break
            step *= 0.5
        if not accepted:
            status = STALLED
            break

        res = 0.0
        wmax = 0.0
        for i in range(p):
            r = abs(w[i] * Sw[i] - 1.0)
            if r > res:
                res = r
            if abs(w[i]) > wmax:
                wmax = abs(w[i])
        if res <= tol:
            status = CONVERGED
            break
        if wmax > div_norm or obj < -div_norm:
            status = DIVERGED
            break

    if status == MAXITER or status == STALLED:
        # escape-ray certificate: w/|w| is a nonnegative direction, so a
        # vanishing Rayleigh quotient w'Sw/w'w on a far-out iterate means
        # H is unbounded below along it
        wtw = w @ w
        strace = 0.0
        for i in range(p):
            strace += S[i, i]
        if wtw > 1e3 * p and (w @ Sw) / wtw < 1e-9 * abs(strace) / p:
            status = DIVERGED

    return w, res, it, obj, status


USE_NUMBA = os.environ.get("DIAGSCALE_NUMBA", "1") != "0"

if USE_NUMBA:
    from numba import njit

    newton_scaling = njit(cache=True)(_newton_scaling_impl)
else:
    newton_scaling = _newton_scaling_impl
