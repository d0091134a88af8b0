#!/usr/bin/env python3
"""Independent oracle for the optimal 1->2 average cloning fidelity.

Maximizes the Haar-average single-output fidelity over ALL quantum
channels C^d -> C^d x C^d, parameterized by their Choi matrix, via
semidefinite programming.  The optimum is the ceiling used by the
compliance-bound computation; this script exists to pin the frozen
values 5/6 (d=2) and 3/4 (d=3) in the test suite without trusting the
closed form or the explicit symmetric-subspace construction.

Run:  python3 scripts/choi_oracle.py
Needs cvxpy (not a package dependency).
"""

import itertools

import cvxpy as cp
import numpy as np


def average_fidelity_objective(d: int) -> np.ndarray:
    """Matrix M with F_avg = Tr(M J) for Choi matrix J of a d -> d*d channel.

    Uses the Haar second moment
    E[psi_a conj(psi_b) psi_c conj(psi_d)] = (d_ab d_cd + d_ad d_cb) / (d (d+1)).
    """
    dim = d * d * d  # input factor x two output factors
    M = np.zeros((dim, dim))

    def idx(a, c, e):
        return (a * d + c) * d + e

    norm = 1.0 / (d * (d + 1))
    for a, b, c, dd, e in itertools.product(range(d), repeat=5):
        # First-output fidelity term: O = psi psi^dag (x) I.
        w = ((a == b) * (dd == c) + (a == c) * (dd == b)) * norm
        if w:
            # Row index carries (in_col b, out_row d, out_col-free e).
            M[idx(b, dd, e), idx(a, c, e)] += 0.5 * w
        # Second-output term: O = I (x) psi psi^dag.
        if w:
            M[idx(b, e, dd), idx(a, e, c)] += 0.5 * w
    return M


def optimal_cloning_fidelity(d: int) -> float:
    dim = d * d * d
    J = cp.Variable((dim, dim), hermitian=True)
    M = average_fidelity_objective(d)
    # Trace-preservation: partial trace of J over the two output factors
    # equals the identity on the input factor.
    constraints = [J >> 0]
    for a in range(d):
        for b in range(d):
            sel = np.zeros((dim, dim))
            for c in range(d):
                for e in range(d):
                    sel[(a * d + c) * d + e, (b * d + c) * d + e] = 1.0
            constraints.append(cp.trace(sel @ J) == (1.0 if a == b else 0.0))
    prob = cp.Problem(cp.Maximize(cp.real(cp.trace(M @ J))), constraints)
    prob.solve(solver=cp.SCS, eps=1e-9)
    return float(prob.value)


if __name__ == "__main__":
    for d, expected in [(2, 5 / 6), (3, 3 / 4)]:
        val = optimal_cloning_fidelity(d)
        print(f"d={d}: SDP optimum = {val:.8f}  expected {expected:.8f}  "
              f"diff {abs(val - expected):.2e}")
