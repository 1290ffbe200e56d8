# %% [markdown]
# # Covariance matrices and the uncertainty principle
#
# A covariance matrix sigma describes a quantum state only if
# sigma + (i hbar / 2) J is positive semidefinite. Equivalently its
# smallest symplectic eigenvalue is at least hbar / 2, or the covariance
# ellipsoid z^T M z <= hbar (with M = (hbar / 2) sigma^-1) has symplectic
# capacity at least pi hbar. Each condition implies the uncertainty
# inequalities for every pair (x_j, p_j).

# %%
import numpy as np

from blobkit.fixtures import diagonal_fixture, thermal_like
from blobkit.states import (
    GaussianMixedState,
    capacity_of_state,
    quantum_condition,
    quantum_condition_williamson,
    quantum_margin,
    rs_report,
)

np.set_printoptions(precision=4, suppress=True)


def describe(name, rho):
    rep = rs_report(rho)
    print(f"{name}")
    print("  quantum condition :", quantum_condition(rho), f"(margin {quantum_margin(rho):.3g})")
    print("  via spectrum      :", quantum_condition_williamson(rho))
    print("  capacity / pi hbar:", round(capacity_of_state(rho) / (np.pi * rho.hbar), 6))
    print("  RS slacks         :", rep.slack, "saturated:", rep.saturated_indices)


# %%
describe("vacuum", GaussianMixedState(0.5 * np.eye(2)))
describe("too sharp", GaussianMixedState(0.25 * np.eye(2)))

# %%
# Mode 1 sits at the minimum, mode 2 is thermal: partial saturation.
describe("diag(1/2, 1, 1/2, 2)", diagonal_fixture())

# %%
# The uncertainty inequalities alone do not certify a state: this one
# passes them mode by mode but has a symplectic eigenvalue below hbar / 2.
sigma = thermal_like([0.45, 1.5], seed=4)
describe("hidden violation?", GaussianMixedState(sigma))
