# %% [markdown]
# # From a partially saturated mixed state to a pure state
#
# If one uncertainty inequality of a Gaussian state is an equality, the
# covariance ellipsoid has capacity exactly pi hbar. Its Williamson
# diagonalizer S then gives a quantum blob S(B) inside the ellipsoid, and the
# pure Gaussian with Wigner matrix G = (S S^T)^-1
#
# * has the same covariance block as rho at the saturated pair,
# * is dominated by rho (sigma_psi <= sigma_rho).

# %%
import numpy as np

from blobkit.fixtures import diagonal_fixture, saturated_fixture
from blobkit.purification import (
    dominates,
    dual_section_area,
    ellipsoid_section_area,
    purify,
    uniqueness_search,
)
from blobkit.states import PureGaussian

np.set_printoptions(precision=4, suppress=True)

# %%
rho = diagonal_fixture()
res = purify(rho)
print("saturated pair:", res.saturated_index + 1)
print("X:\n", res.psi.X)
print("Y:\n", res.psi.Y)
sigma_psi = 0.5 * rho.hbar * res.blob.canonical
print("sigma_psi:\n", sigma_psi)
print("sigma_rho - sigma_psi eigenvalues:", np.linalg.eigvalsh(rho.sigma - sigma_psi))
print("diagnostics:", res.diagnostics)

# %%
# A generic fixture: a pure block at mode 2 of a three-mode state,
# entangled with nothing, next to a random thermal remainder.
rho3 = saturated_fixture(3, 1, seed=11)
res3 = purify(rho3)
print("block of rho:\n", rho3.mode_block(1))
print("block of psi:\n", (0.5 * res3.blob.canonical)[np.ix_([1, 4], [1, 4])])
print("dominated:", dominates(res3.psi, rho3))

# %%
# Sections through the saturated pair.
print("section of Omega / pi hbar  :", ellipsoid_section_area(rho, 0) / np.pi)
print("dual section area * hbar/pi :", dual_section_area(rho, 0) / np.pi)

# %% [markdown]
# ## The blob is not unique
#
# With mode 2 mixed the ellipsoid x1^2 + p1^2 + x2^2/2 + p2^2/4 <= 1 has room
# to spare in the second mode. The unit ball fits as well as the Williamson
# blob, so the vacuum is a second dominated pure state with the right
# (x1, p1) block. A randomized search finds such blobs right away.

# %%
vacuum = PureGaussian(np.eye(2))
print("vacuum dominated:", dominates(vacuum, rho))
found = uniqueness_search(rho, res.blob, trials=200, seed=0)
print("search found a second blob at trial", found.trial, "distance", round(found.distance, 4))
print("its canonical matrix T T^T:\n", found.T @ found.T.T)

# %%
# For a pure state the ellipsoid is itself a blob and nothing else fits.
pure = saturated_fixture(1, 0, seed=2)
print("pure state, second blob:", uniqueness_search(pure, purify(pure).blob, trials=500))
