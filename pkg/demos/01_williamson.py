# %% [markdown]
# # Symplectic diagonalization
#
# Every symmetric positive definite M can be brought to diag(L, L) by a
# symplectic S. The L are the symplectic eigenvalues; they are invariant under
# symplectic changes of variables, unlike the ordinary eigenvalues.

# %%
import numpy as np

from blobkit.symplectic import (
    is_symplectic,
    random_symplectic,
    standard_form,
    symplectic_spectrum,
    symplectic_spectrum_eig,
    williamson,
)

np.set_printoptions(precision=4, suppress=True)

# %%
# A one-mode warm-up: diag(4, 9) has a single symplectic eigenvalue sqrt(4 * 9) = 6.
W = williamson(np.diag([4.0, 9.0]))
print("spectrum:", W.spectrum)
print("S:\n", W.S)

# %%
# A random two-mode matrix.
rng = np.random.default_rng(0)
A = rng.normal(size=(4, 4))
M = A @ A.T + 0.5 * np.eye(4)
W = williamson(M)
J = standard_form(2)
print("symplectic spectrum  :", W.spectrum)
print("via eigenvalues of JM:", symplectic_spectrum_eig(M))
print("ordinary eigenvalues :", np.linalg.eigvalsh(M))
print("S^T M S:\n", W.S.T @ M @ W.S)
print("S symplectic:", is_symplectic(W.S))

# %%
# Conjugating by a symplectic map changes the eigenvalues but not the spectrum.
T = random_symplectic(2, seed=1)
M2 = T.T @ M @ T
print("eigenvalues after T  :", np.linalg.eigvalsh(M2))
print("spectrum after T     :", symplectic_spectrum(M2))

# %%
# Scaling and inversion.
print("spectrum(3M)         :", symplectic_spectrum(3 * M))
print("spectrum(M^-1)       :", symplectic_spectrum(np.linalg.inv(M)))
print("1 / spectrum(M)      :", 1 / W.spectrum[::-1])
