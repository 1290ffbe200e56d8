# %% [markdown]
# # Sections and projections of symplectic balls
#
# Cut S(B_R) by the plane of a conjugate pair (x_j, p_j). When S acts mode by
# mode the section is an ellipse of area exactly pi R^2. Once S mixes modes the
# section shrinks, while the projection on the same plane never drops below
# pi R^2: that lower bound is the linear non-squeezing theorem.

# %%
import numpy as np

from blobkit.gromov import (
    SymplecticBall,
    boundary_integral,
    projection_area,
    section_area,
    symplectic_plane_section,
)
from blobkit.symplectic import random_symplectic

np.set_printoptions(precision=4, suppress=True)

# %%
# One mode: any symplectic map preserves area.
ball = SymplecticBall(random_symplectic(1, seed=3), R=2.0)
sec = section_area(ball, 0, seed=1)
print("closed form / pi R^2:", sec.area_closed_form / (4 * np.pi))
print("monte carlo / pi R^2:", sec.area_sampled / (4 * np.pi), "+-", sec.standard_error / (4 * np.pi))
print("oint p dx   / pi R^2:", boundary_integral(ball, 0) / (4 * np.pi))

# %%
# A two-mode squeezer mixes the modes.
for r in (0.0, 0.25, 0.5, 1.0):
    c, s = np.cosh(r), np.sinh(r)
    S = np.array([[c, s, 0, 0], [s, c, 0, 0], [0, 0, c, -s], [0, 0, -s, c]])
    b = SymplecticBall(S)
    print(
        f"r={r:4}: section/pi {section_area(b, 0, samples=None).area_closed_form / np.pi:.4f}"
        f"  1/cosh(2r) {1 / np.cosh(2 * r):.4f}"
        f"  projection/pi {projection_area(b, 0) / np.pi:.4f}"
    )

# %%
# A random two-mode map: sections below, projections above.
b = SymplecticBall(random_symplectic(2, seed=5))
for j in range(2):
    print(f"pair {j + 1}: section/pi {section_area(b, j, samples=None).area_closed_form / np.pi:.4f}"
          f"  projection/pi {projection_area(b, j) / np.pi:.4f}")

# %%
# Symplectic area of a section equals that of its preimage disk.
res = symplectic_plane_section(b, np.eye(4)[0], np.eye(4)[2] + 0.3 * np.eye(4)[1], check_preimage=True)
print("euclidean area / pi :", res.area_closed_form / np.pi)
print("symplectic area / pi:", res.symplectic_area / np.pi)
