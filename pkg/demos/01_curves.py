# %% [markdown]
# # The three rolling curves
#
# A neuron is drawn from three roulettes: a cycloid for the motor core, a
# one-cusp epicycloid (cardioid) for the sensory core and a hypocycloid for
# the intention wheel. This script checks the closed forms against brute
# numerical estimates.

# %%
import math

import numpy as np

from mirrornet import CurveSpec, cycloid_point, cycloid_x_of_y, hypocycloid_arclength, hypocycloid_area, sample_curve

# %% [markdown]
# ## Cycloid: parametric vs Cartesian
# The Cartesian inverse recovers x from y on the rising half of the arch.

# %%
r = 2.0
for theta in (0.3, 1.0, 2.0, math.pi):
    x, y = cycloid_point(r, theta)
    print(f"theta={theta:5.3f}  x={x:8.5f}  x(y)={cycloid_x_of_y(r, y):8.5f}")

# %% [markdown]
# ## Hypocycloid area and length
# Dense polylines converge on the closed forms.

# %%
for k in (3, 4, 5):
    spec = CurveSpec.hypocycloid(1.0, k)
    line = sample_curve(spec, 0.0, 2 * math.pi, 20001)
    length = np.hypot(np.diff(line.xs), np.diff(line.ys)).sum()
    area = 0.5 * abs(np.dot(line.xs[:-1], line.ys[1:]) - np.dot(line.xs[1:], line.ys[:-1]))
    print(
        f"k={k}: area {area:.6f} vs {hypocycloid_area(spec):.6f}, "
        f"length {length:.6f} vs {hypocycloid_arclength(spec):.6f}"
    )
