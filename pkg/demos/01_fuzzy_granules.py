"""Fuzzy granules and granule density on a single attribute.

Run with ``python demos/01_fuzzy_granules.py``.
"""

import numpy as np

from gdof.dataset import CATEGORICAL, NUMERICAL, Attribute
from gdof.density import attribute_densities, cardinalities
from gdof.granulation import conjunction_row, granule_cardinality, relation_row

# A tight cluster near zero and one far-away value.
values = Attribute(np.array([0.0, 0.05, 0.1, 0.12, 0.9]), NUMERICAL)

# Each object induces a fuzzy granule: its similarity to every other object.
# Similarity falls off linearly with distance and drops to zero past the radius.
for radius in (0.05, 0.2, 1.0):
    row = relation_row(values, 0, radius)
    print(f"radius {radius:4.2f}: granule of object 0 = {np.round(row.memberships, 3)}, "
          f"cardinality {granule_cardinality(row):.3f}")

# Granule density multiplies a global term (how big the granule is relative
# to the dataset) by a local term (how it compares with its neighbours).
radius = 0.2
print("\ncardinalities:", np.round(cardinalities(values, radius), 3))
print("densities:    ", np.round(attribute_densities(values, radius), 3))
print("the isolated value at 0.9 has by far the lowest density")

# Categorical attributes use exact matching, so a rare code is a sparse granule.
colour = Attribute(np.array([0, 0, 0, 0, 1]), CATEGORICAL)
print("\ncategorical densities:", np.round(attribute_densities(colour, 0.0), 3))

# Combining attributes takes the pointwise minimum, so granules only shrink.
both = conjunction_row([relation_row(values, 1, radius), relation_row(colour, 1, 0.0)], 1)
print("object 1 over both attributes:", np.round(both.memberships, 3))
