"""Default caps for bounded searches.

Every cap can be overridden per call; these are the documented defaults.
"""

# largest residual polynomial degree for which irreducibility is certified
# or a splitting attempted
FACTOR_BOUND = 8

# maximum number of combined local candidates in the hyperexponential search
HYPEREXP_CAP = 512

# maximum monomial support when flattening tower elements for linear algebra
MONOMIAL_CAP = 2000

# numerator/denominator total-degree cap for subfield membership ansatz
MEMBERSHIP_DEGREE_CAP = 12

# default order cap for minimal-annihilator searches
MAX_ORDER = 6

# kovacic case 3 gate and time budget (milliseconds)
CASE3_ENABLED = True
CASE3_BUDGET_MS = 60000

# largest derivative order tried by the presentation relation search
PRESENTATION_MAX_K = 3

# degree cap for the presentation relation search
PRESENTATION_DEGREE_CAP = 6
