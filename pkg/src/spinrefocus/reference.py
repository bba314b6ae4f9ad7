"""Reference values for the canonical sequence family.

Published reference numbers the table command prints next to computed
results: maximum offsets at the 1e-2 infidelity threshold per base pulse,
and leading error-order exponents with the simple pulse.
"""

SEQUENCE_LABELS = ("2", "4", "8", "16", "32", "64", "128", "256")

# Band edges |eps_max| at fidelity threshold 0.99, by base pulse.
EPS_MAX_REF = {
    "simple": (0.25, 0.32, 0.25, 0.43, 0.36, 0.73, 0.45, 0.72),
    "levitt3": (0.47, 0.54, 0.49, 0.77, 0.60, 0.80, 0.79, 0.79),
    "tycko7": (0.72, 0.74, 0.72, 0.79, 0.76, 0.87, 0.86, 0.86),
}

# Leading error-order exponents (powers of the fractional offset) with the
# simple base pulse.
DELTA_Z_EXPONENT_REF = (3, 3, 3, 5, 5, 7, 7, 9)
DELTA_Y_EXPONENT_REF = (2, 5, 8, 10, 14, 13, 20, 18)

FIDELITY_THRESHOLD = 0.99
