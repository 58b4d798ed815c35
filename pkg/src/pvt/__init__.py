"""Exact differential algebra over Q(x).

Operator arithmetic in the Ore ring Q(x)[D], rational and hyperexponential
solutions, the order-2 liouvillian decision procedure, differential field
towers with minimal-annihilator membership, and the structure machinery for
resolving liouvillian towers into first-order steps.
"""

__version__ = "0.1.0"
