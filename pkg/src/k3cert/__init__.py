"""Exact-arithmetic lattice and elliptic-fibration certificates for K3
surfaces: 2-elementary invariants, Kodaira fiber recognition,
Mordell-Weil positivity evidence, height pairings and isometry entropy.
"""

__version__ = "0.1.0"
