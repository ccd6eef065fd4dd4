"""
q-Deformed Modular Group Toolkit

Exact q-rationals, the deformed sl2 and Witt algebras of first-order
operators, the Tsallis exponential and the Moebius flows of the deformed
vector fields, with verification suites for all of their identities.
"""

__version__ = "1.0.0"
__author__ = "qdeform developers"
