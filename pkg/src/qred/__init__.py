"""Desk-scale lab for quasi-order reductions.

The chain implemented here: ordinal pairing arithmetic -> combinable ordinal
sequences -> prefix-closed witness trees and their saturation -> a Lipschitz
embedding order on witness trees -> labeled two-layer skeletons with a
structural recognizer and decoder -> small-cancellation group presentations
interpreting graphs -> graph and metric encoders.  Every construction is
checked against brute-force oracles on finite instances.
"""

__version__ = "0.1.0"
