"""su(1,1) algebraization of the Heun-class equations.

Decides whether an equation of the Heun class can be written as a quadratic
combination of bi-parametric su(1,1) generators, classifies its quasi-exact
or exact solvability, and computes verified quasi-polynomial solutions.
"""
from .kernels import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
