"""Arithmetization of polynomial-time Turing machine computation in PA."""
import sys

# formula trees for tableau-scale constructions are deep
if sys.getrecursionlimit() < 20000:
    sys.setrecursionlimit(20000)

__version__ = "0.1.0"
