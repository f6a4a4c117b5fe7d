"""Exact verification toolkit for the Serre-type relations of quasi-split
iquantum groups: scalars, q-combinatorics, the T/G/H identity family, a
rank-2 modified quantum group normal-form engine and a free-algebra layer."""

__version__ = "0.1.0"
