"""bicat: finite bicategories, Grothendieck constructions, homotopy
fibers, and truncated nerve homology, all as explicit table computations."""

__version__ = "0.1.0"
