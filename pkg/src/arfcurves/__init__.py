"""Arf closures, characters and multiplicity sequences of curve branches."""
