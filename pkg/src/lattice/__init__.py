# Lattice Package
