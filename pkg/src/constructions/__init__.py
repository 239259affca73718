# Constructions Package
