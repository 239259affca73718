# Exponents Package
