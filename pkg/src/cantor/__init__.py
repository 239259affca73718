# Cantor Package
