# Shadows Package
