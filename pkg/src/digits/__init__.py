# Digits Package
