# Minimal separator enumeration
