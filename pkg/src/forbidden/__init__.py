# Forbidden induced structure detection
