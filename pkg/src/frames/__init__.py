# Frames, potential and butterflies of proper separators
