# Separator reconstruction from frame keys
