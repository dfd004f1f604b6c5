# Hole roles, sectors and star cutsets
