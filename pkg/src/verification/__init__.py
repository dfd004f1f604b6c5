# Corpus property suite
